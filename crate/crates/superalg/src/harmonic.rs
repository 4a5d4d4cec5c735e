//! Harmonic analysis over a base: the character family of the odd Abelian
//! supergroup with its Fourier inversion and Plancherel identities, the
//! Grassmann convolution algebra, and the polarized modules of the
//! Heisenberg-type supergroups with their group and infinitesimal actions.
//!
//! Sign conventions, fixed once and used everywhere:
//! * The Berezin integral over an ordered list of odd variables is the
//!   iterated left derivative in list order; equivalently the coefficient of
//!   the top monomial factored out to the left. The per-degree sign table
//!   relative to this extraction rule is identically +1; it is calibrated by
//!   the inversion identity at n = 1, 2 and then frozen.
//! * Moving the degree-n integration form past a homogeneous function of
//!   parity p costs (-1)^{n p}; this sign appears in the convolution, the
//!   function-level adjoint, and the operator adjoint.

use crate::algebra::{Algebra, AlgebraBuilder, AlgebraError, Parity, SuperElement};
use crate::derivation::{extend_by_dual, rename_into, Derivation};
use crate::heisenberg::{
    invariant_fields, HeisenbergGroupElement, HeisenbergParity, InvariantSide,
};
use crate::scalar::Scalar;
use crate::twist::TwistedElement;
use std::collections::BTreeMap;

/// The sign (-1)^{n(n+1)/2} i^n appearing in the inversion and Plancherel
/// identities.
pub fn inversion_constant(n: usize) -> Scalar {
    let s = if (n * (n + 1) / 2) % 2 == 1 { -1 } else { 1 };
    Scalar::i_pow(n as i64) * Scalar::from_int(s)
}

/// The character family of the odd Abelian supergroup of dimension 0|n over
/// its dual: functions of th1..thn (base) and xi1..xin (group).
pub struct CharacterFamily {
    pub n: usize,
    /// th1..thn, xi1..xin
    pub base_and_group: Algebra,
    /// xi1..xin only
    pub group: Algebra,
    /// xi1..xin, w1..wn (integration copies)
    pub convolution_domain: Algebra,
    multiplier: SuperElement,
}

impl CharacterFamily {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        let mut b = AlgebraBuilder::new("T*G");
        for j in 1..=n {
            b = b.odd(&format!("th{j}"));
        }
        for j in 1..=n {
            b = b.odd(&format!("xi{j}"));
        }
        let tg = b.build().expect("valid");
        let mut b = AlgebraBuilder::new("G");
        for j in 1..=n {
            b = b.odd(&format!("xi{j}"));
        }
        let g = b.build().expect("valid");
        let mut b = AlgebraBuilder::new("G*G'");
        for j in 1..=n {
            b = b.odd(&format!("xi{j}"));
        }
        for j in 1..=n {
            b = b.odd(&format!("w{j}"));
        }
        let conv = b.build().expect("valid");
        // multiplier exp(i sum th_j xi_j)
        let mut arg = SuperElement::zero(&tg);
        for j in 1..=n {
            let th = SuperElement::generator(&tg, &format!("th{j}")).unwrap();
            let xi = SuperElement::generator(&tg, &format!("xi{j}")).unwrap();
            arg = arg.add(&th.mul(&xi).scale(&Scalar::i()));
        }
        let multiplier = arg.exp_nilpotent().expect("nilpotent argument");
        CharacterFamily {
            n,
            base_and_group: tg,
            group: g,
            convolution_domain: conv,
            multiplier,
        }
    }

    pub fn xi_names(&self) -> Vec<String> {
        (1..=self.n).map(|j| format!("xi{j}")).collect()
    }

    pub fn theta_names(&self) -> Vec<String> {
        (1..=self.n).map(|j| format!("th{j}")).collect()
    }

    /// The distinguished vector psi_0 = exp(-i sum th_j xi_j).
    pub fn special_vector(&self) -> SuperElement {
        let mut arg = SuperElement::zero(&self.base_and_group);
        for j in 1..=self.n {
            let th = SuperElement::generator(&self.base_and_group, &format!("th{j}")).unwrap();
            let xi = SuperElement::generator(&self.base_and_group, &format!("xi{j}")).unwrap();
            arg = arg.add(&th.mul(&xi).scale(&-Scalar::i()));
        }
        arg.exp_nilpotent().expect("nilpotent argument")
    }

    /// Include a function on the group into the base-and-group algebra.
    pub fn lift(&self, f: &SuperElement) -> Result<SuperElement, AlgebraError> {
        rename_into(&self.group, &self.base_and_group, &[])?.apply(f)
    }

    /// The operator attached to a function: integrate the function against
    /// the character over the group; the result is a function on the base.
    pub fn pi(&self, f: &SuperElement) -> Result<SuperElement, AlgebraError> {
        let lifted = self.lift(f)?;
        let names = self.xi_names();
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        lifted.mul(&self.multiplier).berezin_integral(&refs)
    }

    /// Berezin integral over the base variables.
    pub fn integrate_base(&self, e: &SuperElement) -> Result<SuperElement, AlgebraError> {
        let names = self.theta_names();
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        e.berezin_integral(&refs)
    }

    /// Berezin integral of a function on the group.
    pub fn integrate_group(&self, f: &SuperElement) -> Result<SuperElement, AlgebraError> {
        let names = self.xi_names();
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        f.berezin_integral(&refs)
    }

    /// Left side of the inversion identity: the base integral of the
    /// supertrace of pi(f) (a scalar operator, so the supertrace is itself).
    pub fn fourier_lhs(&self, f: &SuperElement) -> Result<Scalar, AlgebraError> {
        Ok(self.integrate_base(&self.pi(f)?)?.constant_term())
    }

    /// Right side: (-1)^{n(n+1)/2} i^n f_0(0).
    pub fn fourier_rhs(&self, f: &SuperElement) -> Scalar {
        inversion_constant(self.n) * f.constant_term()
    }

    /// The convolution on the group: for homogeneous parts,
    /// (f * g) = (-1)^{n |f|} int D(w) f(xi - w) g(w).
    pub fn convolution(
        &self,
        f: &SuperElement,
        g: &SuperElement,
    ) -> Result<SuperElement, AlgebraError> {
        let conv = &self.convolution_domain;
        // xi_j -> xi_j - w_j
        let mut shift_imgs = Vec::new();
        let mut prime_imgs = Vec::new();
        for j in 1..=self.n {
            let xi = SuperElement::generator(conv, &format!("xi{j}"))?;
            let w = SuperElement::generator(conv, &format!("w{j}"))?;
            shift_imgs.push((format!("xi{j}"), xi.sub(&w)));
            prime_imgs.push((format!("xi{j}"), w));
        }
        let shift_named: Vec<(&str, SuperElement)> = shift_imgs
            .iter()
            .map(|(n, e)| (n.as_str(), e.clone()))
            .collect();
        let prime_named: Vec<(&str, SuperElement)> = prime_imgs
            .iter()
            .map(|(n, e)| (n.as_str(), e.clone()))
            .collect();
        let shift = crate::morphism::AlgebraMorphism::from_named(&self.group, conv, &shift_named)?;
        let prime = crate::morphism::AlgebraMorphism::from_named(&self.group, conv, &prime_named)?;
        let g_prime = prime.apply(g)?;
        let w_names: Vec<String> = (1..=self.n).map(|j| format!("w{j}")).collect();
        let w_refs: Vec<&str> = w_names.iter().map(|s| s.as_str()).collect();
        let mut acc = SuperElement::zero(conv);
        for p in [Parity::Even, Parity::Odd] {
            let fp = f.homogeneous_part(p);
            if fp.is_zero() {
                continue;
            }
            let term = shift.apply(&fp)?.mul(&g_prime).berezin_integral(&w_refs)?;
            let sign = if self.n % 2 == 1 && p.is_odd() { -1 } else { 1 };
            acc = acc.add(&term.scale(&Scalar::from_int(sign)));
        }
        // the result only involves xi's; map back
        rename_into_partial(conv, &self.group, &acc)
    }

    /// The function-level adjoint: f^* = (-1)^{n |f|} (conj f)(-xi).
    pub fn adjoint_star(&self, f: &SuperElement) -> Result<SuperElement, AlgebraError> {
        let mut inv_imgs = Vec::new();
        for j in 1..=self.n {
            let xi = SuperElement::generator(&self.group, &format!("xi{j}"))?;
            inv_imgs.push((format!("xi{j}"), xi.neg()));
        }
        let named: Vec<(&str, SuperElement)> = inv_imgs
            .iter()
            .map(|(n, e)| (n.as_str(), e.clone()))
            .collect();
        let inv = crate::morphism::AlgebraMorphism::from_named(&self.group, &self.group, &named)?;
        let mut acc = SuperElement::zero(&self.group);
        for p in [Parity::Even, Parity::Odd] {
            let fp = f.conjugate().homogeneous_part(p);
            if fp.is_zero() {
                continue;
            }
            let sign = if self.n % 2 == 1 && p.is_odd() { -1 } else { 1 };
            acc = acc.add(&inv.apply(&fp)?.scale(&Scalar::from_int(sign)));
        }
        Ok(acc)
    }

    /// The operator-level adjoint of a scalar operator (a function on the
    /// base): conjugate coefficients with the sign (-1)^{n |part|}.
    pub fn dagger(&self, c: &SuperElement) -> SuperElement {
        let mut acc = SuperElement::zero(&c.algebra);
        for p in [Parity::Even, Parity::Odd] {
            let part = c.conjugate().homogeneous_part(p);
            if part.is_zero() {
                continue;
            }
            let sign = if self.n % 2 == 1 && p.is_odd() { -1 } else { 1 };
            acc = acc.add(&part.scale(&Scalar::from_int(sign)));
        }
        acc
    }

    /// The Dirac delta: the top monomial xi1...xin.
    pub fn dirac_delta(&self) -> SuperElement {
        let mut acc = SuperElement::one(&self.group);
        for j in 1..=self.n {
            acc = acc.mul(&SuperElement::generator(&self.group, &format!("xi{j}")).unwrap());
        }
        acc
    }

    /// Both sides of the Plancherel identity for a pair of functions.
    pub fn plancherel_sides(
        &self,
        f: &SuperElement,
        g: &SuperElement,
    ) -> Result<(Scalar, Scalar), AlgebraError> {
        let lhs = self
            .integrate_base(&self.dagger(&self.pi(f)?).mul(&self.pi(g)?))?
            .constant_term();
        let rhs = inversion_constant(self.n)
            * self.integrate_group(&f.conjugate().mul(g))?.constant_term();
        Ok((lhs, rhs))
    }

    /// Left translation of a function on the group by a point with odd
    /// coordinate values (in the same algebra): xi_j -> xi_j - g_j.
    pub fn translate(
        &self,
        g_values: &[SuperElement],
        psi: &SuperElement,
    ) -> Result<SuperElement, AlgebraError> {
        let alg = &psi.algebra;
        let mut map: BTreeMap<usize, SuperElement> = BTreeMap::new();
        for i in 0..alg.width() {
            map.insert(i, SuperElement::generator(alg, &alg.generators[i].name)?);
        }
        for (j, gv) in g_values.iter().enumerate() {
            let idx = alg.index_of(&format!("xi{}", j + 1))?;
            let xi = SuperElement::generator(alg, &alg.generators[idx].name)?;
            map.insert(idx, xi.sub(gv));
        }
        psi.substitute(alg, &map)
    }
}

/// The character multiplier e^{i <t, g>} = exp(i sum t_j g^j) for coordinate
/// values living in a common algebra.
pub fn character_multiplier(
    t_values: &[SuperElement],
    g_values: &[SuperElement],
) -> Result<SuperElement, AlgebraError> {
    assert_eq!(t_values.len(), g_values.len());
    let alg = &t_values
        .first()
        .map(|e| e.algebra.clone())
        .or_else(|| g_values.first().map(|e| e.algebra.clone()))
        .expect("nonempty coordinates");
    let mut arg = SuperElement::zero(alg);
    for (t, g) in t_values.iter().zip(g_values) {
        arg = arg.add(&t.mul(g).scale(&Scalar::i()));
    }
    arg.exp_nilpotent()
}

/// The polarized space of the odd Abelian supergroup over its dual: the
/// distinguished vector exp(-i sum th_j xi_j) spans a free module of rank
/// 1|0. The eigenfunction equations are solved on the full (finite) function
/// space; with the left-derivative convention used throughout, the
/// distinguished vector is the eigenfunction of the coordinate fields with
/// eigenvalue +i th_j.
pub fn abelian_polarized_space(
    fam: &CharacterFamily,
) -> Result<(Vec<SuperElement>, (usize, usize)), AlgebraError> {
    let alg = &fam.base_and_group;
    let n = fam.n;
    let candidates = alg.enumerate_monomials(0, 0);
    let cand_elems: Vec<SuperElement> = candidates
        .iter()
        .map(|m| SuperElement::from_monomial(alg, m.clone(), Scalar::one()))
        .collect();
    // residuals: d/dxi_j psi - i th_j psi for j = 1..n
    let mut residuals: Vec<Vec<SuperElement>> = Vec::with_capacity(cand_elems.len());
    for psi in &cand_elems {
        let mut rs = Vec::with_capacity(n);
        for j in 1..=n {
            let d = psi.partial_derivative(&format!("xi{j}"))?;
            let th = SuperElement::generator(alg, &format!("th{j}"))?;
            rs.push(d.sub(&th.mul(psi).scale(&Scalar::i())));
        }
        residuals.push(rs);
    }
    let index = crate::orbit::MonomialIndex::from_elements(residuals.iter().flatten());
    let rows = (index.len() * n).max(1);
    let mut system = crate::linalg::QiMatrix::zero(rows, cand_elems.len());
    for (j, r) in residuals.iter().enumerate() {
        if index.is_empty() {
            continue;
        }
        let flat = index.flatten_vec(r).expect("own");
        for (i, v) in flat.into_iter().enumerate() {
            system.data[i][j] = v;
        }
    }
    let kernel = system.right_kernel();
    let solutions: Vec<SuperElement> = kernel
        .iter()
        .map(|kv| {
            let mut acc = SuperElement::zero(alg);
            for (j, c) in kv.iter().enumerate() {
                if !c.is_zero() {
                    acc = acc.add(&cand_elems[j].scale(c));
                }
            }
            acc
        })
        .collect();
    // module rank: reduce solutions at the classical point of the base
    // (th -> 0) and count independent fibre images by parity
    let th_indices: Vec<usize> = (1..=n)
        .map(|j| alg.index_of(&format!("th{j}")).unwrap())
        .collect();
    let fibre_of = |e: &SuperElement| -> SuperElement {
        let terms = e
            .terms
            .iter()
            .filter(|(m, _)| th_indices.iter().all(|&i| m.0[i] == 0))
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        SuperElement {
            algebra: alg.clone(),
            terms,
        }
    };
    let fibres: Vec<SuperElement> = solutions.iter().map(&fibre_of).collect();
    let findex = crate::orbit::MonomialIndex::from_elements(fibres.iter());
    let mut span = crate::linalg::Span::new(findex.len().max(1));
    let mut gens: Vec<SuperElement> = Vec::new();
    for (s, fe) in solutions.iter().zip(&fibres) {
        if fe.is_zero() {
            continue;
        }
        if let Some(v) = findex.flatten(fe) {
            if span.insert(v) {
                gens.push(s.clone());
            }
        }
    }
    let mut even = 0usize;
    let mut odd = 0usize;
    for g in &gens {
        match g.parity() {
            Some(Parity::Odd) => odd += 1,
            _ => even += 1,
        }
    }
    // prefer the distinguished vector when it spans the fibre
    let psi0 = fam.special_vector();
    let basis = if (even, odd) == (1, 0) {
        let sat = (1..=n).all(|j| {
            let d = psi0.partial_derivative(&format!("xi{j}")).unwrap();
            let th = SuperElement::generator(alg, &format!("th{j}")).unwrap();
            d.sub(&th.mul(&psi0).scale(&Scalar::i())).is_zero()
        });
        if sat {
            vec![psi0]
        } else {
            gens
        }
    } else {
        gens
    };
    Ok((basis, (even, odd)))
}

/// Map an element into another algebra by matching generator names; the
/// element must only involve generators present in the target.
fn rename_into_partial(
    from: &Algebra,
    to: &Algebra,
    e: &SuperElement,
) -> Result<SuperElement, AlgebraError> {
    let mut map: BTreeMap<usize, SuperElement> = BTreeMap::new();
    for (i, g) in from.generators.iter().enumerate() {
        if let Ok(img) = SuperElement::generator(to, &g.name) {
            map.insert(i, img);
        }
    }
    e.substitute(to, &map)
}

/// A scalar or matrix operator on a free module.
#[derive(Clone)]
pub enum RepOperator {
    Scalar(SuperElement),
    Matrix {
        parities: Vec<Parity>,
        entries: Vec<Vec<SuperElement>>,
    },
}

impl RepOperator {
    pub fn supertrace(&self) -> SuperElement {
        match self {
            RepOperator::Scalar(s) => s.clone(),
            RepOperator::Matrix { parities, entries } => {
                let mut acc = SuperElement::zero(&entries[0][0].algebra);
                for (i, p) in parities.iter().enumerate() {
                    if p.is_odd() {
                        acc = acc.sub(&entries[i][i]);
                    } else {
                        acc = acc.add(&entries[i][i]);
                    }
                }
                acc
            }
        }
    }
}

/// A free module of twisted functions carrying the polarized subrepresentation
/// of the left regular representation of a Heisenberg-type supergroup.
pub struct PolarizedModule {
    pub parity: HeisenbergParity,
    /// Function algebra of the group over the base (and any auxiliary test
    /// generators): base generators first, then a, b, c.
    pub algebra: Algebra,
    pub gamma: SuperElement,
    /// The common twist exponent i * gamma * c.
    pub exponent: SuperElement,
    pub basis: Vec<TwistedElement>,
    pub rank: (usize, usize),
}

/// Which pair of basis vectors spans the polarizing subalgebra.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Polarization {
    /// span{x, z}
    XZ,
    /// span{y, z}
    YZ,
}

/// Apply an invariant field (a derivation of the function algebra) to a
/// twisted element.
pub fn apply_field(
    field: &Derivation,
    psi: &TwistedElement,
) -> Result<TwistedElement, AlgebraError> {
    let alg = &psi.body.algebra;
    let mut acc: Option<TwistedElement> = None;
    for (i, coeff) in field.images.iter().enumerate() {
        if coeff.is_zero() {
            continue;
        }
        let d = psi.partial_derivative(&alg.generators[i].name)?;
        let term = TwistedElement {
            body: coeff.mul(&d.body),
            exponent: d.exponent,
        };
        acc = Some(match acc {
            None => term,
            Some(prev) => prev.add(&term)?,
        });
    }
    Ok(acc.unwrap_or_else(|| TwistedElement::plain(SuperElement::zero(alg))))
}

/// Solve the polarization equations R_v psi = -i <f, v> psi for v in the
/// polarizing pair, on the space of twisted functions with bodies drawn from
/// a bounded monomial window, and identify a module basis.
///
/// For the standard x,z-polarization with f = gamma z^* the equations read
/// R_x psi = 0 and R_z psi = -i gamma psi, and the returned basis is
/// {exp(i gamma c), b exp(i gamma c)} of rank 1|1.
pub fn polarized_space(
    parity: HeisenbergParity,
    algebra: &Algebra,
    gamma: &SuperElement,
    polarization: Polarization,
    body_cap: u32,
) -> Result<PolarizedModule, AlgebraError> {
    let c_el = SuperElement::generator(algebra, "c")?;
    let exponent = gamma.mul(&c_el).scale(&Scalar::i());
    if !exponent.is_even() {
        return Err(AlgebraError::NotEven);
    }
    let fields = invariant_fields(parity, algebra, InvariantSide::Right)?;
    // Equations: for v in the polarization, R_v psi - eigen_v psi = 0 with
    // eigen_x = eigen_y = 0 and eigen_z = -i gamma.
    let (first, second) = match polarization {
        Polarization::XZ => (0usize, 2usize),
        Polarization::YZ => (1usize, 2usize),
    };
    let eigen = |idx: usize| -> SuperElement {
        if idx == 2 {
            gamma.scale(&-Scalar::i())
        } else {
            SuperElement::zero(algebra)
        }
    };

    // Candidate bodies: all monomials of the algebra bounded by the window.
    let candidates = algebra.enumerate_monomials(body_cap, 1);
    let cand_elems: Vec<SuperElement> = candidates
        .iter()
        .map(|m| SuperElement::from_monomial(algebra, m.clone(), Scalar::one()))
        .collect();

    // For each candidate, the two residuals (same twist exponent).
    let mut residuals: Vec<[SuperElement; 2]> = Vec::with_capacity(cand_elems.len());
    for body in &cand_elems {
        let psi = TwistedElement {
            body: body.clone(),
            exponent: exponent.clone(),
        };
        let mut rs = Vec::with_capacity(2);
        for idx in [first, second] {
            let r = apply_field(&fields[idx], &psi)?;
            // subtract eigen * psi
            let eig = eigen(idx);
            let res_body = r.body.sub(&eig.mul(body));
            rs.push(res_body);
        }
        residuals.push([rs[0].clone(), rs[1].clone()]);
    }

    // Flatten and solve for the kernel.
    let index = crate::orbit::MonomialIndex::from_elements(residuals.iter().flat_map(|r| r.iter()));
    let rows = (index.len() * 2).max(1);
    let mut system = crate::linalg::QiMatrix::zero(rows, cand_elems.len());
    for (j, r) in residuals.iter().enumerate() {
        if index.is_empty() {
            continue;
        }
        let flat = index
            .flatten_vec(&[r[0].clone(), r[1].clone()])
            .expect("own");
        for (i, v) in flat.into_iter().enumerate() {
            system.data[i][j] = v;
        }
    }
    let kernel = system.right_kernel();
    let solutions: Vec<SuperElement> = kernel
        .iter()
        .map(|kv| {
            let mut acc = SuperElement::zero(algebra);
            for (j, c) in kv.iter().enumerate() {
                if !c.is_zero() {
                    acc = acc.add(&cand_elems[j].scale(c));
                }
            }
            acc
        })
        .collect();

    // Rank over the base: reduce solution bodies at the classical point of
    // the base (nilpotents to zero, units to one), split by parity.
    let classical: BTreeMap<usize, Scalar> = algebra
        .generators
        .iter()
        .enumerate()
        .filter(|(_, g)| g.invertible)
        .map(|(i, _)| (i, Scalar::one()))
        .collect();
    // Fibre evaluation: kill nilpotent base coefficients but keep the group
    // coordinates a, b, c symbolic.
    let abc: Vec<usize> = ["a", "b", "c"]
        .iter()
        .map(|n| algebra.index_of(n).unwrap())
        .collect();
    let fibre_of = |e: &SuperElement| -> SuperElement {
        let mut acc = SuperElement::zero(algebra);
        for (m, coeff) in &e.terms {
            // base part must be non-nilpotent; evaluate units classically
            let mut scale = coeff.clone();
            let mut keep = true;
            let mut group_mono = crate::algebra::Monomial::one(algebra.width());
            for (i, &exp) in m.0.iter().enumerate() {
                if exp == 0 {
                    continue;
                }
                if abc.contains(&i) {
                    group_mono.0[i] = exp;
                } else if algebra.generator_is_nilpotent(i) {
                    keep = false;
                    break;
                } else {
                    let val = classical.get(&i).cloned().unwrap_or_else(Scalar::zero);
                    if val.is_zero() {
                        keep = false;
                        break;
                    }
                    let mut v = Scalar::one();
                    let reps = exp.unsigned_abs();
                    for _ in 0..reps {
                        v *= &val;
                    }
                    if exp < 0 {
                        v = v.inv();
                    }
                    scale *= &v;
                }
            }
            if keep {
                acc = acc.add(&SuperElement::from_monomial(algebra, group_mono, scale));
            }
        }
        acc
    };
    let fibre_index = crate::orbit::MonomialIndex::from_elements(
        solutions.iter().map(&fibre_of).collect::<Vec<_>>().iter(),
    );
    let mut fibre_span = crate::linalg::Span::new(fibre_index.len().max(1));
    let mut gens: Vec<SuperElement> = Vec::new();
    for s in &solutions {
        let fe = fibre_of(s);
        if fe.is_zero() {
            continue;
        }
        if let Some(v) = fibre_index.flatten(&fe) {
            if fibre_span.insert(v) {
                gens.push(s.clone());
            }
        }
    }
    let mut even = 0usize;
    let mut odd = 0usize;
    for g in &gens {
        match g.parity() {
            Some(Parity::Odd) => odd += 1,
            _ => even += 1,
        }
    }

    // Prefer the canonical generators when they solve the equations and
    // exhaust the fibre (the standard polarization).
    let b_el = SuperElement::generator(algebra, "b")?;
    let canonical = [SuperElement::one(algebra), b_el];
    let canonical_ok = polarization == Polarization::XZ
        && (even, odd) == (1, 1)
        && canonical.iter().all(|body| {
            let psi = TwistedElement {
                body: body.clone(),
                exponent: exponent.clone(),
            };
            [first, second].iter().all(|&idx| {
                let r = apply_field(&fields[idx], &psi).expect("fields apply");
                r.body.sub(&eigen(idx).mul(body)).is_zero()
            })
        });
    let basis_bodies: Vec<SuperElement> = if canonical_ok {
        canonical.to_vec()
    } else {
        gens
    };
    let basis = basis_bodies
        .into_iter()
        .map(|body| TwistedElement {
            body,
            exponent: exponent.clone(),
        })
        .collect();
    Ok(PolarizedModule {
        parity,
        algebra: algebra.clone(),
        gamma: gamma.clone(),
        exponent,
        basis,
        rank: (even, odd),
    })
}

impl PolarizedModule {
    /// The group action on polarized sections:
    /// pi(g) psi = exp(i gamma (-g_a b + g_a g_b - g_c)) psi(b -> b - g_b).
    pub fn group_action(
        &self,
        g: &HeisenbergGroupElement,
        psi: &TwistedElement,
    ) -> Result<TwistedElement, AlgebraError> {
        let alg = &self.algebra;
        let b_el = SuperElement::generator(alg, "b")?;
        // substitution b -> b - g_b on both components
        let mut map: BTreeMap<usize, SuperElement> = BTreeMap::new();
        for i in 0..alg.width() {
            map.insert(i, SuperElement::generator(alg, &alg.generators[i].name)?);
        }
        map.insert(alg.index_of("b")?, b_el.sub(&g.b));
        let body = psi.body.substitute(alg, &map)?;
        let exp_sub = psi.exponent.substitute(alg, &map)?;
        let lin = g.c.neg().add(&g.a.mul(&g.b)).add(&g.a.neg().mul(&b_el));
        let factor = self.gamma.mul(&lin).scale(&Scalar::i());
        Ok(TwistedElement {
            body,
            exponent: exp_sub.add(&factor),
        }
        .canonical_zero_body())
    }

    /// Full left translation of a twisted function (all three coordinates),
    /// for cross-checking the closed-form action.
    pub fn left_translate(
        &self,
        g: &HeisenbergGroupElement,
        psi: &TwistedElement,
    ) -> Result<TwistedElement, AlgebraError> {
        let alg = &self.algebra;
        let inv = g.inverse();
        let a_el = SuperElement::generator(alg, "a")?;
        let b_el = SuperElement::generator(alg, "b")?;
        let c_el = SuperElement::generator(alg, "c")?;
        let mut map: BTreeMap<usize, SuperElement> = BTreeMap::new();
        for i in 0..alg.width() {
            map.insert(i, SuperElement::generator(alg, &alg.generators[i].name)?);
        }
        map.insert(alg.index_of("a")?, inv.a.add(&a_el));
        map.insert(alg.index_of("b")?, inv.b.add(&b_el));
        map.insert(alg.index_of("c")?, inv.c.add(&c_el).add(&inv.a.mul(&b_el)));
        psi.substitute(alg, &map)
    }

    /// The closed-form infinitesimal operators:
    /// d(x) = -i gamma b, d(y) = -d/db, d(z) = i gamma.
    pub fn dpi_closed(
        &self,
        which: usize,
        psi: &TwistedElement,
    ) -> Result<TwistedElement, AlgebraError> {
        let alg = &self.algebra;
        match which {
            0 => {
                let b_el = SuperElement::generator(alg, "b")?;
                let m = self.gamma.mul(&b_el).scale(&-Scalar::i());
                Ok(TwistedElement {
                    body: m.mul(&psi.body),
                    exponent: psi.exponent.clone(),
                }
                .canonical_zero_body())
            }
            1 => {
                let d = psi.partial_derivative("b")?;
                Ok(d.neg())
            }
            2 => {
                let m = self.gamma.scale(&Scalar::i());
                Ok(TwistedElement {
                    body: m.mul(&psi.body),
                    exponent: psi.exponent.clone(),
                }
                .canonical_zero_body())
            }
            _ => panic!("basis index out of range"),
        }
    }

    /// The infinitesimal action by dual-number differentiation of the group
    /// action along the flow of a basis vector.
    pub fn dpi_by_flow(
        &self,
        which: usize,
        psi: &TwistedElement,
    ) -> Result<TwistedElement, AlgebraError> {
        let vp = match which {
            0 => self.parity.x,
            1 => self.parity.y,
            2 => self.parity.z,
            _ => panic!("basis index out of range"),
        };
        let ext = extend_by_dual(&self.algebra, "tau_fl", vp)?;
        let tau = SuperElement::generator(&ext, "tau_fl")?;
        let inc = rename_into(&self.algebra, &ext, &[])?;
        let psi_ext = TwistedElement {
            body: inc.apply(&psi.body)?,
            exponent: inc.apply(&psi.exponent)?,
        };
        let flow = crate::heisenberg::flow_coordinates(self.parity, which, &tau)?;
        // a module over the extended algebra with the same data
        let ext_module = PolarizedModule {
            parity: self.parity,
            algebra: ext.clone(),
            gamma: inc.apply(&self.gamma)?,
            exponent: inc.apply(&self.exponent)?,
            basis: Vec::new(),
            rank: self.rank,
        };
        let moved = ext_module.group_action(&flow, &psi_ext)?;
        let norm = moved.normalize_onto(&ext_module.exponent)?;
        let coeff = norm.body.partial_derivative("tau_fl")?;
        // map back (tau -> 0 is implicit: the derivative removed it)
        let back = rename_into(
            &ext,
            &self.algebra,
            &[("tau_fl", SuperElement::zero(&self.algebra))],
        )?;
        Ok(TwistedElement {
            body: back.apply(&coeff)?,
            exponent: self.exponent.clone(),
        }
        .canonical_zero_body())
    }

    /// Matrix of an operator in the module basis {exp(E), b exp(E)}: apply,
    /// renormalize onto the common exponent, split the body into its b-free
    /// part (the coordinate along exp(E)) and its b-part (whose left
    /// coefficient u in u*b is the coordinate along b exp(E)).
    pub fn matrix_of(
        &self,
        op: impl Fn(&TwistedElement) -> Result<TwistedElement, AlgebraError>,
    ) -> Result<RepOperator, AlgebraError> {
        let n = self.basis.len();
        let one = SuperElement::one(&self.algebra);
        let b_idx = self.algebra.index_of("b")?;
        let mut entries = vec![vec![SuperElement::zero(&self.algebra); n]; n];
        for (j, b) in self.basis.iter().enumerate() {
            let image = op(b)?.normalize_onto(&self.exponent)?;
            let mut no_b = SuperElement::zero(&self.algebra);
            let mut with_b = SuperElement::zero(&self.algebra);
            for (m, c) in &image.body.terms {
                let target = if m.0[b_idx] != 0 {
                    &mut with_b
                } else {
                    &mut no_b
                };
                *target = target.add(&SuperElement::from_monomial(
                    &self.algebra,
                    m.clone(),
                    c.clone(),
                ));
            }
            for (i, basis_el) in self.basis.iter().enumerate() {
                entries[i][j] = if basis_el.body == one {
                    no_b.clone()
                } else {
                    // with_b = u * b and d/db(u b) = (-1)^{|u|} u, so u is
                    // recovered as (even part) - (odd part) of the derivative.
                    let d = with_b.partial_derivative("b")?;
                    let ev = d.homogeneous_part(Parity::Even);
                    let od = d.homogeneous_part(Parity::Odd);
                    ev.sub(&od)
                };
            }
        }
        let parities = self
            .basis
            .iter()
            .map(|b| b.body.parity().unwrap_or(Parity::Even))
            .collect();
        Ok(RepOperator::Matrix { parities, entries })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inversion_constants() {
        // (-1)^{n(n+1)/2} i^n
        assert_eq!(inversion_constant(1), -Scalar::i());
        assert_eq!(inversion_constant(2), Scalar::from_int(1));
        assert_eq!(inversion_constant(3), -Scalar::i());
        assert_eq!(inversion_constant(4), Scalar::from_int(1));
    }

    #[test]
    fn pi_of_basic_functions() {
        let fam = CharacterFamily::new(1);
        // f = f0 + f1 xi  ->  pi(f) = f1 - i f0 th
        let xi = SuperElement::generator(&fam.group, "xi1").unwrap();
        let f = SuperElement::from_int(&fam.group, 3).add(&xi.scale(&Scalar::from_int(5)));
        let p = fam.pi(&f).unwrap();
        let th = SuperElement::generator(&fam.base_and_group, "th1").unwrap();
        let expected = SuperElement::from_int(&fam.base_and_group, 5)
            .add(&th.scale(&(Scalar::from_int(-3) * Scalar::i())));
        assert_eq!(p, expected);
        // pi(0) = 0
        assert!(fam.pi(&SuperElement::zero(&fam.group)).unwrap().is_zero());
        // pi(delta) = 1: the delta acts as the identity multiplier
        let d = fam.dirac_delta();
        assert_eq!(fam.pi(&d).unwrap(), SuperElement::one(&fam.base_and_group));
    }

    #[test]
    fn fourier_inversion_example() {
        let fam = CharacterFamily::new(1);
        let xi = SuperElement::generator(&fam.group, "xi1").unwrap();
        let f = SuperElement::from_int(&fam.group, 3).add(&xi.scale(&Scalar::from_int(5)));
        assert_eq!(
            fam.fourier_lhs(&f).unwrap(),
            Scalar::from_int(-3) * Scalar::i()
        );
        assert_eq!(fam.fourier_rhs(&f), Scalar::from_int(-3) * Scalar::i());
    }

    #[test]
    fn convolution_delta_is_unit() {
        for n in 1..=3 {
            let fam = CharacterFamily::new(n);
            let d = fam.dirac_delta();
            // check on every monomial
            let monos = fam.group.enumerate_monomials(0, 0);
            for m in monos {
                let f = SuperElement::from_monomial(&fam.group, m, Scalar::one());
                assert_eq!(fam.convolution(&f, &d).unwrap(), f);
                assert_eq!(fam.convolution(&d, &f).unwrap(), f);
            }
        }
    }

    #[test]
    fn translation_of_coordinate() {
        let fam = CharacterFamily::new(1);
        // on U x G with one auxiliary odd parameter
        let alg = AlgebraBuilder::new("UG")
            .odd("g1")
            .odd("xi1")
            .build()
            .unwrap();
        let g1 = SuperElement::generator(&alg, "g1").unwrap();
        let xi = SuperElement::generator(&alg, "xi1").unwrap();
        let moved = fam.translate(&[g1.clone()], &xi).unwrap();
        assert_eq!(moved, xi.sub(&g1));
    }

    fn clifford_module() -> PolarizedModule {
        let parity = HeisenbergParity::from_code("ooe").unwrap();
        let base = AlgebraBuilder::new("T").unit("u").build().unwrap();
        let alg = crate::heisenberg::function_algebra(parity, Some(&base), "TG").unwrap();
        let gamma = SuperElement::generator(&alg, "u").unwrap();
        polarized_space(parity, &alg, &gamma, Polarization::XZ, 2).unwrap()
    }

    fn odd_heisenberg_module() -> PolarizedModule {
        let parity = HeisenbergParity::from_code("eoo").unwrap();
        let base = AlgebraBuilder::new("T").odd("th").build().unwrap();
        let alg = crate::heisenberg::function_algebra(parity, Some(&base), "TG").unwrap();
        let gamma = SuperElement::generator(&alg, "th").unwrap();
        polarized_space(parity, &alg, &gamma, Polarization::XZ, 2).unwrap()
    }

    #[test]
    fn polarized_bases_have_rank_one_one() {
        for m in [clifford_module(), odd_heisenberg_module()] {
            assert_eq!(m.rank, (1, 1));
            assert_eq!(m.basis.len(), 2);
            assert_eq!(m.basis[0].body, SuperElement::one(&m.algebra));
            assert_eq!(
                m.basis[1].body,
                SuperElement::generator(&m.algebra, "b").unwrap()
            );
            // the twist exponent is i*gamma*c
            let c = SuperElement::generator(&m.algebra, "c").unwrap();
            assert_eq!(m.exponent, m.gamma.mul(&c).scale(&Scalar::i()));
        }
    }

    #[test]
    fn odd_heisenberg_twist_is_finite() {
        // exp(i th c) = 1 + i th c when th, c are odd
        let m = odd_heisenberg_module();
        let expanded = m.basis[0].expand().unwrap();
        let c = SuperElement::generator(&m.algebra, "c").unwrap();
        let expected = SuperElement::one(&m.algebra).add(&m.gamma.mul(&c).scale(&Scalar::i()));
        assert_eq!(expanded, expected);
    }

    #[test]
    fn group_action_agrees_with_left_translation() {
        for m in [clifford_module(), odd_heisenberg_module()] {
            // a group point with nilpotent coordinates built from an
            // auxiliary extension
            let ext = extend_by_dual(&m.algebra, "e1", Parity::Odd).unwrap();
            let ext = extend_by_dual(&ext, "e2", Parity::Odd).unwrap();
            let inc = rename_into(&m.algebra, &ext, &[]).unwrap();
            let em = PolarizedModule {
                parity: m.parity,
                algebra: ext.clone(),
                gamma: inc.apply(&m.gamma).unwrap(),
                exponent: inc.apply(&m.exponent).unwrap(),
                basis: m
                    .basis
                    .iter()
                    .map(|b| TwistedElement {
                        body: inc.apply(&b.body).unwrap(),
                        exponent: inc.apply(&b.exponent).unwrap(),
                    })
                    .collect(),
                rank: m.rank,
            };
            let e1 = SuperElement::generator(&ext, "e1").unwrap();
            let e2 = SuperElement::generator(&ext, "e2").unwrap();
            let mk = |p: Parity, alt: bool| -> SuperElement {
                match p {
                    Parity::Odd => {
                        if alt {
                            e1.clone()
                        } else {
                            e2.clone()
                        }
                    }
                    Parity::Even => e1.mul(&e2).scale(&Scalar::from_int(3)),
                }
            };
            let g = HeisenbergGroupElement::new(
                em.parity,
                mk(em.parity.x, true),
                mk(em.parity.y, false),
                mk(em.parity.z, true),
            )
            .unwrap();
            for psi in &em.basis {
                let closed = em.group_action(&g, psi).unwrap();
                let direct = em.left_translate(&g, psi).unwrap();
                // compare expanded onto the common exponent
                let lhs = closed.normalize_onto(&em.exponent).unwrap();
                let rhs = direct.normalize_onto(&em.exponent).unwrap();
                assert_eq!(lhs.body, rhs.body);
            }
        }
    }

    #[test]
    fn dpi_flow_matches_closed_form() {
        for m in [clifford_module(), odd_heisenberg_module()] {
            for which in 0..3 {
                for psi in &m.basis {
                    let by_flow = m.dpi_by_flow(which, psi).unwrap();
                    let closed = m.dpi_closed(which, psi).unwrap();
                    let a = by_flow.normalize_onto(&m.exponent).unwrap();
                    let b = closed.normalize_onto(&m.exponent).unwrap();
                    assert_eq!(a.body, b.body, "basis {which}");
                }
            }
        }
    }

    #[test]
    fn dpi_bracket_is_dpi_z() {
        // super bracket of d(x), d(y): anticommutator when both are odd
        // operators (x, y odd), commutator otherwise.
        for m in [clifford_module(), odd_heisenberg_module()] {
            let both_odd = m.parity.x.is_odd() && m.parity.y.is_odd();
            for psi in &m.basis {
                let xy = m.dpi_closed(0, &m.dpi_closed(1, psi).unwrap()).unwrap();
                let yx = m.dpi_closed(1, &m.dpi_closed(0, psi).unwrap()).unwrap();
                let bracket = if both_odd {
                    xy.add(&yx).unwrap()
                } else {
                    xy.add(&yx.neg()).unwrap()
                };
                let z = m.dpi_closed(2, psi).unwrap();
                assert_eq!(
                    bracket.normalize_onto(&m.exponent).unwrap().body,
                    z.normalize_onto(&m.exponent).unwrap().body
                );
            }
        }
    }

    #[test]
    fn abelian_polarized_rank_one_zero() {
        for n in 1..=2 {
            let fam = CharacterFamily::new(n);
            let (basis, rank) = abelian_polarized_space(&fam).unwrap();
            assert_eq!(rank, (1, 0));
            assert_eq!(basis.len(), 1);
            assert_eq!(basis[0], fam.special_vector());
        }
    }

    #[test]
    fn character_identity_on_distinguished_vector() {
        // lambda(g) psi_t = exp(i sum t_j g^j) psi_t with symbolic t = th
        for n in 1..=2usize {
            let fam = CharacterFamily::new(n);
            // extend by odd coordinates for g
            let mut ext = fam.base_and_group.clone();
            for j in 1..=n {
                ext = extend_by_dual(&ext, &format!("g{j}"), Parity::Odd).unwrap();
            }
            let inc = rename_into(&fam.base_and_group, &ext, &[]).unwrap();
            let psi = inc.apply(&fam.special_vector()).unwrap();
            let gs: Vec<SuperElement> = (1..=n)
                .map(|j| SuperElement::generator(&ext, &format!("g{j}")).unwrap())
                .collect();
            let ts: Vec<SuperElement> = (1..=n)
                .map(|j| SuperElement::generator(&ext, &format!("th{j}")).unwrap())
                .collect();
            // translate: xi_j -> xi_j - g_j
            let mut map = BTreeMap::new();
            for i in 0..ext.width() {
                map.insert(
                    i,
                    SuperElement::generator(&ext, &ext.generators[i].name).unwrap(),
                );
            }
            for (j, g) in gs.iter().enumerate() {
                let idx = ext.index_of(&format!("xi{}", j + 1)).unwrap();
                let xi = SuperElement::generator(&ext, &format!("xi{}", j + 1)).unwrap();
                map.insert(idx, xi.sub(g));
            }
            let moved = psi.substitute(&ext, &map).unwrap();
            let mult = character_multiplier(&ts, &gs).unwrap();
            assert_eq!(moved, mult.mul(&psi));
            // multiplier at g = 0 is 1
            let zeros: Vec<SuperElement> = (0..n).map(|_| SuperElement::zero(&ext)).collect();
            assert_eq!(
                character_multiplier(&ts, &zeros).unwrap(),
                SuperElement::one(&ext)
            );
            // multiplicativity in g
            let gs2: Vec<SuperElement> = gs.iter().map(|g| g.scale(&Scalar::from_int(2))).collect();
            let sum: Vec<SuperElement> = gs.iter().zip(&gs2).map(|(a, b)| a.add(b)).collect();
            let m1 = character_multiplier(&ts, &gs).unwrap();
            let m2 = character_multiplier(&ts, &gs2).unwrap();
            let m12 = character_multiplier(&ts, &sum).unwrap();
            assert_eq!(m1.mul(&m2), m12);
        }
    }

    #[test]
    fn convolution_is_homomorphism_and_associative() {
        for n in 1..=2usize {
            let fam = CharacterFamily::new(n);
            let monos = fam.group.enumerate_monomials(0, 0);
            // dense pseudo-random functions
            let mk = |k: i64| -> SuperElement {
                let mut acc = SuperElement::zero(&fam.group);
                for (j, m) in monos.iter().enumerate() {
                    let c = Scalar::from_int((j as i64 * 3 + k) % 5 - 2)
                        + Scalar::i() * Scalar::from_int((j as i64 + k) % 3 - 1);
                    acc = acc.add(&SuperElement::from_monomial(&fam.group, m.clone(), c));
                }
                acc
            };
            let f = mk(1);
            let g = mk(7);
            let h = mk(11);
            // pi is an algebra map for the convolution
            let lhs = fam.pi(&fam.convolution(&f, &g).unwrap()).unwrap();
            let rhs = fam.pi(&f).unwrap().mul(&fam.pi(&g).unwrap());
            assert_eq!(lhs, rhs, "homomorphism at n={n}");
            // associativity
            let a = fam
                .convolution(&fam.convolution(&f, &g).unwrap(), &h)
                .unwrap();
            let b = fam
                .convolution(&f, &fam.convolution(&g, &h).unwrap())
                .unwrap();
            assert_eq!(a, b, "associativity at n={n}");
            // zero annihilates
            let zero = SuperElement::zero(&fam.group);
            assert!(fam.convolution(&f, &zero).unwrap().is_zero());
            // the adjoint matches the operator dagger through pi
            let fs = fam.adjoint_star(&f).unwrap();
            assert_eq!(
                fam.pi(&fs).unwrap(),
                fam.dagger(&fam.pi(&f).unwrap()),
                "pi of the star is the dagger of pi, n={n}"
            );
        }
    }

    #[test]
    fn conjugating_the_expanded_character_flips_the_sign() {
        let fam = CharacterFamily::new(2);
        let psi0 = fam.special_vector();
        // conj(exp(-i sum th xi)) = exp(+i sum th xi)
        let mut arg = SuperElement::zero(&fam.base_and_group);
        for j in 1..=2 {
            let th = SuperElement::generator(&fam.base_and_group, &format!("th{j}")).unwrap();
            let xi = SuperElement::generator(&fam.base_and_group, &format!("xi{j}")).unwrap();
            arg = arg.add(&th.mul(&xi).scale(&Scalar::i()));
        }
        assert_eq!(psi0.conjugate(), arg.exp_nilpotent().unwrap());
    }

    #[test]
    fn heisenberg_translation_of_central_coordinate() {
        // lambda(g)(c) = c - c' + a'b' - a'b in the coordinates of g
        let m = odd_heisenberg_module();
        let alg = &m.algebra;
        let ext = extend_by_dual(alg, "p1", Parity::Odd).unwrap();
        let ext = extend_by_dual(&ext, "p2", Parity::Odd).unwrap();
        let ext = extend_by_dual(&ext, "p3", Parity::Even).unwrap();
        let inc = rename_into(alg, &ext, &[]).unwrap();
        let em = PolarizedModule {
            parity: m.parity,
            algebra: ext.clone(),
            gamma: inc.apply(&m.gamma).unwrap(),
            exponent: inc.apply(&m.exponent).unwrap(),
            basis: Vec::new(),
            rank: m.rank,
        };
        let p1 = SuperElement::generator(&ext, "p1").unwrap();
        let p2 = SuperElement::generator(&ext, "p2").unwrap();
        let p3 = SuperElement::generator(&ext, "p3").unwrap();
        // coordinates: a even, b odd, c odd in this family
        let g = HeisenbergGroupElement::new(em.parity, p3.clone(), p1.clone(), p2.clone()).unwrap();
        let c_el = SuperElement::generator(&ext, "c").unwrap();
        let b_el = SuperElement::generator(&ext, "b").unwrap();
        let moved = em
            .left_translate(&g, &TwistedElement::plain(c_el.clone()))
            .unwrap();
        let expected = c_el.sub(&p2).add(&p3.mul(&p1)).sub(&p3.mul(&b_el));
        assert_eq!(moved.body, expected);
    }

    #[test]
    fn operator_matrices_and_supertrace() {
        for m in [clifford_module(), odd_heisenberg_module()] {
            let mx = m.matrix_of(|psi| m.dpi_closed(0, psi)).unwrap();
            let my = m.matrix_of(|psi| m.dpi_closed(1, psi)).unwrap();
            let mz = m.matrix_of(|psi| m.dpi_closed(2, psi)).unwrap();
            let RepOperator::Matrix { entries: ex, .. } = &mx else {
                panic!()
            };
            let RepOperator::Matrix { entries: ey, .. } = &my else {
                panic!()
            };
            let RepOperator::Matrix { entries: ez, .. } = &mz else {
                panic!()
            };
            let ig = m.gamma.scale(&Scalar::i());
            // d(x): lower-left -i gamma; d(y): upper-right -1; d(z): i gamma id
            assert!(ex[0][0].is_zero() && ex[0][1].is_zero() && ex[1][1].is_zero());
            assert_eq!(ex[1][0], ig.neg());
            assert!(ey[0][0].is_zero() && ey[1][0].is_zero() && ey[1][1].is_zero());
            assert_eq!(ey[0][1], SuperElement::one(&m.algebra).neg());
            assert_eq!(ez[0][0], ig);
            assert_eq!(ez[1][1], ig);
            // supertrace of the central operator vanishes on the 1|1 module
            assert!(mz.supertrace().is_zero());
            // scalar supertrace is the scalar itself
            let s = RepOperator::Scalar(ig.clone());
            assert_eq!(s.supertrace(), ig);
        }
    }

    #[test]
    fn alternative_polarization_changes_rank() {
        // with the y,z-polarization of the odd Heisenberg family the module
        // is spanned by p(a)(1 - i a th b) exp(i th c): all even, one per
        // power of a inside the window.
        let parity = HeisenbergParity::from_code("eoo").unwrap();
        let base = AlgebraBuilder::new("T").odd("th").build().unwrap();
        let alg = crate::heisenberg::function_algebra(parity, Some(&base), "TG").unwrap();
        let gamma = SuperElement::generator(&alg, "th").unwrap();
        // solutions p(a)(1 - i a th b) exp(i th c) need a body of degree
        // deg p + 1, so a window of size 3 holds the p = 1, a, a^2 family
        let m = polarized_space(parity, &alg, &gamma, Polarization::YZ, 3).unwrap();
        assert_eq!(m.rank, (3, 0));
        // check a representative solution directly: (1 - i a th b) exp(i th c)
        let a = SuperElement::generator(&alg, "a").unwrap();
        let b = SuperElement::generator(&alg, "b").unwrap();
        let body = SuperElement::one(&alg).sub(&a.mul(&gamma).mul(&b).scale(&Scalar::i()));
        let psi = TwistedElement {
            body: body.clone(),
            exponent: m.exponent.clone(),
        };
        let fields = invariant_fields(parity, &alg, InvariantSide::Right).unwrap();
        let ry = apply_field(&fields[1], &psi).unwrap();
        assert!(ry.body.is_zero());
        let rz = apply_field(&fields[2], &psi).unwrap();
        let expected = body.mul(&gamma.scale(&-Scalar::i()));
        assert_eq!(rz.body, expected);
    }
}
