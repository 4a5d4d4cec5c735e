//! Homogeneous super vector fields on a presented algebra, given by their
//! generator images and extended by the graded Leibniz rule. Fields over a
//! base annihilate the designated base generators.

use crate::algebra::{Algebra, AlgebraBuilder, AlgebraError, Parity, SuperElement};
use crate::morphism::AlgebraMorphism;
use std::collections::BTreeSet;
use std::sync::Arc;

#[derive(Clone)]
pub struct Derivation {
    pub algebra: Algebra,
    pub parity: Parity,
    /// Image of each generator.
    pub images: Vec<SuperElement>,
    /// Indices of base generators; their images must vanish.
    pub base: BTreeSet<usize>,
}

impl Derivation {
    pub fn new(
        algebra: &Algebra,
        parity: Parity,
        images: Vec<SuperElement>,
        base: BTreeSet<usize>,
    ) -> Result<Self, AlgebraError> {
        if images.len() != algebra.width() {
            return Err(AlgebraError::ParityMismatch(
                "wrong number of generator images".into(),
            ));
        }
        for (i, img) in images.iter().enumerate() {
            if !Arc::ptr_eq(&img.algebra, algebra) {
                return Err(AlgebraError::MixedAlgebras);
            }
            let expected = algebra.generators[i].parity.plus(parity);
            match img.parity() {
                Some(p) if p == expected || img.is_zero() => {}
                _ => {
                    return Err(AlgebraError::ParityMismatch(format!(
                        "image of `{}` under a {} derivation must be {}",
                        algebra.generators[i].name, parity, expected
                    )))
                }
            }
            if base.contains(&i) && !img.is_zero() {
                return Err(AlgebraError::ParityMismatch(format!(
                    "derivation over the base must annihilate `{}`",
                    algebra.generators[i].name
                )));
            }
        }
        let d = Derivation {
            algebra: algebra.clone(),
            parity,
            images,
            base,
        };
        // Well-definedness on the quotient: the derivation must kill the
        // relation ideal. Truncations g^t = 0 require t g^{t-1} v(g) = 0.
        for (i, g) in algebra.generators.iter().enumerate() {
            if let Some(t) = g.truncation {
                let gp = SuperElement::generator_pow(algebra, &g.name, t as i32 - 1)?;
                if !gp
                    .mul(&d.images[i])
                    .scale(&crate::scalar::Scalar::from_int(t as i64))
                    .is_zero()
                {
                    return Err(AlgebraError::RelationNotKilled(format!("{}^{}", g.name, t)));
                }
            }
        }
        for rel in &algebra.relations {
            if !d.apply_to_monomial(rel)?.is_zero() {
                return Err(AlgebraError::RelationNotKilled(
                    "derivation does not preserve the relation ideal".into(),
                ));
            }
        }
        Ok(d)
    }

    pub fn from_named(
        algebra: &Algebra,
        parity: Parity,
        named: &[(&str, SuperElement)],
        base_names: &[&str],
    ) -> Result<Self, AlgebraError> {
        let mut images = vec![SuperElement::zero(algebra); algebra.width()];
        for (name, img) in named {
            images[algebra.index_of(name)?] = img.clone();
        }
        let mut base = BTreeSet::new();
        for b in base_names {
            base.insert(algebra.index_of(b)?);
        }
        Self::new(algebra, parity, images, base)
    }

    pub fn zero(algebra: &Algebra, parity: Parity) -> Self {
        Derivation {
            algebra: algebra.clone(),
            parity,
            images: vec![SuperElement::zero(algebra); algebra.width()],
            base: BTreeSet::new(),
        }
    }

    /// The coordinate field for one generator.
    pub fn coordinate(algebra: &Algebra, name: &str) -> Result<Self, AlgebraError> {
        let idx = algebra.index_of(name)?;
        let mut images = vec![SuperElement::zero(algebra); algebra.width()];
        images[idx] = SuperElement::one(algebra);
        Ok(Derivation {
            algebra: algebra.clone(),
            parity: algebra.generators[idx].parity,
            images,
            base: BTreeSet::new(),
        })
    }

    pub fn scale(&self, c: &crate::scalar::Scalar) -> Self {
        Derivation {
            algebra: self.algebra.clone(),
            parity: self.parity,
            images: self.images.iter().map(|e| e.scale(c)).collect(),
            base: self.base.clone(),
        }
    }

    /// Left-multiply by a homogeneous coefficient function.
    pub fn left_mul(&self, f: &SuperElement) -> Result<Self, AlgebraError> {
        let fp = f.parity().ok_or(AlgebraError::NotEven)?;
        Ok(Derivation {
            algebra: self.algebra.clone(),
            parity: self.parity.plus(fp),
            images: self.images.iter().map(|e| f.mul(e)).collect(),
            base: self.base.clone(),
        })
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.parity, other.parity);
        Derivation {
            algebra: self.algebra.clone(),
            parity: self.parity,
            images: self
                .images
                .iter()
                .zip(&other.images)
                .map(|(a, b)| a.add(b))
                .collect(),
            base: self.base.clone(),
        }
    }

    pub fn neg(&self) -> Self {
        Derivation {
            algebra: self.algebra.clone(),
            parity: self.parity,
            images: self.images.iter().map(|e| e.neg()).collect(),
            base: self.base.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(|e| e.is_zero())
    }

    /// Leibniz expansion on a single monomial (which need not survive in the
    /// quotient): v(f1 f2 .. fr) = sum_j (-1)^{|v|(|f1|+..+|f_{j-1}|)}
    /// f1 .. v(fj) .. fr, every partial product computed in the quotient.
    fn apply_to_monomial(
        &self,
        m: &crate::algebra::Monomial,
    ) -> Result<SuperElement, AlgebraError> {
        let mut acc = SuperElement::zero(&self.algebra);
        let mut passed_parity = Parity::Even;
        for (i, &exp) in m.0.iter().enumerate() {
            if exp == 0 {
                continue;
            }
            let g = &self.algebra.generators[i];
            let vg = &self.images[i];
            if !vg.is_zero() {
                let mut term = SuperElement::one(&self.algebra);
                if self.parity.is_odd() && passed_parity.is_odd() {
                    term = term.neg();
                }
                for (j, &ej) in m.0.iter().enumerate().take(i) {
                    if ej != 0 {
                        let gj = SuperElement::generator_pow(
                            &self.algebra,
                            &self.algebra.generators[j].name,
                            ej,
                        )?;
                        term = term.mul(&gj);
                    }
                }
                // d/dv of g^exp: v(g) for odd g; exp*g^{exp-1}*v(g) for even
                // g, valid for Laurent exponents too.
                if g.parity.is_odd() {
                    term = term.mul(vg);
                } else {
                    let gpow = SuperElement::generator_pow(&self.algebra, &g.name, exp - 1)?;
                    term = term
                        .mul(&SuperElement::from_int(&self.algebra, exp as i64))
                        .mul(&gpow)
                        .mul(vg);
                }
                for (j, &ej) in m.0.iter().enumerate().skip(i + 1) {
                    if ej != 0 {
                        let gj = SuperElement::generator_pow(
                            &self.algebra,
                            &self.algebra.generators[j].name,
                            ej,
                        )?;
                        term = term.mul(&gj);
                    }
                }
                acc = acc.add(&term);
            }
            if g.parity.is_odd() && exp % 2 != 0 {
                passed_parity = passed_parity.flip();
            }
        }
        Ok(acc)
    }

    /// Apply to an arbitrary element by the graded Leibniz rule.
    pub fn apply(&self, e: &SuperElement) -> Result<SuperElement, AlgebraError> {
        if !Arc::ptr_eq(&e.algebra, &self.algebra) {
            return Err(AlgebraError::MixedAlgebras);
        }
        let mut acc = SuperElement::zero(&self.algebra);
        for (m, c) in &e.terms {
            acc = acc.add(&self.apply_to_monomial(m)?.scale(c));
        }
        Ok(acc)
    }

    /// Super bracket [u, v] = u o v - (-1)^{|u||v|} v o u, as a derivation.
    pub fn bracket(u: &Derivation, v: &Derivation) -> Result<Derivation, AlgebraError> {
        if !Arc::ptr_eq(&u.algebra, &v.algebra) {
            return Err(AlgebraError::MixedAlgebras);
        }
        let sign = u.parity.koszul(v.parity);
        let images = (0..u.algebra.width())
            .map(|i| {
                let uv = u.apply(&v.images[i])?;
                let vu = v.apply(&u.images[i])?;
                Ok(if sign < 0 { uv.add(&vu) } else { uv.sub(&vu) })
            })
            .collect::<Result<Vec<_>, AlgebraError>>()?;
        let base: BTreeSet<usize> = u.base.union(&v.base).copied().collect();
        Derivation::new(&u.algebra, u.parity.plus(v.parity), images, base)
    }

    /// The infinitesimal flow: a morphism into the algebra extended by one
    /// dual variable of the derivation's parity (even tau with tau^2 = 0, or
    /// an odd variable), sending f to f + tau*v(f). Restricting the dual
    /// variable to zero recovers the identity.
    pub fn infinitesimal_flow(
        &self,
        dual_name: &str,
    ) -> Result<(AlgebraMorphism, Algebra), AlgebraError> {
        let ext = extend_by_dual(&self.algebra, dual_name, self.parity)?;
        let tau = SuperElement::generator(&ext, dual_name)?;
        // inclusion of old generators
        let include: Vec<SuperElement> = (0..self.algebra.width())
            .map(|i| SuperElement::generator(&ext, &self.algebra.generators[i].name))
            .collect::<Result<Vec<_>, _>>()?;
        let inject = |e: &SuperElement| -> Result<SuperElement, AlgebraError> {
            let map: std::collections::BTreeMap<usize, SuperElement> = include
                .iter()
                .enumerate()
                .map(|(i, g)| (i, g.clone()))
                .collect();
            e.substitute(&ext, &map)
        };
        let images = (0..self.algebra.width())
            .map(|i| {
                let g = inject(&include_source(&self.algebra, i, &ext)?)?;
                let v = inject(&self.images[i])?;
                Ok(g.add(&tau.mul(&v)))
            })
            .collect::<Result<Vec<_>, AlgebraError>>()?;
        let m = AlgebraMorphism::new(&self.algebra, &ext, images)?;
        Ok((m, ext))
    }
}

fn include_source(
    source: &Algebra,
    idx: usize,
    _ext: &Algebra,
) -> Result<SuperElement, AlgebraError> {
    SuperElement::generator(source, &source.generators[idx].name)
}

/// Extend a presentation by a fresh dual variable: even with square zero, or
/// odd. Relations and truncations carry over.
pub fn extend_by_dual(
    algebra: &Algebra,
    dual_name: &str,
    parity: Parity,
) -> Result<Algebra, AlgebraError> {
    let mut b = AlgebraBuilder::new(&format!("{}[{}]", algebra.label, dual_name));
    for g in &algebra.generators {
        b = match (g.parity, g.truncation, g.invertible) {
            (Parity::Odd, _, _) => b.odd(&g.name),
            (Parity::Even, Some(t), _) => b.even_truncated(&g.name, t),
            (Parity::Even, None, true) => b.unit(&g.name),
            (Parity::Even, None, false) => b.even(&g.name),
        };
    }
    b = match parity {
        Parity::Even => b.even_truncated(dual_name, 2),
        Parity::Odd => b.odd(dual_name),
    };
    let mut built = b;
    for rel in &algebra.relations {
        let factors: Vec<(String, u32)> = rel
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(i, &e)| (algebra.generators[i].name.clone(), e as u32))
            .collect();
        let fr: Vec<(&str, u32)> = factors.iter().map(|(n, e)| (n.as_str(), *e)).collect();
        built = built.relation(&fr);
    }
    built.build()
}

/// Substitution morphism that maps the shared generators of `from` into
/// `to` by name, with explicit overrides.
pub fn rename_into(
    from: &Algebra,
    to: &Algebra,
    overrides: &[(&str, SuperElement)],
) -> Result<AlgebraMorphism, AlgebraError> {
    let mut images = Vec::with_capacity(from.width());
    'outer: for g in &from.generators {
        for (n, img) in overrides {
            if *n == g.name {
                images.push(img.clone());
                continue 'outer;
            }
        }
        images.push(SuperElement::generator(to, &g.name)?);
    }
    AlgebraMorphism::new(from, to, images)
}
