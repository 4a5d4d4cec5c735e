//! The constant-rank criterion for group actions at parametrized points,
//! isotropy computations, dimension bookkeeping, and finite-dimensional
//! invariant-subalgebra (categorical quotient) calculations.
//!
//! The rank criterion is checked in two parts, following the equivalence of
//! the pointwise and module-level conditions: at every classical point the
//! evaluated fundamental-field matrix is row reduced to a witness set, and
//! the remaining rows must be coefficient-algebra combinations of the
//! witness rows, solved exactly on the monomial basis.

use crate::algebra::{Algebra, AlgebraError, Monomial, Parity, SuperElement};
use crate::lie::LieSuperAlgebra;
use crate::linalg::{QiMatrix, Span};
use crate::morphism::{AlgebraMorphism, ClassicalPoint};
use crate::scalar::Scalar;
use std::collections::BTreeMap;

/// An even point of the dual space, with coefficients over a base algebra:
/// f = sum_k f_k e_k^* where |f_k| = |e_k|.
#[derive(Clone)]
pub struct TValuedFunctional {
    pub base: Algebra,
    pub coefficients: Vec<SuperElement>,
}

impl TValuedFunctional {
    pub fn new(
        lie: &LieSuperAlgebra,
        base: &Algebra,
        coefficients: Vec<SuperElement>,
    ) -> Result<Self, AlgebraError> {
        if coefficients.len() != lie.dim() {
            return Err(AlgebraError::ParityMismatch(
                "one coefficient per basis covector".into(),
            ));
        }
        for (k, c) in coefficients.iter().enumerate() {
            match c.parity() {
                Some(p) if p == lie.parity(k) || c.is_zero() => {}
                _ => {
                    return Err(AlgebraError::ParityMismatch(format!(
                        "coefficient of {}^* must be {}",
                        lie.basis[k].0,
                        lie.parity(k)
                    )))
                }
            }
        }
        Ok(TValuedFunctional {
            base: base.clone(),
            coefficients,
        })
    }

    /// Pairing with a coefficient vector: <f, u> = sum_k (-1)^{|e_k||u^k|} f_k u^k.
    pub fn pair(&self, lie: &LieSuperAlgebra, u: &[SuperElement]) -> SuperElement {
        let mut acc = SuperElement::zero(&self.base);
        for (k, uk) in u.iter().enumerate() {
            if uk.is_zero() || self.coefficients[k].is_zero() {
                continue;
            }
            let signed = if lie.parity(k).is_odd() {
                let ev = uk.homogeneous_part(Parity::Even);
                let od = uk.homogeneous_part(Parity::Odd);
                ev.sub(&od)
            } else {
                uk.clone()
            };
            acc = acc.add(&self.coefficients[k].mul(&signed));
        }
        acc
    }
}

/// Rows are Lie-algebra basis vectors, columns are coordinate fields on the
/// dual space; entry (j, a) is the coefficient of d/dx^a in the pulled-back
/// fundamental field of e_j, namely -<f, [e_j, e_a]>.
pub struct FundamentalFieldMatrix {
    pub base: Algebra,
    pub row_parities: Vec<Parity>,
    pub col_parities: Vec<Parity>,
    pub entries: Vec<Vec<SuperElement>>,
    pub basis_names: Vec<String>,
}

/// Assemble the matrix for the coadjoint action from structure constants:
/// entry(j, a) = -<f, [e_j, e_a]> = -sum_k c^k_{ja} f_k.
pub fn fundamental_field_matrix(
    lie: &LieSuperAlgebra,
    f: &TValuedFunctional,
) -> FundamentalFieldMatrix {
    let n = lie.dim();
    let mut entries = vec![vec![SuperElement::zero(&f.base); n]; n];
    for (j, row) in entries.iter_mut().enumerate() {
        for (a, slot) in row.iter_mut().enumerate() {
            let mut acc = SuperElement::zero(&f.base);
            for k in 0..n {
                let c = &lie.constants[j][a][k];
                if !c.is_zero() {
                    acc = acc.add(&f.coefficients[k].scale(c));
                }
            }
            *slot = acc.neg();
        }
    }
    FundamentalFieldMatrix {
        base: f.base.clone(),
        row_parities: (0..n).map(|i| lie.parity(i)).collect(),
        col_parities: (0..n).map(|i| lie.parity(i)).collect(),
        entries,
        basis_names: lie.basis.iter().map(|(n, _)| n.clone()).collect(),
    }
}

/// Caps for solving module equations on the monomial basis of the base.
#[derive(Clone, Copy, Debug)]
pub struct SolveWindow {
    pub even_cap: u32,
    pub unit_window: u32,
}

impl Default for SolveWindow {
    fn default() -> Self {
        SolveWindow {
            even_cap: 4,
            unit_window: 4,
        }
    }
}

/// Index of monomials for flattening algebra elements to coefficient vectors.
pub struct MonomialIndex {
    pub monomials: Vec<Monomial>,
    index: BTreeMap<Monomial, usize>,
}

impl MonomialIndex {
    pub fn from_elements<'a>(elems: impl Iterator<Item = &'a SuperElement>) -> Self {
        let mut set = std::collections::BTreeSet::new();
        for e in elems {
            for m in e.terms.keys() {
                set.insert(m.clone());
            }
        }
        let monomials: Vec<Monomial> = set.into_iter().collect();
        let index = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        MonomialIndex { monomials, index }
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    /// Flatten; returns None if the element uses a monomial outside the index.
    pub fn flatten(&self, e: &SuperElement) -> Option<Vec<Scalar>> {
        let mut v = vec![Scalar::zero(); self.monomials.len()];
        for (m, c) in &e.terms {
            let &i = self.index.get(m)?;
            v[i] = c.clone();
        }
        Some(v)
    }

    /// Flatten a vector of elements by concatenation.
    pub fn flatten_vec(&self, es: &[SuperElement]) -> Option<Vec<Scalar>> {
        let mut out = Vec::with_capacity(es.len() * self.monomials.len());
        for e in es {
            out.extend(self.flatten(e)?);
        }
        Some(out)
    }
}

#[derive(Clone, Debug)]
pub struct PointReport {
    pub label: String,
    pub rank: usize,
    pub witness: Vec<String>,
    /// Super dimension of the isotropy subalgebra at the point.
    pub iso_dim: (usize, usize),
    /// Whether the witness rows span every row over the base algebra.
    pub spanned: bool,
}

#[derive(Clone, Debug)]
pub struct RankReport {
    pub points: Vec<PointReport>,
    pub constant_rank: bool,
    pub dim_g: (usize, usize),
}

/// Evaluate the matrix at a classical point.
fn evaluate_matrix(
    m: &FundamentalFieldMatrix,
    point: &ClassicalPoint,
) -> Result<QiMatrix, AlgebraError> {
    let rows = m.entries.len();
    let cols = m.col_parities.len();
    let mut q = QiMatrix::zero(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            q.data[i][j] = m.entries[i][j].evaluate_classical(&point.values)?;
        }
    }
    Ok(q)
}

/// The kernel of v -> sum_j v^j row_j at a classical point, split by parity.
pub fn isotropy_subalgebra_at(
    m: &FundamentalFieldMatrix,
    point: &ClassicalPoint,
) -> Result<(Vec<Vec<Scalar>>, (usize, usize)), AlgebraError> {
    let q = evaluate_matrix(m, point)?;
    let kernel = q.transpose().right_kernel();
    let mut even = 0;
    let mut odd = 0;
    for v in &kernel {
        let support_parity = v
            .iter()
            .enumerate()
            .find(|(_, c)| !c.is_zero())
            .map(|(i, _)| m.row_parities[i]);
        match support_parity {
            Some(Parity::Odd) => odd += 1,
            _ => even += 1,
        }
    }
    Ok((kernel, (even, odd)))
}

/// The full constant-rank check: at each classical point, evaluate, row
/// reduce to a witness set, then confirm that every row is a combination of
/// witness rows with coefficients in the base algebra.
pub fn constant_rank_check(
    m: &FundamentalFieldMatrix,
    points: &[(String, ClassicalPoint)],
    window: SolveWindow,
) -> Result<RankReport, AlgebraError> {
    let mut reports = Vec::new();
    let mut constant_rank = true;
    for (label, point) in points {
        let q = evaluate_matrix(m, point)?;
        let witness_rows = q.independent_rows();
        let rank = witness_rows.len();
        let (_, iso_dim) = isotropy_subalgebra_at(m, point)?;
        let spanned = rows_spanned_over_base(m, &witness_rows, window)?;
        if !spanned {
            constant_rank = false;
        }
        reports.push(PointReport {
            label: label.clone(),
            rank,
            witness: witness_rows
                .iter()
                .map(|&i| m.basis_names[i].clone())
                .collect(),
            iso_dim,
            spanned,
        });
    }
    let mut dim_even = 0;
    let mut dim_odd = 0;
    for p in &m.row_parities {
        if p.is_odd() {
            dim_odd += 1;
        } else {
            dim_even += 1;
        }
    }
    Ok(RankReport {
        points: reports,
        constant_rank,
        dim_g: (dim_even, dim_odd),
    })
}

/// Does every row of `m` lie in the base-algebra span of the witness rows?
/// Solved as an exact linear system over the monomial basis, with witness
/// coefficients ranging over a bounded monomial window.
fn rows_spanned_over_base(
    m: &FundamentalFieldMatrix,
    witness: &[usize],
    window: SolveWindow,
) -> Result<bool, AlgebraError> {
    let cols = m.col_parities.len();
    let lambda_monomials = m
        .base
        .enumerate_monomials(window.even_cap, window.unit_window);
    'rows: for (r, row) in m.entries.iter().enumerate() {
        if witness.contains(&r) {
            continue;
        }
        if row.iter().all(|e| e.is_zero()) {
            continue;
        }
        if witness.is_empty() {
            return Ok(false);
        }
        // Build candidate columns: one per (witness row, lambda monomial).
        let mut candidate_vecs: Vec<Vec<SuperElement>> = Vec::new();
        for &w in witness {
            for mu in &lambda_monomials {
                let mu_el = SuperElement::from_monomial(&m.base, mu.clone(), Scalar::one());
                let scaled: Vec<SuperElement> =
                    (0..cols).map(|c| mu_el.mul(&m.entries[w][c])).collect();
                candidate_vecs.push(scaled);
            }
        }
        let index = MonomialIndex::from_elements(candidate_vecs.iter().flatten().chain(row.iter()));
        let target = index.flatten_vec(row).expect("own monomials");
        let mut system = QiMatrix::zero(target.len(), candidate_vecs.len());
        for (j, cand) in candidate_vecs.iter().enumerate() {
            let col = index.flatten_vec(cand).expect("own monomials");
            for (i, v) in col.into_iter().enumerate() {
                system.data[i][j] = v;
            }
        }
        if let Some(sol) = system.solve(&target) {
            // verify by substituting back
            let mut recon = vec![SuperElement::zero(&m.base); cols];
            for (j, coeff) in sol.iter().enumerate() {
                if coeff.is_zero() {
                    continue;
                }
                let w = witness[j / lambda_monomials.len()];
                let mu = &lambda_monomials[j % lambda_monomials.len()];
                let mu_el = SuperElement::from_monomial(&m.base, mu.clone(), coeff.clone());
                for c in 0..cols {
                    recon[c] = recon[c].add(&mu_el.mul(&m.entries[w][c]));
                }
            }
            for c in 0..cols {
                if recon[c] != row[c] {
                    return Ok(false);
                }
            }
            continue 'rows;
        }
        return Ok(false);
    }
    Ok(true)
}

/// The isotropy as a module over the base: tuples v with
/// sum_j v^j (pulled-back field of e_j) = 0, solved on a bounded monomial
/// window. Returns a generating family of coefficient tuples.
pub fn isotropy_module(
    lie: &crate::lie::LieSuperAlgebra,
    f: &TValuedFunctional,
    window: SolveWindow,
) -> Result<Vec<Vec<SuperElement>>, AlgebraError> {
    let m = fundamental_field_matrix(lie, f);
    let n = lie.dim();
    let base = &f.base;
    let mults = base.enumerate_monomials(window.even_cap, window.unit_window);
    let mut columns: Vec<Vec<SuperElement>> = Vec::new();
    let mut tags: Vec<(usize, usize)> = Vec::new();
    for j in 0..n {
        for (mi, mu) in mults.iter().enumerate() {
            let mu_el = SuperElement::from_monomial(base, mu.clone(), Scalar::one());
            let col: Vec<SuperElement> = (0..n).map(|a| mu_el.mul(&m.entries[j][a])).collect();
            columns.push(col);
            tags.push((j, mi));
        }
    }
    let index = MonomialIndex::from_elements(columns.iter().flatten());
    let rows = (index.len() * n).max(1);
    let mut system = QiMatrix::zero(rows, columns.len());
    for (cidx, col) in columns.iter().enumerate() {
        if index.is_empty() {
            continue;
        }
        let flat = index.flatten_vec(col).expect("own monomials");
        for (r, v) in flat.into_iter().enumerate() {
            system.data[r][cidx] = v;
        }
    }
    let kernel = system.right_kernel();
    Ok(kernel
        .iter()
        .map(|kv| {
            let mut tuple = vec![SuperElement::zero(base); n];
            for (cidx, coeff) in kv.iter().enumerate() {
                if coeff.is_zero() {
                    continue;
                }
                let (j, mi) = tags[cidx];
                tuple[j] = tuple[j].add(&SuperElement::from_monomial(
                    base,
                    mults[mi].clone(),
                    coeff.clone(),
                ));
            }
            tuple
        })
        .collect())
}

/// Super-dimension arithmetic for the orbit through a point, from a rank
/// report: orbit fibre = dim G - dim of the isotropy at each point, checked
/// against the relation-dimension identity
/// dim(G.x) = 2 dim G_T - dim R_x with dim R_x = dim G + dim G_x.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitDimensions {
    pub iso_fibre: (usize, usize),
    pub orbit_fibre: (usize, usize),
    pub relation_fibre: (usize, usize),
    pub identity_holds: bool,
}

pub fn orbit_dimensions(report: &RankReport) -> Result<Vec<OrbitDimensions>, AlgebraError> {
    if !report.constant_rank {
        return Err(AlgebraError::ParityMismatch(
            "orbit dimensions require constant rank".into(),
        ));
    }
    let (ge, go) = report.dim_g;
    Ok(report
        .points
        .iter()
        .map(|p| {
            let (ie, io) = p.iso_dim;
            let orbit = (ge - ie, go - io);
            let relation = (ge + ie, go + io);
            // dim(G.x) = 2 dim G - dim R_x, componentwise
            let identity_holds = orbit.0 + relation.0 == 2 * ge && orbit.1 + relation.1 == 2 * go;
            OrbitDimensions {
                iso_fibre: p.iso_dim,
                orbit_fibre: orbit,
                relation_fibre: relation,
                identity_holds,
            }
        })
        .collect())
}

/// A finitely generated ideal inside a presented algebra, with membership
/// decided by exact linear algebra on the monomial basis.
pub struct IdealPresentation {
    pub ambient: Algebra,
    pub generators: Vec<SuperElement>,
    window: SolveWindow,
}

impl IdealPresentation {
    pub fn new(ambient: &Algebra, generators: Vec<SuperElement>, window: SolveWindow) -> Self {
        let generators = generators.into_iter().filter(|g| !g.is_zero()).collect();
        IdealPresentation {
            ambient: ambient.clone(),
            generators,
            window,
        }
    }

    /// The linear span of monomial multiples of the generators.
    fn span(&self) -> (MonomialIndex, Span) {
        let mults = self
            .ambient
            .enumerate_monomials(self.window.even_cap, self.window.unit_window);
        let mut products = Vec::new();
        for g in &self.generators {
            for mu in &mults {
                let mu_el = SuperElement::from_monomial(&self.ambient, mu.clone(), Scalar::one());
                let p = mu_el.mul(g);
                if !p.is_zero() {
                    products.push(p);
                }
            }
        }
        let index = MonomialIndex::from_elements(products.iter());
        let dim = index.len().max(1);
        let mut span = Span::new(dim);
        for p in &products {
            if let Some(v) = index.flatten(p) {
                span.insert(v);
            }
        }
        (index, span)
    }

    pub fn contains(&self, e: &SuperElement) -> bool {
        if e.is_zero() {
            return true;
        }
        let (index, span) = self.span();
        match index.flatten(e) {
            Some(v) => span.contains(&v),
            None => false,
        }
    }

    pub fn equals(&self, other: &IdealPresentation) -> bool {
        self.generators.iter().all(|g| other.contains(g))
            && other.generators.iter().all(|g| self.contains(g))
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }
}

/// The isotropy ideal of a point under an action, inside the ambient algebra
/// of the parameter-times-group space: generated by the differences between
/// the pulled-back action coordinates and the constant point coordinates.
///
/// `action`: O(X) -> O(G x X); `point`: O(X) -> O(T); `ambient`: O(T x G).
/// Generators of the group-times-point algebra are matched to the ambient by
/// name; X-generators inside the action image are substituted through the
/// point.
pub fn isotropy_ideal(
    action: &AlgebraMorphism,
    point: &AlgebraMorphism,
    ambient: &Algebra,
    window: SolveWindow,
) -> Result<IdealPresentation, AlgebraError> {
    let gx = &action.target; // O(G x X)
    let x = &action.source; // O(X)
    let t = &point.target; // O(T)

    // O(G x X) -> O(T x G): G-generators by name; X-generators through the point.
    let mut images = Vec::with_capacity(gx.width());
    for g in &gx.generators {
        if let Ok(xi) = x.index_of(&g.name) {
            // inject point image (element of O(T)) into the ambient by name
            let inj = crate::derivation::rename_into(t, ambient, &[])?;
            images.push(inj.apply(&point.images[xi])?);
        } else {
            images.push(SuperElement::generator(ambient, &g.name)?);
        }
    }
    let push = AlgebraMorphism::new(gx, ambient, images)?;
    let inj_t = crate::derivation::rename_into(t, ambient, &[])?;

    let mut gens = Vec::new();
    for (i, img) in action.images.iter().enumerate() {
        let moved = push.apply(img)?;
        let fixed = inj_t.apply(&point.images[i])?;
        gens.push(moved.sub(&fixed));
    }
    Ok(IdealPresentation::new(ambient, gens, window))
}

/// Basis of the equalizer {h : s(h) = t(h)} on the cutoff monomial space of
/// the common source, with a multiplicative-closure verification.
pub struct InvariantBasis {
    pub basis: Vec<SuperElement>,
    /// Products of basis elements that stayed inside the cutoff space all lie
    /// in the span.
    pub closed_under_product: bool,
    /// Number of basis products that left the cutoff space (not decided).
    pub products_escaping_cutoff: usize,
}

pub fn invariant_subalgebra(
    s: &AlgebraMorphism,
    t: &AlgebraMorphism,
    cutoff: u32,
) -> Result<InvariantBasis, AlgebraError> {
    if !std::sync::Arc::ptr_eq(&s.source, &t.source)
        || !std::sync::Arc::ptr_eq(&s.target, &t.target)
    {
        return Err(AlgebraError::MixedAlgebras);
    }
    let source = &s.source;
    let monos = source.enumerate_monomials(cutoff, cutoff);
    // differences s(m) - t(m)
    let mut diffs = Vec::with_capacity(monos.len());
    for m in &monos {
        let el = SuperElement::from_monomial(source, m.clone(), Scalar::one());
        diffs.push(s.apply(&el)?.sub(&t.apply(&el)?));
    }
    let index = MonomialIndex::from_elements(diffs.iter());
    let cols = index.len();
    // kernel of the coefficient matrix: rows = target monomials, cols = source monomials
    let mut system = QiMatrix::zero(cols.max(1), monos.len());
    for (j, d) in diffs.iter().enumerate() {
        if cols == 0 {
            continue;
        }
        let v = index.flatten(d).expect("own monomials");
        for (i, c) in v.into_iter().enumerate() {
            system.data[i][j] = c;
        }
    }
    let kernel = system.right_kernel();
    let mut basis: Vec<SuperElement> = kernel
        .iter()
        .map(|v| {
            let mut acc = SuperElement::zero(source);
            for (j, c) in v.iter().enumerate() {
                if !c.is_zero() {
                    acc = acc.add(&SuperElement::from_monomial(
                        source,
                        monos[j].clone(),
                        c.clone(),
                    ));
                }
            }
            acc
        })
        .collect();
    basis.sort_by_key(|e| e.terms.keys().next().cloned());

    // closure under products, within the cutoff space
    let mono_elems: Vec<SuperElement> = monos
        .iter()
        .map(|m| SuperElement::from_monomial(source, m.clone(), Scalar::one()))
        .collect();
    let source_index = MonomialIndex::from_elements(mono_elems.iter());
    let mut inv_span = Span::new(source_index.len().max(1));
    for b in &basis {
        if let Some(v) = source_index.flatten(b) {
            inv_span.insert(v);
        }
    }
    let mut closed = true;
    let mut escaped = 0;
    for (i, b1) in basis.iter().enumerate() {
        for b2 in basis.iter().skip(i) {
            let p = b1.mul(b2);
            if p.is_zero() {
                continue;
            }
            match source_index.flatten(&p) {
                Some(v) => {
                    if !inv_span.contains(&v) {
                        closed = false;
                    }
                }
                None => escaped += 1,
            }
        }
    }
    Ok(InvariantBasis {
        basis,
        closed_under_product: closed,
        products_escaping_cutoff: escaped,
    })
}

/// Certify a quotient presentation: the images of the given basis of the
/// candidate quotient algebra must span exactly the invariant subspace, and
/// the map must be injective on that basis.
pub fn quotient_presentation_check(
    q_basis: &[SuperElement],
    pi: &AlgebraMorphism,
    invariants: &[SuperElement],
) -> Result<bool, AlgebraError> {
    let images = q_basis
        .iter()
        .map(|e| pi.apply(e))
        .collect::<Result<Vec<_>, _>>()?;
    let index = MonomialIndex::from_elements(images.iter().chain(invariants.iter()));
    let dim = index.len().max(1);
    let mut image_span = Span::new(dim);
    for im in &images {
        if let Some(v) = index.flatten(im) {
            image_span.insert(v);
        }
    }
    // injectivity on the basis
    if image_span.dim() != q_basis.len() {
        return Ok(false);
    }
    let mut inv_span = Span::new(dim);
    for e in invariants {
        if let Some(v) = index.flatten(e) {
            inv_span.insert(v);
        }
    }
    Ok(image_span.eq_span(&inv_span))
}
