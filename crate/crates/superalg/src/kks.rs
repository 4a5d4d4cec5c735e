//! The canonical even 2-form attached to a point of the dual space:
//! pairing(v, w) = <f, [v, w]>, its matrix on a basis, super-skewness and
//! evenness, the kernel-equals-isotropy check, and closedness via the
//! Lie-cochain identity.

use crate::algebra::{Algebra, AlgebraError, Parity, SuperElement};
use crate::lie::LieSuperAlgebra;
use crate::linalg::QiMatrix;
use crate::orbit::{MonomialIndex, SolveWindow, TValuedFunctional};
use crate::scalar::Scalar;

pub struct KksMatrix {
    pub base: Algebra,
    pub basis_parities: Vec<Parity>,
    pub entries: Vec<Vec<SuperElement>>,
}

/// <f, [v, w]> for coefficient vectors v, w over the base.
pub fn kks_pairing(
    lie: &LieSuperAlgebra,
    f: &TValuedFunctional,
    v: &[SuperElement],
    w: &[SuperElement],
) -> Result<SuperElement, AlgebraError> {
    let br = lie.bracket_vectors(v, w, &f.base)?;
    Ok(f.pair(lie, &br))
}

/// The full matrix of the pairing on basis pairs: entry (i, j) = sum_k
/// c^k_{ij} f_k.
pub fn kks_matrix(lie: &LieSuperAlgebra, f: &TValuedFunctional) -> KksMatrix {
    let n = lie.dim();
    let mut entries = vec![vec![SuperElement::zero(&f.base); n]; n];
    for (i, row) in entries.iter_mut().enumerate() {
        for (j, slot) in row.iter_mut().enumerate() {
            let mut acc = SuperElement::zero(&f.base);
            for k in 0..n {
                let c = &lie.constants[i][j][k];
                if !c.is_zero() {
                    acc = acc.add(&f.coefficients[k].scale(c));
                }
            }
            *slot = acc;
        }
    }
    KksMatrix {
        base: f.base.clone(),
        basis_parities: (0..n).map(|i| lie.parity(i)).collect(),
        entries,
    }
}

impl KksMatrix {
    /// Super-skewness: entry (j, i) = -(-1)^{|i||j|} entry (i, j).
    pub fn is_super_skew(&self) -> bool {
        let n = self.basis_parities.len();
        for i in 0..n {
            for j in 0..n {
                let sign = self.basis_parities[i].koszul(self.basis_parities[j]);
                let rhs = if sign < 0 {
                    self.entries[i][j].clone()
                } else {
                    self.entries[i][j].neg()
                };
                if self.entries[j][i] != rhs {
                    return false;
                }
            }
        }
        true
    }

    /// Evenness of the form: entry (i, j) is homogeneous of parity |i| + |j|.
    pub fn is_even_form(&self) -> bool {
        let n = self.basis_parities.len();
        for i in 0..n {
            for j in 0..n {
                let e = &self.entries[i][j];
                if e.is_zero() {
                    continue;
                }
                let expected = self.basis_parities[i].plus(self.basis_parities[j]);
                if e.parity() != Some(expected) {
                    return false;
                }
            }
        }
        true
    }
}

/// The module kernel {v : pairing(e_i, v) = 0 for all i} over the base,
/// computed on a bounded monomial window; returns basis vectors of
/// coefficient tuples.
pub fn kks_kernel(
    lie: &LieSuperAlgebra,
    f: &TValuedFunctional,
    window: SolveWindow,
) -> Result<Vec<Vec<SuperElement>>, AlgebraError> {
    let n = lie.dim();
    let base = &f.base;
    let mults = base.enumerate_monomials(window.even_cap, window.unit_window);
    // unknowns: (j, mu); candidate column = (pairing(e_i, mu e_j))_i
    let mut columns: Vec<Vec<SuperElement>> = Vec::new();
    let mut tags: Vec<(usize, usize)> = Vec::new();
    for j in 0..n {
        for (mi, mu) in mults.iter().enumerate() {
            let mut w = vec![SuperElement::zero(base); n];
            w[j] = SuperElement::from_monomial(base, mu.clone(), Scalar::one());
            let mut col = Vec::with_capacity(n);
            for i in 0..n {
                let mut v = vec![SuperElement::zero(base); n];
                v[i] = SuperElement::one(base);
                col.push(kks_pairing(lie, f, &v, &w)?);
            }
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
    let out = kernel
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
        .collect();
    Ok(out)
}

/// Is the module vector `target` a base-algebra combination of the
/// generators? Coefficients range over a bounded monomial window; solutions
/// are verified by substitution.
pub fn module_member(
    base: &Algebra,
    target: &[SuperElement],
    generators: &[Vec<SuperElement>],
    window: SolveWindow,
) -> bool {
    if target.iter().all(|e| e.is_zero()) {
        return true;
    }
    if generators.is_empty() {
        return false;
    }
    let n = target.len();
    let mults = base.enumerate_monomials(window.even_cap, window.unit_window);
    let mut columns: Vec<Vec<SuperElement>> = Vec::new();
    let mut tags: Vec<(usize, usize)> = Vec::new();
    for (r, g) in generators.iter().enumerate() {
        for (mi, mu) in mults.iter().enumerate() {
            let mu_el = SuperElement::from_monomial(base, mu.clone(), Scalar::one());
            columns.push(g.iter().map(|e| mu_el.mul(e)).collect());
            tags.push((r, mi));
        }
    }
    let index = MonomialIndex::from_elements(columns.iter().flatten().chain(target.iter()));
    let Some(flat_target) = index.flatten_vec(target) else {
        return false;
    };
    let mut system = QiMatrix::zero(flat_target.len(), columns.len());
    for (j, col) in columns.iter().enumerate() {
        let flat = index.flatten_vec(col).expect("own monomials");
        for (i, v) in flat.into_iter().enumerate() {
            system.data[i][j] = v;
        }
    }
    let Some(sol) = system.solve(&flat_target) else {
        return false;
    };
    // verify by substitution
    let mut recon = vec![SuperElement::zero(base); n];
    for (j, coeff) in sol.iter().enumerate() {
        if coeff.is_zero() {
            continue;
        }
        let (r, mi) = tags[j];
        let mu_el = SuperElement::from_monomial(base, mults[mi].clone(), coeff.clone());
        for (slot, g) in recon.iter_mut().zip(generators[r].iter()) {
            *slot = slot.add(&mu_el.mul(g));
        }
    }
    recon.iter().zip(target.iter()).all(|(a, b)| a == b)
}

/// Module span equality by mutual membership.
pub fn module_span_eq(
    base: &Algebra,
    _n: usize,
    left: &[Vec<SuperElement>],
    right: &[Vec<SuperElement>],
    window: SolveWindow,
) -> bool {
    left.iter().all(|v| module_member(base, v, right, window))
        && right.iter().all(|v| module_member(base, v, left, window))
}

/// Kernel of the form equals the span of the given isotropy tuples.
pub fn kernel_check(
    lie: &LieSuperAlgebra,
    f: &TValuedFunctional,
    isotropy: &[Vec<SuperElement>],
    window: SolveWindow,
) -> Result<bool, AlgebraError> {
    let kernel = kks_kernel(lie, f, window)?;
    Ok(module_span_eq(
        &f.base,
        lie.dim(),
        &kernel,
        isotropy,
        window,
    ))
}

/// The coordinate form of the closedness of the 2-form: for every basis
/// triple, the graded cyclic sum of <f, [[u, v], w]> vanishes. This is the
/// super Jacobi identity paired with f, so it holds exactly when the
/// structure constants are valid.
pub fn closedness_check(lie: &LieSuperAlgebra, f: &TValuedFunctional) -> bool {
    let n = lie.dim();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let cyc = lie.jacobi_cyclic_sum(i, j, k);
                let mut acc = SuperElement::zero(&f.base);
                for (l, c) in cyc.iter().enumerate() {
                    if !c.is_zero() {
                        acc = acc.add(&f.coefficients[l].scale(c));
                    }
                }
                if !acc.is_zero() {
                    return false;
                }
            }
        }
    }
    true
}
