//! Lie superalgebras given by structure constants over Q[i]: validation of
//! super antisymmetry, parity compatibility, and the super Jacobi identity;
//! brackets of coefficient vectors over a supercommutative algebra.

use crate::algebra::{Algebra, AlgebraError, Parity, SuperElement};
use crate::scalar::Scalar;
use std::fmt;

#[derive(Clone)]
pub struct LieSuperAlgebra {
    pub basis: Vec<(String, Parity)>,
    /// c[i][j][k] = coefficient of e_k in [e_i, e_j].
    pub constants: Vec<Vec<Vec<Scalar>>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LieError {
    Shape,
    Antisymmetry(usize, usize, usize),
    ParityCompat(usize, usize, usize),
    Jacobi(usize, usize, usize),
}

impl fmt::Display for LieError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LieError::Shape => write!(f, "structure constant array has wrong shape"),
            LieError::Antisymmetry(i, j, k) => {
                write!(f, "super antisymmetry fails at c^{k}_({i},{j})")
            }
            LieError::ParityCompat(i, j, k) => {
                write!(f, "parity compatibility fails at c^{k}_({i},{j})")
            }
            LieError::Jacobi(i, j, k) => {
                write!(
                    f,
                    "super Jacobi identity fails on basis triple ({i},{j},{k})"
                )
            }
        }
    }
}

impl std::error::Error for LieError {}

impl LieSuperAlgebra {
    pub fn new(
        basis: Vec<(String, Parity)>,
        constants: Vec<Vec<Vec<Scalar>>>,
    ) -> Result<Self, LieError> {
        let n = basis.len();
        if constants.len() != n
            || constants
                .iter()
                .any(|bi| bi.len() != n || bi.iter().any(|bij| bij.len() != n))
        {
            return Err(LieError::Shape);
        }
        let alg = LieSuperAlgebra { basis, constants };
        alg.validate()?;
        Ok(alg)
    }

    /// Construct without validation (for mutation controls in tests).
    pub fn new_unchecked(basis: Vec<(String, Parity)>, constants: Vec<Vec<Vec<Scalar>>>) -> Self {
        LieSuperAlgebra { basis, constants }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.basis[i].1
    }

    /// Super dimension (even | odd).
    pub fn super_dim(&self) -> (usize, usize) {
        let even = self.basis.iter().filter(|(_, p)| !p.is_odd()).count();
        (even, self.dim() - even)
    }

    pub fn validate(&self) -> Result<(), LieError> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let sign = Scalar::from_int(self.parity(i).koszul(self.parity(j)));
                    let lhs = self.constants[i][j][k].clone();
                    let rhs = -(&sign * &self.constants[j][i][k]);
                    if lhs != rhs {
                        return Err(LieError::Antisymmetry(i, j, k));
                    }
                    if !self.constants[i][j][k].is_zero()
                        && self.parity(k) != self.parity(i).plus(self.parity(j))
                    {
                        return Err(LieError::ParityCompat(i, j, k));
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if !self.jacobi_triple_holds(i, j, k) {
                        return Err(LieError::Jacobi(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    /// Coefficients of [e_i, e_j] in the basis.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &[Scalar] {
        &self.constants[i][j]
    }

    /// Coefficients of [[e_i, e_j], e_k].
    pub fn double_bracket(&self, i: usize, j: usize, k: usize) -> Vec<Scalar> {
        let n = self.dim();
        let mut out = vec![Scalar::zero(); n];
        for m in 0..n {
            let c = &self.constants[i][j][m];
            if c.is_zero() {
                continue;
            }
            for (l, o) in out.iter_mut().enumerate() {
                *o += &(c * &self.constants[m][k][l]);
            }
        }
        out
    }

    /// The graded cyclic Jacobi sum
    /// (-1)^{|i||k|}[[e_i,e_j],e_k] + (-1)^{|j||i|}[[e_j,e_k],e_i]
    /// + (-1)^{|k||j|}[[e_k,e_i],e_j], which must vanish.
    pub fn jacobi_cyclic_sum(&self, i: usize, j: usize, k: usize) -> Vec<Scalar> {
        let n = self.dim();
        let mut acc = vec![Scalar::zero(); n];
        let terms = [
            (i, j, k, self.parity(i).koszul(self.parity(k))),
            (j, k, i, self.parity(j).koszul(self.parity(i))),
            (k, i, j, self.parity(k).koszul(self.parity(j))),
        ];
        for (a, b, c, sign) in terms {
            let db = self.double_bracket(a, b, c);
            let s = Scalar::from_int(sign);
            for (l, x) in db.iter().enumerate() {
                acc[l] += &(&s * x);
            }
        }
        acc
    }

    pub fn jacobi_triple_holds(&self, i: usize, j: usize, k: usize) -> bool {
        self.jacobi_cyclic_sum(i, j, k).iter().all(|c| c.is_zero())
    }

    /// Bracket of coefficient vectors over an algebra, coefficients on the
    /// left: [u^i e_i, w^j e_j] = u^i (-1)^{|e_i||w^j|} w^j c^k_{ij} e_k.
    pub fn bracket_vectors(
        &self,
        u: &[SuperElement],
        w: &[SuperElement],
        algebra: &Algebra,
    ) -> Result<Vec<SuperElement>, AlgebraError> {
        let n = self.dim();
        let mut out = vec![SuperElement::zero(algebra); n];
        for i in 0..n {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if w[j].is_zero() {
                    continue;
                }
                // Koszul sign from moving e_i past w^j.
                let wj = match w[j].parity() {
                    Some(p) => {
                        if self.parity(i).koszul(p) < 0 {
                            w[j].neg()
                        } else {
                            w[j].clone()
                        }
                    }
                    None => {
                        let ev = w[j].homogeneous_part(Parity::Even);
                        let od = w[j].homogeneous_part(Parity::Odd);
                        if self.parity(i).is_odd() {
                            ev.sub(&od)
                        } else {
                            w[j].clone()
                        }
                    }
                };
                let prod = u[i].mul(&wj);
                for (k, o) in out.iter_mut().enumerate() {
                    let c = &self.constants[i][j][k];
                    if !c.is_zero() {
                        *o = o.add(&prod.scale(c));
                    }
                }
            }
        }
        Ok(out)
    }
}

/// The Heisenberg-type Lie superalgebra: basis x, y, z with [x, y] = z and
/// the parity row constraint |x| + |y| + |z| = even.
pub fn heisenberg_lie(px: Parity, py: Parity, pz: Parity) -> Result<LieSuperAlgebra, LieError> {
    if px.plus(py) != pz {
        return Err(LieError::ParityCompat(0, 1, 2));
    }
    let basis = vec![
        ("x".to_string(), px),
        ("y".to_string(), py),
        ("z".to_string(), pz),
    ];
    let n = 3;
    let mut c = vec![vec![vec![Scalar::zero(); n]; n]; n];
    c[0][1][2] = Scalar::one();
    // [y, x] = -(-1)^{|x||y|} z
    c[1][0][2] = -Scalar::from_int(px.koszul(py));
    LieSuperAlgebra::new(basis, c)
}

/// The Abelian odd superalgebra k^{0|n}.
pub fn abelian_odd(n: usize) -> LieSuperAlgebra {
    let basis = (1..=n)
        .map(|j| (format!("e{j}"), Parity::Odd))
        .collect::<Vec<_>>();
    let c = vec![vec![vec![Scalar::zero(); n]; n]; n];
    LieSuperAlgebra::new_unchecked(basis, c)
}

/// Strictly upper-triangular matrices of size d with a row parity signature:
/// basis E_{rs} (r < s) with parity |r| + |s| and the matrix supercommutator
/// bracket. Nilpotent of class d - 1, so Jacobi holds by associativity.
pub fn strict_upper_triangular(signature: &[Parity]) -> LieSuperAlgebra {
    let d = signature.len();
    let mut index = std::collections::BTreeMap::new();
    let mut basis = Vec::new();
    for r in 0..d {
        for s in (r + 1)..d {
            index.insert((r, s), basis.len());
            basis.push((
                format!("E{}{}", r + 1, s + 1),
                signature[r].plus(signature[s]),
            ));
        }
    }
    let n = basis.len();
    let mut c = vec![vec![vec![Scalar::zero(); n]; n]; n];
    for (&(r1, s1), &i) in &index {
        for (&(r2, s2), &j) in &index {
            // [E_{r1 s1}, E_{r2 s2}] = delta_{s1 r2} E_{r1 s2}
            //   - (-1)^{|i||j|} delta_{s2 r1} E_{r2 s1}
            let pi = basis[i].1;
            let pj = basis[j].1;
            if s1 == r2 {
                if let Some(&k) = index.get(&(r1, s2)) {
                    c[i][j][k] += &Scalar::one();
                }
            }
            if s2 == r1 {
                if let Some(&k) = index.get(&(r2, s1)) {
                    c[i][j][k] -= &Scalar::from_int(pi.koszul(pj));
                }
            }
        }
    }
    LieSuperAlgebra::new(basis, c).expect("matrix commutators satisfy Jacobi")
}

/// Rescale each basis vector e_i by a nonzero scalar; a change of basis, so
/// all axioms survive.
pub fn rescale(alg: &LieSuperAlgebra, scales: &[Scalar]) -> LieSuperAlgebra {
    let n = alg.dim();
    assert_eq!(scales.len(), n);
    let mut c = alg.constants.clone();
    // [s_i e_i, s_j e_j] = s_i s_j c^k_{ij} e_k = (s_i s_j / s_k) c^k_{ij} (s_k e_k)
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                c[i][j][k] =
                    &(&(&scales[i] * &scales[j]) * &scales[k].inv()) * &alg.constants[i][j][k];
            }
        }
    }
    LieSuperAlgebra::new_unchecked(alg.basis.clone(), c)
}

/// A two-step nilpotent Lie superalgebra: generators v_1..v_m with given
/// parities, central elements z_1..z_c, and arbitrary super-antisymmetric
/// parity-compatible pairings [v_i, v_j] = sum_k a^k_{ij} z_k. All double
/// brackets vanish, so Jacobi holds.
pub fn two_step_nilpotent(
    gen_parities: &[Parity],
    center_parities: &[Parity],
    pairing: impl Fn(usize, usize, usize) -> Scalar,
) -> LieSuperAlgebra {
    let m = gen_parities.len();
    let cdim = center_parities.len();
    let n = m + cdim;
    let mut basis = Vec::new();
    for (i, p) in gen_parities.iter().enumerate() {
        basis.push((format!("v{}", i + 1), *p));
    }
    for (k, p) in center_parities.iter().enumerate() {
        basis.push((format!("z{}", k + 1), *p));
    }
    let mut c = vec![vec![vec![Scalar::zero(); n]; n]; n];
    for i in 0..m {
        for j in 0..m {
            for k in 0..cdim {
                // only fill parity-compatible slots
                if center_parities[k] != gen_parities[i].plus(gen_parities[j]) {
                    continue;
                }
                if i < j {
                    let a = pairing(i, j, k);
                    c[i][j][m + k] = a.clone();
                    c[j][i][m + k] =
                        -(&Scalar::from_int(gen_parities[i].koszul(gen_parities[j])) * &a);
                } else if i == j && gen_parities[i].is_odd() {
                    // [v, v] is allowed for odd v; must be "symmetric": c_ii free
                    c[i][i][m + k] = pairing(i, i, k);
                }
            }
        }
    }
    LieSuperAlgebra::new(basis, c).expect("two-step nilpotent satisfies Jacobi")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn heisenberg_rows_validate() {
        use Parity::*;
        for (px, py, pz) in [
            (Even, Even, Even),
            (Odd, Odd, Even),
            (Even, Odd, Odd),
            (Odd, Even, Odd),
        ] {
            let g = heisenberg_lie(px, py, pz).unwrap();
            assert_eq!(g.dim(), 3);
            assert_eq!(g.constants[0][1][2], Scalar::one());
        }
        // parity identity violated
        assert!(heisenberg_lie(Even, Even, Odd).is_err());
    }

    #[test]
    fn gl_upper_triangular_is_jacobi_valid() {
        use Parity::*;
        let g = strict_upper_triangular(&[Even, Odd, Even, Odd]);
        assert_eq!(g.dim(), 6);
        g.validate().unwrap();
    }

    #[test]
    fn corrupting_constants_breaks_jacobi() {
        use Parity::*;
        let g = strict_upper_triangular(&[Even, Odd, Even, Odd]);
        let mut c = g.constants.clone();
        // E12*E23 = E13 is one of the products; wreck it
        c[0][3][1] += &Scalar::from_int(7);
        c[3][0][1] -= &Scalar::from_int(7); // keep antisymmetry so only Jacobi breaks
        let bad = LieSuperAlgebra::new_unchecked(g.basis.clone(), c);
        assert!(bad.validate().is_err());
    }

    #[test]
    fn two_step_random_shape() {
        use Parity::*;
        let g = two_step_nilpotent(&[Even, Odd, Odd], &[Even, Odd], |i, j, k| {
            Scalar::from_int(((i + 2 * j + k) % 5) as i64 - 2)
        });
        g.validate().unwrap();
    }

    #[test]
    fn bracket_vectors_koszul_sign() {
        use Parity::*;
        // Clifford row: x, y odd; [p x, q y] = -pq z for odd p, q
        let g = heisenberg_lie(Odd, Odd, Even).unwrap();
        let a = crate::algebra::AlgebraBuilder::new("R")
            .odd("p")
            .odd("q")
            .build()
            .unwrap();
        let p = SuperElement::generator(&a, "p").unwrap();
        let q = SuperElement::generator(&a, "q").unwrap();
        let zero = SuperElement::zero(&a);
        let u = vec![p.clone(), zero.clone(), zero.clone()];
        let w = vec![zero.clone(), q.clone(), zero.clone()];
        let br = g.bracket_vectors(&u, &w, &a).unwrap();
        assert!(br[0].is_zero() && br[1].is_zero());
        assert_eq!(br[2], p.mul(&q).neg());
    }
}
