//! Even supermatrices over a presented algebra: a parity signature on rows
//! and columns, entries homogeneous of parity |row| + |col|. Multiplication
//! and exact inversion at the level of points with coefficients in a test
//! algebra.

use crate::algebra::{Algebra, AlgebraError, Parity, SuperElement};
use std::fmt;
use std::sync::Arc;

#[derive(Clone)]
pub struct SuperMatrix {
    pub algebra: Algebra,
    pub row_parities: Vec<Parity>,
    pub col_parities: Vec<Parity>,
    pub entries: Vec<Vec<SuperElement>>,
}

impl SuperMatrix {
    /// Build an even matrix; every entry must be homogeneous of parity
    /// |row| + |col| (or zero).
    pub fn new(
        algebra: &Algebra,
        row_parities: Vec<Parity>,
        col_parities: Vec<Parity>,
        entries: Vec<Vec<SuperElement>>,
    ) -> Result<Self, AlgebraError> {
        if entries.len() != row_parities.len()
            || entries.iter().any(|r| r.len() != col_parities.len())
        {
            return Err(AlgebraError::ParityMismatch("matrix shape".into()));
        }
        for (i, row) in entries.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                if !Arc::ptr_eq(&e.algebra, algebra) {
                    return Err(AlgebraError::MixedAlgebras);
                }
                let expected = row_parities[i].plus(col_parities[j]);
                match e.parity() {
                    Some(p) if p == expected || e.is_zero() => {}
                    _ => {
                        return Err(AlgebraError::ParityMismatch(format!(
                            "entry ({i},{j}) must be {expected}"
                        )))
                    }
                }
            }
        }
        Ok(SuperMatrix {
            algebra: algebra.clone(),
            row_parities,
            col_parities,
            entries,
        })
    }

    pub fn identity(algebra: &Algebra, parities: Vec<Parity>) -> Self {
        let n = parities.len();
        let entries = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            SuperElement::one(algebra)
                        } else {
                            SuperElement::zero(algebra)
                        }
                    })
                    .collect()
            })
            .collect();
        SuperMatrix {
            algebra: algebra.clone(),
            row_parities: parities.clone(),
            col_parities: parities,
            entries,
        }
    }

    pub fn mul(&self, other: &SuperMatrix) -> Result<SuperMatrix, AlgebraError> {
        if self.col_parities != other.row_parities {
            return Err(AlgebraError::ParityMismatch("matrix product shapes".into()));
        }
        let rows = self.row_parities.len();
        let cols = other.col_parities.len();
        let inner = self.col_parities.len();
        let mut entries = vec![vec![SuperElement::zero(&self.algebra); cols]; rows];
        for i in 0..rows {
            for j in 0..cols {
                let mut acc = SuperElement::zero(&self.algebra);
                for k in 0..inner {
                    acc = acc.add(&self.entries[i][k].mul(&other.entries[k][j]));
                }
                entries[i][j] = acc;
            }
        }
        SuperMatrix::new(
            &self.algebra,
            self.row_parities.clone(),
            other.col_parities.clone(),
            entries,
        )
    }

    /// Exact inverse by Gauss-Jordan elimination. Pivots must be invertible
    /// after same-parity row swaps; otherwise the reduction is singular.
    pub fn inverse(&self) -> Result<SuperMatrix, AlgebraError> {
        if self.row_parities != self.col_parities {
            return Err(AlgebraError::ParityMismatch("inverse of non-square".into()));
        }
        let n = self.row_parities.len();
        let mut a = self.entries.clone();
        let mut b = SuperMatrix::identity(&self.algebra, self.row_parities.clone()).entries;
        for col in 0..n {
            // find a pivot row of the same parity with invertible entry
            let pivot = (col..n).find(|&r| {
                self.row_parities[r] == self.row_parities[col] && a[r][col].invert().is_ok()
            });
            let Some(p) = pivot else {
                return Err(AlgebraError::NotAUnit);
            };
            a.swap(col, p);
            b.swap(col, p);
            let inv = a[col][col].invert()?;
            for j in 0..n {
                a[col][j] = inv.mul(&a[col][j]);
                b[col][j] = inv.mul(&b[col][j]);
            }
            for r in 0..n {
                if r != col && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    for j in 0..n {
                        a[r][j] = a[r][j].sub(&f.mul(&a[col][j]));
                        b[r][j] = b[r][j].sub(&f.mul(&b[col][j]));
                    }
                }
            }
        }
        SuperMatrix::new(
            &self.algebra,
            self.row_parities.clone(),
            self.col_parities.clone(),
            b,
        )
    }

    pub fn eq_entries(&self, other: &SuperMatrix) -> bool {
        self.entries == other.entries
    }
}

impl fmt::Display for SuperMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for row in &self.entries {
            write!(f, "  [")?;
            for (j, e) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{e}")?;
            }
            writeln!(f, "]")?;
        }
        write!(f, "]")
    }
}
