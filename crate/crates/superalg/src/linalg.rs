//! Exact linear algebra over Q[i]: row reduction, rank, kernels, solving,
//! and span comparison. Everything is dense; the problem sizes here are the
//! monomial bases of desk-scale algebras.

use crate::scalar::Scalar;

#[derive(Clone, Debug)]
pub struct QiMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<Scalar>>,
}

impl QiMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        QiMatrix {
            rows,
            cols,
            data: vec![vec![Scalar::zero(); cols]; rows],
        }
    }

    pub fn from_rows(data: Vec<Vec<Scalar>>) -> Self {
        let rows = data.len();
        let cols = data.first().map(|r| r.len()).unwrap_or(0);
        assert!(data.iter().all(|r| r.len() == cols));
        QiMatrix { rows, cols, data }
    }

    /// Reduced row echelon form; returns pivot column per pivot row.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.data[i][c].is_zero()) else {
                continue;
            };
            self.data.swap(r, p);
            let inv = self.data[r][c].inv();
            for j in c..self.cols {
                self.data[r][j] = &self.data[r][j] * &inv;
            }
            for i in 0..self.rows {
                if i != r && !self.data[i][c].is_zero() {
                    let factor = self.data[i][c].clone();
                    for j in c..self.cols {
                        let sub = &factor * &self.data[r][j];
                        self.data[i][j] -= &sub;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Indices of a maximal linearly independent subset of rows, found by
    /// incremental elimination in row order.
    pub fn independent_rows(&self) -> Vec<usize> {
        let mut basis: Vec<Vec<Scalar>> = Vec::new();
        let mut witness = Vec::new();
        for (i, row) in self.data.iter().enumerate() {
            let mut v = row.clone();
            reduce_against(&mut v, &basis);
            if v.iter().any(|c| !c.is_zero()) {
                normalize_lead(&mut v);
                basis.push(v);
                basis.sort_by_key(lead_col);
                witness.push(i);
            }
        }
        witness
    }

    /// Basis of the right kernel {v : M v = 0}.
    pub fn right_kernel(&self) -> Vec<Vec<Scalar>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        let mut kernel = Vec::new();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![Scalar::zero(); self.cols];
            v[free] = Scalar::one();
            for (pr, &pc) in pivots.iter().enumerate() {
                v[pc] = -m.data[pr][free].clone();
            }
            kernel.push(v);
        }
        kernel
    }

    pub fn transpose(&self) -> QiMatrix {
        let mut t = QiMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j][i] = self.data[i][j].clone();
            }
        }
        t
    }

    /// Solve M x = b; returns one solution if consistent.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = QiMatrix::zero(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.data[i][j] = self.data[i][j].clone();
            }
            aug.data[i][self.cols] = b[i].clone();
        }
        let pivots = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![Scalar::zero(); self.cols];
        for (pr, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.data[pr][self.cols].clone();
        }
        Some(x)
    }
}

fn lead_col(v: &Vec<Scalar>) -> usize {
    v.iter().position(|c| !c.is_zero()).unwrap_or(v.len())
}

fn normalize_lead(v: &mut [Scalar]) {
    if let Some(p) = v.iter().position(|c| !c.is_zero()) {
        let inv = v[p].inv();
        for c in v.iter_mut() {
            *c = &*c * &inv;
        }
    }
}

fn reduce_against(v: &mut Vec<Scalar>, basis: &[Vec<Scalar>]) {
    for b in basis {
        let p = lead_col(b);
        if p < v.len() && !v[p].is_zero() {
            let factor = v[p].clone();
            for (x, y) in v.iter_mut().zip(b.iter()) {
                let sub = &factor * y;
                *x -= &sub;
            }
        }
    }
}

/// Row-space spanned by vectors, in reduced form; supports membership tests
/// and span equality.
#[derive(Clone, Debug)]
pub struct Span {
    pub dim_cols: usize,
    basis: Vec<Vec<Scalar>>,
}

impl Span {
    pub fn new(dim_cols: usize) -> Self {
        Span {
            dim_cols,
            basis: Vec::new(),
        }
    }

    pub fn from_vectors(dim_cols: usize, vectors: &[Vec<Scalar>]) -> Self {
        let mut s = Span::new(dim_cols);
        for v in vectors {
            s.insert(v.clone());
        }
        s
    }

    /// Insert a vector; keeps the basis in reduced echelon form (distinct
    /// pivot columns, zeros above and below each pivot). Returns whether the
    /// span grew.
    pub fn insert(&mut self, mut v: Vec<Scalar>) -> bool {
        assert_eq!(v.len(), self.dim_cols);
        reduce_against(&mut v, &self.basis);
        if v.iter().all(|c| c.is_zero()) {
            return false;
        }
        normalize_lead(&mut v);
        let p = lead_col(&v);
        for b in self.basis.iter_mut() {
            if !b[p].is_zero() {
                let factor = b[p].clone();
                for (x, y) in b.iter_mut().zip(v.iter()) {
                    let sub = &factor * y;
                    *x -= &sub;
                }
            }
        }
        self.basis.push(v);
        self.basis.sort_by_key(lead_col);
        true
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        let mut w = v.to_vec();
        reduce_against(&mut w, &self.basis);
        w.iter().all(|c| c.is_zero())
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn eq_span(&self, other: &Span) -> bool {
        self.dim() == other.dim() && other.basis.iter().all(|v| self.contains(v))
    }
}
