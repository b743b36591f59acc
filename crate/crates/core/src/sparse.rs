//! Column-sparse matrices for module actions.

use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// Sparse matrix stored by columns: `cols[j]` is the image of basis vector `j`.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix<F> {
    nrows: usize,
    cols: Vec<Vec<(usize, F)>>,
}

fn add_into<F: Scalar>(acc: &mut Vec<(usize, F)>, c: &F, v: &[(usize, F)]) {
    // Merge two sorted sparse vectors.
    let mut out = Vec::with_capacity(acc.len() + v.len());
    let (mut a, mut b) = (0, 0);
    while a < acc.len() || b < v.len() {
        match (acc.get(a), v.get(b)) {
            (Some((i, x)), Some((j, y))) if i == j => {
                let s = x.add_ref(&c.mul_ref(y));
                if !s.is_zero() {
                    out.push((*i, s));
                }
                a += 1;
                b += 1;
            }
            (Some((i, x)), Some((j, _))) if i < j => {
                out.push((*i, x.clone()));
                a += 1;
            }
            (Some((i, x)), None) => {
                out.push((*i, x.clone()));
                a += 1;
            }
            (_, Some((j, y))) => {
                let s = c.mul_ref(y);
                if !s.is_zero() {
                    out.push((*j, s));
                }
                b += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    *acc = out;
}

impl<F: Scalar> SparseMatrix<F> {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        SparseMatrix { nrows, cols: vec![Vec::new(); ncols] }
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrix { nrows: n, cols: (0..n).map(|i| vec![(i, F::one())]).collect() }
    }

    pub fn diagonal(d: &[F]) -> Self {
        SparseMatrix {
            nrows: d.len(),
            cols: d.iter().enumerate().map(|(i, x)| if x.is_zero() { vec![] } else { vec![(i, x.clone())] }).collect(),
        }
    }

    /// Columns must be sorted by row index and free of zeros.
    pub fn from_columns(nrows: usize, cols: Vec<Vec<(usize, F)>>) -> Self {
        debug_assert!(cols.iter().all(|c| c.windows(2).all(|w| w[0].0 < w[1].0)));
        SparseMatrix { nrows, cols }
    }

    pub fn from_dense(m: &Matrix<F>) -> Self {
        SparseMatrix {
            nrows: m.nrows(),
            cols: (0..m.ncols())
                .map(|j| (0..m.nrows()).filter(|&i| !m.get(i, j).is_zero()).map(|i| (i, m.get(i, j).clone())).collect())
                .collect(),
        }
    }

    pub fn to_dense(&self) -> Matrix<F> {
        let mut m = Matrix::zeros(self.nrows, self.ncols());
        for (j, col) in self.cols.iter().enumerate() {
            for (i, x) in col {
                m.set(*i, j, x.clone());
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, j: usize) -> &[(usize, F)] {
        &self.cols[j]
    }

    pub fn get(&self, i: usize, j: usize) -> F {
        self.cols[j].iter().find(|(r, _)| *r == i).map_or_else(F::zero, |(_, x)| x.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }

    pub fn apply(&self, v: &[F]) -> Vec<F> {
        let mut out = vec![F::zero(); self.nrows];
        for (j, vj) in v.iter().enumerate() {
            if vj.is_zero() {
                continue;
            }
            for (i, x) in &self.cols[j] {
                out[*i] = out[*i].add_ref(&vj.mul_ref(x));
            }
        }
        out
    }

    /// Image of a sparse vector.
    pub fn apply_sparse(&self, v: &[(usize, F)]) -> Vec<(usize, F)> {
        let mut out = Vec::new();
        for (j, c) in v {
            add_into(&mut out, c, &self.cols[*j]);
        }
        out
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.ncols(), other.nrows);
        SparseMatrix { nrows: self.nrows, cols: other.cols.iter().map(|c| self.apply_sparse(c)).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.add_scaled(&F::one(), other)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add_scaled(&-F::one(), other)
    }

    /// `self + c · other`.
    pub fn add_scaled(&self, c: &F, other: &Self) -> Self {
        assert_eq!((self.nrows, self.ncols()), (other.nrows, other.ncols()));
        let mut cols = self.cols.clone();
        for (acc, col) in cols.iter_mut().zip(&other.cols) {
            add_into(acc, c, col);
        }
        SparseMatrix { nrows: self.nrows, cols }
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zeros(self.nrows, self.ncols());
        }
        SparseMatrix {
            nrows: self.nrows,
            cols: self.cols.iter().map(|col| col.iter().map(|(i, x)| (*i, x.mul_ref(c))).collect()).collect(),
        }
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.compose(other).sub(&other.compose(self))
    }

    pub fn map<G: Scalar>(&self, f: impl Fn(&F) -> G) -> SparseMatrix<G> {
        SparseMatrix {
            nrows: self.nrows,
            cols: self
                .cols
                .iter()
                .map(|col| col.iter().map(|(i, x)| (*i, f(x))).filter(|(_, x)| !x.is_zero()).collect())
                .collect(),
        }
    }

    /// Entries in column-major order, for flattening into a vector.
    pub fn flatten(&self) -> Vec<F> {
        let n = self.nrows;
        let mut out = vec![F::zero(); n * self.ncols()];
        for (j, col) in self.cols.iter().enumerate() {
            for (i, x) in col {
                out[j * n + i] = x.clone();
            }
        }
        out
    }

    pub fn trace(&self) -> F {
        self.cols.iter().enumerate().fold(F::zero(), |acc, (j, col)| {
            col.iter().find(|(i, _)| *i == j).map_or(acc.clone(), |(_, x)| acc.add_ref(x))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    #[test]
    fn compose_matches_dense() {
        let a = Matrix::from_rows(vec![vec![int(1), int(2)], vec![int(0), int(-1)]]);
        let b = Matrix::from_rows(vec![vec![int(3), int(0)], vec![int(1), int(1)]]);
        let sa = SparseMatrix::from_dense(&a);
        let sb = SparseMatrix::from_dense(&b);
        assert_eq!(sa.compose(&sb).to_dense(), a.mul(&b));
        assert_eq!(sa.commutator(&sb).to_dense(), a.commutator(&b));
        assert!(sa.sub(&sa).is_zero());
        assert_eq!(sa.trace(), int(0));
    }
}
