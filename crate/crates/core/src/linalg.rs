//! Exact dense linear algebra: echelon forms, kernels, solves, subspaces.
//!
//! Row reduction over `Q` goes through a fraction-free integer elimination
//! (rows are kept primitive); the plain Gauss–Jordan path is kept for the
//! Gaussian rationals and as an independent route in tests.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::scalar::{common_denominator, Rational, Scalar};

/// Reduced row echelon form: every pivot is `1` and is the only nonzero
/// entry of its column.
#[derive(Clone, Debug, PartialEq)]
pub struct Echelon<F> {
    pub rows: Vec<Vec<F>>,
    pub pivots: Vec<usize>,
    pub ncols: usize,
}

impl<F: Scalar> Echelon<F> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Basis of the right null space `{x : A x = 0}`.
    pub fn kernel(&self) -> Vec<Vec<F>> {
        let mut is_pivot = vec![false; self.ncols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ncols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![F::zero(); self.ncols];
                v[free] = F::one();
                for (row, &p) in self.rows.iter().zip(&self.pivots) {
                    if !row[free].is_zero() {
                        v[p] = -row[free].clone();
                    }
                }
                v
            })
            .collect()
    }
}

/// Plain Gauss–Jordan elimination over any exact field.
pub fn gauss_jordan<F: Scalar>(mut rows: Vec<Vec<F>>, ncols: usize) -> Echelon<F> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = F::one().div_ref(&rows[r][c]);
        for x in rows[r].iter_mut() {
            if !x.is_zero() {
                *x = x.mul_ref(&inv);
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x = x.sub_ref(&factor.mul_ref(y));
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    Echelon { rows, pivots, ncols }
}

fn primitive(row: &mut [BigInt]) {
    let g = row.iter().filter(|x| !x.is_zero()).fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in row.iter_mut() {
            if !x.is_zero() {
                *x = &*x / &g;
            }
        }
    }
}

/// Fraction-free Gauss–Jordan over the integers: rows are cleared of
/// denominators, combined as `a·r − b·p` and divided by their content.
pub fn fraction_free_echelon(rows: Vec<Vec<Rational>>, ncols: usize) -> Echelon<Rational> {
    let mut m: Vec<Vec<BigInt>> = rows
        .into_iter()
        .filter(|row| row.iter().any(|x| !x.is_zero()))
        .map(|row| {
            let d = common_denominator(&row);
            let mut out: Vec<BigInt> = row.iter().map(|q| q.numer() * (&d / q.denom())).collect();
            primitive(&mut out);
            out
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        // Smallest nonzero pivot keeps the integers short.
        let Some(p) = (r..m.len()).filter(|&i| !m[i][c].is_zero()).min_by_key(|&i| m[i][c].abs()) else {
            continue;
        };
        m.swap(r, p);
        let (head, tail) = m.split_at_mut(r);
        let (pivot_row, rest) = tail.split_first_mut().expect("pivot row exists");
        let a = pivot_row[c].clone();
        for row in head.iter_mut().chain(rest.iter_mut()) {
            if row[c].is_zero() {
                continue;
            }
            let g = a.gcd(&row[c]);
            let ma = &a / &g;
            let mb = &row[c] / &g;
            for (x, y) in row.iter_mut().zip(pivot_row.iter()) {
                let scaled = &*x * &ma;
                *x = if y.is_zero() { scaled } else { scaled - y * &mb };
            }
            primitive(row);
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    let rows = m
        .into_iter()
        .zip(&pivots)
        .map(|(row, &p)| {
            let lead = row[p].clone();
            row.into_iter().map(|x| Rational::new(x, lead.clone())).collect()
        })
        .collect();
    Echelon { rows, pivots, ncols }
}

/// Dense row-major matrix.
#[derive(Clone, PartialEq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Scalar> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut list = f.debug_list();
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_exact_string()).collect();
            list.entry(&row);
        }
        list.finish()
    }
}

impl<F: Scalar> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let nrows = rows.len();
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix rows");
        Matrix { rows: nrows, cols, data: rows.into_iter().flatten().collect() }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(n: usize, columns: &[Vec<F>]) -> Self {
        let mut m = Self::zeros(n, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), n);
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: F) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let cur = out.get(i, j).add_ref(&a.mul_ref(b));
                        out.set(i, j, cur);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len());
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.add_ref(b)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.sub_ref(b)).collect(),
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a.mul_ref(c)).collect() }
    }

    /// `self·other − other·self`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn trace(&self) -> F {
        (0..self.rows.min(self.cols)).fold(F::zero(), |acc, i| acc.add_ref(self.get(i, i)))
    }

    pub fn echelon(&self) -> Echelon<F> {
        F::echelon(self.to_rows(), self.cols)
    }

    pub fn rank(&self) -> usize {
        self.echelon().rank()
    }

    pub fn kernel(&self) -> Vec<Vec<F>> {
        self.echelon().kernel()
    }

    /// Some solution of `A x = b`, or `None` when inconsistent.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        assert_eq!(b.len(), self.rows);
        let aug: Vec<Vec<F>> =
            (0..self.rows).map(|i| self.row(i).iter().cloned().chain([b[i].clone()]).collect()).collect();
        let ech = F::echelon(aug, self.cols + 1);
        if ech.pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![F::zero(); self.cols];
        for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
            x[p] = row[self.cols].clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let aug: Vec<Vec<F>> = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend((0..n).map(|j| if i == j { F::one() } else { F::zero() }));
                r
            })
            .collect();
        let ech = F::echelon(aug, 2 * n);
        if ech.rank() < n || ech.pivots[n - 1] >= n {
            return None;
        }
        Some(Matrix::from_rows(ech.rows.iter().map(|r| r[n..].to_vec()).collect()))
    }

    pub fn map<G: Scalar>(&self, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }
}

pub fn dot<F: Scalar>(a: &[F], b: &[F]) -> F {
    a.iter().zip(b).fold(F::zero(), |acc, (x, y)| if x.is_zero() || y.is_zero() { acc } else { acc.add_ref(&x.mul_ref(y)) })
}

pub fn axpy<F: Scalar>(y: &mut [F], a: &F, x: &[F]) {
    if a.is_zero() {
        return;
    }
    for (yi, xi) in y.iter_mut().zip(x) {
        if !xi.is_zero() {
            *yi = yi.add_ref(&a.mul_ref(xi));
        }
    }
}

pub fn is_zero_vec<F: Scalar>(v: &[F]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn scale_vec<F: Scalar>(v: &[F], c: &F) -> Vec<F> {
    v.iter().map(|x| x.mul_ref(c)).collect()
}

/// Reduced basis of the span of `vectors` (rows of the RREF).
pub fn span_basis<F: Scalar>(vectors: &[Vec<F>], dim: usize) -> Vec<Vec<F>> {
    F::echelon(vectors.to_vec(), dim).rows
}

pub fn rank_of<F: Scalar>(vectors: &[Vec<F>], dim: usize) -> usize {
    F::echelon(vectors.to_vec(), dim).rank()
}

/// Intersection of two subspaces given by spanning sets.
pub fn intersection<F: Scalar>(a: &[Vec<F>], b: &[Vec<F>], dim: usize) -> Vec<Vec<F>> {
    let a = span_basis(a, dim);
    let b = span_basis(b, dim);
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    // Solve Σ x_i a_i − Σ y_j b_j = 0.
    let mut columns: Vec<Vec<F>> = a.clone();
    columns.extend(b.iter().map(|v| v.iter().map(|x| -x.clone()).collect()));
    let m = Matrix::from_columns(dim, &columns);
    let coeffs = m.kernel();
    let vecs: Vec<Vec<F>> = coeffs
        .iter()
        .map(|c| {
            let mut v = vec![F::zero(); dim];
            for (ci, ai) in c.iter().zip(&a) {
                axpy(&mut v, ci, ai);
            }
            v
        })
        .collect();
    span_basis(&vecs, dim)
}

/// Coordinates of `v` in terms of the (independent) vectors `basis`.
pub fn coordinates<F: Scalar>(basis: &[Vec<F>], v: &[F]) -> Option<Vec<F>> {
    if basis.is_empty() {
        return is_zero_vec(v).then(Vec::new);
    }
    Matrix::from_columns(v.len(), basis).solve(v)
}

/// Vectors orthogonal to `subspace` with respect to the bilinear form `form`.
pub fn orthogonal_complement<F: Scalar>(form: &Matrix<F>, subspace: &[Vec<F>]) -> Vec<Vec<F>> {
    let n = form.nrows();
    if subspace.is_empty() {
        return (0..n).map(|i| unit(n, i)).collect();
    }
    let rows: Vec<Vec<F>> = subspace.iter().map(|v| form.transpose().mul_vec(v)).collect();
    F::echelon(rows, n).kernel()
}

pub fn unit<F: Scalar>(n: usize, i: usize) -> Vec<F> {
    let mut v = vec![F::zero(); n];
    v[i] = F::one();
    v
}

/// Incrementally built basis that remembers how each reduced row is made
/// from the accepted input vectors, so that coordinates with respect to the
/// accepted vectors can be read off.
#[derive(Clone, Debug)]
pub struct IncrementalBasis<F> {
    dim: usize,
    rows: Vec<Vec<F>>,
    pivots: Vec<usize>,
    combos: Vec<Vec<F>>,
    accepted: usize,
}

impl<F: Scalar> IncrementalBasis<F> {
    pub fn new(dim: usize) -> Self {
        IncrementalBasis { dim, rows: Vec::new(), pivots: Vec::new(), combos: Vec::new(), accepted: 0 }
    }

    pub fn len(&self) -> usize {
        self.accepted
    }

    pub fn is_empty(&self) -> bool {
        self.accepted == 0
    }

    /// Reduces `v` against the current rows; returns the remainder and the
    /// combination of accepted vectors that was subtracted.
    fn reduce(&self, v: &[F]) -> (Vec<F>, Vec<F>) {
        let mut rem = v.to_vec();
        let mut combo = vec![F::zero(); self.accepted];
        for ((row, &p), c) in self.rows.iter().zip(&self.pivots).zip(&self.combos) {
            if rem[p].is_zero() {
                continue;
            }
            let f = rem[p].clone();
            axpy(&mut rem, &-f.clone(), row);
            for (k, ck) in c.iter().enumerate() {
                if !ck.is_zero() {
                    combo[k] = combo[k].add_ref(&f.mul_ref(ck));
                }
            }
        }
        (rem, combo)
    }

    /// Adds `v` if independent; returns its index among the accepted vectors.
    pub fn try_insert(&mut self, v: &[F]) -> Option<usize> {
        assert_eq!(v.len(), self.dim);
        let (mut rem, combo) = self.reduce(v);
        let p = rem.iter().position(|x| !x.is_zero())?;
        let inv = F::one().div_ref(&rem[p]);
        for x in rem.iter_mut() {
            *x = x.mul_ref(&inv);
        }
        // new row = (v − Σ combo_k a_k) / rem[p]
        let idx = self.accepted;
        self.accepted += 1;
        for c in self.combos.iter_mut() {
            c.push(F::zero());
        }
        let mut new_combo: Vec<F> = combo.iter().map(|c| -c.mul_ref(&inv)).collect();
        new_combo.push(inv);
        // Keep earlier rows reduced at the new pivot.
        for (row, c) in self.rows.iter_mut().zip(self.combos.iter_mut()) {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            axpy(row, &-f.clone(), &rem);
            axpy(c, &-f, &new_combo);
        }
        self.rows.push(rem);
        self.pivots.push(p);
        self.combos.push(new_combo);
        Some(idx)
    }

    /// Coordinates of `v` with respect to the accepted vectors, if in the span.
    pub fn express(&self, v: &[F]) -> Option<Vec<F>> {
        let (rem, combo) = self.reduce(v);
        is_zero_vec(&rem).then_some(combo)
    }

    pub fn contains(&self, v: &[F]) -> bool {
        is_zero_vec(&self.reduce(v).0)
    }
}

/// Inertia `(positive, negative, zero)` of a symmetric rational matrix,
/// computed by symmetric Gaussian elimination (congruence).
pub fn signature(form: &Matrix<Rational>) -> (usize, usize, usize) {
    let n = form.nrows();
    let mut a = form.clone();
    let mut active: Vec<usize> = (0..n).collect();
    let (mut pos, mut neg) = (0, 0);
    while !active.is_empty() {
        let diag = active.iter().copied().find(|&i| !a.get(i, i).is_zero());
        let pivot = match diag {
            Some(i) => i,
            None => {
                // All diagonal entries vanish: combine two coordinates to
                // create a nonzero diagonal entry, or stop if the block is zero.
                let pair = active
                    .iter()
                    .flat_map(|&i| active.iter().map(move |&j| (i, j)))
                    .find(|&(i, j)| i != j && !a.get(i, j).is_zero());
                let Some((i, j)) = pair else { break };
                // x_i += x_j  (row and column operation)
                for k in 0..n {
                    let v = a.get(i, k) + a.get(j, k);
                    a.set(i, k, v);
                }
                for k in 0..n {
                    let v = a.get(k, i) + a.get(k, j);
                    a.set(k, i, v);
                }
                i
            }
        };
        let d = a.get(pivot, pivot).clone();
        if d.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        active.retain(|&k| k != pivot);
        for &k in &active {
            let f = a.get(k, pivot) / &d;
            if f.is_zero() {
                continue;
            }
            for &l in &active {
                let v = a.get(k, l) - &f * a.get(pivot, l);
                a.set(k, l, v);
            }
        }
    }
    (pos, neg, n - pos - neg)
}
