//! Structure-constant tables of finite-dimensional Lie algebras.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::linalg::{axpy, Matrix};
use crate::scalar::{FieldTag, Scalar};
use crate::LieError;

/// Sparse vector: `(index, coefficient)` pairs sorted by index, no zeros.
pub type SparseVec<F> = Vec<(usize, F)>;

pub fn sparse_from_dense<F: Scalar>(v: &[F]) -> SparseVec<F> {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

pub fn dense_from_sparse<F: Scalar>(v: &[(usize, F)], dim: usize) -> Vec<F> {
    let mut out = vec![F::zero(); dim];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

/// A Lie algebra given by its brackets on a basis.
///
/// Only pairs `i < j` with a nonzero bracket are stored. An optional grading
/// assigns an integer degree to every basis vector; an optional complex
/// structure acts on the span of the degree −1 basis vectors (in basis
/// order); an optional complex unit acts on the whole algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct LieTable<F: Scalar> {
    labels: Vec<String>,
    brackets: BTreeMap<(usize, usize), SparseVec<F>>,
    grading: Option<Vec<i64>>,
    complex_structure: Option<Matrix<F>>,
    unit: Option<Matrix<F>>,
}

impl<F: Scalar> LieTable<F> {
    pub fn new(labels: Vec<String>) -> Self {
        LieTable { labels, brackets: BTreeMap::new(), grading: None, complex_structure: None, unit: None }
    }

    /// Abelian algebra of the given dimension with labels `x0, x1, ...`.
    pub fn abelian(dim: usize) -> Self {
        Self::new((0..dim).map(|i| format!("x{i}")).collect())
    }

    /// Builds a table from a function returning `[b_i, b_j]` for `i < j`.
    pub fn from_fn(labels: Vec<String>, mut bracket: impl FnMut(usize, usize) -> Vec<F>) -> Self {
        let mut t = Self::new(labels);
        let n = t.dim();
        for i in 0..n {
            for j in i + 1..n {
                let v = bracket(i, j);
                t.set_bracket(i, j, &v);
            }
        }
        t
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn field(&self) -> FieldTag {
        F::FIELD
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn set_labels(&mut self, labels: Vec<String>) {
        assert_eq!(labels.len(), self.dim());
        self.labels = labels;
    }

    /// Sets `[b_i, b_j] = value` (and `[b_j, b_i] = −value`).
    pub fn set_bracket(&mut self, i: usize, j: usize, value: &[F]) {
        assert_eq!(value.len(), self.dim());
        if i == j {
            assert!(value.iter().all(Zero::is_zero), "[x, x] must vanish");
            return;
        }
        let (a, b, sign) = if i < j { (i, j, false) } else { (j, i, true) };
        let mut sparse = sparse_from_dense(value);
        if sign {
            for (_, x) in sparse.iter_mut() {
                *x = -x.clone();
            }
        }
        if sparse.is_empty() {
            self.brackets.remove(&(a, b));
        } else {
            self.brackets.insert((a, b), sparse);
        }
    }

    /// `[b_i, b_j]` as a sparse vector.
    pub fn bracket_basis(&self, i: usize, j: usize) -> SparseVec<F> {
        if i == j {
            return Vec::new();
        }
        if i < j {
            self.brackets.get(&(i, j)).cloned().unwrap_or_default()
        } else {
            self.brackets
                .get(&(j, i))
                .map(|v| v.iter().map(|(k, x)| (*k, -x.clone())).collect())
                .unwrap_or_default()
        }
    }

    /// Nonzero stored brackets `(i, j, [b_i, b_j])` with `i < j`.
    pub fn nonzero_brackets(&self) -> impl Iterator<Item = (usize, usize, &SparseVec<F>)> {
        self.brackets.iter().map(|(&(i, j), v)| (i, j, v))
    }

    pub fn bracket(&self, x: &[F], y: &[F]) -> Vec<F> {
        let n = self.dim();
        let mut out = vec![F::zero(); n];
        for (&(i, j), v) in &self.brackets {
            // x_i y_j − x_j y_i
            let c = x[i].mul_ref(&y[j]).sub_ref(&x[j].mul_ref(&y[i]));
            if c.is_zero() {
                continue;
            }
            for (k, a) in v {
                out[*k] = out[*k].add_ref(&c.mul_ref(a));
            }
        }
        out
    }

    /// `[b_i, y]`.
    pub fn bracket_basis_vec(&self, i: usize, y: &[F]) -> Vec<F> {
        let n = self.dim();
        let mut out = vec![F::zero(); n];
        for (j, yj) in y.iter().enumerate() {
            if yj.is_zero() {
                continue;
            }
            for (k, a) in self.bracket_basis(i, j) {
                out[k] = out[k].add_ref(&yj.mul_ref(&a));
            }
        }
        out
    }

    /// Matrix of `ad(b_i)` (columns are images of basis vectors).
    pub fn ad_basis(&self, i: usize) -> Matrix<F> {
        let n = self.dim();
        let mut m = Matrix::zeros(n, n);
        for j in 0..n {
            for (k, a) in self.bracket_basis(i, j) {
                m.set(k, j, a);
            }
        }
        m
    }

    pub fn ad(&self, x: &[F]) -> Matrix<F> {
        let n = self.dim();
        let mut m = Matrix::zeros(n, n);
        for j in 0..n {
            let col = self.bracket_basis_vec(j, x);
            for (k, v) in col.into_iter().enumerate() {
                if !v.is_zero() {
                    m.set(k, j, -v);
                }
            }
        }
        m
    }

    /// `[x, y]` for sparse vectors.
    pub fn bracket_sparse(&self, x: &[(usize, F)], y: &[(usize, F)]) -> SparseVec<F> {
        let mut acc: BTreeMap<usize, F> = BTreeMap::new();
        for (i, a) in x {
            for (j, b) in y {
                let ab = a.mul_ref(b);
                for (k, c) in self.bracket_basis(*i, *j) {
                    let e = acc.entry(k).or_insert_with(F::zero);
                    *e = e.add_ref(&ab.mul_ref(&c));
                }
            }
        }
        acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
    }

    pub fn is_abelian(&self) -> bool {
        self.brackets.is_empty()
    }

    /// Checks antisymmetry-consistent Jacobi on every basis triple.
    pub fn check_jacobi(&self) -> Result<(), LieError> {
        let n = self.dim();
        let apply = |v: &SparseVec<F>, k: usize, out: &mut Vec<F>| {
            for (l, c) in v {
                for (m, d) in self.bracket_basis(*l, k) {
                    out[m] = out[m].add_ref(&c.mul_ref(&d));
                }
            }
        };
        for i in 0..n {
            for j in i + 1..n {
                let ij = self.bracket_basis(i, j);
                for k in j + 1..n {
                    let mut acc = vec![F::zero(); n];
                    apply(&ij, k, &mut acc);
                    apply(&self.bracket_basis(j, k), i, &mut acc);
                    apply(&self.bracket_basis(k, i), j, &mut acc);
                    if acc.iter().any(|x| !x.is_zero()) {
                        return Err(LieError::Jacobi { triple: [i, j, k] });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn grading(&self) -> Option<&[i64]> {
        self.grading.as_deref()
    }

    /// Attaches a grading after checking `[x_p, y_q] ⊆ g_{p+q}`.
    pub fn with_grading(mut self, grading: Vec<i64>) -> Result<Self, LieError> {
        assert_eq!(grading.len(), self.dim());
        for (&(i, j), v) in &self.brackets {
            let d = grading[i] + grading[j];
            if let Some((k, _)) = v.iter().find(|(k, _)| grading[*k] != d) {
                return Err(LieError::Grading { pair: [i, j], component: *k });
            }
        }
        self.grading = Some(grading);
        Ok(self)
    }

    /// Basis indices of degree `p` (empty when ungraded).
    pub fn degree_indices(&self, p: i64) -> Vec<usize> {
        match &self.grading {
            Some(g) => (0..self.dim()).filter(|&i| g[i] == p).collect(),
            None => Vec::new(),
        }
    }

    /// `(min, max)` degree, or `None` for an ungraded or empty table.
    pub fn degree_range(&self) -> Option<(i64, i64)> {
        let g = self.grading.as_ref()?;
        Some((*g.iter().min()?, *g.iter().max()?))
    }

    pub fn complex_structure(&self) -> Option<&Matrix<F>> {
        self.complex_structure.as_ref()
    }

    /// Attaches a complex structure on the degree −1 part.
    pub fn with_complex_structure(mut self, j: Matrix<F>) -> Self {
        let n1 = self.degree_indices(-1).len();
        assert_eq!((j.nrows(), j.ncols()), (n1, n1), "J must act on the degree -1 subspace");
        self.complex_structure = Some(j);
        self
    }

    pub fn unit(&self) -> Option<&Matrix<F>> {
        self.unit.as_ref()
    }

    /// Attaches a complex unit acting on the whole algebra.
    pub fn with_unit(mut self, unit: Matrix<F>) -> Self {
        assert_eq!((unit.nrows(), unit.ncols()), (self.dim(), self.dim()));
        self.unit = Some(unit);
        self
    }

    pub fn clear_extras(mut self) -> Self {
        self.grading = None;
        self.complex_structure = None;
        self.unit = None;
        self
    }

    /// Direct sum of two tables (labels of the second get the given suffix
    /// when they collide). Gradings and units are combined when both exist.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let n = self.dim();
        let mut labels = self.labels.clone();
        for l in &other.labels {
            if labels.contains(l) {
                labels.push(format!("{l}'"));
            } else {
                labels.push(l.clone());
            }
        }
        let mut t = Self::new(labels);
        for (&(i, j), v) in &self.brackets {
            t.brackets.insert((i, j), v.clone());
        }
        for (&(i, j), v) in &other.brackets {
            t.brackets.insert((i + n, j + n), v.iter().map(|(k, x)| (k + n, x.clone())).collect());
        }
        if let (Some(a), Some(b)) = (&self.grading, &other.grading) {
            t.grading = Some(a.iter().chain(b).copied().collect());
        }
        if let (Some(a), Some(b)) = (&self.unit, &other.unit) {
            t.unit = Some(block_diag(a, b));
        }
        if let (Some(a), Some(b), Some(_)) = (&self.complex_structure, &other.complex_structure, &t.grading) {
            // Degree −1 indices of the sum are those of `self` followed by those of `other`.
            t.complex_structure = Some(block_diag(a, b));
        }
        t
    }

    /// Converts coefficients into another exact field.
    pub fn map_field<G: Scalar>(&self, f: impl Fn(&F) -> G) -> LieTable<G> {
        LieTable {
            labels: self.labels.clone(),
            brackets: self
                .brackets
                .iter()
                .map(|(&k, v)| (k, v.iter().map(|(i, x)| (*i, f(x))).filter(|(_, x)| !x.is_zero()).collect()))
                .collect(),
            grading: self.grading.clone(),
            complex_structure: self.complex_structure.as_ref().map(|m| m.map(&f)),
            unit: self.unit.as_ref().map(|m| m.map(&f)),
        }
    }

    /// Structure constants of the subalgebra spanned by `basis`, which must
    /// be closed under the bracket. Labels are `y0, y1, ...` unless given.
    pub fn subalgebra(&self, basis: &[Vec<F>], labels: Option<Vec<String>>) -> Result<Self, LieError> {
        let k = basis.len();
        let mut ib = crate::linalg::IncrementalBasis::new(self.dim());
        for v in basis {
            if ib.try_insert(v).is_none() {
                return Err(LieError::Verification("subalgebra basis is linearly dependent".into()));
            }
        }
        let labels = labels.unwrap_or_else(|| (0..k).map(|i| format!("y{i}")).collect());
        let mut t = Self::new(labels);
        for a in 0..k {
            for b in a + 1..k {
                let br = self.bracket(&basis[a], &basis[b]);
                let c = ib
                    .express(&br)
                    .ok_or_else(|| LieError::Verification(format!("span not closed at pair ({a}, {b})")))?;
                t.set_bracket(a, b, &c);
            }
        }
        Ok(t)
    }

    /// Maps basis vectors through `f` and re-expresses, i.e. the table in a
    /// new basis given by the columns `new_basis` (must be invertible).
    pub fn change_basis(&self, new_basis: &[Vec<F>], labels: Vec<String>) -> Result<Self, LieError> {
        assert_eq!(new_basis.len(), self.dim());
        let mut t = self.subalgebra(new_basis, Some(labels))?;
        t.grading = None;
        Ok(t)
    }

    /// JSON form with exact rational strings.
    pub fn to_json(&self) -> LieTableJson {
        let n = self.dim();
        LieTableJson {
            basis: self.labels.clone(),
            field: F::FIELD,
            brackets: self
                .brackets
                .iter()
                .map(|(&(i, j), v)| (i, j, dense_from_sparse(v, n).iter().map(Scalar::to_exact_string).collect()))
                .collect(),
            grading: self.grading.clone(),
            complex_structure: self.complex_structure.as_ref().map(matrix_strings),
            unit: self.unit.as_ref().map(matrix_strings),
        }
    }

    pub fn from_json(json: &LieTableJson) -> Result<Self, LieError> {
        if json.field != F::FIELD {
            return Err(LieError::Json(format!("table is over {}, expected {}", json.field, F::FIELD)));
        }
        let n = json.basis.len();
        let mut t = Self::new(json.basis.clone());
        for (i, j, coeffs) in &json.brackets {
            if *i >= n || *j >= n || coeffs.len() != n {
                return Err(LieError::Json(format!("bracket entry ({i}, {j}) has wrong shape")));
            }
            let v = parse_vec::<F>(coeffs)?;
            if t.brackets.contains_key(&(*i.min(j), *i.max(j))) {
                return Err(LieError::Json(format!("duplicate bracket entry ({i}, {j})")));
            }
            t.set_bracket(*i, *j, &v);
        }
        if let Some(g) = &json.grading {
            if g.len() != n {
                return Err(LieError::Json("grading length differs from basis length".into()));
            }
            t = t.with_grading(g.clone())?;
        }
        if let Some(j) = &json.complex_structure {
            let m = parse_matrix::<F>(j)?;
            let n1 = t.degree_indices(-1).len();
            if m.nrows() != n1 || m.ncols() != n1 {
                return Err(LieError::Json(format!("J must be {n1}x{n1}")));
            }
            t.complex_structure = Some(m);
        }
        if let Some(u) = &json.unit {
            let m = parse_matrix::<F>(u)?;
            if m.nrows() != n || m.ncols() != n {
                return Err(LieError::Json(format!("I must be {n}x{n}")));
            }
            t.unit = Some(m);
        }
        Ok(t)
    }
}

pub fn block_diag<F: Scalar>(a: &Matrix<F>, b: &Matrix<F>) -> Matrix<F> {
    let (r1, c1) = (a.nrows(), a.ncols());
    Matrix::from_fn(r1 + b.nrows(), c1 + b.ncols(), |i, j| {
        if i < r1 && j < c1 {
            a.get(i, j).clone()
        } else if i >= r1 && j >= c1 {
            b.get(i - r1, j - c1).clone()
        } else {
            F::zero()
        }
    })
}

fn matrix_strings<F: Scalar>(m: &Matrix<F>) -> Vec<Vec<String>> {
    (0..m.nrows()).map(|i| m.row(i).iter().map(Scalar::to_exact_string).collect()).collect()
}

fn parse_vec<F: Scalar>(v: &[String]) -> Result<Vec<F>, LieError> {
    v.iter().map(|s| F::parse_exact(s).map_err(|e| LieError::Json(e.to_string()))).collect()
}

fn parse_matrix<F: Scalar>(rows: &[Vec<String>]) -> Result<Matrix<F>, LieError> {
    let parsed: Vec<Vec<F>> = rows.iter().map(|r| parse_vec(r)).collect::<Result<_, _>>()?;
    let cols = parsed.first().map_or(0, Vec::len);
    if parsed.iter().any(|r| r.len() != cols) {
        return Err(LieError::Json("ragged matrix".into()));
    }
    Ok(if parsed.is_empty() { Matrix::zeros(0, 0) } else { Matrix::from_rows(parsed) })
}

/// Serialized table: `{basis, field, brackets: [[i, j, [coeffs]]], grading?, J?, I?}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LieTableJson {
    pub basis: Vec<String>,
    pub field: FieldTag,
    pub brackets: Vec<(usize, usize, Vec<String>)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grading: Option<Vec<i64>>,
    #[serde(rename = "J", default, skip_serializing_if = "Option::is_none")]
    pub complex_structure: Option<Vec<Vec<String>>>,
    #[serde(rename = "I", default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<Vec<Vec<String>>>,
}

/// Adds `c · v` (sparse) into the dense accumulator.
pub fn add_sparse<F: Scalar>(acc: &mut [F], c: &F, v: &[(usize, F)]) {
    for (k, x) in v {
        acc[*k] = acc[*k].add_ref(&c.mul_ref(x));
    }
}

/// `Σ coeffs[k] · vectors[k]`.
pub fn combine<F: Scalar>(coeffs: &[F], vectors: &[Vec<F>], dim: usize) -> Vec<F> {
    let mut out = vec![F::zero(); dim];
    for (c, v) in coeffs.iter().zip(vectors) {
        axpy(&mut out, c, v);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, Rational};

    fn sl2() -> LieTable<Rational> {
        // basis e, h, f
        let mut t = LieTable::new(vec!["e".into(), "h".into(), "f".into()]);
        t.set_bracket(1, 0, &[int(2), int(0), int(0)]);
        t.set_bracket(1, 2, &[int(0), int(0), int(-2)]);
        t.set_bracket(0, 2, &[int(0), int(1), int(0)]);
        t
    }

    #[test]
    fn brackets_are_antisymmetric() {
        let t = sl2();
        assert_eq!(t.bracket_basis(0, 1), vec![(0, int(-2))]);
        assert_eq!(t.bracket_basis(2, 0), vec![(1, int(-1))]);
        t.check_jacobi().unwrap();
    }

    #[test]
    fn broken_jacobi_is_reported() {
        let mut t = sl2();
        t.set_bracket(1, 0, &[int(3), int(0), int(0)]);
        assert!(matches!(t.check_jacobi(), Err(LieError::Jacobi { .. })));
    }

    #[test]
    fn grading_is_checked() {
        let t = sl2().with_grading(vec![1, 0, -1]).unwrap();
        assert_eq!(t.degree_indices(-1), vec![2]);
        assert!(sl2().with_grading(vec![1, 1, -1]).is_err());
    }

    #[test]
    fn json_round_trip_is_byte_stable() {
        let t = sl2().with_grading(vec![1, 0, -1]).unwrap();
        let s = serde_json::to_string(&t.to_json()).unwrap();
        let back: LieTableJson = serde_json::from_str(&s).unwrap();
        let t2 = LieTable::<Rational>::from_json(&back).unwrap();
        assert_eq!(t, t2);
        assert_eq!(serde_json::to_string(&t2.to_json()).unwrap(), s);
    }
}
