//! Chevalley basis of the split semisimple Lie algebra of a Cartan matrix.
//!
//! Root vectors are built inductively inside a faithful module: for a
//! non-simple positive root `ξ` take the least `i` with `α = ξ − α_i` a root
//! and `p` maximal with `α − pα_i` a root, then
//! `e_ξ = [e_i, e_α]/(p+1)` and `e_{−ξ} = −[f_i, e_{−α}]/(p+1)`.
//! The same recipe gives the action of every basis element on any module.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::lie::module::{realize_module, ModuleRealization};
use crate::lie::roots::{RootSystem, Weight};
use crate::lie::table::LieTable;
use crate::linalg::Matrix;
use crate::scalar::{int, Rational};
use crate::sparse::SparseMatrix;
use crate::LieError;

/// How a non-simple positive root vector is obtained from lower ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecipeStep {
    pub root: usize,
    pub simple: usize,
    pub from: usize,
    pub p: i64,
}

#[derive(Clone, Debug)]
pub struct ChevalleyAlgebra {
    rs: RootSystem,
    table: LieTable<Rational>,
    recipe: Vec<RecipeStep>,
    root_index: HashMap<Vec<i64>, usize>,
}

/// Label of a root vector, e.g. `E(1,0)` or `F(1,1)`.
pub fn root_label(root: &[i64]) -> String {
    let positive = root.iter().any(|&c| c > 0);
    let coords: Vec<String> = root.iter().map(|c| c.abs().to_string()).collect();
    format!("{}({})", if positive { "E" } else { "F" }, coords.join(","))
}

fn recipe_for(rs: &RootSystem) -> Vec<RecipeStep> {
    let r = rs.rank();
    let index: HashMap<&Vec<i64>, usize> = rs.positive_roots().iter().enumerate().map(|(k, a)| (a, k)).collect();
    let mut out = Vec::new();
    for (k, xi) in rs.positive_roots().iter().enumerate().skip(r) {
        let (i, alpha) = (0..r)
            .find_map(|i| {
                let mut a = xi.clone();
                a[i] -= 1;
                rs.is_root(&a).then_some((i, a))
            })
            .expect("a non-simple positive root has a simple predecessor");
        let mut p = 0;
        loop {
            let mut b = alpha.clone();
            b[i] -= p + 1;
            if !rs.is_root(&b) {
                break;
            }
            p += 1;
        }
        out.push(RecipeStep { root: k, simple: i, from: index[&alpha], p });
    }
    out
}

/// Faithful module: per Dynkin component, a fundamental module of least dimension.
pub fn faithful_module(rs: &RootSystem) -> Result<ModuleRealization, LieError> {
    let r = rs.rank();
    let mut total: Option<ModuleRealization> = None;
    for comp in rs.components() {
        let mut best: Option<(num_bigint::BigInt, Weight)> = None;
        for &i in comp {
            let w = Weight((0..r).map(|j| i64::from(i == j)).collect());
            let d = rs.weyl_dimension(&w)?;
            if best.as_ref().is_none_or(|(bd, _)| d < *bd) {
                best = Some((d, w));
            }
        }
        let (_, w) = best.expect("nonempty component");
        let m = realize_module(rs, &w, usize::MAX)?;
        total = Some(match total {
            None => m,
            Some(t) => t.direct_sum(&m),
        });
    }
    Ok(total.expect("at least one component"))
}

impl ChevalleyAlgebra {
    pub fn new(rs: &RootSystem) -> Result<Self, LieError> {
        let recipe = recipe_for(rs);
        let module = faithful_module(rs)?;
        let npos = rs.positive_roots().len();
        let r = rs.rank();
        let mut root_index = HashMap::new();
        for (k, a) in rs.positive_roots().iter().enumerate() {
            root_index.insert(a.clone(), k);
            root_index.insert(a.iter().map(|c| -c).collect(), npos + r + k);
        }
        let mut alg = ChevalleyAlgebra { rs: rs.clone(), table: LieTable::new(Vec::new()), recipe, root_index };
        let mats = alg.represent(&module);
        alg.table = alg.table_from_matrices(&mats)?;
        alg.verify()?;
        Ok(alg)
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn table(&self) -> &LieTable<Rational> {
        &self.table
    }

    pub fn into_table(self) -> LieTable<Rational> {
        self.table
    }

    pub fn recipe(&self) -> &[RecipeStep] {
        &self.recipe
    }

    pub fn dim(&self) -> usize {
        self.table.dim()
    }

    pub fn num_positive(&self) -> usize {
        self.rs.positive_roots().len()
    }

    /// Basis index of `H_i`.
    pub fn cartan_index(&self, i: usize) -> usize {
        self.num_positive() + i
    }

    /// Basis index of the root vector of a root (simple-root coordinates).
    pub fn root_index(&self, root: &[i64]) -> Option<usize> {
        self.root_index.get(root).copied()
    }

    /// Root of a basis vector, or `None` for Cartan elements.
    pub fn root_of(&self, k: usize) -> Option<Vec<i64>> {
        let npos = self.num_positive();
        let r = self.rs.rank();
        if k < npos {
            Some(self.rs.positive_roots()[k].clone())
        } else if k < npos + r {
            None
        } else {
            Some(self.rs.positive_roots()[k - npos - r].iter().map(|c| -c).collect())
        }
    }

    /// Matrices of all basis elements acting on a module, in basis order.
    pub fn represent(&self, m: &ModuleRealization) -> Vec<SparseMatrix<Rational>> {
        let npos = self.num_positive();
        let r = self.rs.rank();
        let n = m.dim();
        let mut pos: Vec<SparseMatrix<Rational>> = vec![SparseMatrix::zeros(n, n); npos];
        let mut neg: Vec<SparseMatrix<Rational>> = vec![SparseMatrix::zeros(n, n); npos];
        for i in 0..r {
            pos[i] = m.e[i].clone();
            neg[i] = m.f[i].clone();
        }
        for step in &self.recipe {
            let c = Rational::one() / int(step.p + 1);
            pos[step.root] = m.e[step.simple].commutator(&pos[step.from]).scale(&c);
            neg[step.root] = m.f[step.simple].commutator(&neg[step.from]).scale(&-c);
        }
        let mut out = pos;
        out.extend(m.h.iter().cloned());
        out.extend(neg);
        out
    }

    /// Action of a general element (coordinates in the Chevalley basis).
    pub fn module_action(&self, mats: &[SparseMatrix<Rational>], x: &[Rational]) -> SparseMatrix<Rational> {
        let n = mats.first().map_or(0, SparseMatrix::nrows);
        x.iter()
            .zip(mats)
            .filter(|(c, _)| !c.is_zero())
            .fold(SparseMatrix::zeros(n, n), |acc, (c, m)| acc.add_scaled(c, m))
    }

    /// Coroot `h_ξ` in the `H_i` basis: coefficients `x_i d_i / d_ξ`.
    pub fn coroot(&self, root: &[i64]) -> Vec<Rational> {
        let d = self.rs.inner_int(root, root);
        root.iter().zip(self.rs.simple_lengths()).map(|(&x, di)| int(x) * di / &d).collect()
    }

    fn table_from_matrices(&self, mats: &[SparseMatrix<Rational>]) -> Result<LieTable<Rational>, LieError> {
        let npos = self.num_positive();
        let r = self.rs.rank();
        let dim = 2 * npos + r;
        let labels: Vec<String> = (0..dim)
            .map(|k| match self.root_of(k) {
                Some(a) => root_label(&a),
                None => format!("H{}", k - npos + 1),
            })
            .collect();
        // The H_i act diagonally; coordinates of a diagonal matrix in their span.
        let diag_rows: Vec<Vec<Rational>> =
            (0..mats[npos].nrows()).map(|s| (0..r).map(|i| mats[npos + i].get(s, s)).collect()).collect();
        let hsolve = Matrix::from_rows(diag_rows);
        let c = self.rs.cartan_matrix();
        let mut table = LieTable::new(labels);
        for a in 0..dim {
            for b in a + 1..dim {
                let mut v = vec![Rational::zero(); dim];
                match (self.root_of(a), self.root_of(b)) {
                    (None, None) => continue,
                    (None, Some(beta)) | (Some(beta), None) => {
                        let (h, e) = if a >= npos && a < npos + r { (a - npos, b) } else { (b - npos, a) };
                        let val: i64 = (0..r).map(|j| c[h][j] * beta[j]).sum();
                        v[e] = int(if e == b { val } else { -val });
                    }
                    (Some(x), Some(y)) => {
                        let sum: Vec<i64> = x.iter().zip(&y).map(|(p, q)| p + q).collect();
                        let com = mats[a].commutator(&mats[b]);
                        if sum.iter().all(|&s| s == 0) {
                            let diag: Vec<Rational> = (0..com.nrows()).map(|s| com.get(s, s)).collect();
                            let h = hsolve.solve(&diag).ok_or_else(|| {
                                LieError::Verification(format!("[{a}, {b}] is not in the Cartan subalgebra"))
                            })?;
                            for i in 0..r {
                                v[npos + i] = h[i].clone();
                            }
                        } else if let Some(k) = self.root_index(&sum) {
                            v[k] = ratio(&com, &mats[k]).ok_or_else(|| {
                                LieError::Verification(format!("[{a}, {b}] is not proportional to its root vector"))
                            })?;
                        } else if !com.is_zero() {
                            return Err(LieError::Verification(format!("[{a}, {b}] should vanish")));
                        }
                    }
                }
                table.set_bracket(a, b, &v);
            }
        }
        Ok(table)
    }

    /// Integrality, `[e_ξ, e_{−ξ}] = h_ξ`, `[e_i, f_i] = H_i` and Jacobi.
    pub fn verify(&self) -> Result<(), LieError> {
        let npos = self.num_positive();
        let r = self.rs.rank();
        for (a, b, v) in self.table.nonzero_brackets() {
            if let Some((k, x)) = v.iter().find(|(_, x)| !x.is_integer()) {
                return Err(LieError::Verification(format!("non-integral constant {x} in [{a}, {b}] at {k}")));
            }
        }
        for (k, xi) in self.rs.positive_roots().iter().enumerate() {
            let got = self.table.bracket_basis(k, npos + r + k);
            let mut want: Vec<(usize, Rational)> = self
                .coroot(xi)
                .into_iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(i, x)| (npos + i, x))
                .collect();
            want.sort_by_key(|(i, _)| *i);
            if got != want {
                return Err(LieError::Verification(format!("[e, f] differs from the coroot for {}", root_label(xi))));
            }
        }
        self.table.check_jacobi()
    }
}

/// `c` with `a = c · b`, if it exists.
fn ratio(a: &SparseMatrix<Rational>, b: &SparseMatrix<Rational>) -> Option<Rational> {
    let (j, (i, bij)) = (0..b.ncols()).find_map(|j| b.column(j).first().map(|e| (j, e.clone())))?;
    let c = a.get(i, j) / bij;
    (a == &b.scale(&c)).then_some(c)
}

/// Chevalley table of a Cartan matrix.
pub fn chevalley_table(rs: &RootSystem) -> Result<LieTable<Rational>, LieError> {
    Ok(ChevalleyAlgebra::new(rs)?.into_table())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::roots::{build_root_system, cartan_matrix_of_type};

    fn alg(t: &str) -> ChevalleyAlgebra {
        ChevalleyAlgebra::new(&build_root_system(&cartan_matrix_of_type(t).unwrap()).unwrap()).unwrap()
    }

    #[test]
    fn sl2() {
        let g = alg("A1");
        assert_eq!(g.table().labels(), ["E(1)", "H1", "F(1)"]);
        assert_eq!(g.table().bracket_basis(0, 2), vec![(1, int(1))]);
        assert_eq!(g.table().bracket_basis(1, 0), vec![(0, int(2))]);
        assert_eq!(g.table().bracket_basis(1, 2), vec![(2, int(-2))]);
    }

    #[test]
    fn sl3_labels_and_brackets() {
        let g = alg("A2");
        assert_eq!(g.table().labels(), ["E(1,0)", "E(0,1)", "E(1,1)", "H1", "H2", "F(1,0)", "F(0,1)", "F(1,1)"]);
        assert_eq!(g.table().bracket_basis(0, 1), vec![(2, int(1))]);
        assert_eq!(g.table().bracket_basis(5, 6), vec![(7, int(-1))]);
    }

    #[test]
    fn classical_and_exceptional_tables() {
        for (t, d) in [("B2", 10), ("C3", 21), ("G2", 14), ("D4", 28), ("A1xA1", 6)] {
            let rs = match t {
                "A1xA1" => build_root_system(&[vec![2, 0], vec![0, 2]]).unwrap(),
                _ => build_root_system(&cartan_matrix_of_type(t).unwrap()).unwrap(),
            };
            let g = ChevalleyAlgebra::new(&rs).unwrap();
            assert_eq!(g.dim(), d, "{t}");
        }
    }
}
