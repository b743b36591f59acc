//! Abelian extensions `s ⊕ l` of a Lie algebra by a module.

use crate::lie::table::LieTable;
use crate::scalar::Scalar;
use crate::sparse::SparseMatrix;
use crate::LieError;

/// Table of `s ⊕ l` with `[x, v] = ρ(x) v` and `[l, l] = 0`. `action[k]` is
/// the matrix of the `k`-th basis vector of `s`; module labels are appended
/// after those of `s`.
pub fn abelian_extension<F: Scalar>(
    s: &LieTable<F>,
    action: &[SparseMatrix<F>],
    module_labels: Vec<String>,
) -> Result<LieTable<F>, LieError> {
    let n = s.dim();
    if action.len() != n {
        return Err(LieError::Verification(format!("expected {n} action matrices, got {}", action.len())));
    }
    let m = module_labels.len();
    if action.iter().any(|a| a.nrows() != m || a.ncols() != m) {
        return Err(LieError::Verification(format!("action matrices must be {m}x{m}")));
    }
    // ρ must be a homomorphism.
    for (a, b, v) in s.nonzero_brackets() {
        let lhs = action[a].commutator(&action[b]);
        let rhs = v.iter().fold(SparseMatrix::zeros(m, m), |acc, (k, c)| acc.add_scaled(c, &action[*k]));
        if lhs != rhs {
            return Err(LieError::Verification(format!("module action is not a homomorphism on pair ({a}, {b})")));
        }
    }
    let mut labels = s.labels().to_vec();
    labels.extend(module_labels);
    let mut t = LieTable::new(labels);
    for (a, b, v) in s.nonzero_brackets() {
        let mut dense = vec![F::zero(); n + m];
        for (k, c) in v {
            dense[*k] = c.clone();
        }
        t.set_bracket(a, b, &dense);
    }
    for (k, mat) in action.iter().enumerate() {
        for j in 0..m {
            let col = mat.column(j);
            if col.is_empty() {
                continue;
            }
            let mut dense = vec![F::zero(); n + m];
            for (i, c) in col {
                dense[n + i] = c.clone();
            }
            t.set_bracket(k, n + j, &dense);
        }
    }
    Ok(t)
}

/// Block-diagonal action on a direct sum of modules.
pub fn direct_sum_action<F: Scalar>(parts: &[Vec<SparseMatrix<F>>]) -> Vec<SparseMatrix<F>> {
    let Some(first) = parts.first() else { return Vec::new() };
    let total: usize = parts.iter().map(|p| p.first().map_or(0, SparseMatrix::nrows)).sum();
    (0..first.len())
        .map(|k| {
            let mut cols = Vec::with_capacity(total);
            let mut offset = 0;
            for p in parts {
                let mat = &p[k];
                for j in 0..mat.ncols() {
                    cols.push(mat.column(j).iter().map(|(i, x)| (i + offset, x.clone())).collect());
                }
                offset += mat.nrows();
            }
            SparseMatrix::from_columns(total, cols)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::chevalley::ChevalleyAlgebra;
    use crate::lie::module::realize_module;
    use crate::lie::roots::{build_root_system, cartan_matrix_of_type, Weight};

    #[test]
    fn sl3_with_standard_and_dual() {
        let rs = build_root_system(&cartan_matrix_of_type("A2").unwrap()).unwrap();
        let g = ChevalleyAlgebra::new(&rs).unwrap();
        let v = realize_module(&rs, &Weight(vec![1, 0]), 200).unwrap();
        let w = realize_module(&rs, &Weight(vec![0, 1]), 200).unwrap();
        let act = direct_sum_action(&[g.represent(&v), g.represent(&w)]);
        let labels = (0..6).map(|i| format!("v{i}")).collect();
        let t = abelian_extension(g.table(), &act, labels).unwrap();
        assert_eq!(t.dim(), 14);
        t.check_jacobi().unwrap();
    }
}
