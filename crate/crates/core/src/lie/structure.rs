//! Killing form, radical, centralizers and the maximal semisimple ideal.

use crate::lie::table::LieTable;
use crate::linalg::{orthogonal_complement, rank_of, span_basis, IncrementalBasis, Matrix};
use crate::scalar::Scalar;
use crate::LieError;

/// `κ(x, y) = tr(ad x ∘ ad y)` on basis vectors.
pub fn killing_form<F: Scalar>(t: &LieTable<F>) -> Matrix<F> {
    let n = t.dim();
    let br: Vec<Vec<_>> = (0..n).map(|i| (0..n).map(|l| t.bracket_basis(i, l)).collect()).collect();
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            // ad_i[k, l] = coefficient of k in [i, l]
            let mut acc = F::zero();
            for (l, col) in br[i].iter().enumerate() {
                for (k, c) in col {
                    let row = &br[j][*k];
                    if let Ok(p) = row.binary_search_by_key(&l, |(x, _)| *x) {
                        acc = acc.add_ref(&c.mul_ref(&row[p].1));
                    }
                }
            }
            m.set(i, j, acc.clone());
            m.set(j, i, acc);
        }
    }
    m
}

/// Gram matrix of a bilinear form on a list of vectors.
pub fn restricted_form<F: Scalar>(form: &Matrix<F>, basis: &[Vec<F>]) -> Matrix<F> {
    let images: Vec<Vec<F>> = basis.iter().map(|v| form.mul_vec(v)).collect();
    Matrix::from_fn(basis.len(), basis.len(), |a, b| {
        basis[a].iter().zip(&images[b]).fold(F::zero(), |acc, (x, y)| acc.add_ref(&x.mul_ref(y)))
    })
}

/// Span of all brackets `[a, b]` with `a ∈ A`, `b ∈ B`.
pub fn bracket_span<F: Scalar>(t: &LieTable<F>, a: &[Vec<F>], b: &[Vec<F>]) -> Vec<Vec<F>> {
    let mut basis = IncrementalBasis::new(t.dim());
    let mut out = Vec::new();
    for x in a {
        for y in b {
            let v = t.bracket(x, y);
            if basis.try_insert(&v).is_some() {
                out.push(v);
            }
        }
    }
    out
}

fn standard_basis<F: Scalar>(n: usize) -> Vec<Vec<F>> {
    (0..n).map(|i| crate::linalg::unit(n, i)).collect()
}

pub fn derived_subalgebra<F: Scalar>(t: &LieTable<F>) -> Vec<Vec<F>> {
    let vectors: Vec<Vec<F>> = t.nonzero_brackets().map(|(_, _, v)| crate::lie::table::dense_from_sparse(v, t.dim())).collect();
    span_basis(&vectors, t.dim())
}

/// Solvable radical: the κ-orthogonal of `[g, g]`.
pub fn radical<F: Scalar>(t: &LieTable<F>) -> Vec<Vec<F>> {
    orthogonal_complement(&killing_form(t), &derived_subalgebra(t))
}

/// `{x : [x, s] = 0 for all s ∈ S}`.
pub fn centralizer<F: Scalar>(t: &LieTable<F>, subspace: &[Vec<F>]) -> Vec<Vec<F>> {
    let n = t.dim();
    let mut rows = Vec::new();
    for s in subspace {
        rows.extend(t.ad(s).to_rows());
    }
    if rows.is_empty() {
        return standard_basis(n);
    }
    Matrix::from_rows(rows).kernel()
}

/// Whether `[g, I] ⊆ I`.
pub fn is_ideal<F: Scalar>(t: &LieTable<F>, ideal: &[Vec<F>]) -> bool {
    let n = t.dim();
    let mut basis = IncrementalBasis::new(n);
    for v in ideal {
        basis.try_insert(v);
    }
    (0..n).all(|i| ideal.iter().all(|v| basis.contains(&t.bracket_basis_vec(i, v))))
}

pub fn is_subalgebra<F: Scalar>(t: &LieTable<F>, sub: &[Vec<F>]) -> bool {
    let mut basis = IncrementalBasis::new(t.dim());
    for v in sub {
        basis.try_insert(v);
    }
    sub.iter().all(|x| sub.iter().all(|y| basis.contains(&t.bracket(x, y))))
}

/// Whether the subalgebra spanned by `sub` is nilpotent (lower central series reaches 0).
pub fn is_nilpotent<F: Scalar>(t: &LieTable<F>, sub: &[Vec<F>]) -> bool {
    let mut current = span_basis(sub, t.dim());
    loop {
        if current.is_empty() {
            return true;
        }
        let next = bracket_span(t, sub, &current);
        if next.len() >= current.len() {
            return false;
        }
        current = next;
    }
}

/// Whether `κ` restricted to the subspace is nondegenerate.
pub fn form_is_nondegenerate<F: Scalar>(form: &Matrix<F>, basis: &[Vec<F>]) -> bool {
    restricted_form(form, basis).rank() == basis.len()
}

/// Largest semisimple ideal `σ(g) = [C, C]` with `C` the centralizer of the radical,
/// verified to be an ideal with nondegenerate Killing form.
pub fn maximal_semisimple_ideal<F: Scalar>(t: &LieTable<F>) -> Result<Vec<Vec<F>>, LieError> {
    let kappa = killing_form(t);
    let rad = orthogonal_complement(&kappa, &derived_subalgebra(t));
    let c = centralizer(t, &rad);
    let sigma = bracket_span(t, &c, &c);
    if !is_ideal(t, &sigma) {
        return Err(LieError::Verification("σ(g) is not an ideal".into()));
    }
    if !form_is_nondegenerate(&kappa, &sigma) {
        return Err(LieError::Verification("Killing form is degenerate on σ(g)".into()));
    }
    Ok(sigma)
}

/// Dimension of a span.
pub fn dim_of<F: Scalar>(vectors: &[Vec<F>], n: usize) -> usize {
    rank_of(vectors, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::chevalley::chevalley_table;
    use crate::lie::roots::{build_root_system, cartan_matrix_of_type};
    use crate::scalar::{int, Rational};

    fn sl(t: &str) -> LieTable<Rational> {
        chevalley_table(&build_root_system(&cartan_matrix_of_type(t).unwrap()).unwrap()).unwrap()
    }

    #[test]
    fn sl2_killing() {
        let t = sl("A1");
        let k = killing_form(&t);
        assert_eq!(*k.get(1, 1), int(8));
        assert_eq!(*k.get(0, 2), int(4));
        assert!(radical(&t).is_empty());
        assert_eq!(maximal_semisimple_ideal(&t).unwrap().len(), 3);
    }

    #[test]
    fn abelian() {
        let t: LieTable<Rational> = LieTable::abelian(2);
        assert!(killing_form(&t).is_zero());
        assert_eq!(radical(&t).len(), 2);
        assert!(maximal_semisimple_ideal(&t).unwrap().is_empty());
    }

    #[test]
    fn sl2_plus_abelian() {
        let t = sl("A1").direct_sum(&LieTable::abelian(2));
        assert_eq!(radical(&t).len(), 2);
        let s = maximal_semisimple_ideal(&t).unwrap();
        assert_eq!(s.len(), 3);
        assert!(is_nilpotent(&t, &radical(&t)));
        assert!(!is_nilpotent(&t, &s));
        assert_eq!(centralizer(&t, &s).len(), 2);
    }
}
