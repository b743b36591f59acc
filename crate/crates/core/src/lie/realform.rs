//! Passage between complex and real algebras: realification and fixed points
//! of conjugate-linear involutions.

use num_traits::{One, Zero};

use crate::lie::chevalley::ChevalleyAlgebra;
use crate::lie::module::realize_module;
use crate::lie::roots::Weight;
use crate::lie::table::LieTable;
use crate::linalg::{IncrementalBasis, Matrix};
use crate::scalar::{GaussianRational, Rational, Scalar};
use crate::sparse::SparseMatrix;
use crate::LieError;

/// Real `2n × 2n` matrix of a complex `n × n` matrix in the interleaved basis
/// `(b_0, i b_0, b_1, i b_1, ...)`.
pub fn realify_matrix(m: &Matrix<GaussianRational>) -> Matrix<Rational> {
    Matrix::from_fn(2 * m.nrows(), 2 * m.ncols(), |r, c| {
        let z = m.get(r / 2, c / 2);
        match (r % 2, c % 2) {
            (0, 0) | (1, 1) => z.re.clone(),
            (0, 1) => -z.im.clone(),
            _ => z.im.clone(),
        }
    })
}

/// Real coordinates `(re_0, im_0, re_1, im_1, ...)` of a complex vector.
pub fn realify_vector(v: &[GaussianRational]) -> Vec<Rational> {
    v.iter().flat_map(|z| [z.re.clone(), z.im.clone()]).collect()
}

/// Multiplication by `i` on a realified space of complex dimension `n`.
pub fn complex_unit(n: usize) -> Matrix<Rational> {
    realify_matrix(&Matrix::from_fn(n, n, |a, b| {
        if a == b {
            GaussianRational::new(Rational::zero(), Rational::one())
        } else {
            GaussianRational::zero()
        }
    }))
}

/// Underlying real algebra; basis `X` at `2k` and `iX` at `2k+1`. The unit
/// `I` is stored on the result and any complex structure is realified.
pub fn realify(t: &LieTable<GaussianRational>) -> LieTable<Rational> {
    let n = t.dim();
    let labels: Vec<String> = t.labels().iter().flat_map(|l| [l.clone(), format!("i{l}")]).collect();
    let mut out = LieTable::new(labels);
    for (a, b, v) in t.nonzero_brackets() {
        let base: Vec<(usize, GaussianRational)> = v.clone();
        let i = GaussianRational::new(Rational::zero(), Rational::one());
        let scaled = |c: &GaussianRational| -> Vec<Rational> {
            let mut dense = vec![Rational::zero(); 2 * n];
            for (k, x) in &base {
                let y = x * c;
                dense[2 * k] = y.re.clone();
                dense[2 * k + 1] = y.im.clone();
            }
            dense
        };
        let one = GaussianRational::one();
        out.set_bracket(2 * a, 2 * b, &scaled(&one));
        out.set_bracket(2 * a + 1, 2 * b, &scaled(&i));
        out.set_bracket(2 * a, 2 * b + 1, &scaled(&i));
        out.set_bracket(2 * a + 1, 2 * b + 1, &scaled(&-one));
    }
    if let Some(g) = t.grading() {
        let doubled: Vec<i64> = g.iter().flat_map(|&d| [d, d]).collect();
        out = out.with_grading(doubled).expect("realification preserves the grading");
    }
    if let Some(j) = t.complex_structure() {
        out = out.with_complex_structure(realify_matrix(j));
    }
    out.with_unit(complex_unit(n))
}

/// A real form: its table and the complex coordinates of its basis.
#[derive(Clone, Debug)]
pub struct RealForm {
    pub table: LieTable<Rational>,
    pub embedding: Vec<Vec<GaussianRational>>,
}

/// Applies `σ(v) = M · conj(v)`.
pub fn apply_conjugation(m: &Matrix<GaussianRational>, v: &[GaussianRational]) -> Vec<GaussianRational> {
    let conj: Vec<GaussianRational> = v.iter().map(Scalar::conj).collect();
    m.mul_vec(&conj)
}

/// Checks that `σ(v) = M conj(v)` is an involutive automorphism.
pub fn check_conjugation(t: &LieTable<GaussianRational>, m: &Matrix<GaussianRational>) -> Result<(), LieError> {
    let n = t.dim();
    assert_eq!((m.nrows(), m.ncols()), (n, n));
    let conj_m = m.map(Scalar::conj);
    let sq = m.mul(&conj_m);
    let id = Matrix::<GaussianRational>::identity(n);
    if let Some(col) = (0..n).find(|&c| sq.column(c) != id.column(c)) {
        return Err(LieError::NotInvolution(col));
    }
    let images: Vec<Vec<GaussianRational>> = (0..n).map(|k| m.column(k)).collect();
    for a in 0..n {
        for b in a + 1..n {
            let lhs = apply_conjugation(m, &crate::lie::table::dense_from_sparse(&t.bracket_basis(a, b), n));
            let rhs = t.bracket(&images[a], &images[b]);
            if lhs != rhs {
                return Err(LieError::NotAutomorphism(a, b));
            }
        }
    }
    Ok(())
}

/// Fixed points of `σ(v) = M conj(v)`, spanned by `x + σx` and `i(x − σx)`.
/// Spanning vectors are kept as they are (not reduced), so homogeneous inputs
/// give a homogeneous basis and the grading carries over.
pub fn real_form_fixed_points(t: &LieTable<GaussianRational>, m: &Matrix<GaussianRational>) -> Result<RealForm, LieError> {
    check_conjugation(t, m)?;
    let n = t.dim();
    let i = GaussianRational::new(Rational::zero(), Rational::one());
    let mut basis = IncrementalBasis::new(2 * n);
    let mut chosen: Vec<Vec<GaussianRational>> = Vec::new();
    let mut labels = Vec::new();
    for k in 0..n {
        let col = m.column(k);
        let mut plus = col.clone();
        plus[k] += GaussianRational::one();
        let mut minus: Vec<GaussianRational> = col.iter().map(|x| -x.clone()).collect();
        minus[k] += GaussianRational::one();
        let minus: Vec<GaussianRational> = minus.iter().map(|x| x * &i).collect();
        let name = &t.labels()[k];
        for (v, label) in [(plus, format!("{name}+σ")), (minus, format!("i({name}-σ)"))] {
            if basis.try_insert(&realify_vector(&v)).is_some() {
                chosen.push(v);
                labels.push(label);
            }
        }
    }
    if chosen.len() != n {
        return Err(LieError::Verification(format!("fixed points have real dimension {}, expected {n}", chosen.len())));
    }
    let mut table = LieTable::new(labels);
    for a in 0..n {
        for b in a + 1..n {
            let br = t.bracket(&chosen[a], &chosen[b]);
            let c = basis
                .express(&realify_vector(&br))
                .ok_or_else(|| LieError::Verification(format!("bracket of fixed points {a}, {b} is not fixed")))?;
            table.set_bracket(a, b, &c);
        }
    }
    if let Some(g) = t.grading() {
        let degrees: Option<Vec<i64>> = chosen
            .iter()
            .map(|v| {
                let mut ds = v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(k, _)| g[k]);
                let d = ds.next()?;
                ds.all(|e| e == d).then_some(d)
            })
            .collect();
        if let Some(d) = degrees {
            table = table.with_grading(d)?;
        }
    }
    Ok(RealForm { table, embedding: chosen })
}

/// The conjugation `X ↦ −H⁻¹ X* H` of `sl(n, ℂ)` in Chevalley coordinates,
/// with `H` a rational symmetric matrix in the standard representation; its
/// fixed points are `su(H)`.
pub fn su_conjugation(g: &ChevalleyAlgebra, h: &Matrix<Rational>) -> Result<Matrix<GaussianRational>, LieError> {
    let rs = g.root_system();
    let r = rs.rank();
    if rs.components().len() != 1 || rs.num_roots() != r * (r + 1) || h.nrows() != r + 1 {
        return Err(LieError::Verification("su conjugation needs type A and a matching Hermitian form".into()));
    }
    let mut w = vec![0; r];
    w[0] = 1;
    let standard = realize_module(rs, &Weight(w), r + 1)?;
    let mats: Vec<Matrix<Rational>> = g.represent(&standard).iter().map(SparseMatrix::to_dense).collect();
    let h_inv = h.inverse().ok_or_else(|| LieError::Verification("Hermitian form is degenerate".into()))?;
    let flatten = |m: &Matrix<Rational>| -> Vec<Rational> { m.to_rows().concat() };
    let mut basis = IncrementalBasis::new((r + 1) * (r + 1));
    for m in &mats {
        basis.try_insert(&flatten(m));
    }
    let dim = mats.len();
    let mut cols = Vec::with_capacity(dim);
    for m in &mats {
        let image = h_inv.mul(&m.transpose()).mul(h).scale(&-Rational::one());
        let c = basis
            .express(&flatten(&image))
            .ok_or_else(|| LieError::Verification("conjugate lies outside sl(n)".into()))?;
        cols.push(c.into_iter().map(GaussianRational::from_rational).collect::<Vec<_>>());
    }
    Ok(Matrix::from_columns(dim, &cols))
}

/// Entrywise conjugation `v ↦ conj(v)` (the split real form).
pub fn split_conjugation(n: usize) -> Matrix<GaussianRational> {
    Matrix::identity(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::roots::{build_root_system, cartan_matrix_of_type};
    use crate::lie::structure::killing_form;
    use crate::linalg::signature;
    use crate::scalar::int;

    fn alg(t: &str) -> ChevalleyAlgebra {
        ChevalleyAlgebra::new(&build_root_system(&cartan_matrix_of_type(t).unwrap()).unwrap()).unwrap()
    }

    fn complexified(g: &ChevalleyAlgebra) -> LieTable<GaussianRational> {
        g.table().map_field(|x| GaussianRational::from_rational(x.clone()))
    }

    #[test]
    fn realify_doubles_and_unit_squares_to_minus_one() {
        let g = alg("A2");
        let r = realify(&complexified(&g));
        assert_eq!(r.dim(), 16);
        r.check_jacobi().unwrap();
        let u = r.unit().unwrap();
        assert_eq!(u.mul(u), Matrix::identity(16).scale(&int(-1)));
        for a in 0..16 {
            let ua = u.column(a);
            for b in 0..16 {
                let lhs = r.bracket(&ua, &crate::linalg::unit(16, b));
                let rhs = u.mul_vec(&r.bracket_basis_vec(a, &crate::linalg::unit(16, b)));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn compact_and_split_forms() {
        let g = alg("A1");
        let c = complexified(&g);
        let m = su_conjugation(&g, &Matrix::identity(2)).unwrap();
        let su2 = real_form_fixed_points(&c, &m).unwrap();
        assert_eq!(signature(&killing_form(&su2.table)), (0, 3, 0));

        let g3 = alg("A2");
        let c3 = complexified(&g3);
        let split = real_form_fixed_points(&c3, &split_conjugation(8)).unwrap();
        assert_eq!(signature(&killing_form(&split.table)), (5, 3, 0));
        let h = Matrix::from_rows(vec![
            vec![int(1), int(0), int(0)],
            vec![int(0), int(-1), int(0)],
            vec![int(0), int(0), int(-1)],
        ]);
        let su12 = real_form_fixed_points(&c3, &su_conjugation(&g3, &h).unwrap()).unwrap();
        assert_eq!(su12.table.dim(), 8);
        assert_eq!(signature(&killing_form(&su12.table)), (4, 4, 0));
    }

    #[test]
    fn non_involution_is_rejected() {
        let g = alg("A1");
        let c = complexified(&g);
        let m = split_conjugation(3).scale(&GaussianRational::from_rational(int(2)));
        assert!(matches!(real_form_fixed_points(&c, &m), Err(LieError::NotInvolution(0))));
    }
}
