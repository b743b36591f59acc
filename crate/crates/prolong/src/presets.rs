//! Builders for extensions `s ⊕ l`: complex modules with an admissible CR
//! structure, real adjoint modules of real forms, and the anti-Hermitian
//! module of `sl(2, ℂ)`.

use std::collections::BTreeSet;

use num_traits::{One, Zero};
use tanaka_core::lie::chevalley::ChevalleyAlgebra;
use tanaka_core::lie::extension::{abelian_extension, direct_sum_action};
use tanaka_core::lie::module::{realize_module, ModuleRealization, DEFAULT_DIMENSION_CAP};
use tanaka_core::lie::realform::{real_form_fixed_points, realify, realify_vector, su_conjugation};
use tanaka_core::lie::table::{sparse_from_dense, SparseVec};
use tanaka_core::linalg::{IncrementalBasis, Matrix};
use tanaka_core::sparse::SparseMatrix;
use tanaka_core::scalar::{int, rat};
use tanaka_core::{GaussianRational, LieTable, Rational, Weight};
use tanaka_graded::algebra::{sl2_complex, sl3_levi_tanaka, sl3_upper};
use tanaka_graded::{admissible_structures, GradedCrAlgebra, Structure};

use crate::extension::{Component, Extension};
use crate::ProlongError;

/// An irreducible complex module with its degrees and `+i` weights.
#[derive(Clone, Debug)]
pub struct ModulePart {
    pub label: String,
    pub module: ModuleRealization,
    pub degrees: Vec<i64>,
    pub p10: BTreeSet<Weight>,
}

impl ModulePart {
    /// The module of highest weight `λ` graded and split by an admissible structure.
    pub fn from_structure(g: &GradedCrAlgebra, label: &str, highest: &Weight, structure: &Structure) -> Result<Self, ProlongError> {
        let module = realize_module(&g.root_system, highest, DEFAULT_DIMENSION_CAP)?;
        let degrees = module
            .weights
            .iter()
            .map(|w| structure.diagram.degree(w).ok_or_else(|| ProlongError::Input(format!("weight {w} not in diagram"))))
            .collect::<Result<_, _>>()?;
        Ok(ModulePart { label: label.into(), module, degrees, p10: structure.partition.p10.clone() })
    }
}

/// The admissible structure on `Γ(λ)` with the given shift.
pub fn structure_with_shift(g: &GradedCrAlgebra, highest: &Weight, shift: &Rational) -> Result<Structure, ProlongError> {
    admissible_structures(g, highest)?
        .into_iter()
        .find(|s| &s.diagram.shift == shift)
        .ok_or_else(|| ProlongError::Input(format!("no admissible structure on {highest} with shift {shift}")))
}

/// `J` from a degree-0 element: `ad(j_s)` on degree −1.
fn j_from_ad(table: &LieTable<Rational>, j_s: &[(usize, Rational)]) -> Matrix<Rational> {
    let idx = table.degree_indices(-1);
    let mut m = Matrix::zeros(idx.len(), idx.len());
    for (c, &k) in idx.iter().enumerate() {
        for (r, v) in table.bracket_sparse(j_s, &[(k, Rational::one())]) {
            let p = idx.iter().position(|&x| x == r).expect("degree -1 is preserved by degree 0");
            m.set(p, c, v);
        }
    }
    m
}

/// The element `i·h_J` of the realified Chevalley algebra, with `h_J` in the
/// Cartan subalgebra and `α_j(h_J) = α_j(J)/i`.
pub fn complex_j_element(g: &GradedCrAlgebra, chev: &ChevalleyAlgebra) -> SparseVec<Rational> {
    let j = g.j.as_ref().expect("CR functional attached");
    let c = g.root_system.cartan_matrix();
    let r = g.rank();
    let ct = Matrix::from_fn(r, r, |a, b| int(c[b][a]));
    let coeffs = ct.solve(&j.0).expect("Cartan matrix is invertible");
    (0..r).filter(|&i| !coeffs[i].is_zero()).map(|i| (2 * chev.cartan_index(i) + 1, coeffs[i].clone())).collect()
}

/// Realified `s ⊕ l_1 ⊕ … ⊕ l_k` for complex modules; `J` is `ad(i·h_J)` on
/// `s_{−1}` and `±i` on each module according to the partition.
pub fn complex_extension(label: &str, g: &GradedCrAlgebra, parts: &[ModulePart]) -> Result<Extension, ProlongError> {
    let chev = ChevalleyAlgebra::new(&g.root_system)?;
    let actions: Vec<_> = parts.iter().map(|p| chev.represent(&p.module)).collect();
    let labels: Vec<String> = parts
        .iter()
        .flat_map(|p| p.module.weights.iter().map(move |w| format!("{}.{}", p.label, w.label())))
        .collect();
    let n = chev.dim();
    let action = if parts.is_empty() { vec![SparseMatrix::zeros(0, 0); n] } else { direct_sum_action(&actions) };
    let complex = abelian_extension(chev.table(), &action, labels)?;
    let mut grading: Vec<i64> = (0..n).map(|k| chev.root_of(k).map_or(0, |a| g.root_degree(&a))).collect();
    let mut signs: Vec<i64> = (0..n).map(|k| chev.root_of(k).map_or(0, |a| if g.r10.contains(&a) { 1 } else { -1 })).collect();
    let mut components = Vec::new();
    for p in parts {
        let start = grading.len();
        grading.extend_from_slice(&p.degrees);
        signs.extend(p.module.weights.iter().map(|w| if p.p10.contains(w) { 1 } else { -1 }));
        components.push(Component {
            label: p.label.clone(),
            indices: (2 * start..2 * grading.len()).collect(),
            complex: true,
        });
    }
    let complex = complex.with_grading(grading.clone())?;
    let table = realify(&complex.map_field(|x| GaussianRational::from(x.clone())));
    let minus1: Vec<usize> = (0..grading.len()).filter(|&k| grading[k] == -1).collect();
    let mut j = Matrix::zeros(2 * minus1.len(), 2 * minus1.len());
    for (c, &k) in minus1.iter().enumerate() {
        let s = Rational::from_integer(signs[k].into());
        j.set(2 * c + 1, 2 * c, s.clone());
        j.set(2 * c, 2 * c + 1, -s);
    }
    let j_s = complex_j_element(g, &chev);
    let s_dim = 2 * n;
    let ext = Extension { label: label.into(), table, s_dim, components, j, j_s };
    check_j_on_s(&ext)?;
    Ok(ext)
}

/// `J` agrees with `ad(j_s)` on `s_{−1}`.
fn check_j_on_s(ext: &Extension) -> Result<(), ProlongError> {
    let ad = j_from_ad(&ext.table, &ext.j_s);
    let idx = ext.table.degree_indices(-1);
    for (c, &k) in idx.iter().enumerate() {
        if k < ext.s_dim && ad.column(c) != ext.j.column(c) {
            return Err(ProlongError::Input(format!("J differs from ad(j_s) on {}", ext.table.labels()[k])));
        }
    }
    Ok(())
}

/// A graded real `s` with `l` a copy of its adjoint module in degrees
/// shifted by `shift`; `J = ad(j_s)` on all of degree −1.
pub fn real_adjoint_extension(
    label: &str,
    s: &LieTable<Rational>,
    j_s: SparseVec<Rational>,
    shift: i64,
) -> Result<Extension, ProlongError> {
    let n = s.dim();
    let grading = s.grading().ok_or_else(|| ProlongError::Input("s is not graded".into()))?;
    let action: Vec<_> = (0..n)
        .map(|k| SparseMatrix::from_dense(&s.ad_basis(k)))
        .collect();
    let labels = s.labels().iter().map(|l| format!("l.{l}")).collect();
    let table = abelian_extension(s, &action, labels)?;
    let mut degrees = grading.to_vec();
    degrees.extend(grading.iter().map(|d| d + shift));
    let table = table.with_grading(degrees)?;
    let j = j_from_ad(&table, &j_s);
    let components = vec![Component { label: "l".into(), indices: (n..2 * n).collect(), complex: false }];
    Ok(Extension { label: label.into(), table, s_dim: n, components, j, j_s })
}

/// The real form of a graded `sl(n, ℂ)` fixed by `X ↦ −H X* H`, and its real
/// degree-0 element inducing `J`.
pub fn hermitian_real_form(g: &GradedCrAlgebra, h: &Matrix<Rational>) -> Result<(LieTable<Rational>, SparseVec<Rational>), ProlongError> {
    let chev = ChevalleyAlgebra::new(&g.root_system)?;
    let grading: Vec<i64> = (0..chev.dim()).map(|k| chev.root_of(k).map_or(0, |a| g.root_degree(&a))).collect();
    let complex = chev.table().map_field(|x| GaussianRational::from(x.clone())).with_grading(grading)?;
    let sigma = su_conjugation(&chev, h)?;
    let form = real_form_fixed_points(&complex, &sigma)?;
    let mut basis = IncrementalBasis::new(2 * chev.dim());
    for v in &form.embedding {
        basis.try_insert(&realify_vector(v));
    }
    let j_complex = tanaka_core::lie::table::dense_from_sparse(&complex_j_element(g, &chev), 2 * chev.dim());
    let coeffs = basis
        .express(&j_complex)
        .ok_or_else(|| ProlongError::Inconsistent("i·h_J is not in the real form".into()))?;
    Ok((form.table, sparse_from_dense(&coeffs)))
}

/// `su(1, 2)` graded by `E = diag(1, 0, −1)` with `J = diag(i/3, −2i/3, i/3)`,
/// and its real degree-0 element inducing `J`.
pub fn su12() -> Result<(LieTable<Rational>, SparseVec<Rational>), ProlongError> {
    let h = Matrix::from_fn(3, 3, |a, b| if a + b == 2 { Rational::one() } else { Rational::zero() });
    hermitian_real_form(&sl3_levi_tanaka(), &h)
}

/// `su(1, 2) ⊕ su(1, 2)` with `l` in the same degrees as `s`.
pub fn su12_adjoint() -> Result<Extension, ProlongError> {
    let (s, j_s) = su12()?;
    real_adjoint_extension("su(1,2) adjoint", &s, j_s, 0)
}

/// `su(1, 2) ⊕ su(1, 2)` with `l` lowered by two degrees.
pub fn su12_adjoint_shifted() -> Result<Extension, ProlongError> {
    let (s, j_s) = su12()?;
    real_adjoint_extension("su(1,2) adjoint shifted", &s, j_s, -2)
}

/// `sl(2, ℂ)` with its irreducible module of complex dimension `n` and the
/// unique admissible structure on it.
pub fn sl2_irreducible(n: i64) -> Result<Extension, ProlongError> {
    if n < 2 {
        return Err(ProlongError::Input(format!("module dimension {n} is below 2")));
    }
    let g = sl2_complex();
    let w = Weight(vec![n - 1]);
    let structures = admissible_structures(&g, &w)?;
    let [s] = structures.as_slice() else {
        return Err(ProlongError::Input(format!("expected one admissible structure on {w}, found {}", structures.len())));
    };
    let part = ModulePart::from_structure(&g, &format!("l{n}"), &w, s)?;
    complex_extension(&format!("sl(2,C) + l^{n}"), &g, &[part])
}

/// `sl(3, ℂ)` graded by `E = diag(−1, 0, 1)` with `Γ(1,0) ⊕ Γ(0,1)` in
/// shifts −2 and −1.
pub fn sl3_standard_dual() -> Result<Extension, ProlongError> {
    let g = sl3_upper();
    let std = Weight(vec![1, 0]);
    let dual = Weight(vec![0, 1]);
    let a = ModulePart::from_structure(&g, "V", &std, &structure_with_shift(&g, &std, &int(-2))?)?;
    let b = ModulePart::from_structure(&g, "W", &dual, &structure_with_shift(&g, &dual, &int(-1))?)?;
    complex_extension("sl(3,C) + V + V*", &g, &[a, b])
}

fn gaussian(re: i64, im: i64) -> GaussianRational {
    GaussianRational::new(int(re), int(im))
}

fn mat2(a: [[GaussianRational; 2]; 2]) -> Matrix<GaussianRational> {
    Matrix::from_rows(a.iter().map(|r| r.to_vec()).collect())
}

/// Coordinates `(Im a, Im d, Re b, Im b)` of an anti-Hermitian `[[a, b], [−b̄, d]]`.
fn anti_hermitian_coords(m: &Matrix<GaussianRational>) -> Vec<Rational> {
    vec![m.get(0, 0).im.clone(), m.get(1, 1).im.clone(), m.get(0, 1).re.clone(), m.get(0, 1).im.clone()]
}

fn anti_hermitian_basis() -> Vec<Matrix<GaussianRational>> {
    let (o, z, i) = (gaussian(1, 0), gaussian(0, 0), gaussian(0, 1));
    vec![
        mat2([[i.clone(), z.clone()], [z.clone(), z.clone()]]),
        mat2([[z.clone(), z.clone()], [z.clone(), i.clone()]]),
        mat2([[z.clone(), o.clone()], [-o, z.clone()]]),
        mat2([[z.clone(), i.clone()], [i, z]]),
    ]
}

/// `sl(2, ℂ)` as a real algebra acting on `u(2)` by `X·A = XA + AX*`, one
/// copy per entry of `copies`.
pub fn sl2_antihermitian_copies(copies: usize) -> Result<Extension, ProlongError> {
    if copies == 0 {
        return Err(ProlongError::Input("at least one copy".into()));
    }
    let g = sl2_complex();
    let chev = ChevalleyAlgebra::new(&g.root_system)?;
    let standard = realize_module(&g.root_system, &Weight(vec![1]), 2)?;
    let mats: Vec<Matrix<GaussianRational>> =
        chev.represent(&standard).iter().map(|m| m.to_dense().map(|x| GaussianRational::from(x.clone()))).collect();
    let i = gaussian(0, 1);
    let real_mats: Vec<Matrix<GaussianRational>> = mats.iter().flat_map(|m| [m.clone(), m.scale(&i)]).collect();
    let basis = anti_hermitian_basis();
    let rho: Vec<Matrix<Rational>> = real_mats
        .iter()
        .map(|x| {
            let star = x.transpose().map(|z| z.conj());
            let cols: Vec<Vec<Rational>> = basis.iter().map(|a| anti_hermitian_coords(&x.mul(a).add(&a.mul(&star)))).collect();
            Matrix::from_columns(4, &cols)
        })
        .collect();
    let block: Vec<_> = rho.iter().map(SparseMatrix::from_dense).collect();
    let actions = vec![block; copies];
    let s = realify(&chev.table().map_field(|x| GaussianRational::from(x.clone())));
    let s_grading: Vec<i64> = (0..chev.dim())
        .flat_map(|k| {
            let d = chev.root_of(k).map_or(0, |a| g.root_degree(&a));
            [d, d]
        })
        .collect();
    let mut labels = Vec::new();
    let mut grading = s_grading;
    let mut components = Vec::new();
    let s_dim = s.dim();
    for c in 0..copies {
        let suffix = if copies == 1 { String::new() } else { format!("{}", c + 1) };
        labels.extend((1..=4).map(|k| format!("A{k}{suffix}")));
        grading.extend([0, -2, -1, -1]);
        components.push(Component {
            label: format!("u(2){suffix}"),
            indices: (s_dim + 4 * c..s_dim + 4 * (c + 1)).collect(),
            complex: false,
        });
    }
    let table = abelian_extension(&s.clone().clear_extras(), &direct_sum_action(&actions), labels)?.with_grading(grading)?;
    let j_s = vec![(2 * chev.cartan_index(0) + 1, rat(1, 2))];
    let j = j_from_ad(&table, &j_s);
    let label = if copies == 1 { "sl(2,C) + u(2)".to_string() } else { format!("sl(2,C) + {copies} u(2)") };
    Ok(Extension { label, table, s_dim, components, j, j_s })
}

pub fn sl2_antihermitian() -> Result<Extension, ProlongError> {
    sl2_antihermitian_copies(1)
}
