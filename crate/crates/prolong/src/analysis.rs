//! Distinguished elements and structure of a prolongation.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;
use tanaka_core::lie::structure::{
    is_ideal, is_nilpotent, killing_form, maximal_semisimple_ideal, radical,
};
use tanaka_core::lie::table::{dense_from_sparse, SparseVec};
use tanaka_core::linalg::{intersection, orthogonal_complement, rank_of, span_basis, IncrementalBasis, Matrix};
use tanaka_core::{LieTable, Rational};

use crate::engine::Prolongation;
use crate::extension::{Extension, GradedNilpotent};
use crate::ProlongError;

/// Image of `s ⊕ l` in `g`: `embedding[k]` is the element of `g` matching
/// basis vector `k` of the extension.
pub fn embed_extension(ext: &Extension, m: &GradedNilpotent, g: &Prolongation) -> Result<Vec<SparseVec<Rational>>, ProlongError> {
    let n = ext.table.dim();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&k| (ext.degree(k), k));
    let m_pos: BTreeMap<usize, usize> = m.source.iter().enumerate().map(|(p, &k)| (k, p)).collect();
    let minus1_ext: Vec<usize> = g.minus_one().iter().map(|&p| m.source[p]).collect();
    let mut out: Vec<Option<SparseVec<Rational>>> = vec![None; n];
    for k in order {
        let d = ext.degree(k);
        let v = if d < 0 {
            vec![(m_pos[&k], Rational::one())]
        } else {
            let images: Vec<SparseVec<Rational>> = minus1_ext
                .iter()
                .map(|&x| {
                    let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
                    for (y, c) in ext.table.bracket_basis(k, x) {
                        for (z, e) in out[y].as_ref().expect("lower degrees are embedded first") {
                            *acc.entry(*z).or_insert_with(Rational::zero) += &c * e;
                        }
                    }
                    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
                })
                .collect();
            g.solve_in_degree(d, &images).ok_or_else(|| {
                ProlongError::Inconsistent(format!("{} does not act as an element of g_{d}", ext.table.labels()[k]))
            })?
        };
        out[k] = Some(v);
    }
    Ok(out.into_iter().map(|v| v.expect("every vector embedded")).collect())
}

fn identity_on(g: &Prolongation, part: &[usize]) -> Vec<SparseVec<Rational>> {
    g.minus_one().iter().map(|&x| if part.contains(&x) { vec![(x, Rational::one())] } else { Vec::new() }).collect()
}

/// The degree-0 element acting as the identity on `part ⊂ m` and as zero on
/// the rest of `m`, verified on all of `m`.
pub fn projection_onto(g: &Prolongation, part: &[usize]) -> Result<SparseVec<Rational>, ProlongError> {
    let pi = g
        .solve_in_degree(0, &identity_on(g, part))
        .ok_or_else(|| ProlongError::Inconsistent("projection is not a derivation of m".into()))?;
    for x in 0..g.m_dim {
        let expected = if part.contains(&x) { vec![(x, Rational::one())] } else { Vec::new() };
        if g.table.bracket_sparse(&pi, &[(x, Rational::one())]) != expected {
            return Err(ProlongError::Inconsistent(format!("projection misbehaves on {}", g.table.labels()[x])));
        }
    }
    Ok(pi)
}

/// `π`, the projection onto `l_−`, and one projection per summand.
pub fn projection_element(g: &Prolongation, m: &GradedNilpotent) -> Result<(SparseVec<Rational>, Vec<SparseVec<Rational>>), ProlongError> {
    let all: Vec<usize> = m.l_components.iter().flatten().copied().collect();
    let pi = projection_onto(g, &all)?;
    let parts = m.l_components.iter().map(|c| projection_onto(g, c)).collect::<Result<Vec<_>, _>>()?;
    Ok((pi, parts))
}

/// `X ∈ g_0` with `[X, x] = Jx` on `m_{−1}`.
pub fn find_j_element(g: &Prolongation, m: &GradedNilpotent) -> Option<SparseVec<Rational>> {
    let idx = g.minus_one();
    let images: Vec<SparseVec<Rational>> = (0..idx.len())
        .map(|c| (0..idx.len()).filter(|&r| !m.j.get(r, c).is_zero()).map(|r| (idx[r], m.j.get(r, c).clone())).collect())
        .collect();
    g.solve_in_degree(0, &images)
}

/// Multiplication by `i` on one complex summand of `l_−`, zero elsewhere.
pub fn complex_unit_on(g: &Prolongation, ext: &Extension, m: &GradedNilpotent, component: usize) -> Option<SparseVec<Rational>> {
    let unit = ext.table.unit()?;
    if !ext.components[component].complex {
        return None;
    }
    let part = &m.l_components[component];
    let m_pos: BTreeMap<usize, usize> = m.source.iter().enumerate().map(|(p, &k)| (k, p)).collect();
    let images: Vec<SparseVec<Rational>> = g
        .minus_one()
        .iter()
        .map(|&x| {
            if !part.contains(&x) {
                return Vec::new();
            }
            let col = m.source[x];
            let mut v: SparseVec<Rational> =
                (0..unit.nrows()).filter(|&r| !unit.get(r, col).is_zero()).map(|r| (m_pos[&r], unit.get(r, col).clone())).collect();
            v.sort_by_key(|(k, _)| *k);
            v
        })
        .collect();
    g.solve_in_degree(0, &images)
}

/// `J_g = J_s − Σ k_i·Iπ_i`; `k_i = 0` for summands without a complex unit.
#[derive(Clone, Debug, PartialEq)]
pub struct JDecomposition {
    pub j_element: SparseVec<Rational>,
    pub j_s: SparseVec<Rational>,
    pub k_values: Vec<Rational>,
    pub complex: Vec<bool>,
}

pub fn decompose_j(
    g: &Prolongation,
    ext: &Extension,
    m: &GradedNilpotent,
    embedding: &[SparseVec<Rational>],
) -> Result<JDecomposition, ProlongError> {
    let n = g.dim();
    let j_element = find_j_element(g, m).ok_or(ProlongError::NoJElement)?;
    let mut j_s: BTreeMap<usize, Rational> = BTreeMap::new();
    for (k, c) in &ext.j_s {
        for (z, e) in &embedding[*k] {
            *j_s.entry(*z).or_insert_with(Rational::zero) += c * e;
        }
    }
    let j_s: SparseVec<Rational> = j_s.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    let units: Vec<Option<SparseVec<Rational>>> = (0..ext.components.len()).map(|i| complex_unit_on(g, ext, m, i)).collect();
    let present: Vec<(usize, Vec<Rational>)> =
        units.iter().enumerate().filter_map(|(i, u)| u.as_ref().map(|u| (i, dense_from_sparse(u, n)))).collect();
    let mut basis = IncrementalBasis::new(n);
    for (_, u) in &present {
        if basis.try_insert(u).is_none() {
            return Err(ProlongError::Inconsistent("complex units of summands are dependent".into()));
        }
    }
    let diff: Vec<Rational> =
        dense_from_sparse(&j_s, n).iter().zip(dense_from_sparse(&j_element, n)).map(|(a, b)| a - b).collect();
    let coeffs = basis.express(&diff).ok_or(ProlongError::JDecomposition)?;
    let mut k_values = vec![Rational::zero(); ext.components.len()];
    for ((i, _), c) in present.iter().zip(coeffs) {
        k_values[*i] = c;
    }
    Ok(JDecomposition { j_element, j_s, k_values, complex: units.iter().map(Option::is_some).collect() })
}

/// Eigenvalue multiplicities of `ad(π)` on `b`, the κ-orthogonal of the
/// image of `s`; fails unless the spectrum is integral and `ad(π)` is
/// diagonalizable on `b`.
pub fn ad_pi_spectrum(
    t: &LieTable<Rational>,
    pi: &[(usize, Rational)],
    s_image: &[Vec<Rational>],
    kappa: &Matrix<Rational>,
) -> Result<(Vec<Vec<Rational>>, BTreeMap<i64, Vec<Vec<Rational>>>), ProlongError> {
    let n = t.dim();
    let b = span_basis(&orthogonal_complement(kappa, s_image), n);
    let ad = t.ad(&dense_from_sparse(pi, n));
    let mut found = 0;
    let mut spaces = BTreeMap::new();
    let bound = n as i64 + 1;
    for h in -bound..=bound {
        if found == b.len() {
            break;
        }
        // kernel of ad(π) − h on b: combinations Σ c_i b_i with (ad π − h) Σ c_i b_i = 0
        let cols: Vec<Vec<Rational>> = b
            .iter()
            .map(|v| {
                let mut w = ad.mul_vec(v);
                for (x, y) in w.iter_mut().zip(v) {
                    *x -= Rational::from_integer(h.into()) * y;
                }
                w
            })
            .collect();
        if cols.is_empty() {
            break;
        }
        let kernel = Matrix::from_columns(n, &cols).kernel();
        if kernel.is_empty() {
            continue;
        }
        let vecs: Vec<Vec<Rational>> = kernel
            .iter()
            .map(|c| {
                let mut v = vec![Rational::zero(); n];
                for (ci, bi) in c.iter().zip(&b) {
                    for (x, y) in v.iter_mut().zip(bi) {
                        *x += ci * y;
                    }
                }
                v
            })
            .collect();
        found += vecs.len();
        spaces.insert(h, vecs);
    }
    if found != b.len() {
        return Err(ProlongError::Spectrum(format!("ad(π) has non-integral or defective spectrum on b ({found} of {})", b.len())));
    }
    Ok((b, spaces))
}

/// Whether a square matrix is diagonalizable over the algebraic closure:
/// its minimal polynomial is squarefree.
pub fn is_semisimple(a: &Matrix<Rational>) -> bool {
    let n = a.nrows();
    let flat = |m: &Matrix<Rational>| m.to_rows().concat();
    let mut basis = IncrementalBasis::new(n * n);
    let mut power = Matrix::identity(n);
    let minimal = loop {
        if let Some(c) = basis.express(&flat(&power)) {
            // A^d = Σ c_k A^k  →  x^d − Σ c_k x^k
            let mut p: Vec<Rational> = c.into_iter().map(|x| -x).collect();
            p.push(Rational::one());
            break p;
        }
        basis.try_insert(&flat(&power));
        power = power.mul(a);
    };
    let derivative: Vec<Rational> =
        minimal.iter().enumerate().skip(1).map(|(k, c)| c * Rational::from_integer((k as i64).into())).collect();
    poly_gcd(minimal, derivative).len() <= 1
}

fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_gcd(a: Vec<Rational>, b: Vec<Rational>) -> Vec<Rational> {
    let (mut a, mut b) = (trim(a), trim(b));
    while !b.is_empty() {
        // a mod b
        while a.len() >= b.len() && !a.is_empty() {
            let f = a.last().expect("nonempty") / b.last().expect("nonempty");
            let shift = a.len() - b.len();
            for (k, c) in b.iter().enumerate() {
                a[k + shift] -= &f * c;
            }
            a = trim(a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Classification {
    Semisimple,
    Proper,
    Mixed,
}

/// Dimensions of the Levi-Malcev pieces: `g = (s ⊕ a) ⋉ (t ⊕ n)` with `a`
/// the part of a Levi factor beyond `s`, `n` the nilradical and `t` a
/// complement of `n` in the radical.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Shape {
    pub levi_dim: usize,
    pub s_dim: usize,
    pub a_dim: usize,
    pub t_dim: usize,
    pub n_dim: usize,
    pub l_dim: usize,
}

#[derive(Clone, Debug)]
pub struct StructureReport {
    pub pi: SparseVec<Rational>,
    pub pi_components: Vec<SparseVec<Rational>>,
    /// Eigenvalue of `ad(π)` on `b` and its multiplicity.
    pub spectrum: BTreeMap<i64, usize>,
    pub b1_is_l: bool,
    pub j: Option<JDecomposition>,
    pub j_semisimple: Option<bool>,
    pub radical: Vec<Vec<Rational>>,
    pub nilpotent: Vec<Vec<Rational>>,
    pub semisimple_ideal: Vec<Vec<Rational>>,
    pub classification: Classification,
    pub shape: Shape,
    /// `dim (n ∩ g_p)` for each degree where it is nonzero.
    pub nilpotent_degrees: BTreeMap<i64, usize>,
    pub l_in_nilpotent: bool,
    /// `dim (n ∩ g_p) − dim (n ∩ l ∩ g_p)` for each degree where it is nonzero.
    pub nilpotent_beyond_l: BTreeMap<i64, usize>,
}

fn graded_part(t: &LieTable<Rational>, p: i64) -> Vec<Vec<Rational>> {
    let n = t.dim();
    t.degree_indices(p).into_iter().map(|k| tanaka_core::linalg::unit(n, k)).collect()
}

/// Nilradical of `g` as `rad(g) ∩ ker κ`, verified to be a nilpotent ideal.
pub fn nilpotent_part(t: &LieTable<Rational>, kappa: &Matrix<Rational>, rad: &[Vec<Rational>]) -> Result<Vec<Vec<Rational>>, ProlongError> {
    let n = t.dim();
    let ker = Matrix::from_rows(kappa.to_rows()).kernel();
    let candidate = intersection(rad, &ker, n);
    if !is_ideal(t, &candidate) || !is_nilpotent(t, &candidate) {
        return Err(ProlongError::Inconsistent("rad(g) ∩ ker κ is not a nilpotent ideal".into()));
    }
    Ok(candidate)
}

pub fn structure_report(g: &Prolongation, ext: &Extension, m: &GradedNilpotent) -> Result<StructureReport, ProlongError> {
    let t = &g.table;
    let n = t.dim();
    let embedding = embed_extension(ext, m, g)?;
    let dense = |v: &SparseVec<Rational>| dense_from_sparse(v, n);
    let s_image: Vec<Vec<Rational>> = embedding[..ext.s_dim].iter().map(dense).collect();
    let l_image: Vec<Vec<Rational>> = ext.l_indices().iter().map(|&k| dense(&embedding[k])).collect();

    let kappa = killing_form(t);
    let (pi, pi_components) = projection_element(g, m)?;
    let (_, spaces) = ad_pi_spectrum(t, &pi, &s_image, &kappa)?;
    let spectrum: BTreeMap<i64, usize> = spaces.iter().map(|(h, v)| (*h, v.len())).collect();
    if spectrum.keys().any(|&h| h > 1) {
        return Err(ProlongError::Spectrum(format!("ad(π) has an eigenvalue above 1: {spectrum:?}")));
    }
    let b1 = spaces.get(&1).cloned().unwrap_or_default();
    let b1_is_l = rank_of(&b1, n) == rank_of(&l_image, n) && intersection(&b1, &l_image, n).len() == rank_of(&l_image, n);
    if !b1_is_l {
        return Err(ProlongError::Spectrum("the 1-eigenspace of ad(π) on b is not l".into()));
    }

    let j = if m.minus_one().is_empty() { None } else { Some(decompose_j(g, ext, m, &embedding)?) };
    let j_semisimple = j.as_ref().map(|d| is_semisimple(&t.ad(&dense(&d.j_element))));

    let rad = radical(t);
    let sigma = maximal_semisimple_ideal(t)?;
    let nil = nilpotent_part(t, &kappa, &rad)?;
    let classification = if rad.is_empty() {
        Classification::Semisimple
    } else if sigma.is_empty() {
        Classification::Proper
    } else {
        Classification::Mixed
    };
    let levi_dim = n - rad.len();
    let shape = Shape {
        levi_dim,
        s_dim: ext.s_dim,
        a_dim: levi_dim.saturating_sub(ext.s_dim),
        t_dim: rad.len() - nil.len(),
        n_dim: nil.len(),
        l_dim: l_image.len(),
    };
    let (lo, hi) = t.degree_range().unwrap_or((0, 0));
    let nil_l = intersection(&nil, &l_image, n);
    let l_in_nilpotent = nil_l.len() == l_image.len();
    let mut nilpotent_degrees = BTreeMap::new();
    let mut nilpotent_beyond_l = BTreeMap::new();
    for p in lo..=hi {
        let part = graded_part(t, p);
        let a = intersection(&nil, &part, n).len();
        let b = intersection(&nil_l, &part, n).len();
        if a > 0 {
            nilpotent_degrees.insert(p, a);
        }
        if a > b {
            nilpotent_beyond_l.insert(p, a - b);
        }
    }
    if nilpotent_degrees.values().sum::<usize>() != nil.len() {
        return Err(ProlongError::Inconsistent("nilpotent part is not graded".into()));
    }
    Ok(StructureReport {
        pi,
        pi_components,
        spectrum,
        b1_is_l,
        j,
        j_semisimple,
        radical: rad,
        nilpotent: nil,
        semisimple_ideal: sigma,
        classification,
        shape,
        nilpotent_degrees,
        l_in_nilpotent,
        nilpotent_beyond_l,
    })
}

/// `g = σ(g) ⊕ σ(g)^⊥`, both verified ideals, the second without semisimple ideals.
pub fn decompose_extension(t: &LieTable<Rational>) -> Result<(Vec<Vec<Rational>>, Vec<Vec<Rational>>), ProlongError> {
    let n = t.dim();
    let sigma = maximal_semisimple_ideal(t)?;
    let kappa = killing_form(t);
    let rest = span_basis(&orthogonal_complement(&kappa, &sigma), n);
    if sigma.len() + rest.len() != n || !intersection(&sigma, &rest, n).is_empty() {
        return Err(ProlongError::Inconsistent("σ(g) and its orthogonal do not span g".into()));
    }
    if !is_ideal(t, &sigma) || !is_ideal(t, &rest) {
        return Err(ProlongError::Inconsistent("summands are not ideals".into()));
    }
    if !rest.is_empty() {
        let sub = t.subalgebra(&rest, None)?;
        if !maximal_semisimple_ideal(&sub)?.is_empty() {
            return Err(ProlongError::Inconsistent("complement of σ(g) contains a semisimple ideal".into()));
        }
    }
    Ok((sigma, rest))
}

#[cfg(test)]
mod tests {
    use super::*;
    use tanaka_core::scalar::int;

    fn m(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
    }

    #[test]
    fn semisimplicity_of_small_matrices() {
        assert!(is_semisimple(&m(&[&[0, -1], &[1, 0]])));
        assert!(is_semisimple(&m(&[&[2, 0], &[0, 2]])));
        assert!(!is_semisimple(&m(&[&[0, 1], &[0, 0]])));
        assert!(!is_semisimple(&m(&[&[1, 1, 0], &[0, 1, 0], &[0, 0, 3]])));
        assert!(is_semisimple(&Matrix::zeros(3, 3)));
    }

    #[test]
    fn gcd_of_coprime_polynomials_is_constant() {
        // x² + 1 and 2x
        assert_eq!(poly_gcd(vec![int(1), int(0), int(1)], vec![int(0), int(2)]).len(), 1);
        // (x − 1)² and 2(x − 1)
        assert_eq!(poly_gcd(vec![int(1), int(-2), int(1)], vec![int(-2), int(2)]).len(), 2);
    }
}
