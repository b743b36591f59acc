//! Explicit irreducible highest-weight modules built from the Cartan matrix.
//!
//! The module is grown level by level from the highest weight vector. A
//! candidate `f_i b` is identified with its raising image
//! `(e_j f_i b)_j = (f_i e_j b + δ_ij ⟨wt b, h_i⟩ b)_j`, which only involves
//! vectors of the previous two levels; raising is injective below the top,
//! so an echelon selection of these images yields a basis and the action of
//! every `f_i`.

use std::collections::{BTreeMap, HashMap};

use num_traits::{ToPrimitive, Zero};

use crate::lie::roots::{RootSystem, Weight};
use crate::lie::weights::{weight_system, CharacterMultiset};
use crate::linalg::IncrementalBasis;
use crate::scalar::{int, Rational};
use crate::sparse::SparseMatrix;
use crate::LieError;

pub const DEFAULT_DIMENSION_CAP: usize = 200;

/// Matrices of the Chevalley generators on a weight basis.
#[derive(Clone, Debug, PartialEq)]
pub struct ModuleRealization {
    pub highest_weight: Weight,
    pub weights: Vec<Weight>,
    pub e: Vec<SparseMatrix<Rational>>,
    pub f: Vec<SparseMatrix<Rational>>,
    pub h: Vec<SparseMatrix<Rational>>,
}

impl ModuleRealization {
    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn character(&self) -> CharacterMultiset {
        CharacterMultiset::from_entries(self.weights.iter().map(|w| (w.clone(), 1)))
    }

    /// Basis indices grouped by weight.
    pub fn weight_spaces(&self) -> BTreeMap<Weight, Vec<usize>> {
        let mut out: BTreeMap<Weight, Vec<usize>> = BTreeMap::new();
        for (i, w) in self.weights.iter().enumerate() {
            out.entry(w.clone()).or_default().push(i);
        }
        out
    }

    /// Checks `[e_i, f_j] = δ_ij h_i`, `[h_i, e_j] = C_ij e_j`, `[h_i, f_j] = −C_ij f_j`.
    pub fn check_relations(&self, rs: &RootSystem) -> Result<(), LieError> {
        let c = rs.cartan_matrix();
        let r = rs.rank();
        for i in 0..r {
            for j in 0..r {
                let ef = self.e[i].commutator(&self.f[j]);
                let ok = if i == j { ef == self.h[i] } else { ef.is_zero() };
                if !ok {
                    return Err(LieError::Verification(format!("[e_{i}, f_{j}] relation fails")));
                }
                let he = self.h[i].commutator(&self.e[j]);
                if he != self.e[j].scale(&int(c[i][j])) {
                    return Err(LieError::Verification(format!("[h_{i}, e_{j}] relation fails")));
                }
                let hf = self.h[i].commutator(&self.f[j]);
                if hf != self.f[j].scale(&int(-c[i][j])) {
                    return Err(LieError::Verification(format!("[h_{i}, f_{j}] relation fails")));
                }
            }
        }
        Ok(())
    }

    /// Direct sum of two realizations (the highest weight of the first is kept).
    pub fn direct_sum(&self, other: &Self) -> Self {
        let n = self.dim();
        let m = other.dim();
        let join = |a: &SparseMatrix<Rational>, b: &SparseMatrix<Rational>| {
            let mut cols: Vec<Vec<(usize, Rational)>> = (0..n).map(|j| a.column(j).to_vec()).collect();
            cols.extend((0..m).map(|j| b.column(j).iter().map(|(i, x)| (i + n, x.clone())).collect()));
            SparseMatrix::from_columns(n + m, cols)
        };
        ModuleRealization {
            highest_weight: self.highest_weight.clone(),
            weights: self.weights.iter().chain(&other.weights).cloned().collect(),
            e: self.e.iter().zip(&other.e).map(|(a, b)| join(a, b)).collect(),
            f: self.f.iter().zip(&other.f).map(|(a, b)| join(a, b)).collect(),
            h: self.h.iter().zip(&other.h).map(|(a, b)| join(a, b)).collect(),
        }
    }
}

/// Realizes the irreducible module of highest weight `λ`.
pub fn realize_module(rs: &RootSystem, highest: &Weight, cap: usize) -> Result<ModuleRealization, LieError> {
    rs.check_weight(highest)?;
    if !highest.is_dominant() {
        return Err(LieError::NotDominant(highest.0.clone()));
    }
    let required = rs.weyl_dimension(highest)?;
    let required_usize = required.to_usize().filter(|&d| d <= cap);
    let Some(expected) = required_usize else {
        return Err(LieError::DimensionCap { required: required.to_string(), cap });
    };
    let r = rs.rank();
    let alpha: Vec<Weight> = (0..r).map(|i| rs.root_to_weight(&rs.simple_root(i))).collect();

    let mut weights: Vec<Weight> = vec![highest.clone()];
    // raise[b][j] = e_j b, lower[i][b] = f_i b (sparse over basis indices)
    let mut raise: Vec<Vec<Vec<(usize, Rational)>>> = vec![vec![Vec::new(); r]];
    let mut lower: Vec<Vec<Vec<(usize, Rational)>>> = vec![Vec::new(); r];
    let mut level: Vec<usize> = vec![0];

    let apply_lower = |lower: &Vec<Vec<Vec<(usize, Rational)>>>, i: usize, v: &[(usize, Rational)]| {
        let mut out: BTreeMap<usize, Rational> = BTreeMap::new();
        for (b, c) in v {
            for (k, x) in &lower[i][*b] {
                let e = out.entry(*k).or_insert_with(Rational::zero);
                *e += c * x;
            }
        }
        out.into_iter().filter(|(_, x)| !x.is_zero()).collect::<Vec<_>>()
    };

    while !level.is_empty() {
        // Candidates grouped by target weight, in deterministic order.
        let mut groups: BTreeMap<Weight, Vec<(usize, usize)>> = BTreeMap::new();
        let mut order: Vec<Weight> = Vec::new();
        for &b in &level {
            for i in 0..r {
                let mu = weights[b].sub(&alpha[i]);
                let g = groups.entry(mu.clone()).or_default();
                if g.is_empty() {
                    order.push(mu);
                }
                g.push((i, b));
            }
        }
        let mut next: Vec<usize> = Vec::new();
        for i in 0..r {
            lower[i].resize(weights.len(), Vec::new());
        }
        for mu in order {
            let cands = &groups[&mu];
            // Coordinates of the raising image: for each j, the level vectors of weight μ + α_j.
            let mut slot: HashMap<(usize, usize), usize> = HashMap::new();
            for j in 0..r {
                let target = mu.add(&alpha[j]);
                for &b in &level {
                    if weights[b] == target {
                        let n = slot.len();
                        slot.insert((j, b), n);
                    }
                }
            }
            let width = slot.len();
            let mut basis = IncrementalBasis::new(width);
            let mut accepted: Vec<(usize, Vec<Vec<(usize, Rational)>>)> = Vec::new();
            let mut images: Vec<(usize, usize, Vec<Rational>, Vec<Vec<(usize, Rational)>>)> = Vec::new();
            for &(i, b) in cands {
                let mut per_j: Vec<Vec<(usize, Rational)>> = Vec::with_capacity(r);
                let mut flat = vec![Rational::zero(); width];
                for j in 0..r {
                    let mut v = apply_lower(&lower, i, &raise[b][j]);
                    if i == j {
                        let hb = int(weights[b].0[i]);
                        if !hb.is_zero() {
                            match v.iter_mut().find(|(k, _)| *k == b) {
                                Some((_, x)) => *x += &hb,
                                None => {
                                    v.push((b, hb));
                                    v.sort_by_key(|(k, _)| *k);
                                }
                            }
                            v.retain(|(_, x)| !x.is_zero());
                        }
                    }
                    for (k, x) in &v {
                        flat[slot[&(j, *k)]] = x.clone();
                    }
                    per_j.push(v);
                }
                images.push((i, b, flat, per_j));
            }
            for (_, _, flat, per_j) in &images {
                if let Some(idx) = basis.try_insert(flat) {
                    let new = weights.len();
                    debug_assert_eq!(idx, accepted.len());
                    weights.push(mu.clone());
                    raise.push(per_j.clone());
                    for l in lower.iter_mut() {
                        l.push(Vec::new());
                    }
                    accepted.push((new, per_j.clone()));
                    next.push(new);
                }
            }
            for (i, b, flat, _) in &images {
                let coords = basis.express(flat).expect("candidate lies in the span of the accepted ones");
                lower[*i][*b] = coords
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(k, x)| (accepted[k].0, x.clone()))
                    .collect();
            }
        }
        if weights.len() > expected {
            return Err(LieError::Verification(format!(
                "lowering closure exceeded the Weyl dimension {expected} for {highest}"
            )));
        }
        level = next;
    }
    let n = weights.len();
    if n != expected {
        return Err(LieError::Verification(format!("lowering closure produced {n} vectors, Weyl dimension is {expected}")));
    }
    for i in 0..r {
        lower[i].resize(n, Vec::new());
    }
    let e: Vec<SparseMatrix<Rational>> = (0..r)
        .map(|j| {
            let cols = (0..n).map(|b| raise[b][j].clone()).collect();
            SparseMatrix::from_columns(n, cols)
        })
        .collect();
    let f: Vec<SparseMatrix<Rational>> =
        (0..r).map(|i| SparseMatrix::from_columns(n, lower[i].clone())).collect();
    let h: Vec<SparseMatrix<Rational>> =
        (0..r).map(|i| SparseMatrix::diagonal(&weights.iter().map(|w| int(w.0[i])).collect::<Vec<_>>())).collect();
    let module = ModuleRealization { highest_weight: highest.clone(), weights, e, f, h };
    module.check_relations(rs)?;
    let freudenthal = weight_system(rs, highest)?;
    let realized = CharacterMultiset::from_entries(module.weights.iter().map(|w| (w.clone(), 1)));
    if realized != freudenthal {
        return Err(LieError::Verification(format!("realized weights of {highest} disagree with Freudenthal")));
    }
    Ok(module)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::roots::{build_root_system, cartan_matrix_of_type};

    fn rs(t: &str) -> RootSystem {
        build_root_system(&cartan_matrix_of_type(t).unwrap()).unwrap()
    }

    #[test]
    fn standard_sl3_is_elementary() {
        let rs = rs("A2");
        let m = realize_module(&rs, &Weight(vec![1, 0]), DEFAULT_DIMENSION_CAP).unwrap();
        assert_eq!(m.dim(), 3);
        assert_eq!(m.weights, vec![Weight(vec![1, 0]), Weight(vec![-1, 1]), Weight(vec![0, -1])]);
        // e_1 maps v_2 to v_1, e_2 maps v_3 to v_2: the elementary matrices E_12, E_23.
        assert_eq!(m.e[0].get(0, 1), int(1));
        assert_eq!(m.e[1].get(1, 2), int(1));
        assert_eq!(m.f[0].get(1, 0), int(1));
    }

    #[test]
    fn dimensions_match_weyl() {
        let a1 = rs("A1");
        assert_eq!(realize_module(&a1, &Weight(vec![2]), 200).unwrap().dim(), 3);
        let a2 = rs("A2");
        assert_eq!(realize_module(&a2, &Weight(vec![2, 0]), 200).unwrap().dim(), 6);
        assert_eq!(realize_module(&a2, &Weight(vec![1, 1]), 200).unwrap().dim(), 8);
        assert_eq!(realize_module(&a2, &Weight(vec![2, 2]), 200).unwrap().dim(), 27);
        let b2 = rs("B2");
        assert_eq!(realize_module(&b2, &Weight(vec![1, 1]), 200).unwrap().dim(), 16);
        let g2 = rs("G2");
        assert_eq!(realize_module(&g2, &Weight(vec![0, 1]), 200).unwrap().dim(), 7);
    }

    #[test]
    fn cap_is_enforced() {
        let a2 = rs("A2");
        match realize_module(&a2, &Weight(vec![4, 4]), 50) {
            Err(LieError::DimensionCap { required, cap }) => {
                assert_eq!(required, "125");
                assert_eq!(cap, 50);
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
