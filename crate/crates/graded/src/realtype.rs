//! Merging a classification over the complexification into one over a real
//! form, given the action of the conjugation on weights.

use std::collections::BTreeMap;

use serde::Serialize;
use tanaka_core::Weight;

use crate::GradedError;

/// Declared type of a self-conjugate irreducible module.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SelfConjugateType {
    Real,
    Quaternionic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RealType {
    Real,
    Complex,
    Quaternionic,
}

impl From<SelfConjugateType> for RealType {
    fn from(t: SelfConjugateType) -> Self {
        match t {
            SelfConjugateType::Real => RealType::Real,
            SelfConjugateType::Quaternionic => RealType::Quaternionic,
        }
    }
}

/// One real irreducible module: a self-conjugate weight, or a conjugate pair
/// `(ω, ω^σ)` listed once under its smaller weight.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RealIrreducible<T> {
    pub weight: Weight,
    pub conjugate: Option<Weight>,
    pub real_type: RealType,
    pub result: T,
    pub conjugate_result: Option<T>,
}

/// Integer matrix on fundamental coordinates acting as an involution of the
/// weight lattice that preserves dominance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightInvolution(Vec<Vec<i64>>);

impl WeightInvolution {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self, GradedError> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(GradedError::InvalidInvolution("matrix is not square".into()));
        }
        let s = WeightInvolution(rows);
        for i in 0..n {
            let mut e = vec![0; n];
            e[i] = 1;
            let img = s.apply(&Weight(e.clone()));
            if s.apply(&img).0 != e {
                return Err(GradedError::InvalidInvolution(format!("square is not the identity on ω{}", i + 1)));
            }
            if !img.is_dominant() {
                return Err(GradedError::InvalidInvolution(format!("image of ω{} is not dominant", i + 1)));
            }
        }
        Ok(s)
    }

    pub fn identity(rank: usize) -> Self {
        WeightInvolution((0..rank).map(|i| (0..rank).map(|j| i64::from(i == j)).collect()).collect())
    }

    /// `λ ↦ λ^σ` for a permutation `σ` of the fundamental weights.
    pub fn from_permutation(perm: &[usize]) -> Result<Self, GradedError> {
        let n = perm.len();
        let rows = (0..n).map(|i| (0..n).map(|j| i64::from(perm[j] == i)).collect()).collect();
        Self::new(rows)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, w: &Weight) -> Weight {
        Weight(self.0.iter().map(|row| row.iter().zip(&w.0).map(|(a, b)| a * b).sum()).collect())
    }
}

/// Real classification from per-weight results over the complexification.
pub fn real_form_admissible<T: Clone>(
    results: &BTreeMap<Weight, T>,
    involution: &WeightInvolution,
    declarations: &BTreeMap<Weight, SelfConjugateType>,
) -> Result<Vec<RealIrreducible<T>>, GradedError> {
    let mut out = Vec::new();
    for (w, r) in results {
        if w.rank() != involution.rank() {
            return Err(GradedError::WrongLength { what: "weight", expected: involution.rank(), got: w.rank() });
        }
        let c = involution.apply(w);
        if c == *w {
            let t = declarations.get(w).ok_or_else(|| GradedError::MissingRealType(w.clone()))?;
            out.push(RealIrreducible {
                weight: w.clone(),
                conjugate: None,
                real_type: (*t).into(),
                result: r.clone(),
                conjugate_result: None,
            });
        } else if *w < c {
            let cr = results
                .get(&c)
                .ok_or_else(|| GradedError::InvalidInvolution(format!("conjugate {c} of {w} has no result")))?;
            out.push(RealIrreducible {
                weight: w.clone(),
                conjugate: Some(c),
                real_type: RealType::Complex,
                result: r.clone(),
                conjugate_result: Some(cr.clone()),
            });
        } else if !results.contains_key(&c) {
            return Err(GradedError::InvalidInvolution(format!("conjugate {c} of {w} has no result")));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(a: i64, b: i64) -> Weight {
        Weight(vec![a, b])
    }

    #[test]
    fn swap_merges_pairs() {
        let s = WeightInvolution::from_permutation(&[1, 0]).unwrap();
        let results = BTreeMap::from([(w(1, 0), 2), (w(0, 1), 2), (w(1, 1), 2)]);
        let decl = BTreeMap::from([(w(1, 1), SelfConjugateType::Real)]);
        let r = real_form_admissible(&results, &s, &decl).unwrap();
        assert_eq!(r.len(), 2);
        assert_eq!(r[0].weight, w(0, 1));
        assert_eq!(r[0].conjugate, Some(w(1, 0)));
        assert_eq!(r[0].real_type, RealType::Complex);
        assert_eq!(r[1].real_type, RealType::Real);
    }

    #[test]
    fn missing_declaration_names_weight() {
        let s = WeightInvolution::identity(2);
        let results = BTreeMap::from([(w(1, 1), ())]);
        assert_eq!(
            real_form_admissible(&results, &s, &BTreeMap::new()),
            Err(GradedError::MissingRealType(w(1, 1)))
        );
    }

    #[test]
    fn rejects_non_involutions() {
        assert!(WeightInvolution::new(vec![vec![0, 1], vec![1, 1]]).is_err());
        assert!(WeightInvolution::new(vec![vec![-1, 0], vec![0, 1]]).is_err());
    }
}
