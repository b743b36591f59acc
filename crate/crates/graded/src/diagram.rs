//! Graded weight diagrams: a character together with the degree function
//! `λ ↦ λ(E) + shift`.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::ToPrimitive;
use tanaka_core::lie::weights::CharacterMultiset;
use tanaka_core::{Rational, Weight};

use crate::algebra::GradedCrAlgebra;

#[derive(Clone, Debug, PartialEq)]
pub struct WeightDiagram {
    pub character: CharacterMultiset,
    pub shift: Rational,
    pub degrees: BTreeMap<Weight, i64>,
}

impl WeightDiagram {
    /// Degrees `λ(E) + shift`; `None` if some degree is not an integer.
    pub fn new(g: &GradedCrAlgebra, character: CharacterMultiset, shift: Rational) -> Option<Self> {
        let mut degrees = BTreeMap::new();
        for w in character.weights() {
            let d = g.weight_e(w) + &shift;
            if !d.is_integer() {
                return None;
            }
            degrees.insert(w.clone(), d.to_integer().to_i64()?);
        }
        Some(WeightDiagram { character, shift, degrees })
    }

    pub fn degree(&self, w: &Weight) -> Option<i64> {
        self.degrees.get(w).copied()
    }

    /// `P_p`.
    pub fn weights_of_degree(&self, p: i64) -> BTreeSet<Weight> {
        self.degrees.iter().filter(|(_, &d)| d == p).map(|(w, _)| w.clone()).collect()
    }

    pub fn weight_set(&self) -> BTreeSet<Weight> {
        self.character.weight_set()
    }

    pub fn contains(&self, w: &Weight) -> bool {
        self.degrees.contains_key(w)
    }

    /// Kind `μ`: the largest `p` with `l_{−p} ≠ 0`.
    pub fn kind(&self) -> i64 {
        self.degrees.values().map(|d| -d).max().unwrap_or(0)
    }

    /// Co-kind `ν`: the largest `p` with `l_p ≠ 0`.
    pub fn cokind(&self) -> i64 {
        self.degrees.values().copied().max().unwrap_or(0)
    }

    /// Degree lines as `(degree, weights)` from the top degree down.
    pub fn lines(&self) -> Vec<(i64, Vec<Weight>)> {
        let mut by: BTreeMap<i64, Vec<Weight>> = BTreeMap::new();
        for (w, d) in &self.degrees {
            by.entry(*d).or_default().push(w.clone());
        }
        by.into_iter().rev().collect()
    }

    /// The same diagram with every degree moved by `t`.
    pub fn regraded(&self, t: i64) -> WeightDiagram {
        WeightDiagram {
            character: self.character.clone(),
            shift: &self.shift + Rational::from_integer(t.into()),
            degrees: self.degrees.iter().map(|(w, d)| (w.clone(), d + t)).collect(),
        }
    }
}

/// All shifts for which `P_{−1}` and `P_{−2}` are nonempty, from the line of
/// largest `E`-value down.
pub fn enumerate_shifts(g: &GradedCrAlgebra, character: &CharacterMultiset) -> Vec<WeightDiagram> {
    let values: BTreeSet<Rational> = character.weights().map(|w| g.weight_e(w)).collect();
    let one = Rational::from_integer(1.into());
    values
        .iter()
        .rev()
        .filter(|v| values.contains(&(*v - &one)))
        .filter_map(|v| WeightDiagram::new(g, character.clone(), -&one - v))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{sl2_complex, sl3_levi_tanaka};
    use tanaka_core::lie::weights::weight_system;

    #[test]
    fn standard_rep_has_two_shifts() {
        let g = sl3_levi_tanaka();
        let c = weight_system(&g.root_system, &Weight(vec![1, 0])).unwrap();
        let d = enumerate_shifts(&g, &c);
        assert_eq!(d.len(), 2);
        let degs: Vec<BTreeSet<i64>> = d.iter().map(|x| x.degrees.values().copied().collect()).collect();
        assert_eq!(degs[0], BTreeSet::from([-1, -2, -3]));
        assert_eq!(degs[1], BTreeSet::from([0, -1, -2]));
        assert_eq!(d[0].kind(), 3);
        assert_eq!(d[1].cokind(), 0);
    }

    #[test]
    fn sl2_line_count() {
        let g = sl2_complex();
        for n in 2..7 {
            let c = weight_system(&g.root_system, &Weight(vec![n - 1])).unwrap();
            assert_eq!(enumerate_shifts(&g, &c).len() as i64, n - 1);
        }
        let trivial = weight_system(&g.root_system, &Weight(vec![0])).unwrap();
        assert!(enumerate_shifts(&g, &trivial).is_empty());
    }
}
