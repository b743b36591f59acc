//! Weight systems of irreducible modules (Freudenthal) and character
//! decomposition.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use num_traits::{Signed, ToPrimitive, Zero};

use crate::lie::roots::{to_rational, RootSystem, Weight};
use crate::scalar::{int, Rational};
use crate::LieError;

/// A formal character: weight ↦ positive multiplicity.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CharacterMultiset {
    entries: BTreeMap<Weight, u64>,
}

impl CharacterMultiset {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_entries(entries: impl IntoIterator<Item = (Weight, u64)>) -> Self {
        let mut c = Self::new();
        for (w, m) in entries {
            c.add_weight(w, m);
        }
        c
    }

    pub fn add_weight(&mut self, w: Weight, m: u64) {
        if m > 0 {
            *self.entries.entry(w).or_insert(0) += m;
        }
    }

    pub fn multiplicity(&self, w: &Weight) -> u64 {
        self.entries.get(w).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> &BTreeMap<Weight, u64> {
        &self.entries
    }

    pub fn weights(&self) -> impl Iterator<Item = &Weight> {
        self.entries.keys()
    }

    pub fn weight_set(&self) -> BTreeSet<Weight> {
        self.entries.keys().cloned().collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Total mass, i.e. the dimension of the module.
    pub fn dimension(&self) -> u64 {
        self.entries.values().sum()
    }

    /// `self + k · other`.
    pub fn add_scaled(&mut self, other: &CharacterMultiset, k: u64) {
        for (w, m) in &other.entries {
            self.add_weight(w.clone(), m * k);
        }
    }

    /// Character of the dual module.
    pub fn dual(&self) -> CharacterMultiset {
        Self::from_entries(self.entries.iter().map(|(w, m)| (w.neg(), *m)))
    }
}

/// Weights of `V(λ)`: the smallest set containing `λ` and closed under
/// `α`-strings (`μ ↦ μ − kα`, `0 ≤ k ≤ ⟨μ, α^∨⟩`).
fn saturated_weights(rs: &RootSystem, highest: &Weight) -> BTreeSet<Weight> {
    let roots: Vec<(Weight, Vec<i64>)> =
        rs.positive_roots().iter().map(|a| (rs.root_to_weight(a), a.clone())).collect();
    let mut set = BTreeSet::from([highest.clone()]);
    let mut queue = VecDeque::from([highest.clone()]);
    while let Some(mu) = queue.pop_front() {
        for (aw, a) in &roots {
            let n = rs.coroot_pairing(&mu, a).to_integer().to_i64().expect("small pairing");
            let step = if n > 0 { aw.neg() } else { aw.clone() };
            let mut cur = mu.clone();
            for _ in 0..n.abs() {
                cur = cur.add(&step);
                if set.insert(cur.clone()) {
                    queue.push_back(cur.clone());
                }
            }
        }
    }
    set
}

/// Weight multiplicities of the irreducible module of highest weight `λ`
/// by Freudenthal's recursion, checked against the Weyl dimension formula.
pub fn weight_system(rs: &RootSystem, highest: &Weight) -> Result<CharacterMultiset, LieError> {
    rs.check_weight(highest)?;
    if !highest.is_dominant() {
        return Err(LieError::NotDominant(highest.0.clone()));
    }
    let weights = saturated_weights(rs, highest);
    let top = rs.weight_to_root_coords(highest);
    // depth = height of λ − μ
    let mut ordered: Vec<(i64, Weight)> = weights
        .iter()
        .map(|w| {
            let x = rs.weight_to_root_coords(w);
            let d = top.iter().zip(&x).fold(Rational::zero(), |acc, (a, b)| acc + a - b);
            (d.to_integer().to_i64().expect("integral depth"), w.clone())
        })
        .collect();
    ordered.sort();

    let rho = rs.weight_to_root_coords(&rs.rho());
    let shifted = |x: &[Rational]| -> Vec<Rational> { x.iter().zip(&rho).map(|(a, b)| a + b).collect() };
    let top_rho = shifted(&top);
    let top_norm = rs.inner(&top_rho, &top_rho);
    let pos: Vec<(Weight, Vec<Rational>)> =
        rs.positive_roots().iter().map(|a| (rs.root_to_weight(a), to_rational(a))).collect();

    let mut mult: HashMap<Weight, Rational> = HashMap::new();
    for (depth, mu) in &ordered {
        if *depth == 0 {
            mult.insert(mu.clone(), int(1));
            continue;
        }
        let mu_x = rs.weight_to_root_coords(mu);
        let mu_rho = shifted(&mu_x);
        let denom = &top_norm - rs.inner(&mu_rho, &mu_rho);
        if denom.is_zero() {
            mult.insert(mu.clone(), Rational::zero());
            continue;
        }
        let mut sum = Rational::zero();
        for (aw, ax) in &pos {
            let mut cur = mu.add(aw);
            while let Some(m) = mult.get(&cur) {
                let cx = rs.weight_to_root_coords(&cur);
                sum += m * rs.inner(&cx, ax);
                cur = cur.add(aw);
            }
        }
        mult.insert(mu.clone(), sum * int(2) / denom);
    }

    let mut out = CharacterMultiset::new();
    for (w, m) in mult {
        assert!(m.is_integer() && !m.is_negative(), "multiplicity must be a natural number");
        out.add_weight(w, m.to_integer().to_u64().expect("multiplicity fits in u64"));
    }
    let weyl = rs.weyl_dimension(highest)?;
    if num_bigint::BigInt::from(out.dimension()) != weyl {
        return Err(LieError::Verification(format!(
            "Freudenthal mass {} differs from Weyl dimension {weyl} for {highest}",
            out.dimension()
        )));
    }
    Ok(out)
}

/// Decomposes a character into irreducible characters by repeatedly removing
/// the character of a weight of largest height. Returns `(highest weight,
/// multiplicity)` pairs in removal order.
pub fn decompose_character(rs: &RootSystem, character: &CharacterMultiset) -> Result<Vec<(Weight, u64)>, LieError> {
    let mut rest: BTreeMap<Weight, i128> = character.entries().iter().map(|(w, m)| (w.clone(), i128::from(*m))).collect();
    let mut out = Vec::new();
    let height = |w: &Weight| -> Rational { rs.weight_to_root_coords(w).into_iter().sum() };
    loop {
        rest.retain(|_, m| *m != 0);
        let Some(top) = rest.keys().max_by(|a, b| height(a).cmp(&height(b)).then_with(|| a.cmp(b))).cloned() else {
            break;
        };
        let k = rest[&top];
        if !top.is_dominant() || k < 0 {
            return Err(LieError::NotACharacter { witness: top.0 });
        }
        let irr = weight_system(rs, &top)?;
        for (w, m) in irr.entries() {
            let e = rest.entry(w.clone()).or_insert(0);
            *e -= k * i128::from(*m);
            if *e < 0 {
                return Err(LieError::NotACharacter { witness: w.0.clone() });
            }
        }
        out.push((top, k as u64));
    }
    Ok(out)
}

/// Sum of irreducible characters with multiplicities.
pub fn character_of_sum(rs: &RootSystem, parts: &[(Weight, u64)]) -> Result<CharacterMultiset, LieError> {
    let mut c = CharacterMultiset::new();
    for (w, k) in parts {
        c.add_scaled(&weight_system(rs, w)?, *k);
    }
    Ok(c)
}

/// Dominant weights with coordinate sum at most `bound`, in graded-lex order
/// (by total, then lexicographically descending: `(1,0)` before `(0,1)`).
pub fn dominant_weights_up_to(rank: usize, bound: u64) -> Vec<Weight> {
    fn rec(prefix: &mut Vec<i64>, rank: usize, left: i64, out: &mut Vec<Weight>) {
        if prefix.len() == rank {
            out.push(Weight(prefix.clone()));
            return;
        }
        for c in 0..=left {
            prefix.push(c);
            rec(prefix, rank, left - c, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), rank, bound as i64, &mut out);
    out.sort_by(|a, b| {
        let sa: i64 = a.0.iter().sum();
        let sb: i64 = b.0.iter().sum();
        sa.cmp(&sb).then_with(|| b.cmp(a))
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::roots::{build_root_system, cartan_matrix_of_type};

    fn a(n: usize) -> RootSystem {
        build_root_system(&cartan_matrix_of_type(&format!("A{n}")).unwrap()).unwrap()
    }

    #[test]
    fn standard_and_adjoint_of_sl3() {
        let rs = a(2);
        let std = weight_system(&rs, &Weight(vec![1, 0])).unwrap();
        assert_eq!(std.len(), 3);
        assert!(std.entries().values().all(|&m| m == 1));
        let adj = weight_system(&rs, &Weight(vec![1, 1])).unwrap();
        assert_eq!(adj.dimension(), 8);
        assert_eq!(adj.multiplicity(&Weight(vec![0, 0])), 2);
        assert_eq!(adj.len(), 7);
    }

    #[test]
    fn sl2_modules() {
        let rs = a(1);
        for n in 1..8 {
            let c = weight_system(&rs, &Weight(vec![n - 1])).unwrap();
            assert_eq!(c.len() as i64, n);
            assert!(c.entries().values().all(|&m| m == 1));
        }
    }

    #[test]
    fn decomposition() {
        let rs = a(2);
        let c = character_of_sum(&rs, &[(Weight(vec![1, 0]), 1), (Weight(vec![0, 1]), 1)]).unwrap();
        let d = decompose_character(&rs, &c).unwrap();
        assert_eq!(d, vec![(Weight(vec![1, 0]), 1), (Weight(vec![0, 1]), 1)]);
        let adj = weight_system(&rs, &Weight(vec![1, 1])).unwrap();
        assert_eq!(decompose_character(&rs, &adj).unwrap(), vec![(Weight(vec![1, 1]), 1)]);
        let mut two = adj.clone();
        two.add_scaled(&adj.dual(), 1);
        assert_eq!(decompose_character(&rs, &two).unwrap(), vec![(Weight(vec![1, 1]), 2)]);
    }

    #[test]
    fn non_character_is_rejected() {
        let rs = a(2);
        let c = CharacterMultiset::from_entries([(Weight(vec![1, 0]), 1), (Weight(vec![0, 1]), 1)]);
        // (1,0) is removed with its three weights; (-1,1) is then missing.
        assert!(matches!(decompose_character(&rs, &c), Err(LieError::NotACharacter { .. })));
    }

    #[test]
    fn graded_lex_order() {
        let w = dominant_weights_up_to(2, 2);
        let labels: Vec<String> = w.iter().map(Weight::label).collect();
        assert_eq!(labels, ["(0,0)", "(1,0)", "(0,1)", "(2,0)", "(1,1)", "(0,2)"]);
    }
}
