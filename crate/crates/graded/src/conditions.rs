//! Combinatorial admissibility conditions on graded weight diagrams.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;
use tanaka_core::lie::weights::weight_system;
use tanaka_core::{Rational, Weight};

use crate::algebra::GradedCrAlgebra;
use crate::diagram::{enumerate_shifts, WeightDiagram};
use crate::GradedError;

/// Split of `P_{−1}` into the `+i` and `−i` eigen-weights of `J`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CrPartition {
    pub p10: BTreeSet<Weight>,
    pub p01: BTreeSet<Weight>,
}

/// One of the four patterns of condition (iii).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Combination {
    /// `λ − α − α′`
    MinusAlphaAlpha,
    /// `λ − α + β`
    MinusAlphaPlusBeta,
    /// `λ − β − β′`
    MinusBetaBeta,
    /// `λ + α − β`
    PlusAlphaMinusBeta,
}

impl fmt::Display for Combination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Combination::MinusAlphaAlpha => "λ-α-α'",
            Combination::MinusAlphaPlusBeta => "λ-α+β",
            Combination::MinusBetaBeta => "λ-β-β'",
            Combination::PlusAlphaMinusBeta => "λ+α-β",
        })
    }
}

/// A forbidden configuration found by condition (iii).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub lambda: Weight,
    pub combination: Combination,
    pub roots: (Vec<i64>, Vec<i64>),
    pub offending: Weight,
}

/// Why condition (iv) failed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartitionFailure {
    pub weight: Weight,
    pub rule: String,
}

/// An admissible CR structure on an irreducible module.
#[derive(Clone, Debug, PartialEq)]
pub struct Structure {
    pub diagram: WeightDiagram,
    pub partition: CrPartition,
    /// `λ(J)/i` on `P_0 ∪ P_{−2}`.
    pub k: Rational,
}

/// The constant value of `λ(J)/i` on `P_0 ∪ P_{−2}`, if it is constant.
pub fn check_condition_ii(d: &WeightDiagram, g: &GradedCrAlgebra) -> Option<Rational> {
    let mut values = d.weights_of_degree(0).into_iter().chain(d.weights_of_degree(-2)).map(|w| g.weight_j(&w));
    let first = values.next()?;
    values.all(|v| v == first).then_some(first)
}

/// All forbidden configurations `λ ∈ P_{−2}`, `α, α′ ∈ R^{1,0}`, `β, β′ ∈ R^{0,1}`.
pub fn check_condition_iii(d: &WeightDiagram, g: &GradedCrAlgebra) -> Vec<Violation> {
    let rs = &g.root_system;
    let a: Vec<(Vec<i64>, Weight)> = g.r10.iter().map(|r| (r.clone(), rs.root_to_weight(r))).collect();
    let b: Vec<(Vec<i64>, Weight)> = g.r01.iter().map(|r| (r.clone(), rs.root_to_weight(r))).collect();
    let mut out = Vec::new();
    for lambda in d.weights_of_degree(-2) {
        let mut push = |combination, x: &(Vec<i64>, Weight), y: &(Vec<i64>, Weight), w: Weight| {
            if d.contains(&w) {
                out.push(Violation { lambda: lambda.clone(), combination, roots: (x.0.clone(), y.0.clone()), offending: w });
            }
        };
        for x in &a {
            for y in &a {
                push(Combination::MinusAlphaAlpha, x, y, lambda.sub(&x.1).sub(&y.1));
            }
        }
        for x in &a {
            for y in &b {
                push(Combination::MinusAlphaPlusBeta, x, y, lambda.sub(&x.1).add(&y.1));
                push(Combination::PlusAlphaMinusBeta, x, y, lambda.add(&x.1).sub(&y.1));
            }
        }
        for x in &b {
            for y in &b {
                push(Combination::MinusBetaBeta, x, y, lambda.sub(&x.1).sub(&y.1));
            }
        }
    }
    out
}

/// Checks that `partition` splits `P_{−1}` and satisfies rules (a) and (b).
pub fn check_partition_iv(d: &WeightDiagram, g: &GradedCrAlgebra, part: &CrPartition) -> Result<(), PartitionFailure> {
    let fail = |w: &Weight, rule: &str| Err(PartitionFailure { weight: w.clone(), rule: rule.to_string() });
    let p1 = d.weights_of_degree(-1);
    if let Some(w) = part.p10.intersection(&part.p01).next() {
        return fail(w, "overlap");
    }
    for w in &p1 {
        if !part.p10.contains(w) && !part.p01.contains(w) {
            return fail(w, "uncovered");
        }
    }
    for w in part.p10.iter().chain(&part.p01) {
        if !p1.contains(w) {
            return fail(w, "outside P_-1");
        }
    }
    let rs = &g.root_system;
    let (b0, b10, b01) = g.simple_split();
    let to_w = |v: &[Vec<i64>]| -> Vec<Weight> { v.iter().map(|r| rs.root_to_weight(r)).collect() };
    let (b0, b10, b01) = (to_w(&b0), to_w(&b10), to_w(&b01));
    for (set, name) in [(&part.p10, "(a) P10±B0"), (&part.p01, "(a) P01±B0")] {
        for w in set {
            for b in &b0 {
                for x in [w.add(b), w.sub(b)] {
                    if d.contains(&x) && !set.contains(&x) {
                        return fail(&x, name);
                    }
                }
            }
        }
    }
    let rules: [(&BTreeSet<Weight>, &Vec<Weight>, i64, &str); 4] = [
        (&part.p10, &b10, 1, "(b) P10+B10"),
        (&part.p10, &b01, -1, "(b) P10-B01"),
        (&part.p01, &b01, 1, "(b) P01+B01"),
        (&part.p01, &b10, -1, "(b) P01-B10"),
    ];
    for (set, roots, s, name) in rules {
        for w in set {
            for r in roots {
                let x = w.add(&r.scale(s));
                if d.contains(&x) {
                    return fail(&x, name);
                }
            }
        }
    }
    Ok(())
}

/// `P^{1,0} = ∪ (λ − R^{0,1}) ∩ P`, `P^{0,1} = ∪ (λ − R^{1,0}) ∩ P` over `λ ∈ P_{−2}`,
/// then verified.
pub fn build_partition_iv(d: &WeightDiagram, g: &GradedCrAlgebra) -> Result<CrPartition, PartitionFailure> {
    let rs = &g.root_system;
    let mut part = CrPartition::default();
    for lambda in d.weights_of_degree(-2) {
        for r in &g.r01 {
            let w = lambda.sub(&rs.root_to_weight(r));
            if d.contains(&w) {
                part.p10.insert(w);
            }
        }
        for r in &g.r10 {
            let w = lambda.sub(&rs.root_to_weight(r));
            if d.contains(&w) {
                part.p01.insert(w);
            }
        }
    }
    check_partition_iv(d, g, &part)?;
    Ok(part)
}

/// Verdicts of the three conditions on one diagram.
#[derive(Clone, Debug, PartialEq)]
pub struct ConditionVerdicts {
    pub ii: Option<Rational>,
    pub iii: Vec<Violation>,
    pub iv: Result<CrPartition, PartitionFailure>,
}

impl ConditionVerdicts {
    pub fn evaluate(d: &WeightDiagram, g: &GradedCrAlgebra) -> Self {
        ConditionVerdicts { ii: check_condition_ii(d, g), iii: check_condition_iii(d, g), iv: build_partition_iv(d, g) }
    }

    /// `Some(verdict)` when the three conditions agree.
    pub fn agreed(&self) -> Option<bool> {
        let v = [self.ii.is_some(), self.iii.is_empty(), self.iv.is_ok()];
        (v[0] == v[1] && v[1] == v[2]).then_some(v[0])
    }
}

/// All admissible structures on the irreducible module of highest weight `λ`,
/// one per admissible shift.
pub fn admissible_structures(g: &GradedCrAlgebra, highest: &Weight) -> Result<Vec<Structure>, GradedError> {
    let character = weight_system(&g.root_system, highest)?;
    let mut out = Vec::new();
    for d in enumerate_shifts(g, &character) {
        let v = ConditionVerdicts::evaluate(&d, g);
        match v.agreed() {
            None => {
                return Err(GradedError::ConditionDisagreement(format!(
                    "{highest} shift {}: (ii) {}, (iii) {}, (iv) {}",
                    d.shift,
                    v.ii.is_some(),
                    v.iii.is_empty(),
                    v.iv.is_ok()
                )))
            }
            Some(false) => {}
            Some(true) => {
                for w in d.weights_of_degree(-1) {
                    if d.character.multiplicity(&w) != 1 {
                        return Err(GradedError::MultiplicityOne(w));
                    }
                }
                let partition = v.iv.expect("agreed");
                out.push(Structure { diagram: d, partition, k: v.ii.expect("agreed") });
            }
        }
    }
    Ok(out)
}
