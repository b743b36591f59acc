//! JSON admissibility reports.

use std::collections::BTreeMap;

use serde::Serialize;
use tanaka_core::scalar::format_rational;
use tanaka_core::Weight;

use crate::algebra::GradedCrAlgebra;
use crate::conditions::Structure;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlgebraJson {
    #[serde(rename = "type")]
    pub kind: String,
    #[serde(rename = "E")]
    pub e: Vec<String>,
    #[serde(rename = "J")]
    pub j: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartitionJson {
    pub p10: Vec<Vec<i64>>,
    pub p01: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureJson {
    pub shift: String,
    pub degrees: BTreeMap<String, i64>,
    pub partition: PartitionJson,
    pub k: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdmissibilityReport {
    pub algebra: AlgebraJson,
    pub weight: Vec<i64>,
    pub structures: Vec<StructureJson>,
}

impl AlgebraJson {
    pub fn of(g: &GradedCrAlgebra) -> Self {
        AlgebraJson { kind: g.label.clone(), e: g.e_strings(), j: g.j_strings() }
    }
}

impl StructureJson {
    pub fn of(s: &Structure) -> Self {
        let weights = |set: &std::collections::BTreeSet<Weight>| set.iter().map(|w| w.0.clone()).collect();
        StructureJson {
            shift: format_rational(&s.diagram.shift),
            degrees: s.diagram.degrees.iter().map(|(w, d)| (w.label(), *d)).collect(),
            partition: PartitionJson { p10: weights(&s.partition.p10), p01: weights(&s.partition.p01) },
            k: format_rational(&s.k),
        }
    }
}

impl AdmissibilityReport {
    pub fn new(g: &GradedCrAlgebra, weight: &Weight, structures: &[Structure]) -> Self {
        AdmissibilityReport {
            algebra: AlgebraJson::of(g),
            weight: weight.0.clone(),
            structures: structures.iter().map(StructureJson::of).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
