//! JSON report of a prolongation and its structure.

use std::collections::BTreeMap;

use serde::Serialize;
use tanaka_core::scalar::format_rational;
use tanaka_core::Rational;

use tanaka_core::lie::structure::{killing_form, maximal_semisimple_ideal, radical};
use tanaka_core::lie::table::dense_from_sparse;

use crate::analysis::{find_j_element, is_semisimple, nilpotent_part, Classification, Shape, StructureReport};
use crate::engine::Prolongation;
use crate::extension::{Extension, GradedNilpotent};
use crate::ProlongError;

/// `(basis label, coefficient)` pairs of a sparse element.
pub type Coefficients = Vec<(String, String)>;

#[derive(Clone, Debug, Serialize)]
pub struct ComponentJson {
    pub label: String,
    pub dim: usize,
    pub complex: bool,
    pub k: String,
    pub pi: Coefficients,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProlongationReport {
    pub label: String,
    pub degrees: BTreeMap<i64, usize>,
    pub total_dim: usize,
    pub field: &'static str,
    pub termination_degree: i64,
    pub truncated: bool,
    pub pi: Coefficients,
    #[serde(rename = "J_element")]
    pub j_element: Option<Coefficients>,
    pub j_semisimple: Option<bool>,
    pub k_values: Vec<String>,
    pub components: Vec<ComponentJson>,
    pub ad_pi_spectrum: BTreeMap<i64, usize>,
    pub radical_dim: usize,
    pub nilpotent_dim: usize,
    pub semisimple_ideal_dim: usize,
    pub classification: Classification,
    pub shape: Shape,
    pub nilpotent_degrees: BTreeMap<i64, usize>,
    pub l_in_nilpotent: bool,
    pub nilpotent_beyond_l: BTreeMap<i64, usize>,
}

fn coefficients(g: &Prolongation, v: &[(usize, Rational)]) -> Coefficients {
    v.iter().map(|(k, c)| (g.table.labels()[*k].clone(), format_rational(c))).collect()
}

impl ProlongationReport {
    pub fn new(ext: &Extension, g: &Prolongation, s: &StructureReport) -> Self {
        let k_values: Vec<String> = match &s.j {
            Some(j) => j.k_values.iter().map(format_rational).collect(),
            None => vec!["0".into(); ext.components.len()],
        };
        let components = ext
            .components
            .iter()
            .zip(&s.pi_components)
            .zip(&k_values)
            .map(|((c, pi), k)| ComponentJson {
                label: c.label.clone(),
                dim: c.indices.len(),
                complex: c.complex,
                k: k.clone(),
                pi: coefficients(g, pi),
            })
            .collect();
        ProlongationReport {
            label: ext.label.clone(),
            degrees: g.degrees.clone(),
            total_dim: g.dim(),
            field: "real",
            termination_degree: g.termination_degree,
            truncated: g.truncated,
            pi: coefficients(g, &s.pi),
            j_element: s.j.as_ref().map(|j| coefficients(g, &j.j_element)),
            j_semisimple: s.j_semisimple,
            k_values,
            components,
            ad_pi_spectrum: s.spectrum.clone(),
            radical_dim: s.radical.len(),
            nilpotent_dim: s.nilpotent.len(),
            semisimple_ideal_dim: s.semisimple_ideal.len(),
            classification: s.classification,
            shape: s.shape.clone(),
            nilpotent_degrees: s.nilpotent_degrees.clone(),
            l_in_nilpotent: s.l_in_nilpotent,
            nilpotent_beyond_l: s.nilpotent_beyond_l.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Report for a prolongation of a bare graded nilpotent algebra.
#[derive(Clone, Debug, Serialize)]
pub struct NilpotentReport {
    pub label: String,
    pub degrees: BTreeMap<i64, usize>,
    pub total_dim: usize,
    pub field: &'static str,
    pub termination_degree: i64,
    pub truncated: bool,
    #[serde(rename = "J_element")]
    pub j_element: Option<Coefficients>,
    pub j_semisimple: Option<bool>,
    pub radical_dim: Option<usize>,
    pub nilpotent_dim: Option<usize>,
    pub semisimple_ideal_dim: Option<usize>,
    pub classification: Option<Classification>,
}

impl NilpotentReport {
    pub fn new(label: &str, m: &GradedNilpotent, g: &Prolongation) -> Result<Self, ProlongError> {
        let t = &g.table;
        let n = t.dim();
        let j = find_j_element(g, m);
        let j_semisimple = j.as_ref().map(|x| is_semisimple(&t.ad(&dense_from_sparse(x, n))));
        let (mut radical_dim, mut nilpotent_dim, mut semisimple_ideal_dim, mut classification) = (None, None, None, None);
        if !g.truncated {
            let rad = radical(t);
            let sigma = maximal_semisimple_ideal(t)?;
            let nil = nilpotent_part(t, &killing_form(t), &rad)?;
            classification = Some(if rad.is_empty() {
                Classification::Semisimple
            } else if sigma.is_empty() {
                Classification::Proper
            } else {
                Classification::Mixed
            });
            radical_dim = Some(rad.len());
            nilpotent_dim = Some(nil.len());
            semisimple_ideal_dim = Some(sigma.len());
        }
        Ok(NilpotentReport {
            label: label.into(),
            degrees: g.degrees.clone(),
            total_dim: n,
            field: "real",
            termination_degree: g.termination_degree,
            truncated: g.truncated,
            j_element: j.as_ref().map(|x| coefficients(g, x)),
            j_semisimple,
            radical_dim,
            nilpotent_dim,
            semisimple_ideal_dim,
            classification,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
