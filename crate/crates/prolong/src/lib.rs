//! Maximal transitive CR prolongations of graded abelian extensions
//! `s ⊕ l` and the structure of the resulting algebras.

pub mod analysis;
pub mod engine;
pub mod extension;
pub mod presets;
pub mod report;
pub mod solve;

use tanaka_core::LieError;
use tanaka_graded::GradedError;
use thiserror::Error;

pub use analysis::{
    decompose_extension, decompose_j, embed_extension, find_j_element, is_semisimple, projection_element,
    structure_report, Classification, JDecomposition, Shape, StructureReport,
};
pub use engine::{default_max_degree, prolong, tanaka_prolongation, Prolongation};
pub use extension::{assemble_m, nilpotent_from_table, Component, Extension, GradedNilpotent};
pub use report::{NilpotentReport, ProlongationReport};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ProlongError {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("negative part fails check {check}: {witness:?}")]
    InvalidNilpotent { check: String, witness: (String, String) },
    #[error("inconsistent prolongation: {0}")]
    Inconsistent(String),
    #[error("no degree-0 element induces J")]
    NoJElement,
    #[error("J_g − J_s is not a combination of the complex units of the summands")]
    JDecomposition,
    #[error("{0}")]
    Spectrum(String),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Graded(#[from] GradedError),
}

/// An extension with its negative part, prolongation and, unless the
/// prolongation was truncated, its structure.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub m: GradedNilpotent,
    pub g: Prolongation,
    pub structure: Option<StructureReport>,
}

impl Analysis {
    pub fn report(&self, ext: &Extension) -> Option<ProlongationReport> {
        self.structure.as_ref().map(|s| ProlongationReport::new(ext, &self.g, s))
    }
}

/// Prolongs `ext` up to `max_degree` (default: kind + 4) and analyzes the result.
pub fn analyze(ext: &Extension, max_degree: Option<i64>) -> Result<Analysis, ProlongError> {
    let m = assemble_m(ext)?;
    let g = tanaka_prolongation(&m, max_degree.unwrap_or_else(|| default_max_degree(&m)), true)?;
    let structure = if g.truncated { None } else { Some(structure_report(&g, ext, &m)?) };
    Ok(Analysis { m, g, structure })
}
