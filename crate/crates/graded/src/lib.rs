//! Graded CR structures on semisimple algebras and their modules: gradations
//! from characteristic functionals, CR functionals, shift enumeration, the
//! combinatorial admissibility conditions and a module-level oracle.

pub mod algebra;
pub mod conditions;
pub mod diagram;
pub mod oracle;
pub mod realtype;
pub mod report;

use tanaka_core::{LieError, Weight};
use thiserror::Error;

pub use algebra::{attach_cr, grade_algebra, CharacteristicFunctional, CrFunctional, GradedCrAlgebra};
pub use conditions::{
    admissible_structures, build_partition_iv, check_condition_ii, check_condition_iii, CrPartition, Structure,
};
pub use diagram::{enumerate_shifts, WeightDiagram};
pub use oracle::{module_level_validate, oracle_partitions, validate_assignment, RealExtension, ValidationReport};
pub use realtype::{real_form_admissible, RealIrreducible, RealType, SelfConjugateType, WeightInvolution};
pub use report::AdmissibilityReport;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum GradedError {
    #[error("{what} has {got} values, rank is {expected}")]
    WrongLength { what: &'static str, expected: usize, got: usize },
    #[error("root {root:?} has non-integral degree {value}")]
    NonIntegralDegree { root: Vec<i64>, value: String },
    #[error("root {root:?} of degree -1 has α(J)/i = {value}, expected ±1")]
    CrValue { root: Vec<i64>, value: String },
    #[error("roots {first:?} and {second:?} of the same CR type sum to a root")]
    CrPairSumsToRoot { first: Vec<i64>, second: Vec<i64> },
    #[error("degree 0 root {degree_zero:?} does not commute with J on root {root:?}")]
    CrNotEquivariant { degree_zero: Vec<i64>, root: Vec<i64> },
    #[error("admissibility conditions disagree: {0}")]
    ConditionDisagreement(String),
    #[error("weight {0} of degree -1 has multiplicity greater than one")]
    MultiplicityOne(Weight),
    #[error("self-conjugate weight {0} has no declared real type")]
    MissingRealType(Weight),
    #[error("invalid weight involution: {0}")]
    InvalidInvolution(String),
    #[error(transparent)]
    Lie(#[from] LieError),
}
