//! Exact Lie algebra toolkit: scalars over ℚ and ℚ(i), linear algebra,
//! root systems, weights, explicit modules, Chevalley bases, structure
//! theory and real forms.

pub mod lie;
pub mod linalg;
pub mod scalar;
pub mod sparse;

use thiserror::Error;

pub use lie::roots::{build_root_system, cartan_matrix_of_type, RootSystem, Weight};
pub use lie::table::{LieTable, LieTableJson, SparseVec};
pub use linalg::{IncrementalBasis, Matrix};
pub use scalar::{FieldTag, GaussianRational, Rational, Scalar};

/// Lie table over the rationals.
pub type RationalLieTable = LieTable<Rational>;
/// Lie table over the Gaussian rationals.
pub type GaussianLieTable = LieTable<GaussianRational>;
/// Rational matrix.
pub type RationalMatrix = Matrix<Rational>;
/// Gaussian rational matrix.
pub type GaussianMatrix = Matrix<GaussianRational>;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("invalid Cartan matrix: {0}")]
    InvalidCartan(String),
    #[error("Cartan matrix is not of finite type: more than {count} roots, witness {witness:?}")]
    NotFiniteType { count: usize, witness: Vec<i64> },
    #[error("weight {0:?} is not dominant")]
    NotDominant(Vec<i64>),
    #[error("weight has {got} coordinates, rank is {expected}")]
    WrongRank { expected: usize, got: usize },
    #[error("module dimension {required} exceeds the cap {cap}")]
    DimensionCap { required: String, cap: usize },
    #[error("multiset is not a character, witness weight {witness:?}")]
    NotACharacter { witness: Vec<i64> },
    #[error("Jacobi identity fails on basis triple {triple:?}")]
    Jacobi { triple: [usize; 3] },
    #[error("bracket of basis pair {pair:?} has a component {component} of the wrong degree")]
    Grading { pair: [usize; 2], component: usize },
    #[error("map is not an involution (column {0})")]
    NotInvolution(usize),
    #[error("map is not an automorphism on basis pair ({0}, {1})")]
    NotAutomorphism(usize, usize),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("malformed JSON table: {0}")]
    Json(String),
}
