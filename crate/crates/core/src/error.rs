//! Crate-wide error type shared by all modules.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("empty carrier: {0}")]
    EmptyCarrier(&'static str),

    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),

    #[error("not a partial order: {0}")]
    NotAPartialOrder(String),

    #[error("not a lattice: {which} of `{a}` and `{b}` does not exist")]
    NotALattice {
        a: String,
        b: String,
        which: &'static str,
    },

    #[error("unknown lattice element `{0}`")]
    UnknownLatticeElement(String),

    #[error("invalid group table: {0}")]
    InvalidTable(String),

    #[error("generated closure reached {reached} elements, cap is {cap}")]
    ClosureTooLarge { reached: usize, cap: usize },

    #[error("unknown group element `{0}`")]
    UnknownGroupElement(String),

    #[error("bad permutation literal `{0}`")]
    BadPermutation(String),

    #[error("not a homomorphism: {0}")]
    NotAHomomorphism(String),

    #[error("generator images do not determine a total map: {0}")]
    IllDefinedOnGenerators(String),

    #[error("not a subgroup: {0}")]
    NotASubgroup(String),

    #[error("mixed carriers: {0}")]
    MixedCarriers(&'static str),

    #[error("not an L-subgroup: {0}")]
    NotAnLSubgroup(String),

    #[error("not contained: {0}")]
    NotContained(String),

    #[error("point {value}@{at} lies outside the ambient L-subgroup")]
    PointNotInAmbient { value: String, at: String },

    #[error("tip mismatch: expected {expected}, got {got}")]
    TipMismatch { expected: String, got: String },

    #[error("properness violated: {0}")]
    ProperityViolated(String),

    #[error("search space of {size} candidates exceeds cap {cap}")]
    SearchSpaceTooLarge { size: u128, cap: u128 },

    #[error("operation requires a chain lattice")]
    NotAChain,

    #[error("operation requires a distributive lattice")]
    NotDistributive,

    #[error("bounds exceeded: {0}")]
    BoundsExceeded(String),

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),

    #[error("{0}")]
    Invalid(String),
}
