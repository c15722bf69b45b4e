//! Finite quandles, finite groups and operator words.

mod group;
mod poly;
mod quandle;
mod word;

use thiserror::Error;

pub use group::{FiniteGroup, Perm};
pub use poly::{parse_poly, AlexanderRing};
pub use quandle::{Axiom, FiniteQuandle, PAPER5_ROWS};
pub use word::{apply_operator_word, Assignment, Letter, OperatorWord};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("quandle axiom violated: {0}")]
    AxiomViolation(Axiom),
    #[error("empty operation table")]
    EmptyTable,
    #[error("table is not square ({rows} rows, a row of width {width})")]
    NotSquare { rows: usize, width: usize },
    #[error("table entry {entry} out of range for size {size}")]
    EntryOutOfRange { entry: usize, size: usize },
    #[error("expected {expected} labels, got {got}")]
    LabelCount { expected: usize, got: usize },
    #[error("invalid modulus {0}")]
    InvalidModulus(u64),
    #[error("constant term {0} of the modulus polynomial is not a unit")]
    NonUnitConstantTerm(u64),
    #[error("leading coefficient {0} of the modulus polynomial is not a unit")]
    NonUnitLeadingTerm(u64),
    #[error("modulus polynomial must have positive degree")]
    ConstantModulus,
    #[error("quandle too large to tabulate")]
    TooLarge,
    #[error("cannot parse polynomial `{0}`")]
    BadPolynomial(String),
    #[error("cannot parse permutation `{0}`")]
    BadPermutation(String),
    #[error("unknown group element `{0}`")]
    UnknownElement(String),
    #[error("invalid group table: {0}")]
    InvalidGroupTable(String),
    #[error("generator {0} has no assigned element")]
    UnassignedGenerator(usize),
}
