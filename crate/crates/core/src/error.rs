use std::fmt;

use thiserror::Error;

/// Which law a candidate order relation broke, with named witnesses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RelationViolation {
    NotReflexive { x: String },
    NotAntisymmetric { x: String, y: String },
    NotTransitive { x: String, y: String, z: String },
}

impl RelationViolation {
    pub fn law(&self) -> &'static str {
        match self {
            RelationViolation::NotReflexive { .. } => "reflexivity",
            RelationViolation::NotAntisymmetric { .. } => "antisymmetry",
            RelationViolation::NotTransitive { .. } => "transitivity",
        }
    }
}

impl fmt::Display for RelationViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RelationViolation::NotReflexive { x } => {
                write!(f, "{} violated: {x} <= {x} is missing", self.law())
            }
            RelationViolation::NotAntisymmetric { x, y } => {
                write!(f, "{} violated: {x} <= {y} and {y} <= {x}", self.law())
            }
            RelationViolation::NotTransitive { x, y, z } => write!(
                f,
                "{} violated: {x} <= {y} and {y} <= {z} but not {x} <= {z}",
                self.law()
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("element index {index} out of range for a carrier of {size} elements")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("carrier of {0} elements exceeds the supported maximum of {max}", max = crate::set::MAX_ELEMENTS)]
    CarrierTooLarge(usize),
    #[error("invalid order relation: {0}")]
    Relation(RelationViolation),
    #[error("missing constant `{0}`")]
    MissingConstant(&'static str),
    #[error("structure has no implication table")]
    MissingImplication,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("{0}")]
    Invalid(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("size {size} exceeds the configured cap {cap}")]
    CapExceeded { size: usize, cap: usize },
    #[error("unknown {kind} `{name}`")]
    Unknown { kind: &'static str, name: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
