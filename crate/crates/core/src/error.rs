use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),
    #[error("invalid relation: {0}")]
    InvalidRelation(String),
    #[error("ideal is not admissible: relation-free cycle {0}")]
    NotAdmissible(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid Kupisch series: {0}")]
    InvalidKupisch(String),
    #[error("not a Nakayama quiver: {0}")]
    NotNakayama(String),
    #[error("invalid starlike shape: {0}")]
    InvalidStarlike(String),
    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),
    #[error("algebra mismatch")]
    AlgebraMismatch,
    #[error("not a morphism: {0}")]
    NotMorphism(String),
    #[error("resolution cap {0} exceeded")]
    ResolutionCap(usize),
    #[error("enumeration cap {0} exceeded")]
    CapExceeded(usize),
    #[error("decomposition failed: {0}")]
    DecompositionFailure(String),
    #[error("algebra is not representation-directed: {0}")]
    NotDirected(String),
    #[error("invalid abutment: {0}")]
    InvalidAbutment(String),
    #[error("invalid fracture: {0}")]
    InvalidFracture(String),
    #[error("height mismatch: {0} vs {1}")]
    HeightMismatch(usize, usize),
    #[error("gluing hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("invalid gluing system: {0}")]
    InvalidSystem(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
