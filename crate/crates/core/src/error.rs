use thiserror::Error;

/// Largest point count accepted for user-supplied permutation groups.
pub const MAX_DEGREE: usize = 64;
/// Largest group order for which elements are enumerated (tables, lattices).
pub const MAX_ORDER: usize = 1000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("desk-scale bound exceeded: {0}")]
    BoundExceeded(String),
    #[error("not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("not a normal subgroup: {0}")]
    NotNormal(String),
    #[error("action is not an automorphism: {0}")]
    NotAutomorphism(String),
    #[error("action is not faithful")]
    NotFaithful,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("unknown group: {0}")]
    UnknownGroup(String),
    #[error("lattice cache: {0}")]
    Cache(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub fn is_bound(&self) -> bool {
        matches!(self, Error::BoundExceeded(_))
    }
}
