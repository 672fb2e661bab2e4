use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("radius is undefined for a disconnected graph")]
    Disconnected,

    #[error("search budget of {limit} steps exceeded in {what}")]
    BudgetExceeded { what: &'static str, limit: u64 },

    #[error("{what} supports at most {max} vertices, got {got}")]
    TooLarge {
        what: &'static str,
        max: usize,
        got: usize,
    },

    #[error("pattern is not a member of class {0}")]
    NotInClass(String),

    #[error("class {0} is not monotone")]
    NotMonotone(String),

    #[error("invalid separation collection: {0}")]
    InvalidCollection(String),

    #[error("map is not a homomorphism: edge {0}-{1} is not preserved")]
    NotHomomorphism(usize, usize),

    #[error("basin at position {index} has {size} vertices, more than the bound {bound}")]
    BasinBound {
        index: usize,
        size: usize,
        bound: usize,
    },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{0}")]
    Invalid(String),
}

impl Error {
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. } | Error::TooLarge { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
