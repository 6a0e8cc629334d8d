use crate::Itemset;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("line {line}: invalid item `{token}`")]
    Parse { line: usize, token: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("support of {missing} is required but was not provided")]
    IncompleteLookup { missing: Itemset },

    #[error("bounds are not defined for the empty itemset")]
    EmptyTarget,

    #[error("itemset of size {size} exceeds the supported limit of {limit}")]
    TooLarge { size: usize, limit: usize },

    #[error("no database realises the given supports of the subsets of {target}")]
    Infeasible { target: Itemset },

    #[error("corrupted representation: {0}")]
    CorruptedRepresentation(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
