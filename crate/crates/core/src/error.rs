use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Broad category of a failure, used by front ends to choose exit codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    Validation,
    CostLimit,
    Configuration,
    Internal,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("group order exceeds the configured maximum of {limit}")]
    SizeLimit { limit: usize },

    #[error("invalid group input: {0}")]
    InvalidGroup(String),

    #[error("multiplication table is not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NonAssociative { a: usize, b: usize, c: usize },

    #[error("invalid Seifert data: {0}")]
    InvalidSeifert(String),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("no prime p = 1 mod {exponent} with p > {lower} found below {bound}")]
    NoPrime {
        exponent: u64,
        lower: u64,
        bound: u64,
    },

    #[error("eigenspace splitting did not converge after {attempts} attempts (seed {seed})")]
    SplitFailed { seed: u64, attempts: usize },

    #[error("search space of {space} assignments exceeds the oracle limit of {limit}; try a smaller group or fewer generators")]
    CostLimit { space: u128, limit: u128 },

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::SizeLimit { .. }
            | Error::InvalidGroup(_)
            | Error::NonAssociative { .. }
            | Error::InvalidSeifert(_)
            | Error::Parse { .. }
            | Error::InvalidArgument(_) => ErrorKind::Validation,
            Error::CostLimit { .. } => ErrorKind::CostLimit,
            Error::NoPrime { .. } | Error::SplitFailed { .. } => ErrorKind::Configuration,
            Error::Internal(_) => ErrorKind::Internal,
        }
    }
}
