use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed partition {text:?}: {reason}")]
    ParsePartition { text: String, reason: String },

    #[error("malformed permutation {text:?}: {reason}")]
    ParsePermutation { text: String, reason: String },

    #[error("parts must be positive, got {0}")]
    NonPositivePart(i64),

    #[error("cannot shift part {part} down in {partition}")]
    DownShift { partition: String, part: usize },

    #[error("merge arity must be odd and at least 3, got {0}")]
    EvenArity(usize),

    #[error("merge arity must be at least 2, got {0}")]
    ArityTooSmall(usize),

    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("only the maximum element {max} can be erased or inserted, got {got}")]
    NotMaximum { max: usize, got: usize },

    #[error("insertion point {after} is outside the ground set [1..{n}]")]
    InsertPosition { after: usize, n: usize },

    #[error("Stirling number C({n}, {k}) requested with k > n")]
    StirlingRange { n: usize, k: usize },

    #[error("inexact division in {context}")]
    InexactDivision { context: String },

    #[error("odd intermediate in {context}")]
    OddIntermediate { context: String },

    #[error("{0} has a part larger than 2")]
    NotOneTwoType(String),

    #[error("invalid separation parameters: m={m}, n={n}")]
    SeparationRange { n: usize, m: usize },

    #[error("{what} with n={n} exceeds the cost envelope (max {max}); pass force to override")]
    EnvelopeExceeded { what: String, n: usize, max: usize },

    #[error("n must be at least {min} for {what}, got {n}")]
    TooSmall { what: String, n: usize, min: usize },

    #[error("sweep for {identity} at n={n} checked no cases")]
    VacuousSweep { identity: String, n: usize },

    #[error("no j > 0 with l(mu) = l(lambda) + 2j for lambda={lambda}, mu={mu}")]
    NoAdmissibleSplit { lambda: String, mu: String },

    #[error("set realization disagrees with arithmetic coefficients: {0}")]
    Canonicalization(String),

    #[error("unknown identity {0:?}")]
    UnknownIdentity(String),
}
