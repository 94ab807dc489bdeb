use thiserror::Error;

use crate::tower::ValidationReport;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{a} is not coprime to {m}")]
    NotCoprime { a: String, m: String },

    #[error("prime search exhausted below {ceiling} with {found} of {wanted} primes found")]
    SearchExhausted { ceiling: u64, found: usize, wanted: usize },

    #[error("cyclotomic moduli differ: {left} vs {right}")]
    ModulusMismatch { left: u64, right: u64 },

    #[error("{q} ramifies in Q(zeta_{m})")]
    RamifiedPrime { q: u64, m: u64 },

    #[error("{q} does not split completely in Q(zeta_{m}) (residue degree {f})")]
    NotTotallySplit { q: u64, m: u64, f: u64 },

    #[error("zero polynomial")]
    ZeroPolynomial,

    #[error("polynomial is not squarefree over its coefficient field")]
    NotSquarefree,

    #[error("{q} divides the discriminant {disc} of the defining polynomial")]
    DiscriminantDivisible { q: u64, disc: String },

    #[error("validation failed: {0}")]
    ValidationFailed(ValidationReport),

    #[error("ell and p must be distinct primes (both are {0})")]
    EqualPrimes(u64),

    #[error("invariant factors must be >= 2 and each must divide the next")]
    InvalidChain,

    #[error("A has no nontrivial ell-torsion over Q(zeta_ell)")]
    TorsionHypothesisUnmet,

    #[error("plan was not built for s0 = {requested} (plan reserves s0 = {declared:?})")]
    PlanNotInflated { requested: u64, declared: Option<u64> },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Stable identifier used in JSON error documents and across the C ABI.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotCoprime { .. } => "NotCoprime",
            Error::SearchExhausted { .. } => "SearchExhausted",
            Error::ModulusMismatch { .. } => "ModulusMismatch",
            Error::RamifiedPrime { .. } => "RamifiedPrime",
            Error::NotTotallySplit { .. } => "NotTotallySplit",
            Error::ZeroPolynomial => "ZeroPolynomial",
            Error::NotSquarefree => "NotSquarefree",
            Error::DiscriminantDivisible { .. } => "DiscriminantDivisible",
            Error::ValidationFailed(_) => "ValidationFailed",
            Error::EqualPrimes(_) => "EqualPrimes",
            Error::InvalidChain => "InvalidChain",
            Error::TorsionHypothesisUnmet => "TorsionHypothesisUnmet",
            Error::PlanNotInflated { .. } => "PlanNotInflated",
            Error::Parse(_) => "Parse",
            Error::InvalidInput(_) => "InvalidInput",
        }
    }

    /// Malformed input as opposed to a mathematical or validation failure.
    pub fn is_usage(&self) -> bool {
        matches!(self, Error::Parse(_) | Error::InvalidInput(_))
    }
}
