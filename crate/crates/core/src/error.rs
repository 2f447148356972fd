use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("invalid field context: {0}")]
    InvalidContext(String),

    #[error("field contexts differ: (M={}, q={}) vs (M={}, q={})", left.0, left.1, right.0, right.1)]
    ContextMismatch { left: (u64, u64), right: (u64, u64) },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("schema violation at {pointer}: {message}")]
    Schema { pointer: String, message: String },

    #[error("division by zero")]
    DivisionByZero,

    #[error("Galois exponent {k} is not coprime to M = {m}")]
    NotCoprime { k: i64, m: u64 },

    #[error("factor does not split over the candidate roots: {0}")]
    NonSplit(String),

    #[error("missing candidate eigenvalue on block {block}")]
    MissingCandidate { block: String },

    #[error("Frobenius is not semisimple on block {block}")]
    NonSemisimple { block: String },

    #[error("parameter invariant violated: {0}")]
    InvariantViolation(String),

    #[error("segment chain matching failed: {0}")]
    ChainMismatch(String),

    #[error("parameter is not a W_E-parameter: {0}")]
    NotQuadratic(String),

    #[error("eigenvalue {0} is not of the form c·ζ^a·√q^b")]
    NotMonomial(String),

    #[error("prime {ell} divides 2·p·M")]
    BadPrime { ell: u64 },

    #[error("inconsistent Γ-divisor oracle on chain {chain}: {reason}")]
    InconsistentOracle { chain: String, reason: String },

    #[error("size bound exceeded: {0}")]
    BoundExceeded(String),

    #[error("malformed Levi data: {0}")]
    MalformedLevi(String),

    #[error("equivalence check failed: {0}")]
    EquivalenceFailure(String),
}

impl Error {
    /// Whether the error is an input-validation failure (as opposed to a
    /// failure of the computation itself).
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::InvalidContext(_)
                | Error::ContextMismatch { .. }
                | Error::InvalidInput(_)
                | Error::Schema { .. }
                | Error::NotCoprime { .. }
                | Error::BadPrime { .. }
        )
    }

    /// Stable snake-case name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidContext(_) => "invalid_context",
            Error::ContextMismatch { .. } => "context_mismatch",
            Error::InvalidInput(_) => "invalid_input",
            Error::Schema { .. } => "schema",
            Error::DivisionByZero => "division_by_zero",
            Error::NotCoprime { .. } => "not_coprime",
            Error::NonSplit(_) => "non_split",
            Error::MissingCandidate { .. } => "missing_candidate",
            Error::NonSemisimple { .. } => "non_semisimple",
            Error::InvariantViolation(_) => "invariant_violation",
            Error::ChainMismatch(_) => "chain_mismatch",
            Error::NotQuadratic(_) => "not_quadratic",
            Error::NotMonomial(_) => "not_monomial",
            Error::BadPrime { .. } => "bad_prime",
            Error::InconsistentOracle { .. } => "inconsistent_oracle",
            Error::BoundExceeded(_) => "bound_exceeded",
            Error::MalformedLevi(_) => "malformed_levi",
            Error::EquivalenceFailure(_) => "equivalence_failure",
        }
    }
}
