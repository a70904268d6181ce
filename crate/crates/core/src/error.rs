use thiserror::Error;

/// Errors raised by the library.
///
/// `Invalid*` variants are caller mistakes (rejected input); `Invariant` marks
/// an internal identity that failed to hold and always indicates a bug.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("denominator {0} is not a product of L and L^a - 1 factors")]
    NonLocalizedDenominator(String),

    #[error("{0} is not a unit of the localized ring")]
    NotInvertible(String),

    #[error("stratum symbol `{0}` is not registered")]
    UnknownSymbol(String),

    #[error("stratum symbol `{symbol}` has no point count at q = {q}")]
    MissingCount { symbol: String, q: u64 },

    #[error(
        "factor shapes ({0}, {1}) and ({2}, {3}) are proportional; their resultant is not a unit"
    )]
    ProportionalFactors(i64, i64, i64, i64),

    #[error("series is not in the dagger ring: factor 1 - L^{a} T^{b} has b <= a")]
    NotDagger { a: i64, b: i64 },

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("size cap exceeded: {what} needs {needed} entries, cap is {cap}")]
    CapExceeded {
        what: String,
        needed: u128,
        cap: u128,
    },

    #[error("insufficient depth: {what} needs depth >= {required}, got {given}")]
    InsufficientDepth {
        what: String,
        required: i64,
        given: i64,
    },

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("unsupported place: {0}")]
    UnsupportedPlace(String),

    #[error("window mismatch: {0}")]
    WindowMismatch(String),

    #[error("residual poles not cleared: {0}")]
    ResidualPoles(String),

    #[error("unknown strategy `{name}` for {family}; available: {available}")]
    UnknownStrategy {
        family: &'static str,
        name: String,
        available: String,
    },

    #[error("internal invariant failed: {0}")]
    Invariant(String),
}

impl Error {
    /// Whether the error is a validation failure on user-supplied data, as
    /// opposed to an internal invariant failure.
    pub fn is_validation(&self) -> bool {
        !matches!(self, Error::Invariant(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
