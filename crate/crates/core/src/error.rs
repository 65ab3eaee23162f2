use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("hyperplane {0} has a zero normal vector")]
    ZeroNormal(usize),

    #[error("dimension mismatch: expected {expected} coordinates, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("arrangement is not central")]
    NotCentral,

    #[error("arrangement is not reduced")]
    NotReduced,

    #[error("arrangement is not essential")]
    NotEssential,

    #[error("arrangement is decomposable")]
    Decomposable,

    #[error("expected ambient dimension {expected}, got {got}")]
    WrongDimension { expected: usize, got: usize },

    #[error("criterion needs at least {min} hyperplanes, got {got}")]
    TooFewHyperplanes { min: usize, got: usize },

    #[error("need d >= n, got n = {n}, d = {d}")]
    DegreeBelowDimension { n: usize, d: usize },

    #[error("division by the zero function")]
    DivisionByZero,

    #[error("divisor numerator does not split into linear atoms")]
    NotFactored,

    #[error("denominator {0} is not a product of known atoms")]
    UnknownDenominator(String),

    #[error("nonvanishing negative-order term in the p -> 1 limit")]
    NotZetaType,

    #[error("jet truncation order exhausted (cap {0})")]
    TruncationExhausted(usize),

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("bad reduction at p = {0}")]
    BadReduction(u64),

    #[error("brute force needs p^(k*n) <= 10^8, got {p}^({k}*{n})")]
    Infeasible { p: u64, k: u32, n: usize },

    #[error("brute force needs a positive integer s, got {0}")]
    InvalidExponent(String),

    #[error("pole {pole} has no dense-edge witness")]
    MissingWitness { pole: String },

    #[error("specialization mismatch: p -> 1 limit gives {limit}, topological zeta is {top}")]
    BridgeMismatch { limit: String, top: String },

    #[error("unknown corpus entry `{0}`")]
    UnknownCorpusEntry(String),
}

impl Error {
    /// Errors that signal a broken internal invariant rather than bad input.
    pub fn is_invariant_violation(&self) -> bool {
        matches!(
            self,
            Error::MissingWitness { .. }
                | Error::BridgeMismatch { .. }
                | Error::NotZetaType
                | Error::TruncationExhausted(_)
                | Error::UnknownDenominator(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
