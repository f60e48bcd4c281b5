use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    // fields
    #[error("{0} is not prime")]
    NonPrime(u64),
    #[error("field of order {p}^{m} exceeds the 2^20 cap")]
    FieldTooLarge { p: u64, m: u32 },
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("element {rep} is out of range for a field of order {q}")]
    ElementOutOfRange { rep: u64, q: u32 },

    // linear algebra
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("ambient dimension mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("matrix is singular")]
    Singular,

    // udmg
    #[error("length mismatch: {0}")]
    LengthMismatch(String),
    #[error("truncation {0:?} is not a proper sub-structure (need every N'_i < N_i)")]
    NotProperSub(Vec<usize>),
    #[error("invalid input: {0}")]
    InvalidInput(String),

    // curves
    #[error("curve is singular (discriminant vanishes)")]
    SingularCurve,
    #[error("short Weierstrass curves need characteristic other than 2 and 3, got {0}")]
    BadCharacteristic(u32),
    #[error("point count {count} outside the Hasse-Weil-Serre interval [{lo}, {hi}]")]
    HasseWeilViolation { count: usize, lo: i64, hi: i64 },
    #[error("point {0} is not on the curve")]
    PointNotOnCurve(String),
    #[error("local expansion could not certify the order of vanishing (precision {0})")]
    PrecisionExhausted(usize),
    #[error("function has a pole at {0}")]
    PoleAtSupport(String),
    #[error("unsupported divisor: {0}")]
    UnsupportedDivisor(String),
    #[error("point {0} lies in the support of the divisor")]
    PointInSupport(String),
    #[error("basis elements are linearly dependent")]
    DependentBasis,
    #[error("evaluation point collides with the divisor support: {0}")]
    SupportCollision(String),
    #[error("too few sections: K = {k} must exceed g - 1 = {g} - 1")]
    TooFewSections { k: usize, g: usize },
    #[error("duplicate evaluation point {0}")]
    DuplicatePoints(String),
    #[error("{count} points requested but only {max} exist")]
    TooManyPoints { count: usize, max: usize },

    // codes
    #[error("code too short: L = {l} < K + g = {need}")]
    TooShort { l: usize, need: usize },
    #[error("generator has rank {rank}, expected {k}")]
    RankDeficient { rank: usize, k: usize },
    #[error("Singleton defect {defect} exceeds the genus {genus}")]
    DefectAboveGenus { defect: usize, genus: usize },
    #[error("enumeration too large: {0}")]
    TooLarge(String),
    #[error("hypothesis unmet: {0}")]
    HypothesisUnmet(String),

    // waveform
    #[error("matrix set is not square: {0}")]
    NotSquare(String),
    #[error("symbol {symbol} out of range for q = {q}")]
    SymbolOutOfRange { symbol: u32, q: u32 },
    #[error("inputs are equal")]
    EqualInputs,

    // files
    #[error("parse error: {0}")]
    Parse(String),
}
