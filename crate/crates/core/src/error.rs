use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("a {rows}x{cols} matrix exceeds the guard of {guard} entries")]
    MatrixTooLarge {
        rows: usize,
        cols: usize,
        guard: usize,
    },

    #[error("degree {degree} exceeds the degree guard {guard}")]
    DegreeGuard { degree: u32, guard: u32 },

    #[error("operands live in different rings")]
    RingMismatch,

    #[error("variable index {index} out of range for {nvars} variables")]
    VariableOutOfRange { index: usize, nvars: usize },

    #[error("substitution images have unequal degrees {0} and {1}")]
    UnequalImageDegrees(u32, u32),

    #[error("expected {expected} substitution images, found {found}")]
    ImageCount { expected: usize, found: usize },

    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("mixed degrees {0} and {1} in a homogeneous polynomial")]
    MixedDegrees(u32, u32),

    #[error("line {line}: {message}")]
    IdealFile { line: usize, message: String },

    #[error("point {0} repeats an earlier point")]
    RepeatedPoint(usize),

    #[error("point {0} is the zero vector")]
    ZeroPoint(usize),

    #[error("linear form is not a nonzerodivisor on S/I in degree {degree}")]
    GenericityFailure { degree: u32 },

    #[error("no generic choice found after {attempts} attempts: {what}")]
    GenericityExhausted { attempts: u32, what: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("base locus test inconclusive up to degree {reached}")]
    Inconclusive { reached: u32 },

    #[error("no plateau of {window} equal values at the end of a table of length {len}")]
    NoPlateau { window: usize, len: usize },

    #[error("table reaches degree {available}, degree {needed} was requested")]
    TableTooShort { needed: usize, available: usize },

    #[error(
        "defect formulas disagree in degree {k}: direct {direct}, via Betti numbers {via_betti}"
    )]
    DefectMismatch { k: u32, direct: i64, via_betti: i64 },

    #[error("characteristic {p} divides the degree {degree}")]
    CharacteristicDividesDegree { p: u32, degree: u32 },

    #[error("substitution images have a common zero")]
    CommonZero,
}
