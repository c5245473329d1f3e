use thiserror::Error;

/// Every failure the library can report, tagged by the condition that caused it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("InvalidPrime: {0} is not a supported prime")]
    InvalidPrime(u64),
    #[error("InvalidDegree: extension degree must be at least 1")]
    InvalidDegree,
    #[error("FieldMismatch: operands belong to different fields")]
    FieldMismatch,
    #[error("DivisionByZero")]
    DivisionByZero,
    #[error("EnumerationBudgetExceeded: {needed} tuples requested, budget is {budget}")]
    EnumerationBudgetExceeded { needed: u128, budget: u64 },
    #[error("NotHomogeneous: polynomial {index} is not homogeneous")]
    NotHomogeneous { index: usize },
    #[error("SingularCurve: 4A^3 + 27B^2 vanishes mod {p}")]
    SingularCurve { p: u64 },
    #[error("UnsupportedCharacteristic: p = {p} must exceed 3")]
    UnsupportedCharacteristic { p: u64 },
    #[error("Parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("EmptySeries: no point counts supplied")]
    EmptySeries,
    #[error("InsufficientPrecision: need {needed} terms, have {available}")]
    InsufficientPrecision { needed: usize, available: usize },
    #[error("NoRationalFit: {0}")]
    NoRationalFit(String),
    #[error("NotIntegral: {0}")]
    NotIntegral(String),
    #[error("NotNormalized: {0}")]
    NotNormalized(String),
    #[error("FunctionalEquationViolated: residual {residual}")]
    FunctionalEquationViolated { residual: String },
    #[error("MixedWeightFactor: factor {factor} has root weights {weights}")]
    MixedWeightFactor { factor: String, weights: String },
    #[error("WeightOutOfRange: factor {factor} has weight {weight}, allowed 0..={max}")]
    WeightOutOfRange {
        factor: String,
        weight: i64,
        max: usize,
    },
    #[error("WeightParity: factor {factor} of weight {weight} sits in the {side}")]
    WeightParity {
        factor: String,
        weight: usize,
        side: &'static str,
    },
    #[error("RootFinding: {0}")]
    RootFinding(String),
    #[error("DimensionMismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("HasseViolation: a = {a}, q = {q}")]
    HasseViolation { a: String, q: String },
    #[error("InvalidFieldSize: q = {0}")]
    InvalidFieldSize(String),
    #[error("InternalError: {0}")]
    Internal(String),
    #[error("InvalidNumberField: {0}")]
    InvalidNumberField(String),
    #[error("DependentGenerators: generators are linearly dependent over Q")]
    DependentGenerators,
    #[error("NotEndomorphism: multiplier does not map the lattice into itself")]
    NotEndomorphism,
    #[error("NotPrimitive: no power of the matrix is strictly positive")]
    NotPrimitive,
    #[error("DegenerateSpectrum: Perron-Frobenius eigenvalue is not greater than 1")]
    DegenerateSpectrum,
    #[error("InvalidMatrix: {0}")]
    InvalidMatrix(String),
    #[error("NotRepresentable: no symmetric non-negative matrix with trace {a} and determinant {ell}")]
    NotRepresentable { a: String, ell: String },
    #[error("Io: {0}")]
    Io(String),
    #[error("InvalidConfig: {0}")]
    InvalidConfig(String),
}

impl Error {
    /// Short machine-readable tag, the variant name.
    pub fn tag(&self) -> &'static str {
        match self {
            Error::InvalidPrime(_) => "InvalidPrime",
            Error::InvalidDegree => "InvalidDegree",
            Error::FieldMismatch => "FieldMismatch",
            Error::DivisionByZero => "DivisionByZero",
            Error::EnumerationBudgetExceeded { .. } => "EnumerationBudgetExceeded",
            Error::NotHomogeneous { .. } => "NotHomogeneous",
            Error::SingularCurve { .. } => "SingularCurve",
            Error::UnsupportedCharacteristic { .. } => "UnsupportedCharacteristic",
            Error::Parse { .. } => "ParseError",
            Error::EmptySeries => "EmptySeries",
            Error::InsufficientPrecision { .. } => "InsufficientPrecision",
            Error::NoRationalFit(_) => "NoRationalFit",
            Error::NotIntegral(_) => "NotIntegral",
            Error::NotNormalized(_) => "NotNormalized",
            Error::FunctionalEquationViolated { .. } => "FunctionalEquationViolated",
            Error::MixedWeightFactor { .. } => "MixedWeightFactor",
            Error::WeightOutOfRange { .. } => "WeightOutOfRange",
            Error::WeightParity { .. } => "WeightParity",
            Error::RootFinding(_) => "RootFinding",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::HasseViolation { .. } => "HasseViolation",
            Error::InvalidFieldSize(_) => "InvalidFieldSize",
            Error::Internal(_) => "InternalError",
            Error::InvalidNumberField(_) => "InvalidNumberField",
            Error::DependentGenerators => "DependentGenerators",
            Error::NotEndomorphism => "NotEndomorphism",
            Error::NotPrimitive => "NotPrimitive",
            Error::DegenerateSpectrum => "DegenerateSpectrum",
            Error::InvalidMatrix(_) => "InvalidMatrix",
            Error::NotRepresentable { .. } => "NotRepresentable",
            Error::Io(_) => "Io",
            Error::InvalidConfig(_) => "InvalidConfig",
        }
    }

    /// Process exit code: 1 for failed mathematical checks, 2 for bad input,
    /// 3 for an exceeded enumeration budget.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::EnumerationBudgetExceeded { .. } => 3,
            Error::InvalidPrime(_)
            | Error::InvalidDegree
            | Error::NotHomogeneous { .. }
            | Error::Parse { .. }
            | Error::EmptySeries
            | Error::InvalidNumberField(_)
            | Error::InvalidMatrix(_)
            | Error::DependentGenerators
            | Error::DimensionMismatch { .. }
            | Error::UnsupportedCharacteristic { .. }
            | Error::SingularCurve { .. }
            | Error::InvalidFieldSize(_)
            | Error::FieldMismatch
            | Error::Io(_)
            | Error::InvalidConfig(_) => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
