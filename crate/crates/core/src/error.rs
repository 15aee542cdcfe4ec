use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the library can report. Variant names are part of the CLI
/// contract: they are printed verbatim when a command fails.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("NonPrimeCharacteristic: {0} is not prime")]
    NonPrimeCharacteristic(u64),
    #[error("ReducibleModulus: modulus of tower level {level} is {reason}")]
    ReducibleModulus { level: usize, reason: String },
    #[error("InvalidModulus: {0}")]
    InvalidModulus(String),
    #[error("FieldTooLarge: {0}")]
    FieldTooLarge(String),
    #[error("DivisionByZero")]
    DivisionByZero,
    #[error("DivisionByZeroPolynomial")]
    DivisionByZeroPolynomial,
    #[error("NotASubfieldLevel: degree {sub} does not divide {total}")]
    NotASubfieldLevel { sub: usize, total: usize },
    #[error("FieldMismatch: operands live in different fields")]
    FieldMismatch,
    #[error("RingMismatch: operands live in different skew rings")]
    RingMismatch,
    #[error("TrivialTwist: {0}")]
    TrivialTwist(String),
    #[error("MixedTwist: sigma != id and delta != 0 together are not supported")]
    MixedTwist,
    #[error("InvalidCentralUnit: {0}")]
    InvalidCentralUnit(String),
    #[error("InvalidDerivation: {0}")]
    InvalidDerivation(String),
    #[error("GcrdWithTNotOne: t is a right factor of the polynomial")]
    GcrdWithTNotOne,
    #[error("NotCentral: {0}")]
    NotCentral(String),
    #[error("NormNotCentral: determinant coefficient {0} is not in the central field")]
    NormNotCentral(String),
    #[error("DeterminantMismatch: {0}")]
    DeterminantMismatch(String),
    #[error("NonzeroRemainder: {0}")]
    NonzeroRemainder(String),
    #[error("InfiniteConstantField: central factorization over the constants of a function field is not available")]
    InfiniteConstantField,
    #[error("CriterionNotSatisfied: deg mclm = {mclm_degree} but deg f = {degree}")]
    CriterionNotSatisfied { mclm_degree: usize, degree: usize },
    #[error("ExtractionDegreeMismatch: expected a right factor of degree {expected}, got {got}")]
    ExtractionDegreeMismatch { expected: usize, got: usize },
    #[error("RepeatedCentralFactors: the norm has repeated irreducible factors")]
    RepeatedCentralFactors,
    #[error("InvalidOrdering: {0}")]
    InvalidOrdering(String),
    #[error("Unit: {0}")]
    Unit(String),
    #[error("BudgetExceeded: {needed} candidates needed, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("NotInvertible: {0}")]
    NotInvertible(String),
    #[error("InvalidAlgebra: {0}")]
    InvalidAlgebra(String),
    #[error("ParseError at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("InvalidSpec: {0}")]
    InvalidSpec(String),
}

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse { pos, msg: msg.into() }
    }
}
