use thiserror::Error;

/// Errors raised by the library. Every variant is a typed refusal; nothing is
/// silently approximated.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("operation requires characteristic p")]
    NotCharacteristicP,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("polynomial is reducible: {0}")]
    Reducible(String),
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("singular model: {0}")]
    SingularModel(String),
    #[error("invalid curve: {0}")]
    InvalidCurve(String),
    #[error("insufficient precision: need coefficient of t^{needed}, known below t^{known}")]
    InsufficientPrecision { needed: i64, known: i64 },
    #[error("nonzero residue at {0}")]
    NonzeroResidue(String),
    #[error("characteristic-p obstruction: coefficient of t^{exponent} cannot be integrated")]
    CharPObstruction { exponent: i64 },
    #[error("characteristic-p reduction obstruction: {0}")]
    CharPReductionObstruction(String),
    #[error("Hensel lifting failed: {0}")]
    HenselFailure(String),
    #[error("differential is not of the second kind: {0}")]
    NotSecondKind(String),
    #[error("adele is not closed: {0}")]
    NotClosed(String),
    #[error("adele is not a cocycle: {0}")]
    NotCocycle(String),
    #[error("unsupported characteristic {0}")]
    UnsupportedCharacteristic(u64),
    #[error("invalid spec: {0}")]
    InvalidSpec(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("check failed: {0}")]
    CheckFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
