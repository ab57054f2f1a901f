use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not an odd prime below 2^31")]
    InvalidModulus(u64),
    #[error("operands live in different fields: GF({left}) and GF({right})")]
    FieldMismatch { left: u64, right: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("log of zero")]
    LogOfZero,
    #[error("no index-calculus field found for dimension {0} below 2^31")]
    PrimeSearchExhausted(usize),

    #[error("squarefree decomposition over GF({p}) needs p > degree {degree}")]
    CharacteristicTooSmall { p: u64, degree: usize },
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("bad prime: {0}")]
    BadPrime(String),
    #[error("CRT residues disagree on degree; minority residues at indices {minority:?}")]
    CrtDegreeMismatch { minority: Vec<usize> },
    #[error("Hensel lifting precondition failed: {0}")]
    HenselPrecondition(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("minimal polynomial not certified after {rounds} rounds")]
    MinpolyNotCertified { rounds: usize },
    #[error("determinant not certified after {retries} preconditioner retries")]
    DetNotCertified { retries: usize },

    #[error("inconsistent nullities: {0}")]
    InconsistentNullity(String),
    #[error("no multiplicity assignment satisfies the degree and trace constraints")]
    NoCandidate,
    #[error("combinatorial search too large: more than {cap} candidates")]
    SearchTooLarge { cap: usize },
    #[error("candidates still ambiguous after {rounds} determinant evaluations")]
    Ambiguous { rounds: usize },
    #[error("index calculus failed: {0}")]
    IndexCalculusFail(String),
    #[error("method {method} is not applicable: {reason}")]
    MethodNotApplicable { method: String, reason: String },
    #[error("invariant factor computation failed: {0}")]
    InvariantFactor(String),
    #[error("self-check failed: {0}")]
    SelfCheck(String),

    #[error("integer minimal polynomial: {0}")]
    IntegerMinpoly(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid input: {0}")]
    Input(String),
    #[error("verification mismatch: {0}")]
    VerificationMismatch(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl Error {
    /// Process exit code used by the command line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. }
            | Error::Input(_)
            | Error::Io(_)
            | Error::InvalidModulus(_)
            | Error::DimensionMismatch { .. }
            | Error::NotMonic => 2,
            Error::VerificationMismatch(_) => 4,
            _ => 3,
        }
    }
}
