use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field too large: {0}")]
    TooLarge(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("characteristic {p} divides {order}")]
    CharDividesOrder { p: u64, order: u64 },
    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("syntax error on line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: gate {id} is not defined before use")]
    UndefinedGate { line: usize, id: u64 },
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("negative valuation {0}")]
    NegativeValuation(i64),
    #[error("circuit `{0}` is constant")]
    ConstantCircuit(String),
    #[error("not the principal case: trdeg {k} with {m} polynomials")]
    NotPrincipalCase { k: usize, m: usize },
    #[error("threshold violated: q' = {qprime} must exceed {bound}")]
    ThresholdViolation { qprime: u128, bound: u128 },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("no certified candidate found after {0} attempts")]
    NotFound(usize),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
