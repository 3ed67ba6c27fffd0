use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("genus must be at least 2, got {0}")]
    GenusTooSmall(usize),
    #[error("generator index {index} out of range 1..={max} for genus {genus}")]
    GeneratorOutOfRange {
        index: usize,
        max: usize,
        genus: usize,
    },
    #[error("edge index {index} out of range 1..={max}")]
    EdgeOutOfRange { index: usize, max: usize },
    #[error("register width beta={0} outside supported range 1..=16")]
    BetaOutOfRange(u32),
    #[error("word syntax: {0}")]
    WordSyntax(String),
    #[error("exponent must be a nonzero integer, got {0:?}")]
    BadExponent(String),
    #[error("context {0} is missing labels required by the edge's window")]
    ContextArity(String),
    #[error("context {0} admits no completion")]
    EmptyContext(String),
    #[error("labeling {0} is not fusion-admissible for this spine")]
    BadLabeling(String),
    #[error("at most two punctures (one per end handle) are supported, got {0}")]
    TooManyPunctures(usize),
    #[error("circuit on {qubits} qubits exceeds the supported limit of {limit}")]
    CircuitTooLarge { qubits: usize, limit: usize },
    #[error("gate {gate}: {message}")]
    BadGate { gate: usize, message: String },
    #[error("register vector has {got} entries, expected {expected}")]
    RegisterArity { got: usize, expected: usize },
    #[error("register value {value} does not fit in {beta} bits")]
    RegisterRange { value: u64, beta: u32 },
    #[error("qudit plan: {0}")]
    BadPlan(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
