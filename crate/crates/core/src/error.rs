use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("bitstring has {got} bits but the instance has {expected} nodes")]
    LengthMismatch { got: usize, expected: usize },

    #[error("topology {topology} does not admit n={n}; valid sizes: {valid}")]
    SizeMismatch {
        topology: String,
        n: usize,
        valid: String,
    },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid weight set: {0}")]
    InvalidWeightSet(String),

    #[error(
        "optimum unavailable: graph is non-bipartite and n={n} exceeds the \
         brute-force cap {cap}; supply a known optimum in the instance file"
    )]
    OptimumUnavailable { n: usize, cap: usize },

    #[error("instance has no optimum; compute one or supply it in the instance file")]
    MissingOptimum,

    #[error("{n} qubits exceeds the simulation cap {cap} (override with LRQ_SIM_CAP)")]
    SimCapExceeded { n: usize, cap: usize },

    #[error("schedule requires p >= 1")]
    EmptySchedule,

    #[error("ramp scale must be positive and finite, got {0}")]
    BadDelta(f64),

    #[error("shots must be >= 1")]
    ZeroShots,

    #[error("gate `{gate}` is not expressible in {format}")]
    Inexpressible { gate: String, format: String },

    #[error("swap-network routing requires a fully connected instance; build the circuit directly")]
    NotFullyConnected,

    #[error("chain order must be a permutation of 0..{n}")]
    BadChainOrder { n: usize },

    #[error("cannot decompose a {from} circuit to {to}")]
    BadDecomposition { from: String, to: String },

    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },

    #[error("degenerate baseline: random threshold {threshold} >= 1")]
    DegenerateBaseline { threshold: f64 },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
