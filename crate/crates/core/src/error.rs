use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} qubits, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid region: start {start}, length {length} on {n_qubits} qubits")]
    InvalidRegion {
        start: usize,
        length: usize,
        n_qubits: usize,
    },

    #[error("regions overlap")]
    OverlappingRegions,

    #[error("non-Hermitian Pauli (phase exponent {0})")]
    NonHermitian(u8),

    #[error("cannot parse Pauli string {0:?}")]
    ParsePauli(String),

    #[error("generators do not commute: {0} and {1}")]
    NonCommuting(usize, usize),

    #[error("generators are not independent (rank {rank} < {count})")]
    Dependent { rank: usize, count: usize },

    #[error("invalid Clifford gate: {0}")]
    InvalidGate(String),

    #[error("invalid sites ({0}, {1}) for {2} qubits")]
    InvalidSites(usize, usize, usize),

    #[error("no logical qubits (k = 0); distance undefined")]
    NoLogicalQubits,

    #[error("region of {size} qubits exceeds the enumeration budget of {budget}")]
    EnumerationBudget { size: usize, budget: usize },

    #[error("half-cut requires an even number of qubits, got {0}")]
    OddQubitCount(usize),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("snapshot format: {0}")]
    Snapshot(String),

    #[error("numerical regime: {0}")]
    Regime(String),

    #[error("series did not converge within {0} terms")]
    NonConvergence(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
