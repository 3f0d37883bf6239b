use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Core(#[from] clifford_qecc::Error),

    #[error("invalid experiment spec: {0}")]
    Spec(String),

    #[error("I/O: {0}")]
    Io(#[from] std::io::Error),

    #[error("CSV: {0}")]
    Csv(#[from] csv::Error),

    #[error("JSON: {0}")]
    Json(#[from] serde_json::Error),

    #[error("empty group: {0}")]
    EmptyGroup(String),

    #[error("fit: {0}")]
    Fit(String),

    #[error("no crossing found: {0}")]
    NoCrossing(String),
}

impl HarnessError {
    /// Process exit code: 2 for invalid input, 3 for numerical-regime
    /// failures, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        use clifford_qecc::Error as E;
        match self {
            HarnessError::Spec(_) => 2,
            HarnessError::Core(E::Config(_) | E::InvalidRegion { .. } | E::ParsePauli(_)) => 2,
            HarnessError::Core(E::Snapshot(_)) => 2,
            HarnessError::Core(E::Regime(_) | E::NonConvergence(_) | E::NoLogicalQubits) => 3,
            HarnessError::Fit(_) | HarnessError::NoCrossing(_) => 3,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, HarnessError>;
