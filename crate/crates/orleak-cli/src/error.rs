//! Error-to-exit-code mapping: 2 for configuration problems, 3 for violated
//! invariants or failed checks, 4 for exceeded resource cutoffs.

use orleak::bounds::BoundsError;
use orleak::engine::EngineError;
use orleak::graph::GraphError;
use orleak::leakage::LeakageError;
use orleak::ramp::RampError;

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Invariant(String),
    Cutoff(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Invariant(_) => 3,
            CliError::Cutoff(_) => 4,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Config(m) | CliError::Invariant(m) | CliError::Cutoff(m) => m,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        CliError::Config(e.to_string())
    }
}

impl From<EngineError> for CliError {
    fn from(e: EngineError) -> Self {
        match e {
            EngineError::CutoffExceeded { .. } => CliError::Cutoff(e.to_string()),
            EngineError::NonTermination { .. } => CliError::Invariant(e.to_string()),
            other => CliError::Config(other.to_string()),
        }
    }
}

impl From<LeakageError> for CliError {
    fn from(e: LeakageError) -> Self {
        match e {
            LeakageError::CutoffExceeded { .. } => CliError::Cutoff(e.to_string()),
            LeakageError::Engine(inner) => inner.into(),
            other => CliError::Config(other.to_string()),
        }
    }
}

impl From<BoundsError> for CliError {
    fn from(e: BoundsError) -> Self {
        match e {
            BoundsError::CutoffExceeded { .. } => CliError::Cutoff(e.to_string()),
            other => CliError::Config(other.to_string()),
        }
    }
}

impl From<RampError> for CliError {
    fn from(e: RampError) -> Self {
        match e {
            RampError::CutoffExceeded { .. } => CliError::Cutoff(e.to_string()),
            RampError::Engine(inner) => inner.into(),
            RampError::Leakage(inner) => inner.into(),
            other => CliError::Config(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Config(e.to_string())
    }
}
