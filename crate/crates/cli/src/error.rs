use std::fmt;

use tfa_core::groebner::GroebnerError;
use tfa_core::model::ModelError;
use tfa_core::sgi::SgiError;
use tfa_core::simcheck::SimError;
use tfa_core::PolyError;

/// Process exit statuses.
pub mod exit {
    pub const OK: u8 = 0;
    pub const INTERNAL: u8 = 1;
    pub const PARSE: u8 = 2;
    pub const RESOURCE: u8 = 3;
    pub const DEGENERATE: u8 = 4;
}

#[derive(Debug)]
pub enum CliError {
    Io(String),
    Parse(String),
    Resource(String),
    Degenerate(String),
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(_) | CliError::Internal(_) => exit::INTERNAL,
            CliError::Parse(_) => exit::PARSE,
            CliError::Resource(_) => exit::RESOURCE,
            CliError::Degenerate(_) => exit::DEGENERATE,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Io(m) => write!(f, "i/o error: {m}"),
            CliError::Parse(m) => write!(f, "parse error: {m}"),
            CliError::Resource(m) => write!(f, "resource limit: {m}"),
            CliError::Degenerate(m) => write!(f, "degenerate structure: {m}"),
            CliError::Internal(m) => write!(f, "internal error: {m}"),
        }
    }
}

impl From<ModelError> for CliError {
    fn from(e: ModelError) -> Self {
        CliError::Parse(e.to_string())
    }
}

impl From<PolyError> for CliError {
    fn from(e: PolyError) -> Self {
        CliError::Parse(e.to_string())
    }
}

impl From<GroebnerError> for CliError {
    fn from(e: GroebnerError) -> Self {
        match e {
            GroebnerError::BudgetExceeded { .. } => CliError::Resource(e.to_string()),
            _ => CliError::Internal(e.to_string()),
        }
    }
}

impl From<SgiError> for CliError {
    fn from(e: SgiError) -> Self {
        match e {
            SgiError::Groebner(g) => g.into(),
            SgiError::NoInvariants | SgiError::DegenerateSpecialization { .. } => {
                CliError::Degenerate(e.to_string())
            }
            SgiError::DegreeBoundExceeded { .. } => CliError::Resource(e.to_string()),
            SgiError::NotZeroDimensional { .. } | SgiError::Inconsistent => {
                CliError::Internal(e.to_string())
            }
        }
    }
}

impl From<SimError> for CliError {
    fn from(e: SimError) -> Self {
        CliError::Resource(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Internal(e.to_string())
    }
}
