use std::fmt;

use pseudocontact::GeomError;

/// Why a command did not succeed, mapped onto the process exit code.
#[derive(Debug, Clone, PartialEq)]
pub enum Failure {
    /// Bad configuration or input, or a verification check that failed (exit 1).
    Validation(String),
    /// A numeric hypothesis of the requested operation does not hold (exit 2).
    Hypothesis(String),
}

impl Failure {
    pub fn validation(msg: impl Into<String>) -> Self {
        Failure::Validation(msg.into())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Validation(_) => 1,
            Failure::Hypothesis(_) => 2,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Validation(m) => write!(f, "validation error: {m}"),
            Failure::Hypothesis(m) => write!(f, "hypothesis failure: {m}"),
        }
    }
}

impl std::error::Error for Failure {}

impl From<GeomError> for Failure {
    fn from(e: GeomError) -> Self {
        if e.is_hypothesis_failure() {
            Failure::Hypothesis(e.to_string())
        } else {
            Failure::Validation(e.to_string())
        }
    }
}

impl From<pseudocontact::ExprError> for Failure {
    fn from(e: pseudocontact::ExprError) -> Self {
        Failure::Validation(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Validation(e.to_string())
    }
}

impl From<toml::de::Error> for Failure {
    fn from(e: toml::de::Error) -> Self {
        Failure::Validation(format!("config: {e}"))
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Validation(e.to_string())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Validation(e.to_string())
    }
}

pub type CliResult<T> = Result<T, Failure>;
