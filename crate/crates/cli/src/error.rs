use std::fmt;

/// An error carrying the process exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

pub const USAGE: i32 = 1;
pub const MAX_ITERATIONS: i32 = 2;
pub const BREAKDOWN: i32 = 3;
pub const HYPOTHESIS: i32 = 4;
pub const BOUND_VIOLATION: i32 = 5;

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        Self { code: USAGE, message: msg.into() }
    }

    pub fn hypothesis(msg: impl Into<String>) -> Self {
        Self { code: HYPOTHESIS, message: msg.into() }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<innerit::Error> for CliError {
    fn from(e: innerit::Error) -> Self {
        use innerit::Error::*;
        let code = match e {
            SizeCap { .. }
            | Hypothesis(_)
            | NotSemidefinite(_)
            | NotPositiveDefinite(_)
            | NotInRange(_)
            | Inconsistent(_) => HYPOTHESIS,
            _ => USAGE,
        };
        Self { code, message: e.to_string() }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self::usage(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        Self::usage(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;
