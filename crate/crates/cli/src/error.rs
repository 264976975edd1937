use std::fmt;
use std::process::ExitCode;

/// Failures that stop a command before a report exists. Verification
/// failures are not errors: they are reports with `ok == false`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Input(String),
}

impl CliError {
    pub fn input(msg: impl Into<String>) -> Self {
        CliError::Input(msg.into())
    }

    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(2)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) => f.write_str(m),
        }
    }
}

impl From<stackcoh::Error> for CliError {
    fn from(e: stackcoh::Error) -> Self {
        CliError::Input(e.to_string())
    }
}
