use std::fmt;
use std::process::ExitCode;

#[derive(Debug)]
pub enum CliError {
    /// bad input file or arguments
    Input(String),
    /// the mathematics refused
    Math(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Input(_) => ExitCode::from(2),
            CliError::Math(_) => ExitCode::from(3),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "input error: {}", m),
            CliError::Math(m) => write!(f, "error: {}", m),
        }
    }
}

impl From<bratteli::Error> for CliError {
    fn from(e: bratteli::Error) -> Self {
        if e.is_input_error() {
            CliError::Input(e.to_string())
        } else {
            CliError::Math(e.to_string())
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(format!("writing output: {}", e))
    }
}
