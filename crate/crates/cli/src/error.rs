use gxe_core::GxeError;
use thiserror::Error;

/// Failure of a command, grouped by exit status.
#[derive(Debug, Error)]
pub enum CliError {
    /// Bad flags, configuration or input data.
    #[error("{0}")]
    Input(String),
    /// A model could not be fitted or analyzed.
    #[error("{0}")]
    Fit(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Fit(_) => 3,
            CliError::Io(_) => 4,
        }
    }

    pub fn category(&self) -> &'static str {
        match self {
            CliError::Input(_) => "input",
            CliError::Fit(_) => "fit",
            CliError::Io(_) => "io",
        }
    }

    /// One line: `error[category]: message`, with embedded newlines flattened.
    pub fn line(&self) -> String {
        let msg = self.to_string().split_whitespace().collect::<Vec<_>>().join(" ");
        format!("error[{}]: {msg}", self.category())
    }
}

impl From<GxeError> for CliError {
    fn from(e: GxeError) -> Self {
        match e {
            GxeError::Io(_) => CliError::Io(e.to_string()),
            GxeError::Format(_) | GxeError::Dimension(_) | GxeError::Domain(_) => CliError::Input(e.to_string()),
            _ => CliError::Fit(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        if e.is_io_error() {
            CliError::Io(e.to_string())
        } else {
            CliError::Input(e.to_string())
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
