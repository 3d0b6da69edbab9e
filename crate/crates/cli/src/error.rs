use std::path::PathBuf;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{}:{line}: {message}", file.display())]
    Validation { file: PathBuf, line: u64, message: String },

    #[error("{0}")]
    Usage(String),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Model(#[from] skellam_core::Error),
}

impl CliError {
    pub(crate) fn validation(file: impl Into<PathBuf>, line: u64, message: impl Into<String>) -> Self {
        CliError::Validation { file: file.into(), line, message: message.into() }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }

    pub fn exit_code(&self) -> i32 {
        use skellam_core::Error as E;
        match self {
            CliError::Validation { .. } | CliError::Usage(_) | CliError::Io { .. } => EXIT_VALIDATION,
            CliError::Model(E::Domain(_) | E::Snapshot { .. }) => EXIT_VALIDATION,
            CliError::Model(E::Degenerate(_) | E::EmptySubGame) => EXIT_NUMERICAL,
        }
    }
}
