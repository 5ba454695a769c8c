use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] coincidence::Error),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("verification failed: {failures} of {checks} checks")]
    Verify { failures: usize, checks: usize },
}

impl CliError {
    /// 1 for failed verification, 2 for anything wrong with the inputs or files.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Verify { .. } => 1,
            _ => 2,
        }
    }
}
