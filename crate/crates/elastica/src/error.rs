use std::path::PathBuf;

use elastica_core::flow::FlowError;

#[derive(Debug, thiserror::Error)]
pub enum AppError {
    #[error("config: {0}")]
    Config(String),
    #[error("{path}: {msg}")]
    Format { path: PathBuf, msg: String },
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Core(#[from] elastica_core::Error),
    #[error("flow failed: {0}")]
    Flow(#[from] FlowError),
    #[error("{failed} verification check(s) failed")]
    Verify { failed: usize },
}

impl AppError {
    pub fn exit_code(&self) -> u8 {
        match self {
            AppError::Verify { .. } => 1,
            AppError::Flow(_) => 3,
            _ => 2,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>) -> impl FnOnce(std::io::Error) -> AppError {
        let path = path.into();
        move |source| AppError::Io { path, source }
    }

    pub(crate) fn format(path: impl Into<PathBuf>, msg: impl ToString) -> AppError {
        AppError::Format { path: path.into(), msg: msg.to_string() }
    }
}

pub type AppResult<T> = Result<T, AppError>;
