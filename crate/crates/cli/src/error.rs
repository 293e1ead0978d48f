use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] rshar_core::Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("config: {0}")]
    Config(String),
    #[error("algorithms disagree: {0}")]
    Disagreement(String),
}

impl PipelineError {
    /// 1 usage, 2 data, 3 internal disagreement.
    pub fn exit_code(&self) -> i32 {
        match self {
            PipelineError::Usage(_) | PipelineError::Config(_) => 1,
            PipelineError::Core(_) | PipelineError::Io { .. } => 2,
            PipelineError::Disagreement(_) => 3,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>) -> impl FnOnce(std::io::Error) -> PipelineError {
        let path = path.into();
        move |source| PipelineError::Io { path, source }
    }
}

macro_rules! core_from {
    ($($t:ty),*) => {$(
        impl From<$t> for PipelineError {
            fn from(e: $t) -> Self {
                PipelineError::Core(e.into())
            }
        }
    )*};
}

core_from!(
    rshar_core::datamodel::DataModelError,
    rshar_core::ingest::IngestError,
    rshar_core::mapcode::MapCodeError,
    rshar_core::mining::MiningError,
    rshar_core::rules::RuleError
);
