use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Library(#[from] monocurv::Error),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl CliError {
    /// 2 for bad input (usage or domain), 1 for failures of the computation itself.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Library(e) => library_code(e),
            _ => 1,
        }
    }
}

fn library_code(e: &monocurv::Error) -> i32 {
    use monocurv::Error::*;
    match e {
        SingularMetric => 1,
        Target { source, .. } => library_code(source),
        _ => 2,
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
