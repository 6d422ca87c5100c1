use std::path::PathBuf;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors produced by the library and the command-line front end.
///
/// Variants split into two families: invalid inputs (bad arguments, malformed
/// files, inconsistent configurations) and numerical failures (ill-posed
/// discretizations, non-finite fitness values, singular systems). The CLI maps
/// the first family to exit code 1 and the second to exit code 2.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("failed to read {path}: {source}")]
    ReadFile {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("failed to write {path}: {source}")]
    WriteFile {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("malformed CSV ({path}): {detail}")]
    CsvFormat { path: PathBuf, detail: String },

    #[error("malformed JSON ({path}): {source}")]
    JsonFormat {
        path: PathBuf,
        source: serde_json::Error,
    },

    /// The implicit time-stepping denominator is zero or not finite, so the
    /// discretized response cannot be solved for.
    #[error("ill-posed discretization: {0}")]
    IllPosed(String),

    /// A fitness oracle returned NaN or infinity during optimization.
    #[error("fitness returned non-finite value {value} for particle {particle} at position {position:?}")]
    NonFiniteFitness {
        particle: usize,
        value: f64,
        position: Vec<f64>,
    },

    #[error("singular linear system: {0}")]
    SingularSystem(String),

    #[error("ill-conditioned linear system: condition estimate {estimate:.3e} exceeds threshold {threshold:.1e}")]
    IllConditioned { estimate: f64, threshold: f64 },

    /// Every run of a multi-run identification failed.
    #[error("all {0} identification runs failed")]
    AllRunsFailed(usize),

    /// Every cell of a refinement level failed; carries the per-cell diagnostics.
    #[error("refinement level {level} failed in every subinterval: {detail}")]
    RefineLevelFailed { level: usize, detail: String },
}

impl Error {
    /// Exit code the CLI uses for this error: 1 for usage/validation
    /// problems, 2 for numerical failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidInput(_)
            | Error::ReadFile { .. }
            | Error::WriteFile { .. }
            | Error::CsvFormat { .. }
            | Error::JsonFormat { .. } => 1,
            Error::IllPosed(_)
            | Error::NonFiniteFitness { .. }
            | Error::SingularSystem(_)
            | Error::IllConditioned { .. }
            | Error::AllRunsFailed(_)
            | Error::RefineLevelFailed { .. } => 2,
        }
    }
}
