use thiserror::Error;

/// Stable process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitCode {
    Success = 0,
    /// a dimension or consistency check failed
    Failure = 1,
    /// bad spec, bad file, or a group refused by the `-1` hypothesis
    Invalid = 2,
    /// network failure or cache miss in offline mode
    Environment = 3,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Spec(#[from] crate::spec::SpecError),

    #[error(transparent)]
    Core(#[from] emsurf_core::Error),

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("{0}")]
    Invalid(String),

    #[error("network failure: {0}")]
    Network(String),

    #[error("offline mode and no cached response for {0}")]
    CacheMiss(String),
}

impl CliError {
    pub fn io(path: impl AsRef<std::path::Path>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.as_ref().display().to_string(),
            source,
        }
    }

    pub fn exit_code(&self) -> ExitCode {
        use emsurf_core::Error as E;
        match self {
            CliError::Network(_) | CliError::CacheMiss(_) => ExitCode::Environment,
            CliError::Core(
                E::Sl2(_)
                | E::UnknownFamily(_)
                | E::BadLevel(_)
                | E::InvalidRep(_)
                | E::Document(_)
                | E::ContainsMinusOne { .. }
                | E::OracleBound { .. }
                | E::NotCongruence(_),
            ) => ExitCode::Invalid,
            CliError::Core(_) => ExitCode::Failure,
            CliError::Spec(_) | CliError::Io { .. } | CliError::Invalid(_) => ExitCode::Invalid,
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
