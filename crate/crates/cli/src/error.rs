use std::path::Path;

use semlex::compound::CompoundError;
use semlex::corpus::TaggedFormatError;
use semlex::disambig::DisambigError;
use semlex::sections::SpecError;
use semlex::LoadError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{}: {source}", .path.display())]
    Lexicon {
        path: std::path::PathBuf,
        #[source]
        source: LoadError,
    },
    #[error("cannot read {}: {source}", .path.display())]
    Read {
        path: std::path::PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("config: {0}")]
    Config(String),
    #[error("{0}")]
    Input(String),
    #[error("malformed tagged input: {0}")]
    Tagged(#[from] TaggedFormatError),
    #[error("section spec: {0}")]
    Spec(#[from] SpecError),
    #[error("profile: {0}")]
    Profile(#[from] DisambigError),
    #[error("compatibility rules: {0}")]
    Rules(#[from] CompoundError),
    #[error("cannot write output: {0}")]
    Write(std::io::Error),
}

impl CliError {
    pub fn read(path: &Path, source: std::io::Error) -> Self {
        CliError::Read {
            path: path.to_path_buf(),
            source,
        }
    }

    /// `1` for content that fails validation, `2` for unreadable or
    /// malformed input.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Lexicon {
                source: LoadError::Io(_),
                ..
            } => 2,
            CliError::Lexicon { .. } => 1,
            CliError::Config(_) => 1,
            CliError::Spec(SpecError::Io(_) | SpecError::Json(_)) => 2,
            CliError::Spec(_) => 1,
            CliError::Profile(DisambigError::Io(_) | DisambigError::EmptyCorpus) => 2,
            CliError::Profile(_) => 1,
            CliError::Rules(_) => 1,
            CliError::Read { .. } | CliError::Input(_) | CliError::Tagged(_) | CliError::Write(_) => 2,
        }
    }
}
