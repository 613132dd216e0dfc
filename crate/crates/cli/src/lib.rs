//! Library half of the `qgroupoid` binary: the document format, certificate
//! schema and command implementations, kept separate so integration tests can
//! build inputs and inspect outputs without spawning processes.

pub mod cert;
pub mod commands;
pub mod convert;
pub mod doc;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}
