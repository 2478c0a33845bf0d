//! File formats and the `ambig` command-line tool on top of `ambig-core`.

pub mod cli;
pub mod formats;
pub mod spec;

use serde::Serialize;
use serde_json::Value;
use thiserror::Error;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Error)]
pub enum CliError {
    #[error("bad spec {0}")]
    BadSpec(String),
    #[error("bad range: {0}")]
    BadRange(String),
    #[error("{0}")]
    BadInput(String),
    #[error("io: {0}")]
    Io(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Fail,
    Error,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Fail => 1,
            Status::Error => 2,
        }
    }
}

/// Envelope for every JSON response.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub status: Status,
    pub payload: Value,
    pub elapsed_ms: u64,
    pub version: &'static str,
}
