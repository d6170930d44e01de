//! Command implementations behind the `simpack` binary.
//!
//! Every command returns an [`Outcome`]: the text for stdout and the exit code
//! (0 accepted / agreement, 1 rejected, 2 input error, 3 engine/oracle
//! discrepancy).

pub mod commands;
pub mod input;
pub mod random;
pub mod render;
pub mod tables;

pub const EXIT_OK: i32 = 0;
pub const EXIT_REJECTED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_DISCREPANCY: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] simpack::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
}

impl Outcome {
    pub fn new(code: i32, stdout: String) -> Outcome {
        Outcome { code, stdout }
    }
}
