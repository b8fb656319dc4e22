//! JSON system files, the expression language and the `epalg` command-line
//! tool built on `ep-core`.

pub mod commands;
pub mod error;
pub mod expr;
pub mod spec;

pub use commands::{run, Cli, Outcome};
pub use error::CliError;
