//! Command-line front end and its input formats.

mod app;
pub mod expr;
pub mod formats;
pub mod suite;

pub use app::{execute, main_with_args, Cli, CliError, Command, Output};
