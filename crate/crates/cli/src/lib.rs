//! Command-line front end for `opennet`: circuit documents, signal-flow term
//! syntax, and the subcommands that run on them.

pub mod app;
pub mod circuit_doc;
pub mod error;
pub mod term_syntax;

pub use app::{run, Outcome};
pub use error::CliError;
