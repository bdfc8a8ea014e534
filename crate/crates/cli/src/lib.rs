//! Command-line front end: JSON input documents, polynomial literals, SVG
//! figures and the `graph`, `patchwork`, `verify` and `roots` commands.

pub mod commands;
pub mod error;
pub mod input;
pub mod literal;
pub mod svg;

pub use error::{CliError, CliResult};
