//! Command-line front end for `cbn-core`: network files, reports and DOT export.

pub mod args;
pub mod commands;
pub mod document;

pub use args::{Cli, Format};
pub use commands::{run, CliError, Outcome};
pub use document::{parse_network, serialize_network, Network, NetworkDocument, ParseError};
