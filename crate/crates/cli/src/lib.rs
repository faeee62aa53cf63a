//! Scheme file format, bundled reference data, and the search driver behind
//! the `bms` command-line tool.

pub mod format;
pub mod resources;
pub mod search;

pub use format::{parse, serialize, ParseError, ParseOutcome};
