//! Front end for the `depthforge` engine: the ideal-expression grammar,
//! JSON and text reports, Macaulay2/Singular export and the verification
//! grids.

pub mod commands;
pub mod export;
pub mod grids;
pub mod parse;
pub mod report;

pub use commands::{CliError, EXIT_INPUT, EXIT_MISMATCH, EXIT_OK};
pub use parse::{format_ideal, parse_ideal, ParseError, ParseErrorKind};
pub use report::Report;
