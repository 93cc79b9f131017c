//! Front end for exact DG algebra computations: a line-oriented presentation
//! format, command dispatch and text/JSON reports.

pub mod commands;
pub mod format;
pub mod report;

pub use commands::{load, parse_window, run, CliError, Command, Options};
pub use format::{emit, parse, parse_after, ParseError, ParseOptions, Presentation};
pub use report::Report;
