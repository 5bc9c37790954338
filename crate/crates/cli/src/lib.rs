//! Library side of the `pcs` command-line tool: file handling, the analysis
//! report, the worked-example corpus and the command implementations.

pub mod commands;
pub mod demo;
pub mod error;
pub mod report;
pub mod signal;

pub use error::{CliError, CliResult};
pub use report::{analyze, render_json, render_text, AnalysisReport};
