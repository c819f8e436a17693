//! Library side of the `gaingraph` command-line tool.

pub mod commands;
pub mod report;

pub use commands::{
    cmd_balance, cmd_circulant, cmd_cover, cmd_fourier, cmd_spectrum, cmd_switch_equiv, CliError,
    CliResult, Method, RepSelector,
};
pub use report::AnalysisReport;
