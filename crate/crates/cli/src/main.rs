use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use gaingraph::spectra::TAU_SPEC;
use gaingraph_cli::{
    cmd_balance, cmd_circulant, cmd_cover, cmd_fourier, cmd_spectrum, cmd_switch_equiv,
    AnalysisReport, CliError, Method, RepSelector,
};

#[derive(Parser)]
#[command(
    name = "gaingraph",
    version,
    about = "Balance, switching and spectra of gain graphs over finite groups"
)]
struct Cli {
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Tolerance for spectral comparisons.
    #[arg(long, global = true, default_value_t = TAU_SPEC)]
    tol: f64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide balance.
    Balance {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::All)]
        method: Method,
        /// Representation for the spectral method (default: regular).
        #[arg(long)]
        rep: Option<RepSelector>,
    },
    /// Spectra of the underlying and represented adjacency matrices.
    Spectrum {
        file: PathBuf,
        #[arg(long, default_value = "regular")]
        rep: RepSelector,
    },
    /// Cover graph, its spectrum and optionally its irreducible pieces.
    Cover {
        file: PathBuf,
        #[arg(long)]
        decompose: bool,
    },
    /// Search for a switching function between two gain graphs.
    SwitchEquiv { first: PathBuf, second: PathBuf },
    /// Detect and decompose a G-block circulant matrix.
    Circulant {
        file: PathBuf,
        #[arg(long)]
        group: String,
        #[arg(long)]
        block_size: usize,
        /// Entrywise tolerance for block detection (exact by default).
        #[arg(long, default_value_t = 0.0)]
        detect_tol: f64,
    },
    /// Fourier transform of the adjacency matrix at a representation.
    Fourier {
        file: PathBuf,
        #[arg(long, default_value = "regular")]
        rep: RepSelector,
    },
}

fn render(report: &AnalysisReport, json: bool) -> String {
    if json {
        report.to_json()
    } else {
        report.to_text()
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Balance { file, method, rep } => cmd_balance(file, *method, *rep, cli.tol),
        Command::Spectrum { file, rep } => cmd_spectrum(file, *rep, cli.tol),
        Command::Cover { file, decompose } => cmd_cover(file, *decompose, cli.tol),
        Command::SwitchEquiv { first, second } => cmd_switch_equiv(first, second),
        Command::Circulant {
            file,
            group,
            block_size,
            detect_tol,
        } => cmd_circulant(file, group, *block_size, *detect_tol, cli.tol),
        Command::Fourier { file, rep } => cmd_fourier(file, *rep),
    };
    match result {
        Ok(report) => {
            // a closed pipe downstream is not an error of ours
            let _ = writeln!(std::io::stdout(), "{}", render(&report, cli.json));
            ExitCode::SUCCESS
        }
        Err(e) => {
            if let CliError::Discrepancy { report, .. } = &e {
                eprintln!("{}", render(report, cli.json));
            }
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
