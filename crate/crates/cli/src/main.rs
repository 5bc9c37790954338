use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use posetcausal::ReductionVariant;
use posetcausal_cli::commands::{self, SimulateArgs, Streams};

/// Analysis of poset-causal linear systems in exact arithmetic.
#[derive(Parser)]
#[command(name = "pcs", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a system file parses and respects its poset.
    Validate { file: PathBuf },
    /// Compute every reachability, observability and reduction subspace.
    Analyze {
        file: PathBuf,
        /// Machine-readable JSON output.
        #[arg(long, conflicts_with = "text")]
        json: bool,
        /// Human-readable output (the default).
        #[arg(long)]
        text: bool,
        /// Leave out the duality identities.
        #[arg(long)]
        skip_duality: bool,
    },
    /// Write the dual system.
    Dual {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Write a structure-preserving reduction.
    Reduce {
        file: PathBuf,
        /// primal, primal-circ, dual-tilde or dual-circ
        #[arg(long, default_value = "primal")]
        variant: ReductionVariant,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Simulate with a piecewise constant input; writes a CSV trajectory.
    Simulate {
        file: PathBuf,
        /// CSV with columns u1..um and an optional leading t column.
        #[arg(long)]
        signal: Option<PathBuf>,
        #[arg(long, default_value_t = 0.01)]
        h: f64,
        /// Number of steps; defaults to the signal length, or 100 with zero input.
        #[arg(long)]
        steps: Option<usize>,
        /// Also compare the global trajectory with its subsystem decomposition.
        #[arg(long)]
        check_lemma: bool,
        #[arg(long, default_value_t = 1e-8)]
        tolerance: f64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Recompute the worked examples and compare with the published values.
    Demo {
        /// A demo name or `all`.
        name: Option<String>,
        #[arg(long)]
        list: bool,
    },
    /// List the embedded system files, or print one.
    Corpus { name: Option<String> },
}

fn run(cli: Cli, s: &mut Streams) -> posetcausal_cli::CliResult<u8> {
    match cli.command {
        Command::Validate { file } => commands::validate(&file, s),
        Command::Analyze {
            file,
            json,
            text: _,
            skip_duality,
        } => commands::analyze_cmd(&file, json, skip_duality, s),
        Command::Dual { file, output } => commands::dual(&file, output.as_deref(), s),
        Command::Reduce { file, variant, output } => commands::reduce(&file, variant, output.as_deref(), s),
        Command::Simulate {
            file,
            signal,
            h,
            steps,
            check_lemma,
            tolerance,
            output,
        } => commands::simulate_cmd(
            &file,
            &SimulateArgs {
                signal: signal.as_deref(),
                h,
                steps,
                check_lemma,
                tolerance,
                out_path: output.as_deref(),
            },
            s,
        ),
        Command::Demo { name, list } => commands::demo_cmd(name.as_deref(), list, s),
        Command::Corpus { name } => commands::corpus_cmd(name.as_deref(), s),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let stderr = io::stderr();
    let (mut out, mut err) = (stdout.lock(), stderr.lock());
    let mut streams = Streams {
        out: &mut out,
        err: &mut err,
    };
    let code = match run(cli, &mut streams) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(streams.err, "error: {e}");
            e.exit_code()
        }
    };
    let _ = streams.out.flush();
    ExitCode::from(code)
}
