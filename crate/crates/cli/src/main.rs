use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, ValueEnum};
use mccgs_cli::{emit_dot, emit_json, emit_table, run, Mode, Settings};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Buildtree,
    Mccgs,
}

/// Comprehensive Gröbner systems with merged segments and canonical
/// specifications.
#[derive(Debug, Parser)]
#[command(name = "mccgs", version)]
struct Args {
    /// Problem file.
    problem: PathBuf,
    #[arg(long, value_enum, default_value = "mccgs")]
    mode: ModeArg,
    /// Write the report as JSON to this path.
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
    /// Write the BUILDTREE tree in Graphviz format to this path.
    #[arg(long, value_name = "PATH")]
    dot: Option<PathBuf>,
    /// Total-degree bound for the pre-image multipliers (default 2).
    #[arg(long, value_name = "L")]
    genimage_bound: Option<u32>,
    /// Total-degree bound for factorization (default 6).
    #[arg(long)]
    factor_degree_bound: Option<u32>,
    /// Sample points checked per subsegment (default 5).
    #[arg(long, value_name = "K")]
    samples: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let mode = match args.mode {
        ModeArg::Buildtree => Mode::Buildtree,
        ModeArg::Mccgs => Mode::Mccgs,
    };
    let flags = Settings {
        genimage_bound: args.genimage_bound,
        factor_degree_bound: args.factor_degree_bound,
        samples: args.samples,
        seed: args.seed,
    };
    let start = Instant::now();
    let out = match run(&args.problem, mode, &flags) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    eprintln!("elapsed: {:.3?}", start.elapsed());
    print!("{}", emit_table(&out.bundle));
    let writes = [
        (args.json.as_ref(), emit_json(&out.bundle)),
        (args.dot.as_ref(), emit_dot(&out.tree, &out.ring)),
    ];
    for (path, text) in writes {
        if let Some(p) = path {
            if let Err(e) = std::fs::write(p, text) {
                eprintln!("error: {}: {e}", p.display());
                return ExitCode::from(1);
            }
        }
    }
    ExitCode::from(out.bundle.exit_code() as u8)
}
