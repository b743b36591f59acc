use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use tanaka_forge::{execute, Command, Options, Overrides, EXIT_INPUT};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Cmd {
    Check,
    Classify,
    Prolong,
    Render,
}

/// Admissibility scans, prolongations and weight diagrams for graded CR
/// extensions of semisimple Lie algebras.
#[derive(Debug, Parser)]
#[command(name = "tanaka-forge", version)]
struct Cli {
    #[arg(value_enum)]
    command: Cmd,
    /// Job configuration (JSON, "schema": 1).
    #[arg(long)]
    config: PathBuf,
    /// Output directory (default: the config's output.dir, else ".").
    #[arg(long)]
    out: Option<PathBuf>,
    /// Structure index for modules with several admissible structures.
    #[arg(long)]
    structure: Option<usize>,
    /// Maximal coordinate sum for classify.
    #[arg(long)]
    bound: Option<u64>,
    /// Maximal prolongation degree.
    #[arg(long = "max-degree")]
    max_degree: Option<i64>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT as u8 } else { 0 });
        }
    };
    let command = match cli.command {
        Cmd::Check => Command::Check,
        Cmd::Classify => Command::Classify,
        Cmd::Prolong => Command::Prolong,
        Cmd::Render => Command::Render,
    };
    let opts = Options {
        config: cli.config,
        out: cli.out,
        overrides: Overrides { structure: cli.structure, bound: cli.bound, max_degree: cli.max_degree, threads: None },
    };
    let ex = execute(command, &opts);
    for m in &ex.messages {
        eprintln!("{m}");
    }
    for p in &ex.written {
        println!("{}", p.display());
    }
    ExitCode::from(ex.code as u8)
}
