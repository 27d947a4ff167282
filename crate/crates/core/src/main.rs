use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use log::error;

use napoleon::commands::{self, BatchSummary, TransformOp};
use napoleon::io::IoError;
use napoleon::svg::ShowSet;
use napoleon::TransformKind;

#[derive(Parser)]
#[command(
    name = "napoleon",
    version,
    about = "Torricelli and Napoleon transforms, equilateral alignment and Fermat points"
)]
struct Cli {
    /// Tolerance for collinearity and vertex tests, relative to triangle scale.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Inner,
    Outer,
}

impl From<Kind> for TransformKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Inner => TransformKind::Inner,
            Kind::Outer => TransformKind::Outer,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Op {
    Torricelli,
    Napoleon,
}

#[derive(Subcommand)]
enum Command {
    /// Apply one Torricelli or Napoleon transform to every record.
    Transform {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long, value_enum, default_value = "napoleon")]
        op: Op,
    },
    /// Apply the Napoleon transform k times.
    Iterate {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        k: usize,
    },
    /// Closest equilateral triple to every record.
    Align {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
        /// Also run the numerical oracle and report the objective gap.
        #[arg(long)]
        with_oracle: bool,
    },
    /// Fermat point of every record.
    Fermat {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
    },
    /// Run the randomized invariant suite and write a JSON report.
    Verify {
        #[arg(long, default_value_t = 1000)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long)]
        output: PathBuf,
    },
    /// Render records and selected constructions as SVG.
    Plot {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
        /// Comma-separated: torricelli+, torricelli-, napoleon+, napoleon-, double, fermat, all.
        #[arg(long, default_value = "napoleon")]
        show: ShowSet,
    },
}

fn batch_exit(result: Result<BatchSummary, IoError>) -> ExitCode {
    match result {
        Ok(s) if s.failed == 0 => ExitCode::SUCCESS,
        Ok(s) => {
            error!("{} of {} records failed", s.failed, s.failed + s.processed);
            ExitCode::from(2)
        }
        Err(e) => {
            error!("{e}");
            ExitCode::from(2)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let tol = cli.tol;
    match cli.command {
        Command::Transform {
            input,
            output,
            kind,
            op,
        } => {
            let op = match op {
                Op::Torricelli => TransformOp::Torricelli,
                Op::Napoleon => TransformOp::Napoleon,
            };
            batch_exit(commands::cmd_transform(&input, kind.into(), op, &output, tol))
        }
        Command::Iterate { input, output, kind, k } => {
            batch_exit(commands::cmd_iterate(&input, kind.into(), k, &output, tol))
        }
        Command::Align {
            input,
            output,
            with_oracle,
        } => batch_exit(commands::cmd_align(&input, &output, with_oracle, tol)),
        Command::Fermat { input, output } => batch_exit(commands::cmd_fermat(&input, &output, tol)),
        Command::Verify { n, dim, seed, output } => {
            if n == 0 || dim < 2 {
                error!("verify needs --n >= 1 and --dim >= 2");
                return ExitCode::from(2);
            }
            match commands::cmd_verify(n, dim, seed, &output) {
                Ok(report) if report.all_passed => ExitCode::SUCCESS,
                Ok(report) => {
                    for c in report.checks.iter().filter(|c| !c.ok()) {
                        error!("check {} failed: max residual {:e}", c.name, c.max_residual);
                    }
                    ExitCode::from(1)
                }
                Err(e) => {
                    error!("{e}");
                    ExitCode::from(2)
                }
            }
        }
        Command::Plot { input, output, show } => batch_exit(commands::cmd_plot(&input, &output, &show, tol)),
    }
}
