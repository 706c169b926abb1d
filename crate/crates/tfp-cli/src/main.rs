use clap::{Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;
use tfp_cli::commands::{self, GenKind, Method, ReduceTarget};
use tfp_core::generator::Enforce;

/// Exact toolkit for knockout tournament fixing: decide winnability, measure
/// acyclicity parameters, test sufficient conditions, and build gadget
/// instances.
#[derive(Parser)]
#[command(name = "tfp", version, about)]
struct Cli {
    /// Worker threads for commands that can parallelize (bench).
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide whether the favorite can be seeded to win (exit 0 yes, 1 no).
    Solve {
        file: PathBuf,
        /// Print a winning bracket and its per-round matches.
        #[arg(long)]
        witness: bool,
        /// dp: subset dynamic program; enum: play every bracket.
        #[arg(long, value_enum, default_value_t = MethodArg::Dp)]
        method: MethodArg,
    },
    /// Print the acyclicity parameters of the instance.
    Params { file: PathBuf },
    /// Print which sufficient winning conditions hold for the favorite.
    Conditions { file: PathBuf },
    /// Embed the instance into a gadget with the chosen terminal structure.
    Reduce {
        file: PathBuf,
        #[arg(long, value_enum)]
        target: TargetArg,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Generate an instance file.
    Gen {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Out-neighborhood size (neighbor-acyclic kind only).
        #[arg(long)]
        a_size: Option<usize>,
        /// Condition bundle the generator must satisfy.
        #[arg(long, value_enum)]
        enforce: Option<EnforceArg>,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Replay a bracket file against an instance and report the winner.
    Check { file: PathBuf, bracket: PathBuf },
    /// Benchmark every .tfp instance in a directory (CSV on stdout).
    Bench { dir: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Dp,
    Enum,
}

#[derive(Clone, Copy, ValueEnum)]
enum TargetArg {
    Sfasv,
    Sfasin,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Random,
    NeighborAcyclic,
    Tight,
    SpecialSfasv,
    SpecialSfasin,
}

#[derive(Clone, Copy, ValueEnum)]
enum EnforceArg {
    RecursiveSeed,
    KingDegree,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.cmd {
        Cmd::Solve { file, witness, method } => {
            let method = match method {
                MethodArg::Dp => Method::Dp,
                MethodArg::Enum => Method::Enum,
            };
            commands::cmd_solve(&file, witness, method)
        }
        Cmd::Params { file } => commands::cmd_params(&file),
        Cmd::Conditions { file } => commands::cmd_conditions(&file),
        Cmd::Reduce { file, target, out } => {
            let target = match target {
                TargetArg::Sfasv => ReduceTarget::Sfasv,
                TargetArg::Sfasin => ReduceTarget::Sfasin,
            };
            commands::cmd_reduce(&file, target, &out)
        }
        Cmd::Gen { kind, n, seed, a_size, enforce, out } => {
            let kind = match kind {
                KindArg::Random => GenKind::Random,
                KindArg::NeighborAcyclic => GenKind::NeighborAcyclic,
                KindArg::Tight => GenKind::Tight,
                KindArg::SpecialSfasv => GenKind::SpecialSfasv,
                KindArg::SpecialSfasin => GenKind::SpecialSfasin,
            };
            let enforce = enforce.map(|e| match e {
                EnforceArg::RecursiveSeed => Enforce::RecursiveSeed,
                EnforceArg::KingDegree => Enforce::KingDegree,
            });
            commands::cmd_gen(kind, n, seed, a_size, enforce, &out)
        }
        Cmd::Check { file, bracket } => commands::cmd_check(&file, &bracket),
        Cmd::Bench { dir } => commands::cmd_bench(&dir, cli.jobs),
    };
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
