use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use oigb_cli::{execute, CliError, Command, Options};

#[derive(Parser)]
#[command(name = "oigb", version, about = "Gröbner bases, syzygies and free resolutions of OI-modules")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    /// Problem file; standard input when absent.
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    /// Monomial order (only `oilex`).
    #[arg(long, global = true)]
    order: Option<String>,
    /// Minimize the Gröbner basis or the resolution.
    #[arg(long, global = true)]
    minimize: bool,
    /// Number of resolution steps.
    #[arg(long, global = true)]
    steps: Option<usize>,
    /// Width to restrict a resolution to.
    #[arg(long, global = true)]
    restrict: Option<usize>,
    /// Largest width for oracle checks.
    #[arg(long, global = true)]
    max_test_width: Option<usize>,
    /// `QQ` or `Fp:p`, overriding the problem file.
    #[arg(long, global = true)]
    field: Option<String>,
}

#[derive(Subcommand, Clone, Copy)]
enum Cmd {
    /// Run OI-Buchberger.
    Gb,
    /// Test the OI-Buchberger criterion.
    CheckGb,
    /// Test the width-2W stabilization condition.
    StabilizeCheck,
    /// Divide `element` by the generators.
    Reduce,
    /// Schreyer syzygies of a Gröbner basis.
    Syz,
    /// Free resolution.
    Res,
    /// A resolution restricted to one width.
    Restrict,
    /// Width-wise comparison against the classical algorithms.
    Oracle,
}

impl From<Cmd> for Command {
    fn from(c: Cmd) -> Self {
        match c {
            Cmd::Gb => Command::Gb,
            Cmd::CheckGb => Command::CheckGb,
            Cmd::StabilizeCheck => Command::StabilizeCheck,
            Cmd::Reduce => Command::Reduce,
            Cmd::Syz => Command::Syz,
            Cmd::Res => Command::Res,
            Cmd::Restrict => Command::Restrict,
            Cmd::Oracle => Command::Oracle,
        }
    }
}

fn read_input(path: Option<&PathBuf>) -> Result<String, CliError> {
    let mut text = String::new();
    match path {
        Some(p) => text = std::fs::read_to_string(p)?,
        None => {
            std::io::stdin().read_to_string(&mut text)?;
        }
    }
    Ok(text)
}

/// `OIGB_THREADS` caps the worker pool; 0 or unset runs on one thread.
fn configure_threads() {
    let n = std::env::var("OIGB_THREADS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .unwrap_or(0);
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(n.max(1))
        .build_global();
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    configure_threads();
    let opts = Options {
        json: cli.json,
        order: cli.order,
        minimize: cli.minimize,
        steps: cli.steps,
        restrict: cli.restrict,
        max_test_width: cli.max_test_width,
        field: cli.field,
    };
    let result = read_input(cli.input.as_ref()).and_then(|text| execute(cli.command.into(), &opts, &text));
    match result {
        Ok(outcome) => {
            print!("{}", outcome.stdout);
            ExitCode::from(outcome.exit as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
