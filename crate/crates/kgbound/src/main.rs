//! kgbound command-line entry point.
//!
//! Usage: kgbound --config <path> [--out <dir>] [--seed-goldens] [--strict]

use std::path::PathBuf;
use std::process::ExitCode;

use kgbound::cli::{self, Flags};

struct Args {
    config: Option<PathBuf>,
    out: PathBuf,
    flags: Flags,
}

const USAGE: &str = "usage: kgbound --config <path> [--out <dir>] [--seed-goldens] [--strict]

Runs the job described by the JSON config (solve | spectrum | wavefunction |
verify | list-potentials) and writes CSV/JSON artifacts under --out
(default: current directory). --seed-goldens additionally writes the oracle
golden files for a verify job; --strict promotes warnings to errors.
KGBOUND_THREADS caps internal parallelism.";

fn parse_args() -> Result<Args, String> {
    let mut args = Args {
        config: None,
        out: PathBuf::from("."),
        flags: Flags::default(),
    };
    let mut it = std::env::args().skip(1);
    while let Some(arg) = it.next() {
        match arg.as_str() {
            "--config" => {
                let v = it.next().ok_or("--config requires a path")?;
                args.config = Some(PathBuf::from(v));
            }
            "--out" => {
                let v = it.next().ok_or("--out requires a directory")?;
                args.out = PathBuf::from(v);
            }
            "--seed-goldens" => args.flags.seed_goldens = true,
            "--strict" => args.flags.strict = true,
            "--help" | "-h" => {
                println!("{USAGE}");
                std::process::exit(0);
            }
            other => return Err(format!("unknown argument {other:?}")),
        }
    }
    Ok(args)
}

fn main() -> ExitCode {
    let args = match parse_args() {
        Ok(a) => a,
        Err(msg) => {
            eprintln!("error: {msg}\n{USAGE}");
            return ExitCode::from(2);
        }
    };
    let Some(config_path) = args.config else {
        eprintln!("error: --config is required\n{USAGE}");
        return ExitCode::from(2);
    };
    let config = match cli::load_config(&config_path) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code());
        }
    };
    match cli::run(&config, &args.out, args.flags) {
        Ok(summary) => {
            for line in &summary.lines {
                println!("{line}");
            }
            for w in &summary.warnings {
                eprintln!("warning: {w}");
            }
            if args.flags.strict && !summary.warnings.is_empty() {
                eprintln!("error: warnings promoted to errors (--strict)");
                return ExitCode::from(3);
            }
            for a in &summary.artifacts {
                println!("wrote {}", a.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
