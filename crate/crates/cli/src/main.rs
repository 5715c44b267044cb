use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use planeform::commands;
use planeform::scenario::{parse_frame_flag, FrameSpec};

/// Plane formation by synchronous mobile robots without chirality.
#[derive(Parser)]
#[command(name = "planeform", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a scenario file for a named shape.
    Gen {
        /// tetrahedron | octahedron | cube | dodecahedron | icosahedron |
        /// icosidodecahedron | prism(k,h) | antiprism(k,h) | pyramid(k) |
        /// random(n) | random-symmetric(label,orbits)
        shape: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        tol: Option<f64>,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Report symmetry structure and plane-formation solvability.
    Analyze {
        file: PathBuf,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        json: bool,
    },
    /// Execute the formation algorithm under FSYNC scheduling.
    Run {
        file: PathBuf,
        /// random:<seed> | symmetric:<label>:<seed> | file:<path>
        #[arg(long)]
        frames: Option<String>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        max_steps: Option<usize>,
        #[arg(long)]
        tol: Option<f64>,
        /// Trace output path (line-delimited records).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-check the invariants of a recorded trace.
    Verify { file: PathBuf },
    /// Differential comparison against the brute-force oracles.
    OracleCompare {
        file: PathBuf,
        #[arg(long)]
        tol: Option<f64>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}

fn dispatch(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Gen { shape, seed, tol, out } => {
            let file = commands::cmd_gen(&shape, seed, tol)?;
            match out {
                Some(path) => file.save(&path)?,
                None => print!("{}", file.to_json()?),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Analyze { file, tol, json } => {
            let report = commands::cmd_analyze(&file, tol)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&report)?);
            } else {
                print!("{}", report.to_text());
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Run { file, frames, seed, max_steps, tol, out } => {
            let spec: Option<FrameSpec> = frames.as_deref().map(parse_frame_flag).transpose()?;
            let result =
                commands::cmd_run(&file, spec, seed, max_steps, tol, out.as_deref())?;
            println!("outcome: {} ({} steps recorded)", result.outcome, result.steps);
            Ok(ExitCode::from(result.exit_code as u8))
        }
        Command::Verify { file } => {
            commands::cmd_verify(&file)?;
            println!("trace ok");
            Ok(ExitCode::SUCCESS)
        }
        Command::OracleCompare { file, tol } => {
            let summary = commands::cmd_oracle_compare(&file, tol)?;
            print!("{summary}");
            println!("oracle comparison passed");
            Ok(ExitCode::SUCCESS)
        }
    }
}
