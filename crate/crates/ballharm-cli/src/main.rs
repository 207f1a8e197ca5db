//! `ballharm` — harmonic analysis of 3D shapes in the unit ball.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::{parse_convention, parse_quad, AlphaArg, RunConfig};

#[derive(Debug, Parser)]
#[command(
    name = "ballharm",
    version,
    about = "3D Zernike moments, volumetric convolution, and axial symmetry on the unit ball"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Maximum basis order n.
    #[arg(long, global = true, default_value_t = 5)]
    nmax: u32,

    /// Iteration count for the pseudo-inverse.
    #[arg(long = "pinv-iters", global = true, default_value_t = 3)]
    pinv_iters: usize,

    /// Initialization scale for the pseudo-inverse: a number or "auto".
    #[arg(long, global = true, default_value = "0.001")]
    alpha: String,

    /// Quadrature resolution as R,T,P (default 48,48,48). For `check`, an
    /// explicit value overrides the suites' pinned resolutions.
    #[arg(long, global = true)]
    quad: Option<String>,

    /// Number of symmetry axes.
    #[arg(long, global = true, default_value_t = 4)]
    axes: usize,

    /// Seed for sampling and kernel generation.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Radial convention: "orthogonalized" or "paper-literal".
    #[arg(long, global = true, default_value = "orthogonalized")]
    convention: String,

    /// Rasterization acceptance distance.
    #[arg(long, global = true, default_value_t = 0.25)]
    tol: f64,

    /// Surface sample count when the input is a mesh.
    #[arg(long, global = true, default_value_t = 2048)]
    points: usize,

    /// Empty-node subsample size relative to occupied nodes in the
    /// least-squares system.
    #[arg(long = "empty-ratio", global = true, default_value_t = 1.0)]
    empty_ratio: f64,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Normalize an OFF or XYZ input into the unit ball.
    Ingest {
        input: PathBuf,
        /// Output XYZ path; a .json sidecar is written next to it.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Compute Zernike moments by the direct and least-squares paths.
    Moments {
        input: PathBuf,
        /// Output stem; writes `<stem>.direct.json` / `<stem>.lsq.json`.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Which transform paths to run: direct, lsq, or both.
        #[arg(long, default_value = "both")]
        paths: String,
        /// Also write flat CSV next to each JSON file.
        #[arg(long)]
        csv: bool,
    },
    /// Full shape descriptor: fixed views, hemisphere split, convolution
    /// features, and symmetry measurements.
    Descriptor {
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
        /// Number of random axial kernels in the bank.
        #[arg(long, default_value_t = 4)]
        kernels: usize,
        /// Drop this fraction of points and report the descriptor delta.
        #[arg(long)]
        dropout: Option<f64>,
    },
    /// Convolve a moment file with an axial kernel moment file.
    Convolve {
        /// Moment JSON of the input function.
        #[arg(long)]
        input: PathBuf,
        /// Moment JSON of the kernel (symmetrized before use).
        #[arg(long)]
        kernel: PathBuf,
        /// Output feature-map JSON path.
        #[arg(long)]
        output: PathBuf,
        /// Also write the feature map as CSV.
        #[arg(long)]
        csv: bool,
    },
    /// Axial-symmetry descriptor of a moment file.
    Symmetry {
        /// Moment JSON of the input function.
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run the verification suites; exit 0 only if all pass.
    Check {
        /// Comma-separated suite names (default: all).
        #[arg(long)]
        suite: Option<String>,
    },
    /// Time the main computational stages and emit a CSV table.
    Bench {
        /// CSV output path (default: stdout).
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn build_config(cli: &Cli) -> anyhow::Result<RunConfig> {
    Ok(RunConfig {
        n_max: cli.nmax,
        pinv_iterations: cli.pinv_iters,
        alpha: AlphaArg::parse(&cli.alpha)?,
        quadrature: parse_quad(cli.quad.as_deref().unwrap_or("48,48,48"))?,
        axes: cli.axes,
        seed: cli.seed,
        convention: parse_convention(&cli.convention)?,
        raster_tol: cli.tol,
        sample_points: cli.points,
        empty_ratio: cli.empty_ratio,
    })
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    let config = build_config(&cli)?;
    match cli.command {
        Command::Ingest { input, output } => {
            commands::ingest::run(&config, &input, output.as_deref())?;
            Ok(0)
        }
        Command::Moments {
            input,
            output,
            paths,
            csv,
        } => {
            commands::moments::run(&config, &input, output.as_deref(), &paths, csv)?;
            Ok(0)
        }
        Command::Descriptor {
            input,
            output,
            kernels,
            dropout,
        } => {
            commands::descriptor::run(&config, &input, output.as_deref(), kernels, dropout)?;
            Ok(0)
        }
        Command::Convolve {
            input,
            kernel,
            output,
            csv,
        } => {
            commands::convolve::run(&config, &input, &kernel, &output, csv)?;
            Ok(0)
        }
        Command::Symmetry { input, output } => {
            commands::symmetry::run(&config, &input, output.as_deref())?;
            Ok(0)
        }
        Command::Check { suite } => {
            let quad_override = cli.quad.as_deref().map(parse_quad).transpose()?;
            commands::check::run(suite.as_deref(), quad_override)
        }
        Command::Bench { output } => {
            commands::bench::run(&config, output.as_deref())?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
