//! `relbell`: single-point evaluation, sweeps, maximization and
//! verification runs for boosted Bell states.
//!
//! Output goes to stdout as CSV (default) or JSON; diagnostics go to stderr.
//! Exit status is 0 on success, 1 when `verify` finds a failing check and 2
//! for usage or domain errors.

mod commands;
mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use output::Format;

#[derive(Parser, Debug)]
#[command(name = "relbell", version, about = "Wigner rotations, boosted Bell states and CHSH values")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, default_value = "csv")]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Wigner rotation of the particle carrying ±p.
    Wigner {
        #[command(flatten)]
        kin: KinArgs,
        /// Which particle: + or -.
        #[arg(long, default_value = "+", allow_hyphen_values = true)]
        sign: String,
    },
    /// Bell-basis coefficients of a boosted Bell state.
    BoostBell {
        #[command(flatten)]
        state: StateArgs,
        #[command(flatten)]
        kin: KinArgs,
        #[arg(long, value_enum, default_value_t = PathArg::Closed)]
        path: PathArg,
    },
    /// Joint expectation of two normalized relativistic spin observables.
    Correlate {
        #[command(flatten)]
        state: StateArgs,
        #[command(flatten)]
        kin: KinArgs,
        /// Direction for particle 1, `x,y,z` (normalized on input).
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        /// Direction for particle 2, `x,y,z`.
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long, value_enum, default_value_t = PathArg::Both)]
        path: PathArg,
    },
    /// CHSH value for canonical or given settings.
    Chsh {
        #[command(flatten)]
        state: StateArgs,
        #[command(flatten)]
        kin: KinArgs,
        /// Use the canonical settings for the label (the default when no
        /// directions are given).
        #[arg(long, conflicts_with_all = ["a", "a_prime", "b", "b_prime"])]
        canonical: bool,
        #[arg(long, allow_hyphen_values = true, requires_all = ["a_prime", "b", "b_prime"])]
        a: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        a_prime: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        b: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        b_prime: Option<String>,
        #[arg(long, value_enum, default_value_t = PathArg::Both)]
        path: PathArg,
    },
    /// Canonical CHSH along a one-parameter grid.
    Sweep {
        #[command(flatten)]
        state: StateArgs,
        #[command(flatten)]
        kin: KinArgs,
        /// Parameter to sweep.
        #[arg(long, value_enum, default_value_t = SweepParam::Beta)]
        param: SweepParam,
        #[arg(long, allow_hyphen_values = true)]
        from: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        to: Option<f64>,
        /// Number of grid points, endpoints included.
        #[arg(long, default_value_t = 200)]
        steps: usize,
    },
    /// Search measurement settings for the largest CHSH value.
    Maximize {
        #[command(flatten)]
        state: StateArgs,
        #[command(flatten)]
        kin: KinArgs,
        #[arg(long, default_value = "simplex")]
        method: String,
        /// Random simplex starts besides the canonical one.
        #[arg(long, default_value_t = 16)]
        starts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 5000)]
        max_iterations: usize,
        #[arg(long, default_value_t = 1e-8)]
        tolerance: f64,
    },
    /// Cross-check closed forms against the brute-force paths.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        /// Random parameter tuples for the oracle suite.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args, Debug, Clone)]
struct StateArgs {
    /// Bell label: 00, 01, 10 or 11.
    #[arg(long, default_value = "00")]
    state: String,
    /// Closed-form family: A (in-plane), B (general) or auto.
    #[arg(long = "case", default_value = "auto")]
    case: String,
}

/// Observer boost along x̂ and the momentum `±p` of the pair.
#[derive(Args, Debug, Clone)]
struct KinArgs {
    /// Observer speed, `0 ≤ β < 1`.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "cosh_alpha")]
    beta: Option<f64>,
    /// Observer `γ = cosh α ≥ 1`.
    #[arg(long, allow_hyphen_values = true)]
    cosh_alpha: Option<f64>,
    /// Particle rapidity `δ ≥ 0`.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "cosh_delta")]
    delta: Option<f64>,
    /// Particle `cosh δ = p⁰/m ≥ 1`.
    #[arg(long, allow_hyphen_values = true)]
    cosh_delta: Option<f64>,
    /// Polar angle of p̂, in `[0, π]`.
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    theta: f64,
    /// Azimuth of p̂.
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    phi: f64,
    #[arg(long, default_value_t = 1.0)]
    mass: f64,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum PathArg {
    Closed,
    Matrix,
    Both,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum SweepParam {
    Beta,
    Delta,
    Theta,
    Phi,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Suite {
    Oracle,
    Bounds,
    All,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(out) => {
            print!("{}", out.table.render(cli.format));
            for line in &out.diagnostics {
                eprintln!("{line}");
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
