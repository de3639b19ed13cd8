//! Command-line arguments.

use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use twomode::states::{StateKind, StateSpec};

use crate::format::{DEFAULT_DIGITS, LOSSLESS_DIGITS};

#[derive(Debug, Parser)]
#[command(name = "twomode", version, about = "Two-mode Gaussian state analysis")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print every measure of a covariance file.
    Analyze {
        /// Covariance file, or `-` for standard input.
        path: String,
        /// Entropies in bits instead of nats.
        #[arg(long)]
        bits: bool,
        /// Significant digits of numeric output.
        #[arg(long, default_value_t = DEFAULT_DIGITS as u8, value_parser = clap::value_parser!(u8).range(1..=17))]
        precision: u8,
    },
    /// Check a covariance file against the uncertainty relation.
    Validate {
        /// Covariance file, or `-` for standard input.
        path: String,
    },
    /// Write the covariance file of a canonical state.
    Make {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        label: Option<String>,
        /// Significant digits of the matrix entries.
        #[arg(long, default_value_t = LOSSLESS_DIGITS as u8, value_parser = clap::value_parser!(u8).range(1..=17))]
        precision: u8,
    },
    /// Tabulate the measures along one constructor parameter.
    Sweep {
        #[command(flatten)]
        spec: SpecArgs,
        /// Parameter to vary.
        #[arg(long, value_enum)]
        param: SweepParam,
        /// Grid `start:stop:step`, inclusive of `stop` when it lies on the grid.
        #[arg(long)]
        range: Grid,
        /// CSV destination; standard output if absent.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        bits: bool,
    },
    /// Compare closed forms against the truncated Fock-space oracle.
    Verify {
        /// Covariance file, or `-` for standard input. Alternative to `--kind`.
        #[arg(conflicts_with = "kind")]
        path: Option<String>,
        #[command(flatten)]
        spec: SpecArgs,
        /// Fock cutoff (photon numbers 0..=N per mode).
        #[arg(long, default_value_t = 24)]
        cutoff: usize,
    },
}

/// State constructor flags shared by `make`, `sweep` and `verify`.
#[derive(Debug, Clone, Default, Args)]
pub struct SpecArgs {
    #[arg(long, value_parser = parse_kind)]
    pub kind: Option<StateKind>,
    #[arg(long)]
    pub modes: Option<u8>,
    /// Single-mode thermal occupation; shorthand for `--modes 1 --nbar1`.
    #[arg(long, conflicts_with_all = ["nbar1", "nbar2", "modes"], allow_negative_numbers = true)]
    pub nbar: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub nbar1: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub nbar2: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub r: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub r1: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub r2: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub a: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub b: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub c1: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub c2: Option<f64>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, allow_negative_numbers = true)]
    pub max_thermal: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub max_squeeze: Option<f64>,
}

fn parse_kind(s: &str) -> Result<StateKind, String> {
    s.parse().map_err(|_| {
        let names: Vec<&str> = StateKind::ALL.iter().map(|k| k.name()).collect();
        format!("unknown kind '{s}'; expected one of {}", names.join(", "))
    })
}

impl SpecArgs {
    /// The spec these flags describe, or `None` without `--kind`.
    pub fn spec(&self) -> Option<StateSpec> {
        let mut s = StateSpec::new(self.kind?);
        if let Some(n) = self.nbar {
            s.modes = 1;
            s.nbar1 = n;
        }
        let fields: [(&mut f64, Option<f64>); 11] = [
            (&mut s.nbar1, self.nbar1),
            (&mut s.nbar2, self.nbar2),
            (&mut s.r, self.r),
            (&mut s.r1, self.r1),
            (&mut s.r2, self.r2),
            (&mut s.a, self.a),
            (&mut s.b, self.b),
            (&mut s.c1, self.c1),
            (&mut s.c2, self.c2),
            (&mut s.max_thermal, self.max_thermal),
            (&mut s.max_squeeze, self.max_squeeze),
        ];
        for (field, v) in fields {
            if let Some(v) = v {
                *field = v;
            }
        }
        s.modes = self.modes.unwrap_or(s.modes);
        s.seed = self.seed.unwrap_or(s.seed);
        Some(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepParam {
    Nbar1,
    Nbar2,
    R,
    R1,
    R2,
    A,
    B,
    C1,
    C2,
}

impl SweepParam {
    pub fn set(self, spec: &mut StateSpec, v: f64) {
        let field = match self {
            Self::Nbar1 => &mut spec.nbar1,
            Self::Nbar2 => &mut spec.nbar2,
            Self::R => &mut spec.r,
            Self::R1 => &mut spec.r1,
            Self::R2 => &mut spec.r2,
            Self::A => &mut spec.a,
            Self::B => &mut spec.b,
            Self::C1 => &mut spec.c1,
            Self::C2 => &mut spec.c2,
        };
        *field = v;
    }
}

/// An arithmetic grid `start, start + step, …` up to `stop`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl Grid {
    pub fn points(&self) -> Vec<f64> {
        // Tolerates `stop` being off the grid by a few ulps of rounding.
        let n = ((self.stop - self.start) / self.step * (1.0 + 1e-12) + 1e-9).floor() as usize;
        (0..=n).map(|k| self.start + k as f64 * self.step).collect()
    }
}

impl FromStr for Grid {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let [start, stop, step] = parts.as_slice() else {
            return Err(format!("'{s}' is not start:stop:step"));
        };
        let num = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("'{t}': {e}"));
        let g = Grid { start: num(start)?, stop: num(stop)?, step: num(step)? };
        if !(g.start.is_finite() && g.stop.is_finite() && g.step.is_finite()) {
            return Err("grid bounds must be finite".into());
        }
        if g.step <= 0.0 {
            return Err(format!("step {} must be positive", g.step));
        }
        if g.stop < g.start {
            return Err(format!("stop {} is below start {}", g.stop, g.start));
        }
        if (g.stop - g.start) / g.step > 1e6 {
            return Err("grid has more than a million points".into());
        }
        Ok(g)
    }
}
