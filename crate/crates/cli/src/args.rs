use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use turing_core::constants::Family;

/// Explicit constants for Turing's method and zero-count certification.
#[derive(Debug, Clone, PartialEq, Parser)]
#[command(name = "turing", version, about)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    /// Significant digits for text and CSV output.
    #[arg(long, global = true, default_value_t = 6, value_parser = clap::value_parser!(u8).range(1..=17))]
    pub digits: u8,

    /// Worker threads (defaults to all cores).
    #[arg(long, global = true, env = "TURING_THREADS")]
    pub threads: Option<usize>,

    #[command(flatten)]
    pub quadrature: QuadratureArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Zeta,
    Dirichlet,
    Dedekind,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Zeta => Family::Zeta,
            FamilyArg::Dirichlet => Family::Dirichlet,
            FamilyArg::Dedekind => Family::Dedekind,
        }
    }
}

/// Overrides for the kernel truncation settings.
#[derive(Debug, Clone, Copy, PartialEq, Default, Args)]
pub struct QuadratureArgs {
    /// Largest prime in the prime-power sums
    #[arg(long, global = true)]
    pub prime_cutoff: Option<u64>,
    /// Largest prime-power exponent
    #[arg(long, global = true)]
    pub power_cutoff: Option<u32>,
    /// Euler–Maclaurin correction order
    #[arg(long, global = true)]
    pub em_terms: Option<usize>,
    /// Bound on every truncation tail
    #[arg(long, global = true)]
    pub tail_tol: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Subcommand)]
pub enum Command {
    /// Constants (a, b[, g]) at one (c, d).
    Constants(FamilyParams),
    /// Grid search for the (c, d) minimising the family's objective.
    Optimize(OptimizeArgs),
    /// The family's objective: F for zeta, B for Dirichlet and Dedekind.
    Budget(FamilyParams),
    /// Consecutive Rosser blocks needed at g_p.
    BlocksRequired(FamilyParams),
    /// Sample |Z(t)|/t^θ against K.
    GrowthCheck(GrowthArgs),
    /// Certify N(g_p) from Rosser-satisfying Gram blocks.
    Certify(CertifyArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Constants(_) => "constants",
            Command::Optimize(_) => "optimize",
            Command::Budget(_) => "budget",
            Command::BlocksRequired(_) => "blocks-required",
            Command::GrowthCheck(_) => "growth-check",
            Command::Certify(_) => "certify",
        }
    }
}

/// Family plus the scalar parameters any family may take. Which ones are
/// allowed depends on the command and family; extras are rejected.
#[derive(Debug, Clone, PartialEq, Args)]
pub struct FamilyParams {
    #[arg(long, value_enum, default_value_t = FamilyArg::Zeta)]
    pub family: FamilyArg,
    #[command(flatten)]
    pub params: Params,
}

#[derive(Debug, Clone, Default, PartialEq, Args)]
pub struct Params {
    /// Convexity abscissa c in (1, 5/4].
    #[arg(long)]
    pub c: Option<f64>,
    /// Shift d in (1/2, 1].
    #[arg(long)]
    pub d: Option<f64>,
    /// Growth constant K in |ζ(½+it)| ≤ K t^θ.
    #[arg(long)]
    pub k: Option<f64>,
    /// Growth exponent θ.
    #[arg(long)]
    pub theta: Option<f64>,
    /// Height above which the constants hold.
    #[arg(long)]
    pub t0: Option<f64>,
    /// Given constant a.
    #[arg(long)]
    pub a: Option<f64>,
    /// Given constant b.
    #[arg(long)]
    pub b: Option<f64>,
    /// Given constant g (Dedekind only).
    #[arg(long)]
    pub g: Option<f64>,
    /// Gram point height g_p.
    #[arg(long, conflicts_with = "gp_over_2pi")]
    pub gp: Option<f64>,
    /// g_p / 2π.
    #[arg(long)]
    pub gp_over_2pi: Option<f64>,
    /// Conductor Q.
    #[arg(long)]
    pub q: Option<f64>,
    /// Upper height t₂.
    #[arg(long)]
    pub t2: Option<f64>,
    /// Field degree N.
    #[arg(long)]
    pub degree: Option<u32>,
    /// Real embeddings r₁.
    #[arg(long)]
    pub r1: Option<u32>,
    /// Pairs of complex embeddings r₂.
    #[arg(long)]
    pub r2: Option<u32>,
    /// |D_K|.
    #[arg(long)]
    pub dk: Option<f64>,
}

impl Params {
    /// Names of the flags that were given.
    pub fn provided(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        let mut push = |name, set: bool| {
            if set {
                out.push(name);
            }
        };
        push("c", self.c.is_some());
        push("d", self.d.is_some());
        push("k", self.k.is_some());
        push("theta", self.theta.is_some());
        push("t0", self.t0.is_some());
        push("a", self.a.is_some());
        push("b", self.b.is_some());
        push("g", self.g.is_some());
        push("gp", self.gp.is_some());
        push("gp-over-2pi", self.gp_over_2pi.is_some());
        push("q", self.q.is_some());
        push("t2", self.t2.is_some());
        push("degree", self.degree.is_some());
        push("r1", self.r1.is_some());
        push("r2", self.r2.is_some());
        push("dk", self.dk.is_some());
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Stage {
    /// 13 × 13 grid, step 0.02 in c and 0.04 in d.
    Coarse,
    /// 21 × 21 grid around (1.10, 0.74), step 0.01.
    Fine,
    /// The whole admissible box at --step.
    Box,
}

#[derive(Debug, Clone, PartialEq, Args)]
pub struct OptimizeArgs {
    #[command(flatten)]
    pub family: FamilyParams,
    /// Lattice preset.
    #[arg(long, value_enum, default_value_t = Stage::Fine)]
    pub stage: Stage,
    /// Step for --stage box.
    #[arg(long, default_value_t = 0.01)]
    pub step: f64,
}

#[derive(Debug, Clone, PartialEq, Args)]
pub struct GrowthArgs {
    #[arg(long, default_value_t = 5.0)]
    pub t_lo: f64,
    #[arg(long, default_value_t = 5000.0)]
    pub t_hi: f64,
    #[arg(long, default_value_t = 100_000)]
    pub samples: usize,
    #[arg(long, default_value_t = 2.53)]
    pub k: f64,
    #[arg(long, default_value_t = 0.25)]
    pub theta: f64,
}

#[derive(Debug, Clone, PartialEq, Args)]
pub struct CertifyArgs {
    /// Index of the lower Gram point.
    #[arg(long, allow_negative_numbers = true)]
    pub n: i64,
    /// Index of the upper Gram point.
    #[arg(long, allow_negative_numbers = true)]
    pub p: i64,
    #[command(flatten)]
    pub family: FamilyParams,
    /// Riemann–Siegel correction order.
    #[arg(long, default_value_t = 2)]
    pub order: u8,
    /// Scan step as a fraction of the mean zero gap.
    #[arg(long, default_value_t = 0.25)]
    pub step_fraction: f64,
    /// Allowed 4× refinements.
    #[arg(long, default_value_t = 4)]
    pub max_depth: u32,
}
