use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hankel_core::{SearchConfig, SeedLayout};

#[derive(Debug, Parser)]
#[command(
    name = "hankel",
    version,
    about = "Verify second Hankel determinant bounds"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Maximize |H2(2)| for one class and check it against the closed bound.
    Verify(VerifyArgs),
    /// Run `verify` over an alpha grid and write a CSV or JSON table.
    Sweep(SweepArgs),
    /// Compare the closed-form coefficients with the recurrence oracle.
    OracleCheck(OracleCheckArgs),
    /// Hankel determinant H_q(n) of coefficients read from a file.
    Hankel(HankelArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ClassArg {
    Starlike,
    Ozaki,
    G,
    Sq,
}

impl ClassArg {
    pub fn kind(self) -> hankel_core::ClassKind {
        use hankel_core::ClassKind;
        match self {
            Self::Starlike => ClassKind::Starlike,
            Self::Ozaki => ClassKind::Ozaki,
            Self::G => ClassKind::GClass,
            Self::Sq => ClassKind::SqClass,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LayoutArg {
    Lattice,
    CellCentered,
}

/// Search settings; each can also be set through its `HANKEL_*` variable.
#[derive(Debug, Clone, Args)]
pub struct SearchArgs {
    /// Lattice points per search axis.
    #[arg(long, env = "HANKEL_GRID_PER_AXIS", default_value_t = SearchConfig::default().grid_per_axis)]
    pub grid_per_axis: usize,
    /// Nelder-Mead iteration budget per seed.
    #[arg(long, env = "HANKEL_REFINE_ITERS", default_value_t = SearchConfig::default().refine_iters)]
    pub refine_iters: usize,
    /// Simplex value spread at which refinement stops.
    #[arg(long, env = "HANKEL_REFINE_TOL", default_value_t = SearchConfig::default().refine_tol)]
    pub refine_tol: f64,
    /// Number of lattice seeds refined.
    #[arg(long, env = "HANKEL_STARTS_KEPT", default_value_t = SearchConfig::default().starts_kept)]
    pub starts_kept: usize,
    /// Whether lattice seeds include the box edges or sit at cell centers.
    #[arg(long, env = "HANKEL_SEED_LAYOUT", value_enum, default_value_t = LayoutArg::Lattice)]
    pub seed_layout: LayoutArg,
}

impl SearchArgs {
    pub fn config(&self) -> SearchConfig {
        SearchConfig {
            grid_per_axis: self.grid_per_axis,
            refine_iters: self.refine_iters,
            refine_tol: self.refine_tol,
            starts_kept: self.starts_kept,
            seed_layout: match self.seed_layout {
                LayoutArg::Lattice => SeedLayout::Lattice,
                LayoutArg::CellCentered => SeedLayout::CellCentered,
            },
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub class: ClassArg,
    /// Class parameter; required unless the class is `sq`.
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: Option<f64>,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    pub format: ReportFormat,
    /// Write the report here (plus a `.manifest.json` sidecar) instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub search: SearchArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[arg(long, value_enum)]
    pub class: ClassArg,
    #[arg(long, allow_negative_numbers = true)]
    pub from: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub to: f64,
    /// Number of alpha values, endpoints included.
    #[arg(long)]
    pub steps: usize,
    #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
    pub format: TableFormat,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub search: SearchArgs,
}

#[derive(Debug, Clone, Args)]
pub struct OracleCheckArgs {
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    /// Seed of the deterministic trial generator.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Perturb the closed-form a4 by 1e-6 to exercise the failure path.
    #[arg(long, hide = true)]
    pub inject_fault: bool,
}

#[derive(Debug, Clone, Args)]
pub struct HankelArgs {
    /// One coefficient per line as "re im", starting with a1.
    #[arg(long)]
    pub file: PathBuf,
    #[arg(long)]
    pub q: usize,
    #[arg(long)]
    pub n: usize,
}
