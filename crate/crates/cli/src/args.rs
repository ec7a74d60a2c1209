use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "splab",
    version,
    about = "Schrödinger–Poisson numerical laboratory"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Homotopy series for the uncoupled quartic equation.
    Ham(HamArgs),
    /// GLM kernel, Neumann sums, dissolvent, and potential recovery.
    Glm(GlmArgs),
    /// Closed-form soliton family with residual diagnostics.
    Family(FamilyArgs),
    /// Count bound states with the phase equation.
    Count(CountArgs),
    /// Print ω from the dispersion relation.
    Dispersion(DispersionArgs),
}

/// Flags shared by every subcommand. Grid defaults depend on the command.
#[derive(Args, Debug, Clone)]
pub struct Common {
    #[arg(long)]
    pub grid_min: Option<f64>,
    #[arg(long)]
    pub grid_max: Option<f64>,
    #[arg(long)]
    pub grid_n: Option<usize>,
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
    /// Manifest path; defaults to `<out-dir>/<command>.json`.
    #[arg(long)]
    pub manifest: Option<PathBuf>,
    /// TOML file of `flag = value` pairs; command-line flags win.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true, args_override_self = true)]
pub struct HamArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, default_value_t = 1.0)]
    pub a_width: f64,
    #[arg(long, default_value_t = 0.1)]
    pub b: f64,
    #[arg(long, default_value_t = 0.0)]
    pub b_im: f64,
    #[arg(long, default_value_t = 1.0)]
    pub c2: f64,
    #[arg(long, default_value_t = 1.0)]
    pub c4: f64,
    #[arg(long)]
    pub mu_max: usize,
    /// Lower limit of the running integrals (`-inf` = left grid edge).
    #[arg(long, allow_hyphen_values = true)]
    pub lower_limit: Option<f64>,
    #[arg(long)]
    pub conver_lo: Option<f64>,
    #[arg(long)]
    pub conver_hi: Option<f64>,
    #[arg(long)]
    pub allow_unconverged: bool,
    #[arg(long)]
    pub flip_c2_sign: bool,
    /// Residual window keeps nodes with |u| above this.
    #[arg(long, default_value_t = 1e-3)]
    pub residual_threshold: f64,
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true, args_override_self = true)]
pub struct GlmArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, default_value_t = 1.0)]
    pub p: f64,
    #[arg(long, default_value_t = 1.0)]
    pub q: f64,
    #[arg(long, default_value_t = 1)]
    pub beta: u32,
    #[arg(long, default_value_t = 1.0)]
    pub zeta: f64,
    #[arg(long, default_value_t = 6)]
    pub mu_max: usize,
    /// Interval of length l carrying the Cauchy bounds.
    #[arg(long, default_value_t = 0.0)]
    pub l_lo: f64,
    #[arg(long, default_value_t = 2.0)]
    pub l_hi: f64,
    #[arg(long)]
    pub eps_bound: Option<f64>,
    /// Also run the dissolvent recursion.
    #[arg(long)]
    pub dissolvent: bool,
    #[arg(long)]
    pub dissolvent_mu: Option<usize>,
}

#[derive(Debug, Clone, Copy, ValueEnum, PartialEq, Eq)]
pub enum BranchArg {
    Xi1,
    Xi2,
}

#[derive(Debug, Clone, Copy, ValueEnum, PartialEq, Eq)]
pub enum SignArg {
    Plus,
    Minus,
}

/// Soliton family parameters shared by `family` and `count --family`.
#[derive(Args, Debug, Clone)]
pub struct FamilyParams {
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long)]
    pub a: Option<f64>,
    #[arg(long, default_value_t = 1.0)]
    pub b: f64,
    #[arg(long, default_value_t = 0.5)]
    pub q: f64,
    #[arg(long, default_value_t = 0.0)]
    pub c1: f64,
    #[arg(long, default_value_t = 0.0)]
    pub c2: f64,
    #[arg(long, default_value_t = 0.0)]
    pub x0: f64,
    /// Defaults to the special value ln(2ap²)/(2p).
    #[arg(long)]
    pub xi1: Option<f64>,
    /// Defaults to -ln(2ap²)/(2p).
    #[arg(long)]
    pub xi2: Option<f64>,
    #[arg(long, value_enum, default_value_t = BranchArg::Xi1)]
    pub branch: BranchArg,
    #[arg(long, value_enum, default_value_t = SignArg::Minus)]
    pub sign_x: SignArg,
    #[arg(long, value_enum, default_value_t = SignArg::Plus)]
    pub sign_t: SignArg,
    /// Override ω instead of taking it from the dispersion relation.
    #[arg(long)]
    pub omega: Option<f64>,
    /// Force both ξ to their special values (pure sech profile).
    #[arg(long, conflicts_with_all = ["xi1", "xi2"])]
    pub sech_special: bool,
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true, args_override_self = true)]
pub struct FamilyArgs {
    #[command(flatten)]
    pub common: Common,
    #[command(flatten)]
    pub params: FamilyParams,
}

#[derive(Debug, Clone, Copy, ValueEnum, PartialEq, Eq)]
pub enum WellArg {
    PoschlTeller,
}

#[derive(Debug, Clone, Copy, ValueEnum, PartialEq, Eq)]
pub enum PotentialSignArg {
    Attractive,
    Repulsive,
}

#[derive(Args, Debug)]
#[command(
    allow_negative_numbers = true,
    args_override_self = true,
    group(ArgGroup::new("source").required(true).args(["well", "zero", "potential", "family"]))
)]
pub struct CountArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, value_enum)]
    pub well: Option<WellArg>,
    /// Well depth parameter; defaults to 1.
    #[arg(long)]
    pub lambda: Option<f64>,
    /// u ≡ 0.
    #[arg(long)]
    pub zero: bool,
    /// CSV with header `x,u` on a uniform, increasing grid.
    #[arg(long)]
    pub potential: Option<std::path::PathBuf>,
    /// Build u = ∓ψ(x, 0) from the soliton family.
    #[arg(long)]
    pub family: bool,
    #[command(flatten)]
    pub params: FamilyParams,
    #[arg(long, value_enum, default_value_t = PotentialSignArg::Attractive)]
    pub sign: PotentialSignArg,
    #[arg(long, default_value_t = 1.0)]
    pub c: f64,
    /// Write every `stride`-th trajectory node.
    #[arg(long, default_value_t = 10)]
    pub stride: usize,
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true, args_override_self = true)]
pub struct DispersionArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long)]
    pub p: f64,
    #[arg(long)]
    pub a: f64,
    #[arg(long)]
    pub b: f64,
}
