use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use holofrft_core::engine::kernel::DEFAULT_GH_ORDER;
use holofrft_core::engine::transform::DEFAULT_SPECTRAL_ORDER;
use holofrft_core::{LineGrid, PlaneGrid};

#[derive(Debug, Parser)]
#[command(name = "holofrft", version, about = "Holomorphic fractional Fourier and Segal–Bargmann transforms")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Transform a signal onto a phase-space grid.
    Transform(TransformArgs),
    /// The t = π/2 image, `e^{−ipx}` times the Fourier transform.
    Endpoint(EndpointArgs),
    /// Recover a signal from a holomorphic-gauge field.
    Inverse(InverseArgs),
    /// `A_t` at several t, one field file per value plus `index.csv`.
    Sweep(SweepArgs),
    /// Run the built-in verification suite.
    Verify(VerifyArgs),
    /// Tabulate the basis images `SB_s h_n^s` with their provenance.
    Basis(BasisArgs),
    /// Compare a field file with the closed-form image of a coherent sum.
    Compare(CompareArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Hfrft,
    Sb,
    Fourier,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum MethodArg {
    #[default]
    Kernel,
    Spectral,
}

/// `xmin:xmax:nx,pmin:pmax:np`, or `half:n` for `[−half, half]²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec(pub PlaneGrid);

fn axis(text: &str) -> Result<LineGrid, String> {
    let parts: Vec<&str> = text.split(':').map(str::trim).collect();
    let [min, max, n] = parts.as_slice() else {
        return Err(format!("expected min:max:n, got {text:?}"));
    };
    let num = |v: &str| v.parse::<f64>().map_err(|_| format!("bad number {v:?}"));
    let n: usize = n.parse().map_err(|_| format!("bad node count {n:?}"))?;
    LineGrid::new(num(min)?, num(max)?, n).map_err(|e| e.to_string())
}

impl FromStr for GridSpec {
    type Err = String;

    fn from_str(text: &str) -> Result<Self, String> {
        if let Some((x, p)) = text.split_once(',') {
            return Ok(Self(PlaneGrid { x: axis(x)?, p: axis(p)? }));
        }
        let (half, n) =
            text.split_once(':').ok_or_else(|| format!("expected half:n or x-axis,p-axis, got {text:?}"))?;
        let half: f64 = half.trim().parse().map_err(|_| format!("bad half-width {half:?}"))?;
        let n: usize = n.trim().parse().map_err(|_| format!("bad node count {n:?}"))?;
        PlaneGrid::square(half, n).map(Self).map_err(|e| e.to_string())
    }
}

/// `min:max:n` on the real line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisSpec(pub LineGrid);

impl FromStr for AxisSpec {
    type Err = String;

    fn from_str(text: &str) -> Result<Self, String> {
        axis(text).map(Self)
    }
}

#[derive(Debug, Clone, Args)]
pub struct ParamArgs {
    /// Angle t in radians, 0 ≤ t ≤ π/2.
    #[arg(long, allow_negative_numbers = true, conflicts_with = "s")]
    pub t: Option<f64>,
    /// Heat time s = tan t.
    #[arg(long, allow_negative_numbers = true)]
    pub s: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct EngineArgs {
    #[arg(long, value_enum, default_value_t = MethodArg::Kernel)]
    pub method: MethodArg,
    /// Truncation order N of the spectral method.
    #[arg(long, default_value_t = DEFAULT_SPECTRAL_ORDER)]
    pub order: usize,
    /// Scale of the Hermite basis for the spectral method (default: the transform's s).
    #[arg(long)]
    pub basis_scale: Option<f64>,
    /// Gauss–Hermite order of the kernel quadrature.
    #[arg(long, default_value_t = DEFAULT_GH_ORDER)]
    pub gh_order: usize,
    /// Output grid, `xmin:xmax:nx,pmin:pmax:np` or `half:n`.
    #[arg(long, default_value = "8:257", allow_hyphen_values = true)]
    pub grid: GridSpec,
}

#[derive(Debug, Clone, Args)]
pub struct TransformArgs {
    #[arg(long, value_enum, conflicts_with_all = ["sb", "hfrft", "fourier"])]
    pub kind: Option<Kind>,
    /// Shorthand for `--kind sb`.
    #[arg(long, conflicts_with_all = ["hfrft", "fourier"])]
    pub sb: bool,
    /// Shorthand for `--kind hfrft`.
    #[arg(long, conflicts_with = "fourier")]
    pub hfrft: bool,
    /// Shorthand for `--kind fourier`.
    #[arg(long)]
    pub fourier: bool,
    #[command(flatten)]
    pub param: ParamArgs,
    #[command(flatten)]
    pub engine: EngineArgs,
    /// Signal file: CSV `x,re,im` or JSON.
    #[arg(long, short)]
    pub input: PathBuf,
    /// Field CSV to write.
    #[arg(long, short)]
    pub output: PathBuf,
}

impl TransformArgs {
    pub fn kind(&self) -> Kind {
        match (self.kind, self.sb, self.fourier) {
            (Some(k), _, _) => k,
            (None, true, _) => Kind::Sb,
            (None, _, true) => Kind::Fourier,
            _ => Kind::Hfrft,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct EndpointArgs {
    #[arg(long, default_value = "8:257", allow_hyphen_values = true)]
    pub grid: GridSpec,
    #[arg(long, default_value_t = DEFAULT_GH_ORDER)]
    pub gh_order: usize,
    #[arg(long, short)]
    pub input: PathBuf,
    #[arg(long, short)]
    pub output: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct InverseArgs {
    /// Holomorphic-gauge field CSV.
    #[arg(long, short)]
    pub input: PathBuf,
    /// Signal CSV to write.
    #[arg(long, short)]
    pub output: PathBuf,
    /// Output points `min:max:n` (default: the field's x nodes).
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<AxisSpec>,
    /// Truncation radius R of the p integral (default: the field's largest |p|).
    #[arg(long)]
    pub r: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    /// Comma-separated angles.
    #[arg(long, value_delimiter = ',', required = true, allow_negative_numbers = true)]
    pub t: Vec<f64>,
    #[command(flatten)]
    pub engine: EngineArgs,
    #[arg(long, short)]
    pub input: PathBuf,
    /// Directory for the field files and `index.csv`.
    #[arg(long)]
    pub output_dir: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// Tolerance override `key=value`; repeatable.
    #[arg(long = "tol", value_name = "KEY=VALUE")]
    pub tolerances: Vec<String>,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// Run only these check ids.
    #[arg(long, value_delimiter = ',')]
    pub only: Vec<u32>,
}

#[derive(Debug, Clone, Args)]
pub struct BasisArgs {
    #[arg(long)]
    pub s: f64,
    /// Highest index n.
    #[arg(long, default_value_t = 6)]
    pub order: usize,
    #[arg(long, default_value = "3:13", allow_hyphen_values = true)]
    pub grid: GridSpec,
    #[arg(long, default_value_t = DEFAULT_GH_ORDER)]
    pub gh_order: usize,
    #[arg(long, short)]
    pub output: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct CompareArgs {
    /// Field CSV to check.
    #[arg(long)]
    pub field: PathBuf,
    /// Coherent-sum JSON describing the transformed signal.
    #[arg(long)]
    pub signal: PathBuf,
    /// Largest accepted error: relative where the exact value exceeds 1 in
    /// modulus, absolute below.
    #[arg(long, default_value_t = 1e-7)]
    pub tol: f64,
}
