//! Command-line entry point: tail estimation, selection, synthetic sweeps, regret
//! analysis, and parameter ablations over scored candidate pools.
//!
//! Every command derives all randomness from a single `--seed` through tagged
//! substreams (no time-based seeding anywhere), writes its tabular output in CSV or
//! JSON, and drops a `manifest.json` beside the outputs recording the command, the full
//! effective parameter map, the seed, the tool version, and SHA-256 digests of any
//! input files — enough to reproduce the run byte-identically.
//!
//! Exit codes: 0 success, 1 usage error, 2 input-data error, 3 internal numeric
//! failure.

use crate::io::{
    emit_ablation_plot, emit_plot, read_records, sig9, write_sweep, IoError, PlotKind,
    TableFormat,
};
use crate::policies::{
    bot_select_pipeline, selection_distribution, CandidatePool, ItpVariant, NormalizationMode,
    PolicyError, PolicySpec,
};
use crate::regret::{
    expansion_heavy, expansion_light, regret_proxy_monte_carlo, regret_proxy_with,
    ProxyOptions, RegretBreakdown, RegretError, RegretFamily, RegretInputs, SamplingFactor,
};
use crate::simulator::{
    ablation_sweep, generate_pool, label_hash, run_sweep, substream, AblationAxis,
    AblationFixed, Miscalibration, RewardWorld, SimulatorError, SweepConfig, SweepPolicy,
    TailSpec, PURPOSE_POOL,
};
use crate::tail::{
    calibrate_pivot, default_cutoff, hill_estimate, PivotConfig, TailError, TailEstimate,
};
use crate::numerics::BetaTail;
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::Rng;
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

/// Substream purpose tags for CLI-driven randomness.
const PURPOSE_CLI_SELECT: u64 = 0x636c_6973;
const PURPOSE_CLI_MC: u64 = 0x636c_696d;

/// A command failure carrying its exit-code class.
#[derive(Debug)]
pub enum CliError {
    /// Exit 1: bad flags, invalid grids or parameters.
    Usage(String),
    /// Exit 2: unreadable, malformed, or inconsistent input data.
    Input(String),
    /// Exit 3: internal numeric failure.
    Numeric(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Input(_) => 2,
            CliError::Numeric(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Input(m) | CliError::Numeric(m) => m,
        }
    }
}

impl From<IoError> for CliError {
    fn from(err: IoError) -> Self {
        CliError::Input(err.to_string())
    }
}

impl From<SimulatorError> for CliError {
    fn from(err: SimulatorError) -> Self {
        match err {
            SimulatorError::Policy(_) | SimulatorError::Tail(_) | SimulatorError::Numerics(_) => {
                CliError::Numeric(err.to_string())
            }
            _ => CliError::Usage(err.to_string()),
        }
    }
}

impl From<RegretError> for CliError {
    fn from(err: RegretError) -> Self {
        match err {
            RegretError::Underflow { .. } | RegretError::Numerics(_) | RegretError::Policy(_) => {
                CliError::Numeric(err.to_string())
            }
            _ => CliError::Usage(err.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "tailalign",
    version,
    about = "Tail-adaptive candidate selection, synthetic sweeps, and regret analysis",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Estimate per-prompt tail indices from a scored candidate file
    Estimate(EstimateArgs),
    /// Select one candidate per prompt under a chosen policy
    Select(SelectArgs),
    /// Run the synthetic bootstrap sweep over budgets N
    Simulate(SimulateArgs),
    /// Tabulate regret proxies over parameter grids
    Regret(RegretArgs),
    /// Sweep the steering temperature or the pivot across a grid
    Ablate(AblateArgs),
}

#[derive(Debug, Args)]
struct CommonArgs {
    /// Master random seed; all randomness derives from it via tagged substreams
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output directory (default "."; the TAILALIGN_OUT environment variable overrides
    /// the default when the flag is absent)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Tabular output format
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
    /// Suppress the per-file summary lines on stdout
    #[arg(long)]
    quiet: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

impl FormatArg {
    fn table(self) -> TableFormat {
        match self {
            FormatArg::Csv => TableFormat::Csv,
            FormatArg::Json => TableFormat::Json,
        }
    }

    fn extension(self) -> &'static str {
        match self {
            FormatArg::Csv => "csv",
            FormatArg::Json => "json",
        }
    }

    fn name(self) -> &'static str {
        self.extension()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum NormalizationArg {
    /// Divide by a known ceiling (--r-max)
    DivideRmax,
    /// Affine map of the pool range onto [0, 1]
    MinMax,
    /// Clamp into [0, 1]
    Clamp01,
}

impl NormalizationArg {
    fn mode(self, r_max: f64) -> NormalizationMode {
        match self {
            NormalizationArg::DivideRmax => NormalizationMode::DivideRmax(r_max),
            NormalizationArg::MinMax => NormalizationMode::MinMax,
            NormalizationArg::Clamp01 => NormalizationMode::Clamp01,
        }
    }
}

#[derive(Debug, Args)]
struct EstimateArgs {
    /// Scored candidate file (JSONL)
    #[arg(long)]
    input: PathBuf,
    /// Reward normalization applied per pool
    #[arg(long, value_enum, default_value_t = NormalizationArg::Clamp01)]
    normalization: NormalizationArg,
    /// Reward ceiling for --normalization divide-rmax
    #[arg(long, default_value_t = 1.0)]
    r_max: f64,
    /// Override the √N tail-sample cutoff
    #[arg(long)]
    cutoff: Option<usize>,
    /// Fixed pivot for the κ̂ → α map (mutually exclusive with --calibrate)
    #[arg(long)]
    kappa0: Option<f64>,
    /// Calibrate the pivot to the median κ̂ across prompts (the default behavior)
    #[arg(long)]
    calibrate: bool,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PolicyArg {
    /// Hard argmax of the proxy
    Bon,
    /// Exponential re-weighting exp(r̂/λ)
    Sbon,
    /// Affine re-weighting 1 + r̂/λ
    Itp,
    /// Shifted-relu re-weighting (r̂ − λ)₊
    ItpRelu,
    /// Tail-adaptive α-exponential re-weighting
    Bot,
}

#[derive(Debug, Args)]
struct SelectArgs {
    /// Scored candidate file (JSONL)
    #[arg(long)]
    input: PathBuf,
    /// Selection policy family
    #[arg(long, value_enum)]
    policy: PolicyArg,
    /// Steering temperature λ (required for every family except bon)
    #[arg(long)]
    lambda: Option<f64>,
    /// Fixed interpolation order α ∈ [1, 2] for --policy bot (skips estimation)
    #[arg(long)]
    alpha: Option<f64>,
    /// Fixed pivot κ₀ for the per-prompt κ̂ → α map (--policy bot)
    #[arg(long)]
    kappa0: Option<f64>,
    /// Calibrate κ₀ to the median κ̂ across prompts (default for --policy bot)
    #[arg(long)]
    calibrate: bool,
    /// Pick the most probable candidate instead of sampling
    #[arg(long)]
    greedy: bool,
    /// Reward normalization applied per pool
    #[arg(long, value_enum, default_value_t = NormalizationArg::Clamp01)]
    normalization: NormalizationArg,
    /// Reward ceiling for --normalization divide-rmax
    #[arg(long, default_value_t = 1.0)]
    r_max: f64,
    /// Override the √N tail-sample cutoff (--policy bot)
    #[arg(long)]
    cutoff: Option<usize>,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MiscalArg {
    /// True reward equals the proxy
    None,
    /// Quadratic over-estimation past the onset quantile of the proxy law
    TailInflation,
    /// Centered Gaussian proxy error, clamped to [0, 1]
    AdditiveNoise,
}

#[derive(Debug, Args)]
struct WorldArgs {
    /// Fixed tail index κ of the synthetic reward law
    #[arg(long, default_value_t = 2.0)]
    kappa: f64,
    /// Draw κ log-uniformly from [--kappa-min, --kappa-max] instead
    #[arg(long)]
    kappa_min: Option<f64>,
    #[arg(long)]
    kappa_max: Option<f64>,
    /// Proxy miscalibration model
    #[arg(long, value_enum, default_value_t = MiscalArg::None)]
    miscalibration: MiscalArg,
    /// Miscalibration strength (penalty size or noise standard deviation)
    #[arg(long, default_value_t = 0.0)]
    strength: f64,
    /// Onset quantile of the proxy law for tail-inflation
    #[arg(long, default_value_t = 0.9)]
    onset: f64,
    /// Nominal reward-error magnitude recorded with the world
    #[arg(long, default_value_t = 0.0)]
    epsilon_target: f64,
}

impl WorldArgs {
    fn build(&self) -> Result<RewardWorld, CliError> {
        let tail = match (self.kappa_min, self.kappa_max) {
            (None, None) => TailSpec::Fixed { kappa: self.kappa },
            (Some(min), Some(max)) => TailSpec::LogUniform { min, max },
            _ => {
                return Err(CliError::Usage(
                    "--kappa-min and --kappa-max must be given together".to_string(),
                ))
            }
        };
        let miscalibration = match self.miscalibration {
            MiscalArg::None => Miscalibration::none(),
            MiscalArg::TailInflation => Miscalibration::tail_inflation(self.strength, self.onset)
                .map_err(|e| CliError::Usage(e.to_string()))?,
            MiscalArg::AdditiveNoise => Miscalibration::additive_noise(self.strength)
                .map_err(|e| CliError::Usage(e.to_string()))?,
        };
        RewardWorld::new(tail, miscalibration, self.epsilon_target)
            .map_err(|e| CliError::Usage(e.to_string()))
    }

    fn record(&self, params: &mut BTreeMap<String, String>) {
        params.insert("kappa".into(), self.kappa.to_string());
        if let Some(v) = self.kappa_min {
            params.insert("kappa_min".into(), v.to_string());
        }
        if let Some(v) = self.kappa_max {
            params.insert("kappa_max".into(), v.to_string());
        }
        params.insert(
            "miscalibration".into(),
            format!("{:?}", self.miscalibration).to_lowercase(),
        );
        params.insert("strength".into(), self.strength.to_string());
        params.insert("onset".into(), self.onset.to_string());
        params.insert("epsilon_target".into(), self.epsilon_target.to_string());
    }
}

#[derive(Debug, Args)]
struct SweepArgs {
    /// Comma-separated budget grid
    #[arg(long, default_value = "1,2,4,8,16,32,64,128,256,512,1024")]
    n_grid: String,
    /// Bootstrap trials per budget
    #[arg(long, default_value_t = 10)]
    trials: usize,
    /// Candidate pool size per world
    #[arg(long, default_value_t = 4096)]
    pool_size: usize,
    /// Draw subsets with replacement instead of without
    #[arg(long)]
    with_replacement: bool,
}

impl SweepArgs {
    fn build(&self, seed: u64) -> Result<SweepConfig, CliError> {
        let n_grid = parse_usize_grid(&self.n_grid)?;
        Ok(SweepConfig::new(seed)
            .with_n_grid(n_grid)
            .with_trials(self.trials)
            .with_pool_size(self.pool_size)
            .with_replacement(self.with_replacement))
    }

    fn record(&self, params: &mut BTreeMap<String, String>) {
        params.insert("n_grid".into(), self.n_grid.clone());
        params.insert("trials".into(), self.trials.to_string());
        params.insert("pool_size".into(), self.pool_size.to_string());
        params.insert(
            "with_replacement".into(),
            self.with_replacement.to_string(),
        );
    }
}

#[derive(Debug, Args)]
struct SimulateArgs {
    #[command(flatten)]
    world: WorldArgs,
    #[command(flatten)]
    sweep: SweepArgs,
    /// Comma-separated policy list (bon, sbon, itp, itp-relu, bot)
    #[arg(long, default_value = "bon,sbon,itp,bot")]
    policies: String,
    /// Steering temperature λ shared by the λ-steered policies
    #[arg(long, default_value_t = 0.5)]
    lambda: f64,
    /// Pivot κ₀ of the tail-adaptive pipeline
    #[arg(long, default_value_t = 1.0)]
    kappa0: f64,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RegretFamilyArg {
    Bon,
    Sbon,
    Itp,
    ItpRelu,
    Bot,
}

impl RegretFamilyArg {
    fn family(self) -> RegretFamily {
        match self {
            RegretFamilyArg::Bon => RegretFamily::Bon,
            RegretFamilyArg::Sbon => RegretFamily::Sbon,
            RegretFamilyArg::Itp => RegretFamily::ItpAffine,
            RegretFamilyArg::ItpRelu => RegretFamily::ItpRelu,
            RegretFamilyArg::Bot => RegretFamily::Bot,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    /// Deterministic quadrature oracle
    Quadrature,
    /// Monte-Carlo oracle (--samples draws)
    MonteCarlo,
    /// Closed-form large-κ expansion
    ExpansionHeavy,
    /// Closed-form small-κ expansion
    ExpansionLight,
}

impl ModeArg {
    fn name(self) -> &'static str {
        match self {
            ModeArg::Quadrature => "quadrature",
            ModeArg::MonteCarlo => "monte-carlo",
            ModeArg::ExpansionHeavy => "expansion-heavy",
            ModeArg::ExpansionLight => "expansion-light",
        }
    }
}

#[derive(Debug, Args)]
struct RegretArgs {
    /// Weighting family to analyze
    #[arg(long, value_enum)]
    family: RegretFamilyArg,
    /// Comma-separated tail-index grid
    #[arg(long, default_value = "10")]
    kappa: String,
    /// Comma-separated temperature grid
    #[arg(long, default_value = "0.5")]
    lambda: String,
    /// Comma-separated interpolation-order grid (bot only; each α in (1, 2])
    #[arg(long, default_value = "1.5")]
    alpha: String,
    /// Comma-separated reward-error grid
    #[arg(long, default_value = "0.1")]
    epsilon: String,
    /// Comma-separated budget grid
    #[arg(long, default_value = "64")]
    n: String,
    /// Evaluation mode; repeat the flag for several modes in one table
    #[arg(long = "mode", value_enum, default_values_t = [ModeArg::Quadrature])]
    modes: Vec<ModeArg>,
    /// Monte-Carlo draw count
    #[arg(long, default_value_t = 1_000_000)]
    samples: u64,
    /// Sampling-error prefactor (2 default, 1 for the tightened variant)
    #[arg(long, default_value_t = 2)]
    factor: u8,
    /// Gauss–Legendre nodes per quadrature panel
    #[arg(long, default_value_t = 512)]
    points: usize,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AxisArg {
    /// Sweep the steering temperature λ
    Lambda,
    /// Sweep the pivot κ₀
    Kappa0,
}

#[derive(Debug, Args)]
struct AblateArgs {
    /// Swept parameter
    #[arg(long, value_enum)]
    axis: AxisArg,
    /// Comma-separated grid of the swept parameter (defaults per axis)
    #[arg(long)]
    grid: Option<String>,
    /// λ used when sweeping κ₀
    #[arg(long, default_value_t = 0.5)]
    fixed_lambda: f64,
    /// κ₀ used when sweeping λ
    #[arg(long, default_value_t = 1.0)]
    fixed_kappa0: f64,
    /// Budget whose rows feed the plot panels (default: largest in the grid)
    #[arg(long)]
    focus_n: Option<usize>,
    #[command(flatten)]
    world: WorldArgs,
    #[command(flatten)]
    sweep: SweepArgs,
    #[command(flatten)]
    common: CommonArgs,
}

const DEFAULT_LAMBDA_GRID: &str = "0.001,0.003,0.01,0.03,0.1,0.3,1.0";
const DEFAULT_KAPPA0_GRID: &str = "0.001,0.01,0.1,1,10,100,1000";

/// Parses the process arguments, runs the chosen command, and returns the exit code.
pub fn main_entry() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            return match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{err}");
                    0
                }
                _ => {
                    eprint!("{err}");
                    1
                }
            };
        }
    };
    let outcome = match cli.command {
        Command::Estimate(args) => cmd_estimate(args),
        Command::Select(args) => cmd_select(args),
        Command::Simulate(args) => cmd_simulate(args),
        Command::Regret(args) => cmd_regret(args),
        Command::Ablate(args) => cmd_ablate(args),
    };
    match outcome {
        Ok(()) => 0,
        Err(err) => {
            eprintln!("error: {}", err.message());
            err.exit_code()
        }
    }
}

fn parse_f64_grid(text: &str) -> Result<Vec<f64>, CliError> {
    let values: Result<Vec<f64>, _> = text
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(str::parse)
        .collect();
    match values {
        Ok(v) if !v.is_empty() => Ok(v),
        Ok(_) => Err(CliError::Usage(format!("empty grid {text:?}"))),
        Err(e) => Err(CliError::Usage(format!("cannot parse grid {text:?}: {e}"))),
    }
}

fn parse_usize_grid(text: &str) -> Result<Vec<usize>, CliError> {
    let values: Result<Vec<usize>, _> = text
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(str::parse)
        .collect();
    match values {
        Ok(v) if !v.is_empty() => Ok(v),
        Ok(_) => Err(CliError::Usage(format!("empty grid {text:?}"))),
        Err(e) => Err(CliError::Usage(format!("cannot parse grid {text:?}: {e}"))),
    }
}

fn resolve_out_dir(common: &CommonArgs) -> Result<PathBuf, CliError> {
    let dir = match &common.out {
        Some(path) => path.clone(),
        None => std::env::var_os("TAILALIGN_OUT")
            .map(PathBuf::from)
            .unwrap_or_else(|| PathBuf::from(".")),
    };
    fs::create_dir_all(&dir)
        .map_err(|e| CliError::Input(format!("cannot create output directory {}: {e}", dir.display())))?;
    Ok(dir)
}

fn digest_file(path: &Path) -> Result<String, CliError> {
    let bytes = fs::read(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    let mut hasher = Sha256::new();
    hasher.update(&bytes);
    let digest = hasher.finalize();
    let mut hex = String::with_capacity(digest.len() * 2);
    for byte in digest {
        let _ = write!(hex, "{byte:02x}");
    }
    Ok(hex)
}

fn write_manifest(
    out_dir: &Path,
    command: &str,
    parameters: BTreeMap<String, String>,
    seed: u64,
    inputs: &[&Path],
) -> Result<PathBuf, CliError> {
    let mut digests = BTreeMap::new();
    for path in inputs {
        digests.insert(path.display().to_string(), digest_file(path)?);
    }
    let manifest = serde_json::json!({
        "command": command,
        "parameters": parameters,
        "seed": seed,
        "version": env!("CARGO_PKG_VERSION"),
        "input_digests": digests,
    });
    let path = out_dir.join("manifest.json");
    let mut bytes = serde_json::to_vec_pretty(&manifest)
        .map_err(|e| CliError::Numeric(format!("manifest serialization failed: {e}")))?;
    bytes.push(b'\n');
    fs::write(&path, bytes)
        .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))?;
    Ok(path)
}

/// One typed table cell, so the JSON mirror keeps native types while CSV stays at 9
/// significant digits.
enum Cell {
    Str(String),
    Int(u64),
    Num(f64),
    OptNum(Option<f64>),
    Bool(bool),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Str(s) => s.clone(),
            Cell::Int(v) => v.to_string(),
            Cell::Num(v) => sig9(*v),
            Cell::OptNum(Some(v)) => sig9(*v),
            Cell::OptNum(None) => String::new(),
            Cell::Bool(b) => b.to_string(),
        }
    }

    fn json(&self) -> serde_json::Value {
        use serde_json::Value;
        match self {
            Cell::Str(s) => Value::String(s.clone()),
            Cell::Int(v) => serde_json::json!(v),
            Cell::Num(v) | Cell::OptNum(Some(v)) => {
                serde_json::Number::from_f64(*v).map_or(Value::Null, Value::Number)
            }
            Cell::OptNum(None) => Value::Null,
            Cell::Bool(b) => Value::Bool(*b),
        }
    }
}

fn write_table(
    path: &Path,
    header: &[&str],
    rows: &[Vec<Cell>],
    format: TableFormat,
) -> Result<(), CliError> {
    let bytes = match format {
        TableFormat::Csv => {
            let mut writer = csv::WriterBuilder::new()
                .terminator(csv::Terminator::Any(b'\n'))
                .from_writer(Vec::new());
            writer
                .write_record(header)
                .and_then(|()| {
                    rows.iter().try_for_each(|row| {
                        writer.write_record(row.iter().map(Cell::csv).collect::<Vec<_>>())
                    })
                })
                .map_err(|e| CliError::Input(format!("csv write failed: {e}")))?;
            writer.into_inner().expect("vec writer cannot fail")
        }
        TableFormat::Json => {
            let objects: Vec<serde_json::Value> = rows
                .iter()
                .map(|row| {
                    header
                        .iter()
                        .zip(row)
                        .map(|(k, cell)| (k.to_string(), cell.json()))
                        .collect::<serde_json::Map<String, serde_json::Value>>()
                        .into()
                })
                .collect();
            let mut bytes = serde_json::to_vec_pretty(&objects)
                .map_err(|e| CliError::Numeric(format!("json write failed: {e}")))?;
            bytes.push(b'\n');
            bytes
        }
    };
    fs::write(path, bytes)
        .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))
}

fn announce(common: &CommonArgs, path: &Path) {
    if !common.quiet {
        println!("wrote {}", path.display());
    }
}

/// Per-prompt estimation outcome: an estimate or an in-row failure note.
fn estimate_pool(
    pool: &CandidatePool,
    cutoff_override: Option<usize>,
) -> Result<TailEstimate, TailError> {
    let rewards = pool.proxy_rewards();
    let cutoff = cutoff_override.unwrap_or_else(|| default_cutoff(rewards.len()));
    hill_estimate(&rewards, cutoff)
}

fn cmd_estimate(args: EstimateArgs) -> Result<(), CliError> {
    if args.kappa0.is_some() && args.calibrate {
        return Err(CliError::Usage(
            "--kappa0 and --calibrate are mutually exclusive".to_string(),
        ));
    }
    let out_dir = resolve_out_dir(&args.common)?;
    let outcome = read_records(&args.input, args.normalization.mode(args.r_max))?;
    let estimates: Vec<(String, usize, Result<TailEstimate, TailError>)> = outcome
        .pools
        .iter()
        .map(|pool| {
            (
                pool.prompt_id().to_string(),
                pool.len(),
                estimate_pool(pool, args.cutoff),
            )
        })
        .collect();
    let succeeded: Vec<&TailEstimate> = estimates
        .iter()
        .filter_map(|(_, _, r)| r.as_ref().ok())
        .collect();
    if succeeded.is_empty() {
        return Err(CliError::Input(format!(
            "no prompt could be estimated ({} prompts, first failure: {})",
            estimates.len(),
            estimates
                .first()
                .and_then(|(_, _, r)| r.as_ref().err())
                .map(|e| e.to_string())
                .unwrap_or_else(|| "empty input".to_string()),
        )));
    }
    let pivot = match args.kappa0 {
        Some(kappa0) => {
            PivotConfig::explicit(kappa0).map_err(|e| CliError::Usage(e.to_string()))?
        }
        None => {
            let owned: Vec<TailEstimate> = succeeded.iter().map(|&e| e.clone()).collect();
            calibrate_pivot(&owned).map_err(|e| CliError::Numeric(e.to_string()))?
        }
    };
    let rows: Vec<Vec<Cell>> = estimates
        .iter()
        .map(|(prompt_id, n, result)| match result {
            Ok(est) => {
                let with_pivot = est.with_pivot(pivot);
                let (alpha, status) = match &with_pivot {
                    Ok(e) => (e.alpha(), "ok".to_string()),
                    Err(err) => (None, err.to_string()),
                };
                vec![
                    Cell::Str(prompt_id.clone()),
                    Cell::Int(*n as u64),
                    Cell::Int(est.cutoff_k() as u64),
                    Cell::OptNum(Some(est.kappa_hat())),
                    Cell::OptNum(alpha),
                    Cell::Bool(est.low_confidence()),
                    Cell::Str(status),
                ]
            }
            Err(err) => vec![
                Cell::Str(prompt_id.clone()),
                Cell::Int(*n as u64),
                Cell::Int(0),
                Cell::OptNum(None),
                Cell::OptNum(None),
                Cell::Bool(true),
                Cell::Str(err.to_string()),
            ],
        })
        .collect();
    let table_path = out_dir.join(format!("estimates.{}", args.common.format.extension()));
    write_table(
        &table_path,
        &[
            "prompt_id",
            "n",
            "cutoff_k",
            "kappa_hat",
            "alpha",
            "low_confidence",
            "status",
        ],
        &rows,
        args.common.format.table(),
    )?;
    announce(&args.common, &table_path);

    let mut params = BTreeMap::new();
    params.insert("input".into(), args.input.display().to_string());
    params.insert(
        "normalization".into(),
        format!("{:?}", args.normalization).to_lowercase(),
    );
    params.insert("r_max".into(), args.r_max.to_string());
    if let Some(c) = args.cutoff {
        params.insert("cutoff".into(), c.to_string());
    }
    params.insert(
        "pivot_source".into(),
        if args.kappa0.is_some() { "explicit" } else { "calibrated-median" }.to_string(),
    );
    params.insert("kappa0_effective".into(), pivot.kappa0().to_string());
    params.insert("format".into(), args.common.format.name().to_string());
    let manifest = write_manifest(
        &out_dir,
        "estimate",
        params,
        args.common.seed,
        &[&args.input],
    )?;
    announce(&args.common, &manifest);
    if !args.common.quiet {
        println!(
            "estimated {} of {} prompts; pivot kappa0 = {}",
            succeeded.len(),
            estimates.len(),
            pivot.kappa0(),
        );
    }
    Ok(())
}

fn greedy_index(probs: &[f64]) -> usize {
    let mut best = 0;
    for (i, &p) in probs.iter().enumerate() {
        if p > probs[best] {
            best = i;
        }
    }
    best
}

fn cmd_select(args: SelectArgs) -> Result<(), CliError> {
    let lambda = match args.policy {
        PolicyArg::Bon => args.lambda.unwrap_or(1.0),
        _ => args.lambda.ok_or_else(|| {
            CliError::Usage(format!(
                "--lambda is required for --policy {}",
                match args.policy {
                    PolicyArg::Sbon => "sbon",
                    PolicyArg::Itp => "itp",
                    PolicyArg::ItpRelu => "itp-relu",
                    PolicyArg::Bot => "bot",
                    PolicyArg::Bon => unreachable!(),
                }
            ))
        })?,
    };
    if args.policy == PolicyArg::Bot {
        if args.kappa0.is_some() && args.calibrate {
            return Err(CliError::Usage(
                "--kappa0 and --calibrate are mutually exclusive".to_string(),
            ));
        }
        if args.alpha.is_some() && (args.kappa0.is_some() || args.calibrate) {
            return Err(CliError::Usage(
                "--alpha fixes the interpolation order; it cannot be combined with --kappa0 or --calibrate"
                    .to_string(),
            ));
        }
    } else if args.alpha.is_some() || args.kappa0.is_some() || args.calibrate {
        return Err(CliError::Usage(
            "--alpha, --kappa0, and --calibrate apply only to --policy bot".to_string(),
        ));
    }

    let out_dir = resolve_out_dir(&args.common)?;
    let outcome = read_records(&args.input, args.normalization.mode(args.r_max))?;
    if outcome.pools.is_empty() {
        return Err(CliError::Input("input contains no prompts".to_string()));
    }

    let fixed_spec: Option<PolicySpec> = match args.policy {
        PolicyArg::Bon => Some(PolicySpec::bon()),
        PolicyArg::Sbon => {
            Some(PolicySpec::sbon(lambda).map_err(|e| CliError::Usage(e.to_string()))?)
        }
        PolicyArg::Itp => Some(
            PolicySpec::itp(lambda, ItpVariant::Affine)
                .map_err(|e| CliError::Usage(e.to_string()))?,
        ),
        PolicyArg::ItpRelu => Some(
            PolicySpec::itp(lambda, ItpVariant::Relu)
                .map_err(|e| CliError::Usage(e.to_string()))?,
        ),
        PolicyArg::Bot => match args.alpha {
            Some(alpha) => Some(
                PolicySpec::bot(lambda, alpha).map_err(|e| CliError::Usage(e.to_string()))?,
            ),
            None => None,
        },
    };

    // Adaptive pivot: explicit κ₀, or median-κ̂ calibration over the estimable prompts.
    let pivot: Option<PivotConfig> = if args.policy == PolicyArg::Bot && fixed_spec.is_none() {
        Some(match args.kappa0 {
            Some(kappa0) => {
                PivotConfig::explicit(kappa0).map_err(|e| CliError::Usage(e.to_string()))?
            }
            None => {
                let estimates: Vec<TailEstimate> = outcome
                    .pools
                    .iter()
                    .filter_map(|pool| estimate_pool(pool, args.cutoff).ok())
                    .collect();
                if estimates.is_empty() {
                    return Err(CliError::Input(
                        "pivot calibration failed: no prompt has enough candidates".to_string(),
                    ));
                }
                calibrate_pivot(&estimates).map_err(|e| CliError::Numeric(e.to_string()))?
            }
        })
    } else {
        None
    };

    let mut rows: Vec<Vec<Cell>> = Vec::with_capacity(outcome.pools.len());
    let mut failures = 0usize;
    for pool in &outcome.pools {
        let mut rng = substream(
            args.common.seed,
            &[PURPOSE_CLI_SELECT, label_hash(pool.prompt_id())],
        );
        let selected = select_on_pool(pool, &fixed_spec, pivot, &args, &mut rng);
        match selected {
            Ok(row) => rows.push(row),
            Err(err) => {
                failures += 1;
                rows.push(vec![
                    Cell::Str(pool.prompt_id().to_string()),
                    Cell::Str(String::new()),
                    Cell::OptNum(None),
                    Cell::OptNum(None),
                    Cell::OptNum(None),
                    Cell::OptNum(None),
                    Cell::OptNum(None),
                    Cell::OptNum(None),
                    Cell::Bool(false),
                    Cell::Str(err.to_string()),
                ]);
            }
        }
    }
    if failures == outcome.pools.len() {
        return Err(CliError::Input(
            "selection failed on every prompt".to_string(),
        ));
    }

    let table_path = out_dir.join(format!("selections.{}", args.common.format.extension()));
    write_table(
        &table_path,
        &[
            "prompt_id",
            "candidate_id",
            "selection_probability",
            "kappa_hat",
            "alpha",
            "kl_to_uniform",
            "chi2_to_uniform",
            "tsallis_to_uniform",
            "uniform_fallback",
            "status",
        ],
        &rows,
        args.common.format.table(),
    )?;
    announce(&args.common, &table_path);

    let mut params = BTreeMap::new();
    params.insert("input".into(), args.input.display().to_string());
    params.insert(
        "policy".into(),
        format!("{:?}", args.policy).to_lowercase().replace("itprelu", "itp-relu"),
    );
    params.insert("lambda".into(), lambda.to_string());
    if let Some(a) = args.alpha {
        params.insert("alpha".into(), a.to_string());
    }
    if let Some(p) = pivot {
        params.insert("kappa0_effective".into(), p.kappa0().to_string());
    }
    params.insert("greedy".into(), args.greedy.to_string());
    params.insert(
        "normalization".into(),
        format!("{:?}", args.normalization).to_lowercase(),
    );
    params.insert("r_max".into(), args.r_max.to_string());
    if let Some(c) = args.cutoff {
        params.insert("cutoff".into(), c.to_string());
    }
    params.insert("format".into(), args.common.format.name().to_string());
    let manifest = write_manifest(&out_dir, "select", params, args.common.seed, &[&args.input])?;
    announce(&args.common, &manifest);
    Ok(())
}

fn select_on_pool<R: Rng + ?Sized>(
    pool: &CandidatePool,
    fixed_spec: &Option<PolicySpec>,
    pivot: Option<PivotConfig>,
    args: &SelectArgs,
    rng: &mut R,
) -> Result<Vec<Cell>, PolicyError> {
    let (index, kappa_hat, alpha, distribution) = match (fixed_spec, pivot) {
        (Some(spec), _) => {
            let dist = selection_distribution(spec, pool)?;
            let index = if args.greedy {
                greedy_index(dist.probs().probs())
            } else {
                dist.probs().sample_index(rng)
            };
            (index, None, spec.alpha(), dist)
        }
        (None, Some(pivot)) => {
            let out = bot_select_pipeline(pool, args.lambda.expect("validated"), pivot, args.cutoff, rng)?;
            let index = if args.greedy {
                greedy_index(out.distribution.probs().probs())
            } else {
                pool.candidates()
                    .iter()
                    .position(|c| c.candidate_id == out.candidate_id)
                    .expect("pipeline returns an id from the pool")
            };
            (
                index,
                out.estimate.as_ref().map(TailEstimate::kappa_hat),
                out.estimate.as_ref().and_then(TailEstimate::alpha),
                out.distribution,
            )
        }
        (None, None) => unreachable!("bot without alpha resolves a pivot"),
    };
    let d = distribution.diagnostics();
    Ok(vec![
        Cell::Str(pool.prompt_id().to_string()),
        Cell::Str(pool.candidates()[index].candidate_id.clone()),
        Cell::Num(distribution.probs().probs()[index]),
        Cell::OptNum(kappa_hat),
        Cell::OptNum(alpha),
        Cell::Num(d.kl_to_uniform),
        Cell::Num(d.chi2_to_uniform),
        Cell::Num(d.tsallis_to_uniform),
        Cell::Bool(distribution.uniform_fallback()),
        Cell::Str("ok".to_string()),
    ])
}

fn parse_policy_list(
    text: &str,
    lambda: f64,
    kappa0: f64,
) -> Result<Vec<SweepPolicy>, CliError> {
    let mut policies = Vec::new();
    for name in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let policy = match name {
            "bon" => SweepPolicy::fixed(PolicySpec::bon()),
            "sbon" => SweepPolicy::fixed(
                PolicySpec::sbon(lambda).map_err(|e| CliError::Usage(e.to_string()))?,
            ),
            "itp" => SweepPolicy::fixed(
                PolicySpec::itp(lambda, ItpVariant::Affine)
                    .map_err(|e| CliError::Usage(e.to_string()))?,
            ),
            "itp-relu" => SweepPolicy::fixed(
                PolicySpec::itp(lambda, ItpVariant::Relu)
                    .map_err(|e| CliError::Usage(e.to_string()))?,
            ),
            "bot" => SweepPolicy::bot(
                lambda,
                PivotConfig::explicit(kappa0).map_err(|e| CliError::Usage(e.to_string()))?,
            ),
            other => {
                return Err(CliError::Usage(format!(
                    "unknown policy {other:?} (expected bon, sbon, itp, itp-relu, or bot)"
                )))
            }
        };
        policies.push(policy);
    }
    if policies.is_empty() {
        return Err(CliError::Usage("empty --policies list".to_string()));
    }
    Ok(policies)
}

fn cmd_simulate(args: SimulateArgs) -> Result<(), CliError> {
    let world = args.world.build()?;
    let sweep = args.sweep.build(args.common.seed)?;
    let policies = parse_policy_list(&args.policies, args.lambda, args.kappa0)?;
    let out_dir = resolve_out_dir(&args.common)?;

    let result = run_sweep(&world, &sweep, &policies)?;

    let csv_path = out_dir.join("sweep.csv");
    write_sweep(&result, &csv_path, TableFormat::Csv)?;
    announce(&args.common, &csv_path);
    let json_path = out_dir.join("sweep.json");
    write_sweep(&result, &json_path, TableFormat::Json)?;
    announce(&args.common, &json_path);
    for (kind, name) in [
        (PlotKind::Trajectory, "trajectory.svg"),
        (PlotKind::Scaling, "scaling.svg"),
        (PlotKind::Distortion, "distortion.svg"),
    ] {
        let path = out_dir.join(name);
        emit_plot(&result, kind, &path)?;
        announce(&args.common, &path);
    }

    let mut params = BTreeMap::new();
    args.world.record(&mut params);
    args.sweep.record(&mut params);
    params.insert("policies".into(), args.policies.clone());
    params.insert("lambda".into(), args.lambda.to_string());
    params.insert("kappa0".into(), args.kappa0.to_string());
    params.insert(
        "empirical_epsilon".into(),
        result.empirical_epsilon.to_string(),
    );
    params.insert("pool_kappa".into(), result.pool_kappa.to_string());
    let manifest = write_manifest(&out_dir, "simulate", params, args.common.seed, &[])?;
    announce(&args.common, &manifest);
    Ok(())
}

fn breakdown_cells(
    family: RegretFamilyArg,
    inputs: &RegretInputs,
    alpha: Option<f64>,
    mode: ModeArg,
    b: &RegretBreakdown,
) -> Vec<Cell> {
    vec![
        Cell::Str(
            match family {
                RegretFamilyArg::Bon => "bon",
                RegretFamilyArg::Sbon => "sbon",
                RegretFamilyArg::Itp => "itp",
                RegretFamilyArg::ItpRelu => "itp-relu",
                RegretFamilyArg::Bot => "bot",
            }
            .to_string(),
        ),
        Cell::Num(inputs.kappa()),
        Cell::Num(inputs.lambda()),
        Cell::OptNum(alpha),
        Cell::Num(inputs.epsilon()),
        Cell::Int(inputs.n()),
        Cell::Str(mode.name().to_string()),
        Cell::Num(b.sampling_error),
        Cell::Num(b.distortion),
        Cell::Num(b.gain),
        Cell::Num(b.total),
    ]
}

fn cmd_regret(args: RegretArgs) -> Result<(), CliError> {
    let family = args.family.family();
    let kappas = parse_f64_grid(&args.kappa)?;
    let lambdas = parse_f64_grid(&args.lambda)?;
    let alphas = if args.family == RegretFamilyArg::Bot {
        parse_f64_grid(&args.alpha)?
    } else {
        vec![1.5] // placeholder consumed only by validation; not reported
    };
    let epsilons = parse_f64_grid(&args.epsilon)?;
    let ns: Vec<u64> = parse_usize_grid(&args.n)?.into_iter().map(|n| n as u64).collect();
    let factor = match args.factor {
        1 => SamplingFactor::One,
        2 => SamplingFactor::Two,
        other => {
            return Err(CliError::Usage(format!(
                "--factor must be 1 or 2, got {other}"
            )))
        }
    };
    if args.modes.is_empty() {
        return Err(CliError::Usage("at least one --mode is required".to_string()));
    }
    if family == RegretFamily::Bon
        && args
            .modes
            .iter()
            .any(|m| matches!(m, ModeArg::ExpansionHeavy | ModeArg::ExpansionLight))
    {
        return Err(CliError::Usage(
            "expansion modes do not support the hard-argmax family (it arises only as a limit)"
                .to_string(),
        ));
    }
    let out_dir = resolve_out_dir(&args.common)?;

    let mut rows = Vec::new();
    let mut tuple_index = 0u64;
    for &kappa in &kappas {
        for &lambda in &lambdas {
            for &alpha in &alphas {
                for &epsilon in &epsilons {
                    for &n in &ns {
                        let tail = BetaTail::new(kappa)
                            .map_err(|e| CliError::Usage(e.to_string()))?;
                        let inputs = RegretInputs::new(tail, lambda, alpha, n, epsilon)?;
                        let alpha_cell = (args.family == RegretFamilyArg::Bot).then_some(alpha);
                        for &mode in &args.modes {
                            let breakdown = match mode {
                                ModeArg::Quadrature => regret_proxy_with(
                                    family,
                                    &inputs,
                                    &ProxyOptions {
                                        factor,
                                        quadrature_points: args.points,
                                    },
                                )?,
                                ModeArg::MonteCarlo => {
                                    let mut rng = substream(
                                        args.common.seed,
                                        &[PURPOSE_CLI_MC, tuple_index],
                                    );
                                    regret_proxy_monte_carlo(
                                        family,
                                        &inputs,
                                        args.samples,
                                        &mut rng,
                                    )?
                                }
                                ModeArg::ExpansionHeavy => expansion_heavy(family, &inputs)?,
                                ModeArg::ExpansionLight => expansion_light(family, &inputs)?,
                            };
                            rows.push(breakdown_cells(
                                args.family,
                                &inputs,
                                alpha_cell,
                                mode,
                                &breakdown,
                            ));
                        }
                        tuple_index += 1;
                    }
                }
            }
        }
    }

    let table_path = out_dir.join(format!("regret.{}", args.common.format.extension()));
    write_table(
        &table_path,
        &[
            "family",
            "kappa",
            "lambda",
            "alpha",
            "epsilon",
            "N",
            "mode",
            "sampling_error",
            "distortion",
            "gain",
            "total",
        ],
        &rows,
        args.common.format.table(),
    )?;
    announce(&args.common, &table_path);

    let mut params = BTreeMap::new();
    params.insert("family".into(), format!("{:?}", args.family).to_lowercase());
    params.insert("kappa".into(), args.kappa.clone());
    params.insert("lambda".into(), args.lambda.clone());
    params.insert("alpha".into(), args.alpha.clone());
    params.insert("epsilon".into(), args.epsilon.clone());
    params.insert("n".into(), args.n.clone());
    params.insert(
        "modes".into(),
        args.modes.iter().map(|m| m.name()).collect::<Vec<_>>().join(","),
    );
    params.insert("samples".into(), args.samples.to_string());
    params.insert("factor".into(), args.factor.to_string());
    params.insert("points".into(), args.points.to_string());
    params.insert("format".into(), args.common.format.name().to_string());
    let manifest = write_manifest(&out_dir, "regret", params, args.common.seed, &[])?;
    announce(&args.common, &manifest);
    Ok(())
}

fn cmd_ablate(args: AblateArgs) -> Result<(), CliError> {
    let world = args.world.build()?;
    let sweep = args.sweep.build(args.common.seed)?;
    let grid_text = args.grid.clone().unwrap_or_else(|| {
        match args.axis {
            AxisArg::Lambda => DEFAULT_LAMBDA_GRID,
            AxisArg::Kappa0 => DEFAULT_KAPPA0_GRID,
        }
        .to_string()
    });
    let grid = parse_f64_grid(&grid_text)?;
    let axis = match args.axis {
        AxisArg::Lambda => AblationAxis::Lambda,
        AxisArg::Kappa0 => AblationAxis::Kappa0,
    };
    let fixed = AblationFixed {
        lambda: args.fixed_lambda,
        kappa0: args.fixed_kappa0,
    };
    let focus_n = match args.focus_n {
        Some(n) => n,
        None => *sweep
            .n_grid()
            .iter()
            .max()
            .expect("sweep config validated non-empty"),
    };
    let out_dir = resolve_out_dir(&args.common)?;

    let points = ablation_sweep(&world, &sweep, axis, &grid, fixed)?;

    // Reference marker for the κ₀ panel: the pivot a calibration pass would choose for
    // this world — the Hill estimate of the sweep's own pool (same substream).
    let reference = match axis {
        AblationAxis::Kappa0 => {
            let mut rng = substream(sweep.seed(), &[PURPOSE_POOL, 0]);
            let generated = generate_pool(&world, sweep.pool_size(), "p0", &mut rng)
                .map_err(|e| CliError::Numeric(e.to_string()))?;
            estimate_pool(&generated.pool, None)
                .ok()
                .map(|est| {
                    calibrate_pivot(std::slice::from_ref(&est))
                        .map(|p| p.kappa0())
                        .unwrap_or(est.kappa_hat())
                })
        }
        AblationAxis::Lambda => None,
    };

    let axis_name = match args.axis {
        AxisArg::Lambda => "lambda",
        AxisArg::Kappa0 => "kappa0",
    };
    let mut rows: Vec<Vec<Cell>> = Vec::new();
    for point in &points {
        for row in point.result.rows() {
            rows.push(vec![
                Cell::Num(point.value),
                Cell::Str(row.policy.clone()),
                Cell::Int(row.n as u64),
                Cell::Int(row.trial_count as u64),
                Cell::Num(row.true_reward_mean),
                Cell::Num(row.true_reward_stderr),
                Cell::Num(row.proxy_reward_mean),
                Cell::Num(row.proxy_reward_stderr),
                Cell::OptNum(row.kappa_hat_mean),
                Cell::OptNum(row.alpha_mean),
            ]);
        }
    }
    let table_path = out_dir.join(format!("ablation.{}", args.common.format.extension()));
    write_table(
        &table_path,
        &[
            axis_name,
            "policy",
            "N",
            "trial_count",
            "true_reward_mean",
            "true_reward_stderr",
            "proxy_reward_mean",
            "proxy_reward_stderr",
            "kappa_hat_mean",
            "alpha_mean",
        ],
        &rows,
        args.common.format.table(),
    )?;
    announce(&args.common, &table_path);

    let plot_path = out_dir.join("ablation.svg");
    emit_ablation_plot(&points, axis_name, focus_n, reference, &plot_path)?;
    announce(&args.common, &plot_path);

    let mut params = BTreeMap::new();
    args.world.record(&mut params);
    args.sweep.record(&mut params);
    params.insert("axis".into(), axis_name.to_string());
    params.insert("grid".into(), grid_text);
    params.insert("fixed_lambda".into(), args.fixed_lambda.to_string());
    params.insert("fixed_kappa0".into(), args.fixed_kappa0.to_string());
    params.insert("focus_n".into(), focus_n.to_string());
    if let Some(r) = reference {
        params.insert("kappa0_reference".into(), r.to_string());
    }
    params.insert("format".into(), args.common.format.name().to_string());
    let manifest = write_manifest(&out_dir, "ablate", params, args.common.seed, &[])?;
    announce(&args.common, &manifest);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn grids_parse_and_reject() {
        assert_eq!(parse_f64_grid("0.1, 0.2,1").unwrap(), vec![0.1, 0.2, 1.0]);
        assert_eq!(parse_usize_grid("1,2,4").unwrap(), vec![1, 2, 4]);
        assert!(parse_f64_grid("").is_err());
        assert!(parse_f64_grid("a,b").is_err());
        assert!(parse_usize_grid("1.5").is_err());
    }

    #[test]
    fn exit_codes_by_class() {
        assert_eq!(CliError::Usage(String::new()).exit_code(), 1);
        assert_eq!(CliError::Input(String::new()).exit_code(), 2);
        assert_eq!(CliError::Numeric(String::new()).exit_code(), 3);
    }

    #[test]
    fn error_classification_from_module_errors() {
        let usage: CliError = RegretError::InvalidLambda(-1.0).into();
        assert_eq!(usage.exit_code(), 1);
        let numeric: CliError = RegretError::Underflow {
            family: RegretFamily::Sbon,
            kappa: 0.01,
            lambda: 1e-9,
        }
        .into();
        assert_eq!(numeric.exit_code(), 3);
        let usage2: CliError = SimulatorError::BudgetExceedsPool {
            n: 10,
            pool_size: 4,
        }
        .into();
        assert_eq!(usage2.exit_code(), 1);
    }

    #[test]
    fn policy_lists_parse() {
        let all = parse_policy_list("bon,sbon,itp,bot", 0.5, 1.0).unwrap();
        assert_eq!(all.len(), 4);
        assert_eq!(all[3].label(), "bot");
        assert!(parse_policy_list("bogus", 0.5, 1.0).is_err());
        assert!(parse_policy_list("", 0.5, 1.0).is_err());
        assert!(parse_policy_list("sbon", -1.0, 1.0).is_err());
    }

    #[test]
    fn greedy_picks_lowest_index_on_ties() {
        assert_eq!(greedy_index(&[0.2, 0.4, 0.4]), 1);
        assert_eq!(greedy_index(&[0.5, 0.5]), 0);
    }
}
