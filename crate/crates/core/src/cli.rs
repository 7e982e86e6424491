//! Command-line front end.
//!
//! [`run`] parses arguments, dispatches one subcommand and returns the exit
//! code: 0 on success, 1 on usage errors, 2 on data or model errors. Data
//! goes to `out`, diagnostics and warnings to `err`.

use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::contributions::{peak_point, preset_named, rmax_of_rpeak, BenchmarkPreset};
use crate::dataset;
use crate::error::{IngestError, ModelError, ReportError};
use crate::ingest::{self, Benchmark, MachineRecord, RecordFormat};
use crate::model::{
    alpha_from_measurement, classic_speed, relativistic_speed, ParallelSystem, RelativisticParams,
};
use crate::report::{self, build_figure, CurveSet, FigureId, SurfaceSpec};
use crate::units::{parse_quantity, Prefix};

#[derive(Debug, Parser)]
#[command(
    name = "perfwall",
    version,
    about = "Saturation-corrected Amdahl model: prediction, inversion, sweeps and figures",
    long_about = "Performance values are in flop/s and accept SI prefix suffixes \
                  (100G = 100 Gflop/s, 0.1254E = 0.1254 Eflop/s). Times are in seconds, \
                  dates in fractional years (2018.5 = November 2018 list)."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Predict payload performance (flop/s) from N, per-unit performance and alpha, or from a preset and R_Peak
    Predict(PredictArgs),
    /// Invert a measurement (N, R_Peak, R_Max in flop/s) into the non-parallel fraction (1-alpha)
    Invert(InvertArgs),
    /// Sweep R_Peak (flop/s) for a preset and emit contributions and R_Max in Eflop/s
    Sweep(SweepArgs),
    /// Emit the efficiency surface E(N, 1-alpha) as a grid
    Surface(SurfaceArgs),
    /// Per-machine R_Max timeline (fractional years, flop/s with display prefix) and improvement ratios
    Timeline(TimelineArgs),
    /// Speed (m/s) of a body under constant acceleration after t seconds, relativistic and classic
    Relativistic(RelativisticArgs),
    /// Write a figure dataset (CSV, plus SVG on request) to a directory
    Figure(FigureArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Svg,
}

#[derive(Debug, Args)]
pub struct PredictArgs {
    /// Number of processing units (dimensionless, >= 1)
    #[arg(long = "n")]
    pub n: Option<String>,
    /// Payload performance of one processing unit, flop/s (e.g. 100e9 or 100G)
    #[arg(long = "p")]
    pub p: Option<String>,
    /// Parallel fraction alpha in [0, 1]
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Benchmark preset: HPL, HPCG or NN
    #[arg(long)]
    pub preset: Option<String>,
    /// Nominal performance R_Peak, flop/s (e.g. 0.00587E)
    #[arg(long)]
    pub rpeak: Option<String>,
    /// Preset parameter override key=value (alpha_sw, ctx_switch_clocks, total_clocks, loop_clocks_per_pu, bio_factor, perf_per_pu [flop/s], clock_freq [Hz])
    #[arg(long = "override", value_name = "KEY=VALUE")]
    pub overrides: Vec<String>,
    /// Display prefix for flop/s values: G, P or E (default: E with --preset, else chosen from magnitude)
    #[arg(long)]
    pub unit: Option<String>,
}

#[derive(Debug, Args)]
pub struct InvertArgs {
    /// Number of processing units (dimensionless, >= 2)
    #[arg(long = "n")]
    pub n: String,
    /// Nominal performance R_Peak, flop/s (e.g. 0.1254E)
    #[arg(long)]
    pub rpeak: String,
    /// Measured payload performance R_Max, flop/s (e.g. 0.0930E)
    #[arg(long)]
    pub rmax: String,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Benchmark preset: HPL, HPCG or NN
    #[arg(long, default_value = "HPL")]
    pub preset: String,
    /// Lowest R_Peak, flop/s
    #[arg(long, default_value = "0.001E")]
    pub from: String,
    /// Highest R_Peak, flop/s
    #[arg(long, default_value = "1.1E")]
    pub to: String,
    /// Preset parameter override key=value (see `predict --help`)
    #[arg(long = "override", value_name = "KEY=VALUE")]
    pub overrides: Vec<String>,
    /// Output file (default: standard output)
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct SurfaceArgs {
    /// Smallest number of processing units
    #[arg(long, default_value = "1")]
    pub nmin: String,
    /// Largest number of processing units
    #[arg(long, default_value = "1e8")]
    pub nmax: String,
    /// Smallest non-parallel fraction (1-alpha)
    #[arg(long, default_value_t = 1e-8)]
    pub smin: f64,
    /// Largest non-parallel fraction (1-alpha), below 1
    #[arg(long, default_value_t = 1e-1)]
    pub smax: f64,
    /// Grid points per axis
    #[arg(long, default_value_t = 64)]
    pub points: usize,
    /// Measurement CSV whose derived (N, 1-alpha_eff) points are overlaid
    #[arg(long)]
    pub data: Option<PathBuf>,
    /// Output file (default: standard output)
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct TimelineArgs {
    /// Measurement CSV (default: bundled R_Max timeline)
    #[arg(long)]
    pub data: Option<PathBuf>,
    /// Only this machine (default: every machine)
    #[arg(long)]
    pub machine: Option<String>,
    /// Only this benchmark: HPL or HPCG
    #[arg(long)]
    pub benchmark: Option<String>,
    /// Display prefix for R_Max in flop/s: G, P or E
    #[arg(long, default_value = "P")]
    pub unit: String,
    /// Output file (default: standard output)
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RelativisticArgs {
    /// Elapsed time, seconds
    #[arg(long = "t")]
    pub t: f64,
    /// Optical density of the medium (dimensionless, >= 1)
    #[arg(long = "n", default_value_t = 1.0)]
    pub n: f64,
    /// Acceleration, m/s^2
    #[arg(long, default_value_t = crate::model::STANDARD_GRAVITY)]
    pub accel: f64,
}

#[derive(Debug, Args)]
pub struct FigureArgs {
    /// Figure id: 1, 3, 4, 5, 6A, 6B or 6C (x axes in flop/s with prefix, N, seconds or fractional years)
    pub id: String,
    /// Output directory
    #[arg(long, short = 'o', default_value = ".")]
    pub out: PathBuf,
    /// csv writes <stem>.csv; svg writes <stem>.csv and <stem>.svg
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Measurement CSV replacing the bundled data (figures 1, 3, 4)
    #[arg(long)]
    pub data: Option<PathBuf>,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Data(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Data(_) => 2,
        }
    }
}

impl From<ModelError> for Failure {
    fn from(e: ModelError) -> Self {
        match e {
            ModelError::UnknownPreset(_) => Failure::Usage(e.to_string()),
            e => Failure::Data(e.to_string()),
        }
    }
}

impl From<IngestError> for Failure {
    fn from(e: IngestError) -> Self {
        Failure::Data(e.to_string())
    }
}

impl From<ReportError> for Failure {
    fn from(e: ReportError) -> Self {
        match e {
            ReportError::UnknownFigure(_) | ReportError::InvalidRange(_) => Failure::Usage(e.to_string()),
            ReportError::Model(m) => m.into(),
            e => Failure::Data(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Data(e.to_string())
    }
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    0
                }
                _ => {
                    let _ = write!(err, "{text}");
                    1
                }
            };
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(()) => 0,
        Err(f) => {
            let (Failure::Usage(m) | Failure::Data(m)) = &f;
            let _ = writeln!(err, "error: {m}");
            f.code()
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    match cmd {
        Command::Predict(a) => cmd_predict(a, out, err),
        Command::Invert(a) => cmd_invert(a, out),
        Command::Sweep(a) => cmd_sweep(a, out, err),
        Command::Surface(a) => cmd_surface(a, out, err),
        Command::Timeline(a) => cmd_timeline(a, out, err),
        Command::Relativistic(a) => cmd_relativistic(a, out),
        Command::Figure(a) => cmd_figure(a, out, err),
    }
}

fn quantity(flag: &str, s: &str) -> Result<f64, Failure> {
    parse_quantity(s).map_err(|e| Failure::Usage(format!("--{flag}: {e}")))
}

fn display_prefix(unit: Option<&str>, magnitude: f64) -> Result<Prefix, Failure> {
    match unit {
        Some(u) => u.parse().map_err(Failure::Usage),
        None => Ok([Prefix::Exa, Prefix::Peta, Prefix::Tera, Prefix::Giga]
            .into_iter()
            .find(|p| magnitude >= p.factor())
            .unwrap_or(Prefix::None)),
    }
}

/// Six significant digits, shortest form.
fn sig(v: f64) -> String {
    let rounded: f64 = format!("{v:.5e}").parse().unwrap_or(v);
    format!("{rounded}")
}

fn flops(v: f64, p: Prefix) -> String {
    format!("{} {}", sig(p.scale(v)), p.flops_label())
}

/// Applies `key=value` overrides to a preset.
pub fn apply_overrides(mut bp: BenchmarkPreset, overrides: &[String]) -> Result<BenchmarkPreset, String> {
    for o in overrides {
        let (key, value) = o
            .split_once('=')
            .ok_or_else(|| format!("override '{o}' is not key=value"))?;
        let v = parse_quantity(value).map_err(|e| format!("override '{key}': {e}"))?;
        let d = &mut bp.decomposition;
        match key.trim() {
            "alpha_sw" => d.alpha_sw = v,
            "ctx_switch_clocks" | "ctx" => d.ctx_switch_clocks = v,
            "total_clocks" | "total" => d.total_clocks = v,
            "loop_clocks_per_pu" | "loop" => d.loop_clocks_per_pu = v,
            "bio_factor" | "bio" => d.bio_factor = v,
            "perf_per_pu" | "p" => bp.machine.perf_per_pu = v,
            "clock_freq" => bp.machine.clock_freq = v,
            k => return Err(format!("unknown override key '{k}'")),
        }
    }
    bp.decomposition.validate().map_err(|e| e.to_string())?;
    crate::contributions::MachineModel::new(bp.machine.perf_per_pu, bp.machine.clock_freq)
        .map_err(|e| e.to_string())?;
    Ok(bp)
}

fn load_preset(name: &str, overrides: &[String]) -> Result<BenchmarkPreset, Failure> {
    let bp = preset_named(name)?;
    apply_overrides(bp, overrides).map_err(Failure::Usage)
}

fn cmd_predict(a: PredictArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    if let Some(name) = &a.preset {
        if a.n.is_some() || a.p.is_some() || a.alpha.is_some() {
            return Err(Failure::Usage("--preset cannot be combined with --n/--p/--alpha".into()));
        }
        let rpeak = a
            .rpeak
            .as_deref()
            .ok_or_else(|| Failure::Usage("--preset requires --rpeak".into()))?;
        let rpeak = quantity("rpeak", rpeak)?;
        let bp = load_preset(name, &a.overrides)?;
        let point = rmax_of_rpeak(rpeak, &bp.machine, &bp.decomposition)?;
        let n = bp.machine.units_for(rpeak);
        let nonparallel = crate::contributions::alpha_total(n, &bp.decomposition)?;
        let prefix = display_prefix(Some(a.unit.as_deref().unwrap_or("E")), rpeak)?;
        writeln!(out, "preset = {}", bp.name)?;
        writeln!(out, "n_proc = {}", sig(n))?;
        writeln!(out, "r_peak = {}", flops(point.r_peak, prefix))?;
        writeln!(out, "r_max = {}", flops(point.r_max, prefix))?;
        writeln!(out, "efficiency = {}", sig(point.efficiency))?;
        writeln!(out, "nonparallel = {}", sig(nonparallel))?;
        if let Ok(peak) = peak_point(&bp.machine, &bp.decomposition) {
            if rpeak > peak.r_peak_star {
                writeln!(
                    err,
                    "warning: operating point is past the performance peak: max r_max = {} at r_peak = {} (N = {})",
                    flops(peak.r_max_star, prefix),
                    flops(peak.r_peak_star, prefix),
                    peak.n_star_int
                )?;
            }
        }
        return Ok(());
    }

    if !a.overrides.is_empty() {
        return Err(Failure::Usage("--override applies only with --preset".into()));
    }
    let (Some(n), Some(p), Some(alpha)) = (a.n.as_deref(), a.p.as_deref(), a.alpha) else {
        return Err(Failure::Usage("predict needs either --preset and --rpeak, or --n, --p and --alpha".into()));
    };
    let n = quantity("n", n)?;
    let p = quantity("p", p)?;
    let sys = ParallelSystem::new(n, p, alpha).map_err(|e| Failure::Usage(e.to_string()))?;
    let point = sys.performance_point();
    let prefix = display_prefix(a.unit.as_deref(), point.r_peak)?;
    writeln!(out, "n_proc = {}", sig(n))?;
    writeln!(out, "r_peak = {}", flops(point.r_peak, prefix))?;
    writeln!(out, "r_max = {}", flops(point.r_max, prefix))?;
    writeln!(out, "efficiency = {}", sig(point.efficiency))?;
    writeln!(out, "nonparallel = {}", sig(sys.nonparallel()))?;
    Ok(())
}

fn cmd_invert(a: InvertArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let n = quantity("n", &a.n)?;
    let rpeak = quantity("rpeak", &a.rpeak)?;
    let rmax = quantity("rmax", &a.rmax)?;
    if n < 2.0 {
        return Err(Failure::Usage(format!(
            "inversion needs --n >= 2, got {n}"
        )));
    }
    if rpeak.is_nan() || rpeak <= 0.0 {
        return Err(Failure::Usage("--rpeak must be > 0".into()));
    }
    let e = rmax / rpeak;
    let nonparallel = alpha_from_measurement(n, e)?;
    writeln!(out, "efficiency = {}", sig(e))?;
    writeln!(out, "nonparallel = {nonparallel:e}")?;
    writeln!(out, "alpha = {}", 1.0 - nonparallel)?;
    Ok(())
}

fn cmd_sweep(a: SweepArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    let bp = load_preset(&a.preset, &a.overrides)?;
    let range = (quantity("from", &a.from)?, quantity("to", &a.to)?);
    let set = report::fig6_panel(&bp, range)?;
    match peak_point(&bp.machine, &bp.decomposition) {
        Ok(p) => writeln!(
            err,
            "peak: r_max = {} at r_peak = {} (N = {})",
            flops(p.r_max_star, Prefix::Exa),
            flops(p.r_peak_star, Prefix::Exa),
            p.n_star_int
        )?,
        Err(e) => writeln!(err, "peak: {e}")?,
    }
    emit(&set, a.format, a.out.as_deref(), out)
}

fn cmd_surface(a: SurfaceArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    let spec = SurfaceSpec {
        n_range: (quantity("nmin", &a.nmin)?, quantity("nmax", &a.nmax)?),
        nonparallel_range: (a.smin, a.smax),
        n_points: a.points,
        nonparallel_points: a.points,
    };
    let measured = match &a.data {
        Some(path) => ingest::derive(&read_records(path, err)?),
        None => Vec::new(),
    };
    let set = report::fig1_surface(&spec, &measured)?;
    emit(&set, a.format, a.out.as_deref(), out)
}

fn cmd_timeline(a: TimelineArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    let prefix: Prefix = a.unit.parse().map_err(Failure::Usage)?;
    let records = match &a.data {
        Some(path) => read_records(path, err)?,
        None => dataset::fig3_timeline()?.records,
    };
    let benchmark = a
        .benchmark
        .as_deref()
        .map(|b| b.parse::<Benchmark>().map_err(|t| Failure::Usage(format!("unknown benchmark '{t}'"))))
        .transpose()?;
    let records: Vec<MachineRecord> = records
        .into_iter()
        .filter(|r| benchmark.is_none_or(|b| r.benchmark == b))
        .collect();
    let names = match &a.machine {
        Some(m) => vec![m.clone()],
        None => ingest::machines(&records),
    };

    let mut buf = Vec::new();
    {
        let mut w = csv::Writer::from_writer(&mut buf);
        let rmax_col = format!("rmax_{}flops", prefix.symbol().to_ascii_lowercase());
        w.write_record(["machine", "date", rmax_col.as_str(), "ratio"])
            .map_err(|e| Failure::Data(e.to_string()))?;
        for name in names {
            let t = ingest::timeline(&records, &name)?;
            for (i, &(date, rmax)) in t.points.iter().enumerate() {
                let ratio = if i == 0 { String::new() } else { format!("{}", t.ratios[i - 1]) };
                w.write_record([name.clone(), date.to_string(), format!("{}", prefix.scale(rmax)), ratio])
                    .map_err(|e| Failure::Data(e.to_string()))?;
            }
        }
        w.flush()?;
    }
    write_output(&buf, a.out.as_deref(), out)
}

fn cmd_relativistic(a: RelativisticArgs, out: &mut dyn Write) -> Result<(), Failure> {
    if !(a.t >= 0.0 && a.t.is_finite()) {
        return Err(Failure::Usage(format!("--t must be >= 0 seconds, got {}", a.t)));
    }
    let p = RelativisticParams::new(a.accel, crate::model::LIGHT_SPEED, a.n)
        .map_err(|e| Failure::Usage(e.to_string()))?;
    writeln!(out, "speed = {} m/s", sig(relativistic_speed(a.t, &p)))?;
    writeln!(out, "classic = {} m/s", sig(classic_speed(a.t, a.accel)))?;
    writeln!(out, "limit = {} m/s", sig(p.limit()))?;
    Ok(())
}

fn cmd_figure(a: FigureArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    let id: FigureId = a.id.parse().map_err(|e: ReportError| Failure::Usage(e.to_string()))?;
    let records = match &a.data {
        Some(path) => Some(read_records(path, err)?),
        None => None,
    };
    let set = build_figure(id, records.as_deref())?;
    fs::create_dir_all(&a.out)?;
    let stem = id.file_stem();
    let csv_path = a.out.join(format!("{stem}.csv"));
    write_file(&csv_path, |w| report::emit_csv(&set, w))?;
    writeln!(out, "{}", csv_path.display())?;
    if a.format == Format::Svg {
        let svg_path = a.out.join(format!("{stem}.svg"));
        write_file(&svg_path, |w| report::emit_svg(&set, w))?;
        writeln!(out, "{}", svg_path.display())?;
    }
    Ok(())
}

fn read_records(path: &Path, err: &mut dyn Write) -> Result<Vec<MachineRecord>, Failure> {
    let file = File::open(path).map_err(|e| Failure::Data(format!("{}: {e}", path.display())))?;
    let parsed = ingest::parse_records(file, RecordFormat::default())
        .map_err(|e| Failure::Data(format!("{}: {e}", path.display())))?;
    for w in &parsed.warnings {
        writeln!(err, "warning: {}: {w}", path.display())?;
    }
    Ok(parsed.records)
}

fn emit(set: &CurveSet, format: Format, path: Option<&Path>, out: &mut dyn Write) -> Result<(), Failure> {
    let mut buf = Vec::new();
    match format {
        Format::Csv => report::emit_csv(set, &mut buf)?,
        Format::Svg => report::emit_svg(set, &mut buf)?,
    }
    write_output(&buf, path, out)
}

fn write_output(bytes: &[u8], path: Option<&Path>, out: &mut dyn Write) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, bytes).map_err(|e| Failure::Data(format!("{}: {e}", p.display()))),
        None => Ok(out.write_all(bytes)?),
    }
}

fn write_file<F>(path: &Path, body: F) -> Result<(), Failure>
where
    F: FnOnce(&mut BufWriter<File>) -> Result<(), ReportError>,
{
    let file = File::create(path).map_err(|e| Failure::Data(format!("{}: {e}", path.display())))?;
    let mut w = BufWriter::new(file);
    body(&mut w)?;
    w.flush()?;
    Ok(())
}
