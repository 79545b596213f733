//! Command-line front end.
//!
//! Data goes to `--out` (or standard output); diagnostics go to standard
//! error. Exit status: 0 success, 1 computation or I/O error, 2 usage error.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::analysis::{
    bandwidth, jamming_range, pattern_stats, range_ratio, PatternSample, PatternUnit, RadiationPatternData,
    RangeModel, Reflection, DEFAULT_VSWR_LIMIT, HELIX_GAIN_DBI, HELIX_RANGE_M,
};
use crate::em::{frequency_sweep, simulate, SweepPoint, DEFAULT_SEGMENTS_PER_ELEMENT};
use crate::geometry::{build_design, validate_design, DesignRule, YagiDesign, DEFAULT_DIAMETER_M};
use crate::impedance::ComplexImpedance;
use crate::io::{read_text, write_atomic, FileError};
use crate::matching::{gamma_chain, tune_gamma, ChainInputs, GammaMatchGeometry};
use crate::plot::{render_polar_svg, PolarScale};

#[derive(Debug, Parser)]
#[command(name = "yagi", version, about = "Yagi-Uda design, simulation and gamma-match toolkit")]
pub struct Cli {
    /// Output file; standard output when omitted.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Suppress informational messages.
    #[arg(long, short, global = true)]
    pub quiet: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a six-element design from a design rule.
    Design(DesignArgs),
    /// Solve a design file with the moment-method solver.
    Simulate(SimulateArgs),
    /// Synthesize a gamma match for a feed impedance.
    Match(MatchArgs),
    /// VSWR, return loss, bandwidth and coverage figures.
    Analyze(AnalyzeArgs),
    /// Jamming range for a gain or a gain pattern.
    Range(RangeArgs),
    /// Pattern CSV statistics and polar plots.
    #[command(subcommand)]
    Pattern(PatternCommand),
}

#[derive(Debug, Args)]
pub struct DesignArgs {
    #[arg(long, default_value_t = 900.0)]
    pub freq_mhz: f64,
    /// balanis, nbs or ycope.
    #[arg(long, default_value = "nbs")]
    pub rule: DesignRule,
    #[arg(long, default_value_t = DEFAULT_DIAMETER_M * 1e3)]
    pub diameter_mm: f64,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// Design JSON written by `design`.
    #[arg(long, value_name = "PATH")]
    pub design: PathBuf,
    /// Segments per element (odd).
    #[arg(long, default_value_t = DEFAULT_SEGMENTS_PER_ELEMENT)]
    pub segments: usize,
    /// Solve frequency; defaults to the design frequency.
    #[arg(long)]
    pub freq_mhz: Option<f64>,
    /// Pattern grid step in degrees.
    #[arg(long, default_value_t = 1.0)]
    pub resolution: f64,
    /// Frequency sweep, start:stop:step in MHz (inclusive).
    #[arg(long, value_name = "START:STOP:STEP")]
    pub sweep: Option<String>,
    #[arg(long, default_value_t = 50.0)]
    pub z_ref: f64,
    /// Write the wire grid as CSV.
    #[arg(long, value_name = "PATH")]
    pub grid_csv: Option<PathBuf>,
    /// Write the azimuth (boom-plane) gain cut as a dBi pattern CSV.
    #[arg(long, value_name = "PATH")]
    pub pattern_csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("feed").required(true).args(["za", "za_file"]))]
pub struct MatchArgs {
    /// Feed impedance, e.g. 24+3.73j.
    #[arg(long, allow_hyphen_values = true)]
    pub za: Option<ComplexImpedance>,
    /// JSON file with an `impedance_ohm` or `zin_ohm` [re, im] entry.
    #[arg(long, value_name = "PATH")]
    pub za_file: Option<PathBuf>,
    /// Driven-element radius.
    #[arg(long)]
    pub a_mm: f64,
    /// Gamma-rod radius.
    #[arg(long)]
    pub arod_mm: f64,
    /// Rod to element centre spacing.
    #[arg(long)]
    pub s_mm: f64,
    /// Rod length in wavelengths; required unless --tune.
    #[arg(long)]
    pub rod_lambda: Option<f64>,
    #[arg(long, default_value_t = 900.0)]
    pub freq_mhz: f64,
    /// Override the current division factor.
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Override the rod line impedance, ohm.
    #[arg(long)]
    pub z0: Option<f64>,
    /// Search the rod length for Re Zin = --target-ohm.
    #[arg(long)]
    pub tune: bool,
    #[arg(long, default_value_t = 50.0)]
    pub target_ohm: f64,
    #[arg(long, default_value_t = 3.0)]
    pub tol_ohm: f64,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    /// Load impedance, e.g. 24+3.73j.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "za_file")]
    pub za: Option<ComplexImpedance>,
    /// JSON file with an `impedance_ohm` or `zin_ohm` [re, im] entry.
    #[arg(long, value_name = "PATH")]
    pub za_file: Option<PathBuf>,
    #[arg(long, default_value_t = 50.0)]
    pub z_ref: f64,
    /// Simulate output containing a sweep.
    #[arg(long, value_name = "PATH")]
    pub sweep_file: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_VSWR_LIMIT)]
    pub vswr_limit: f64,
    /// Jamming-range pattern CSV in metres.
    #[arg(long, value_name = "PATH")]
    pub pattern: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("source").required(true).args(["gain_dbi", "pattern"]))]
pub struct RangeArgs {
    /// Antenna gain toward the target, dBi.
    #[arg(long, allow_hyphen_values = true)]
    pub gain_dbi: Option<f64>,
    /// Gain pattern CSV in dBi; ranges are computed per angle.
    #[arg(long, value_name = "PATH")]
    pub pattern: Option<PathBuf>,
    /// Write the per-angle ranges as a metres pattern CSV.
    #[arg(long, value_name = "PATH", requires = "pattern")]
    pub range_csv: Option<PathBuf>,
    #[arg(long, default_value_t = 2.0)]
    pub n: f64,
    #[arg(long, default_value_t = 30.0, allow_hyphen_values = true)]
    pub eirp_dbm: f64,
    #[arg(long, default_value_t = 900.0)]
    pub freq_mhz: f64,
    /// Fixed threshold; otherwise calibrated on the reference antenna.
    #[arg(long, allow_hyphen_values = true)]
    pub threshold_dbm: Option<f64>,
    #[arg(long, default_value_t = HELIX_GAIN_DBI, allow_hyphen_values = true)]
    pub ref_gain_dbi: f64,
    #[arg(long, default_value_t = HELIX_RANGE_M)]
    pub ref_range_m: f64,
}

#[derive(Debug, Subcommand)]
pub enum PatternCommand {
    Stats(PatternInput),
    Plot(PlotArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum UnitArg {
    Meters,
    Dbi,
}

impl From<UnitArg> for PatternUnit {
    fn from(u: UnitArg) -> Self {
        match u {
            UnitArg::Meters => PatternUnit::Meters,
            UnitArg::Dbi => PatternUnit::Dbi,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScaleArg {
    Linear,
    Db,
}

#[derive(Debug, Args)]
pub struct PatternInput {
    /// Pattern CSV with an `angle_deg,value` header.
    #[arg(long, value_name = "PATH")]
    pub input: PathBuf,
    #[arg(long, value_enum)]
    pub unit: UnitArg,
    /// Label stored with the pattern; defaults to the file name.
    #[arg(long)]
    pub label: Option<String>,
}

#[derive(Debug, Args)]
pub struct PlotArgs {
    #[command(flatten)]
    pub pattern: PatternInput,
    #[arg(long, value_enum, default_value = "linear")]
    pub scale: ScaleArg,
    /// Span of the dB scale below the outer ring.
    #[arg(long, default_value_t = 40.0)]
    pub db_range: f64,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Domain(String),
    #[error(transparent)]
    File(#[from] FileError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(_) | CliError::File(_) => 1,
        }
    }
}

fn domain(e: impl std::fmt::Display) -> CliError {
    CliError::Domain(e.to_string())
}

/// Parses `argv` (including the program name), runs the command and
/// returns the process exit status.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

struct Output<'a> {
    path: Option<&'a Path>,
    quiet: bool,
}

impl Output<'_> {
    fn info(&self, msg: impl std::fmt::Display) {
        if !self.quiet {
            eprintln!("{msg}");
        }
    }

    fn emit(&self, text: &str) -> Result<(), CliError> {
        match self.path {
            Some(p) => {
                write_atomic(p, text.as_bytes())?;
                self.info(format_args!("wrote {}", p.display()));
            }
            None => print!("{text}"),
        }
        Ok(())
    }

    fn emit_json(&self, v: Value) -> Result<(), CliError> {
        let mut text = serde_json::to_string_pretty(&round_json(v)).expect("json value serializes");
        text.push('\n');
        self.emit(&text)
    }

    fn write_side(&self, path: &Path, text: &str) -> Result<(), CliError> {
        write_atomic(path, text.as_bytes())?;
        self.info(format_args!("wrote {}", path.display()));
        Ok(())
    }
}

/// Fails early when an output file could not be created.
fn check_output(path: Option<&Path>) -> Result<(), CliError> {
    let Some(path) = path else { return Ok(()) };
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    if !dir.is_dir() {
        return Err(CliError::File(FileError {
            path: path.to_path_buf(),
            source: std::io::Error::new(std::io::ErrorKind::NotFound, "output directory does not exist"),
        }));
    }
    Ok(())
}

/// Keeps six significant digits in every JSON number.
pub fn round_json(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().expect("f64 number");
            let r: f64 = format!("{x:.5e}").parse().expect("formatted float parses");
            serde_json::Number::from_f64(r).map_or(Value::Null, Value::Number)
        }
        Value::Array(a) => Value::Array(a.into_iter().map(round_json).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, round_json(v))).collect()),
        other => other,
    }
}

fn mhz(x: f64, flag: &str) -> Result<f64, CliError> {
    if x.is_finite() && x > 0.0 {
        Ok(x * 1e6)
    } else {
        Err(CliError::Usage(format!("--{flag} must be a positive number of MHz, got {x}")))
    }
}

/// `start:stop:step` in MHz, inclusive of `stop` when it lies on the grid.
pub fn parse_sweep(spec: &str) -> Result<Vec<f64>, CliError> {
    let bad = |why: &str| CliError::Usage(format!("invalid --sweep '{spec}': {why} (expected START:STOP:STEP in MHz)"));
    let parts: Vec<f64> = spec
        .split(':')
        .map(|p| p.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| bad("not a number"))?;
    let [start, stop, step] = parts[..] else {
        return Err(bad("need three fields"));
    };
    if !(start > 0.0 && stop >= start && step > 0.0 && stop.is_finite() && step.is_finite()) {
        return Err(bad("need 0 < START <= STOP and STEP > 0"));
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
    if count > 10_000 {
        return Err(bad("more than 10000 points"));
    }
    Ok((0..count).map(|i| (start + i as f64 * step) * 1e6).collect())
}

fn load_design(path: &Path) -> Result<YagiDesign, CliError> {
    let design = YagiDesign::from_json(&read_text(path)?).map_err(|e| domain(format!("{}: {e}", path.display())))?;
    let problems = validate_design(&design);
    if !problems.is_empty() {
        let list: Vec<String> = problems.iter().map(ToString::to_string).collect();
        return Err(domain(format!("{}: {}", path.display(), list.join("; "))));
    }
    Ok(design)
}

fn load_impedance(path: &Path) -> Result<ComplexImpedance, CliError> {
    let text = read_text(path)?;
    let v: Value = serde_json::from_str(&text).map_err(|e| domain(format!("{}: {e}", path.display())))?;
    let z = v
        .get("impedance_ohm")
        .or_else(|| v.get("zin_ohm"))
        .ok_or_else(|| domain(format!("{}: no impedance_ohm entry", path.display())))?;
    serde_json::from_value(z.clone()).map_err(|e| domain(format!("{}: impedance_ohm: {e}", path.display())))
}

fn load_pattern(input: &PatternInput) -> Result<RadiationPatternData, CliError> {
    let text = read_text(&input.input)?;
    let label = input
        .label
        .clone()
        .unwrap_or_else(|| input.input.file_stem().map_or_else(String::new, |s| s.to_string_lossy().into_owned()));
    RadiationPatternData::from_csv_str(&text, input.unit.into(), label)
        .map_err(|e| domain(format!("{}: {e}", input.input.display())))
}

fn reflection_json(r: &Reflection) -> Value {
    json!({
        "vswr": r.vswr().ok(),
        "return_loss_db": r.return_loss().ok().and_then(|x| x.db()),
    })
}

fn execute(cli: &Cli) -> Result<(), CliError> {
    let out = Output {
        path: cli.out.as_deref(),
        quiet: cli.quiet,
    };
    check_output(out.path)?;
    match &cli.command {
        Command::Design(a) => cmd_design(a, &out),
        Command::Simulate(a) => cmd_simulate(a, &out),
        Command::Match(a) => cmd_match(a, &out),
        Command::Analyze(a) => cmd_analyze(a, &out),
        Command::Range(a) => cmd_range(a, &out),
        Command::Pattern(PatternCommand::Stats(a)) => cmd_pattern_stats(a, &out),
        Command::Pattern(PatternCommand::Plot(a)) => cmd_pattern_plot(a, &out),
    }
}

fn cmd_design(a: &DesignArgs, out: &Output) -> Result<(), CliError> {
    let f0 = mhz(a.freq_mhz, "freq-mhz")?;
    let design = build_design(a.rule, f0, a.diameter_mm * 1e-3).map_err(domain)?;
    for v in validate_design(&design) {
        out.info(format_args!("warning: {v}"));
    }
    out.emit_json(design.to_json_value())
}

fn cmd_simulate(a: &SimulateArgs, out: &Output) -> Result<(), CliError> {
    check_output(a.grid_csv.as_deref())?;
    check_output(a.pattern_csv.as_deref())?;
    let sweep = a.sweep.as_deref().map(parse_sweep).transpose()?;
    let design = load_design(&a.design)?;
    let f = match a.freq_mhz {
        Some(x) => mhz(x, "freq-mhz")?,
        None => design.plan.f0,
    };

    let sim = simulate(&design, f, a.segments, a.resolution).map_err(domain)?;
    let z = sim.impedance.z;
    let peak = sim.far_field.peak();
    let refl = Reflection::new(z, a.z_ref).map_err(domain)?;
    let mut report = json!({
        "frequency_hz": f,
        "segments_per_element": a.segments,
        "segment_count": sim.grid.len(),
        "impedance_ohm": z,
        "z_ref_ohm": a.z_ref,
        "gain_dbi": peak.gain_dbi,
        "peak_theta_deg": peak.theta_deg,
        "peak_phi_deg": peak.phi_deg,
        "front_to_back_db": sim.far_field.front_to_back_db(),
        "normalization_ratio": sim.far_field.normalization_ratio(),
        "power_balance": sim.far_field.power_balance(),
    });
    let obj = report.as_object_mut().expect("object");
    if let Value::Object(r) = reflection_json(&refl) {
        obj.extend(r);
    }
    out.info(format_args!(
        "Z = {z:.2} ohm, peak gain {:.2} dBi at theta {} phi {}",
        peak.gain_dbi, peak.theta_deg, peak.phi_deg
    ));

    if let Some(freqs) = sweep {
        let points = frequency_sweep(&design, &freqs, a.segments, a.resolution).map_err(domain)?;
        obj.insert("sweep".into(), Value::Array(points.iter().map(sweep_json).collect()));
    }

    if let Some(p) = &a.grid_csv {
        out.write_side(p, &sim.grid.to_csv())?;
    }
    if let Some(p) = &a.pattern_csv {
        let samples = sim
            .far_field
            .azimuth_cut()
            .into_iter()
            .map(|(angle_deg, value)| PatternSample { angle_deg, value })
            .collect();
        let cut = RadiationPatternData::new(samples, PatternUnit::Dbi, "azimuth cut").map_err(domain)?;
        out.write_side(p, &cut.to_csv())?;
    }
    out.emit_json(report)
}

fn sweep_json(p: &SweepPoint) -> Value {
    match &p.outcome {
        Ok(e) => json!({
            "frequency_hz": p.frequency,
            "impedance_ohm": e.impedance.z,
            "gain_dbi": e.peak_gain_dbi,
        }),
        Err(err) => json!({ "frequency_hz": p.frequency, "error": err.to_string() }),
    }
}

fn cmd_match(a: &MatchArgs, out: &Output) -> Result<(), CliError> {
    let za = match (&a.za, &a.za_file) {
        (Some(z), _) => *z,
        (None, Some(p)) => load_impedance(p)?,
        (None, None) => unreachable!("clap enforces the feed group"),
    };
    let f0 = mhz(a.freq_mhz, "freq-mhz")?;
    let rod = match (a.rod_lambda, a.tune) {
        (Some(r), _) => r,
        (None, true) => 0.1,
        (None, false) => return Err(CliError::Usage("--rod-lambda is required unless --tune is given".into())),
    };
    let geom = GammaMatchGeometry {
        a: a.a_mm * 1e-3,
        a_rod: a.arod_mm * 1e-3,
        s: a.s_mm * 1e-3,
        rod_length: rod,
        f0,
    };
    let mut report = if a.tune {
        if a.alpha.is_some() || a.z0.is_some() {
            return Err(CliError::Usage("--alpha/--z0 overrides cannot be combined with --tune".into()));
        }
        let t = tune_gamma(za, &geom, a.target_ohm, a.tol_ohm).map_err(domain)?;
        if !t.converged {
            out.info(format_args!(
                "warning: tuner did not reach {} ohm within {} ohm (best error {:.3} ohm)",
                a.target_ohm, a.tol_ohm, t.error_ohm
            ));
        }
        let mut v = serde_json::to_value(t.solution).expect("solution serializes");
        let obj = v.as_object_mut().expect("object");
        obj.insert("rod_length_lambda".into(), json!(t.rod_length));
        obj.insert(
            "tune".into(),
            json!({ "target_ohm": a.target_ohm, "error_ohm": t.error_ohm, "converged": t.converged }),
        );
        v
    } else {
        let mut inputs = ChainInputs::from_geometry(&geom).map_err(domain)?;
        if let Some(alpha) = a.alpha {
            inputs.alpha = alpha;
        }
        if let Some(z0) = a.z0 {
            inputs.z0_line = z0;
        }
        if !(za.re > 0.0) {
            return Err(domain(format!("feed resistance {} ohm must be positive", za.re)));
        }
        let sol = gamma_chain(za, &inputs).map_err(domain)?;
        let mut v = serde_json::to_value(sol).expect("solution serializes");
        v.as_object_mut()
            .expect("object")
            .insert("rod_length_lambda".into(), json!(rod));
        v
    };
    let obj = report.as_object_mut().expect("object");
    obj.insert("za_ohm".into(), json!(za));
    obj.insert("f0_hz".into(), json!(f0));
    out.emit_json(report)
}

fn cmd_analyze(a: &AnalyzeArgs, out: &Output) -> Result<(), CliError> {
    let za = match (&a.za, &a.za_file) {
        (Some(z), _) => Some(*z),
        (None, Some(p)) => Some(load_impedance(p)?),
        (None, None) => None,
    };
    let sweep_text = a.sweep_file.as_deref().map(read_text).transpose()?;
    let pattern_text = a.pattern.as_deref().map(read_text).transpose()?;
    if za.is_none() && sweep_text.is_none() && pattern_text.is_none() {
        return Err(CliError::Usage(
            "analyze needs at least one of --za, --za-file, --sweep-file, --pattern".into(),
        ));
    }

    let mut report = json!({
        "vswr": null,
        "return_loss_db": null,
        "bandwidth_mhz": null,
        "max_range_m": null,
        "max_range_angle_deg": null,
        "min_range_m": null,
        "min_range_angle_deg": null,
        "mean_range_m": null,
    });
    let obj = report.as_object_mut().expect("object");

    if let Some(z) = za {
        let r = Reflection::new(z, a.z_ref).map_err(domain)?;
        obj.insert("vswr".into(), json!(r.vswr().map_err(domain)?));
        obj.insert("return_loss_db".into(), json!(r.return_loss().map_err(domain)?.db()));
    }

    if let (Some(text), Some(path)) = (sweep_text, &a.sweep_file) {
        let v: Value = serde_json::from_str(&text).map_err(|e| domain(format!("{}: {e}", path.display())))?;
        let entries = v
            .get("sweep")
            .and_then(Value::as_array)
            .ok_or_else(|| domain(format!("{}: no sweep array", path.display())))?;
        let mut pts = Vec::new();
        for e in entries {
            if e.get("error").is_some() {
                continue;
            }
            let f = e.get("frequency_hz").and_then(Value::as_f64);
            let z = e.get("impedance_ohm").cloned().map(serde_json::from_value::<ComplexImpedance>);
            match (f, z) {
                (Some(f), Some(Ok(z))) => pts.push((f, z)),
                _ => return Err(domain(format!("{}: malformed sweep entry {e}", path.display()))),
            }
        }
        let band = bandwidth(&pts, a.z_ref, a.vswr_limit).map_err(domain)?;
        obj.insert("bandwidth_mhz".into(), json!(band.width_hz / 1e6));
    }

    if let (Some(text), Some(path)) = (pattern_text, &a.pattern) {
        let label = path.file_stem().map_or_else(String::new, |s| s.to_string_lossy().into_owned());
        let p = RadiationPatternData::from_csv_str(&text, PatternUnit::Meters, label)
            .map_err(|e| domain(format!("{}: {e}", path.display())))?;
        let st = pattern_stats(&p);
        obj.insert("max_range_m".into(), json!(st.max.value));
        obj.insert("max_range_angle_deg".into(), json!(st.max.angle_deg));
        obj.insert("min_range_m".into(), json!(st.min.value));
        obj.insert("min_range_angle_deg".into(), json!(st.min.angle_deg));
        obj.insert("mean_range_m".into(), json!(st.mean));
    }
    out.emit_json(report)
}

fn cmd_range(a: &RangeArgs, out: &Output) -> Result<(), CliError> {
    check_output(a.range_csv.as_deref())?;
    let f = mhz(a.freq_mhz, "freq-mhz")?;
    let model = match a.threshold_dbm {
        Some(t) => RangeModel::new(a.eirp_dbm, t, a.n, f),
        None => RangeModel::calibrated(a.eirp_dbm, a.n, f, a.ref_gain_dbi, a.ref_range_m),
    }
    .map_err(domain)?;
    let mut report = json!({
        "eirp_dbm": model.eirp_dbm,
        "threshold_dbm": model.threshold_dbm,
        "path_loss_exponent": model.path_loss_exponent,
        "frequency_hz": model.frequency,
    });
    let obj = report.as_object_mut().expect("object");

    if let Some(g) = a.gain_dbi {
        let r = jamming_range(&model, g).map_err(domain)?;
        if r.below_reference {
            out.info("warning: range is inside the 1 m reference distance");
        }
        obj.insert("gain_dbi".into(), json!(g));
        obj.insert("range_m".into(), json!(r.range_m));
        obj.insert("below_reference".into(), json!(r.below_reference));
        obj.insert(
            "ratio_to_reference".into(),
            json!(range_ratio(a.ref_gain_dbi, g, a.n).map_err(domain)?),
        );
    }

    if let Some(path) = &a.pattern {
        let gain = load_pattern(&PatternInput {
            input: path.clone(),
            unit: UnitArg::Dbi,
            label: None,
        })?;
        let mut samples = Vec::with_capacity(gain.samples().len());
        for s in gain.samples() {
            let r = jamming_range(&model, s.value).map_err(domain)?;
            samples.push(PatternSample {
                angle_deg: s.angle_deg,
                value: r.range_m,
            });
        }
        let ranges =
            RadiationPatternData::new(samples, PatternUnit::Meters, format!("range from {}", gain.label())).map_err(domain)?;
        let st = pattern_stats(&ranges);
        obj.insert("max_range_m".into(), json!(st.max.value));
        obj.insert("max_range_angle_deg".into(), json!(st.max.angle_deg));
        obj.insert("min_range_m".into(), json!(st.min.value));
        obj.insert("min_range_angle_deg".into(), json!(st.min.angle_deg));
        obj.insert("mean_range_m".into(), json!(st.mean));
        if let Some(p) = &a.range_csv {
            out.write_side(p, &ranges.to_csv())?;
        }
    }
    out.emit_json(report)
}

fn cmd_pattern_stats(a: &PatternInput, out: &Output) -> Result<(), CliError> {
    let p = load_pattern(a)?;
    let st = pattern_stats(&p);
    out.emit_json(json!({
        "label": p.label(),
        "unit": p.unit(),
        "samples": p.samples().len(),
        "max_value": st.max.value,
        "max_angle_deg": st.max.angle_deg,
        "min_value": st.min.value,
        "min_angle_deg": st.min.angle_deg,
        "mean": st.mean,
        "front_to_back_db": st.front_to_back_db,
    }))
}

fn cmd_pattern_plot(a: &PlotArgs, out: &Output) -> Result<(), CliError> {
    let p = load_pattern(&a.pattern)?;
    let scale = match a.scale {
        ScaleArg::Linear => PolarScale::Linear,
        ScaleArg::Db => PolarScale::Db { range_db: a.db_range },
    };
    let svg = render_polar_svg(&p, scale).map_err(domain)?;
    out.emit(&svg)
}
