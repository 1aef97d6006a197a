//! Command implementations behind the `dpbound` binary.
//!
//! Every command writes its result either to stdout or to a file. Reals
//! are printed with 17 significant digits, so tables can be read back
//! without loss.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use dpbound::analytic::{
    constant_field_closed_form, constant_field_levels_for, critical_state, linear_field_closed_form,
    linear_field_levels, CriticalOutcome,
};
use dpbound::numeric::{scan_states, spectrum_scan, ShootingConfig};
use dpbound::{
    make_field_profile, units, verify, Degeneracy, EnergyLevel, EnergySign, Error, FieldProfile, FieldShape, Kind,
    LevelLabel, ParticleParams, ParticleSpec, ProfileSpec, QuantumNumbers, RadialSolution,
};

/// Overrides the directory that relative `--output` paths resolve against.
/// With no `--output`, results go to `<dir>/<command>.<format>`.
pub const OUTPUT_DIR_ENV: &str = "DPBOUND_OUTPUT_DIR";

pub const EXIT_PARSE: i32 = 2;
pub const EXIT_SOLVER: i32 = 3;
pub const EXIT_VERIFY: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "dpbound", version, about = "Bound states of a neutral fermion with a magnetic moment in a central electric field")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Energy levels of one (kind, l) channel.
    Spectrum(SpectrumArgs),
    /// Normalized radial wavefunction (r, u, v).
    Wavefunction(WavefunctionArgs),
    /// The zero mode at E = +-m, or why it is not normalizable.
    Critical(CriticalArgs),
    /// Angular identities and numeric-versus-closed-form checks.
    Verify(VerifyArgs),
    /// SI length scales of the ground state.
    Estimate(EstimateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    fn ext(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Closed forms when the profile has them, shooting otherwise.
    Auto,
    Analytic,
    Numeric,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Output file; stdout when absent.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct SystemArgs {
    /// Inline profile (`constant:E0=1`, `inverse_r:kappa=2,core_radius=0.5`)
    /// or a TOML/JSON file.
    #[arg(long)]
    pub profile: String,
    /// `m=<mass>,mu=<moment>` or a preset name.
    #[arg(long)]
    pub particle: Option<String>,
    /// Preset particle name.
    #[arg(long, conflicts_with = "particle")]
    pub preset: Option<String>,
}

#[derive(Debug, Args)]
pub struct SolverArgs {
    #[arg(long, value_enum, default_value = "auto")]
    pub method: Method,
    /// Inner radius of the shooting grid.
    #[arg(long)]
    pub r_min: Option<f64>,
    /// Outer radius of the shooting grid.
    #[arg(long)]
    pub r_max: Option<f64>,
    /// Energy scan mesh density, points per unit of mass.
    #[arg(long)]
    pub mesh: Option<f64>,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    #[arg(long, default_value = "plus")]
    pub kind: Kind,
    #[arg(long, default_value_t = 0)]
    pub l: u32,
    /// Energy window `lo:hi`; required for shooting.
    #[arg(long, value_parser = parse_window)]
    pub window: Option<(f64, f64)>,
    /// Largest radial (or principal) index listed by closed forms.
    #[arg(long, default_value_t = 20)]
    pub n_max: u32,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct WavefunctionArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    #[arg(long, default_value = "plus")]
    pub kind: Kind,
    #[arg(long, default_value_t = 0)]
    pub l: u32,
    #[arg(long, default_value_t = 0)]
    pub n_r: u32,
    /// Sign of the energy.
    #[arg(long, default_value = "positive")]
    pub branch: EnergySign,
    /// Energy window searched by the shooting method.
    #[arg(long, value_parser = parse_window)]
    pub window: Option<(f64, f64)>,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

impl WavefunctionArgs {
    fn branch_name(&self) -> &'static str {
        match self.branch {
            EnergySign::Positive => "positive",
            EnergySign::Negative => "negative",
        }
    }
}

#[derive(Debug, Args)]
pub struct CriticalArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    #[arg(long, default_value_t = 0)]
    pub l: u32,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Largest l in the angular checks.
    #[arg(long, default_value_t = 6)]
    pub l_max: u32,
    /// Largest l and n_r in the shooting checks.
    #[arg(long, default_value_t = 2)]
    pub index_max: u32,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct EstimateArgs {
    /// Preset particle (`neutron`).
    #[arg(long)]
    pub preset: Option<String>,
    /// Magnetic moment in J/T.
    #[arg(long, conflicts_with = "preset")]
    pub moment: Option<f64>,
    /// Radially constant field in V/m.
    #[arg(long)]
    pub constant_field: Option<f64>,
    /// Uniform charge density in C/m^3 (radially linear field).
    #[arg(long)]
    pub charge_density: Option<f64>,
    /// Use the atomic charge density e / a0^3.
    #[arg(long, conflicts_with = "charge_density")]
    pub atomic_density: bool,
    #[command(flatten)]
    pub out: OutputArgs,
}

fn parse_window(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = s.split_once(':').ok_or_else(|| format!("expected lo:hi, got {s:?}"))?;
    let lo: f64 = a.trim().parse().map_err(|e| format!("bad lower bound {a:?}: {e}"))?;
    let hi: f64 = b.trim().parse().map_err(|e| format!("bad upper bound {b:?}: {e}"))?;
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(format!("window must satisfy lo < hi, got {s:?}"));
    }
    Ok((lo, hi))
}

/// A failed invocation with its exit status.
#[derive(Debug, thiserror::Error)]
#[error("{message}")]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn parse(message: impl Into<String>) -> Self {
        Self { code: EXIT_PARSE, message: message.into() }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_)
            | Error::InvalidParticle(_)
            | Error::InvalidProfile(_)
            | Error::InvalidQuantumNumbers(_)
            | Error::InvalidInput(_)
            | Error::InvalidConfig(_)
            | Error::NonMonotonicGrid { .. }
            | Error::NonPositiveRadius(_)
            | Error::InconsistentInit(_) => EXIT_PARSE,
            _ => EXIT_SOLVER,
        };
        Self { code, message: e.to_string() }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Formats a real with 17 significant digits.
pub fn real(x: f64) -> String {
    format!("{x:.16e}")
}

/// One row of a level table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LevelRecord {
    pub value: f64,
    pub kind: Kind,
    pub l: u32,
    pub n_r: u32,
    pub degeneracy: Degeneracy,
    pub source: &'static str,
}

/// Level table columns.
pub const LEVEL_HEADER: &str = "value,kind,l,n_r,degeneracy,source";
/// Wavefunction table columns.
pub const WAVE_HEADER: &str = "r,u,v";

impl LevelRecord {
    /// Row for channel `l`; `None` if the level has no state with this `l`.
    pub fn from_level(level: &EnergyLevel<f64>, l: u32) -> Option<Self> {
        let n_r = match level.label {
            LevelLabel::Radial { n_r, .. } | LevelLabel::AnyL { n_r } => n_r,
            LevelLabel::Principal { n } => n.checked_sub(l)?,
        };
        Some(Self {
            value: level.value,
            kind: level.kind,
            l,
            n_r,
            degeneracy: level.degeneracy,
            source: level.source.as_str(),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
struct Sample {
    r: f64,
    u: f64,
    v: f64,
}

fn json_text<S: Serialize>(value: &S) -> CliResult<String> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| CliError { code: 1, message: e.to_string() })?;
    s.push('\n');
    Ok(s)
}

pub fn levels_text(rows: &[LevelRecord], format: Format) -> CliResult<String> {
    match format {
        Format::Json => json_text(&rows),
        Format::Csv => {
            let mut s = String::from(LEVEL_HEADER);
            s.push('\n');
            for r in rows {
                let _ = writeln!(s, "{},{},{},{},{},{}", real(r.value), r.kind, r.l, r.n_r, r.degeneracy, r.source);
            }
            Ok(s)
        }
    }
}

pub fn wavefunction_text(sol: &RadialSolution<f64>, format: Format) -> CliResult<String> {
    match format {
        Format::Json => {
            let rows: Vec<Sample> = (0..sol.len()).map(|i| Sample { r: sol.grid[i], u: sol.u[i], v: sol.v[i] }).collect();
            json_text(&rows)
        }
        Format::Csv => {
            let mut s = String::from(WAVE_HEADER);
            s.push('\n');
            for i in 0..sol.len() {
                let _ = writeln!(s, "{},{},{}", real(sol.grid[i]), real(sol.u[i]), real(sol.v[i]));
            }
            Ok(s)
        }
    }
}

/// Reads an `r,u,v` table back.
pub fn read_wavefunction_csv(text: &str) -> CliResult<Vec<(f64, f64, f64)>> {
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h.trim() == WAVE_HEADER => {}
        other => return Err(CliError::parse(format!("expected header {WAVE_HEADER:?}, got {other:?}"))),
    }
    lines
        .filter(|l| !l.trim().is_empty())
        .map(|line| {
            let cols: Vec<f64> = line
                .split(',')
                .map(|c| c.trim().parse::<f64>().map_err(|e| CliError::parse(format!("{line:?}: {e}"))))
                .collect::<CliResult<_>>()?;
            match cols[..] {
                [r, u, v] => Ok((r, u, v)),
                _ => Err(CliError::parse(format!("expected 3 columns: {line:?}"))),
            }
        })
        .collect()
}

fn load_profile(text: &str) -> CliResult<ProfileSpec> {
    let path = Path::new(text);
    let spec = if path.is_file() { ProfileSpec::load(path)? } else { ProfileSpec::from_inline(text)? };
    Ok(spec)
}

struct System {
    spec: ProfileSpec,
    profile: FieldProfile<f64>,
    particle: ParticleParams<f64>,
}

fn load_system(args: &SystemArgs) -> CliResult<System> {
    let spec = load_profile(&args.profile)?;
    let pspec = match (&args.particle, &args.preset, &spec.particle) {
        (Some(text), _, _) => ParticleSpec::from_inline(text)?,
        (None, Some(name), _) => ParticleSpec::Preset(name.clone()),
        (None, None, Some(p)) => p.clone(),
        (None, None, None) => return Err(CliError::parse("no particle: pass --particle or --preset")),
    };
    let profile = make_field_profile::<f64>(&spec)?;
    let particle = pspec.build::<f64>()?;
    Ok(System { spec, profile, particle })
}

fn shooting_config(args: &SolverArgs) -> CliResult<ShootingConfig<f64>> {
    let mut cfg = ShootingConfig::default();
    if let Some(r) = args.r_min {
        cfg.r_min = r;
    }
    cfg.r_max = args.r_max;
    if let Some(m) = args.mesh {
        cfg.mesh_per_unit = m;
    }
    cfg.validate()?;
    Ok(cfg)
}

enum ClosedFamily {
    Constant(f64),
    Linear(f64),
}

fn closed_family(sys: &System, method: Method) -> CliResult<Option<ClosedFamily>> {
    let fam = if sys.spec.magnetic.is_some() {
        None
    } else {
        match sys.profile.electric() {
            FieldShape::Constant { e0 } => Some(ClosedFamily::Constant(*e0)),
            FieldShape::Linear { beta } => Some(ClosedFamily::Linear(*beta)),
            _ => None,
        }
    };
    match method {
        Method::Numeric => Ok(None),
        Method::Auto => Ok(fam),
        Method::Analytic => fam
            .map(Some)
            .ok_or_else(|| CliError::parse("closed forms exist only for constant and linear fields without B")),
    }
}

fn reject_magnetic(sys: &System) -> CliResult<()> {
    if sys.spec.magnetic.is_some() {
        return Err(CliError::parse("a magnetic field couples the kinds; only the decoupled system is solved here"));
    }
    Ok(())
}

fn in_window(x: f64, w: Option<(f64, f64)>) -> bool {
    w.map_or(true, |(lo, hi)| lo <= x && x <= hi)
}

fn spectrum(args: &SpectrumArgs) -> CliResult<String> {
    let sys = load_system(&args.system)?;
    reject_magnetic(&sys)?;
    let levels: Vec<EnergyLevel<f64>> = match closed_family(&sys, args.solver.method)? {
        Some(ClosedFamily::Constant(e0)) => {
            constant_field_levels_for(&sys.particle, e0, args.kind, args.l, args.n_max)?.levels
        }
        Some(ClosedFamily::Linear(beta)) => linear_field_levels(&sys.particle, beta, args.kind, args.n_max)?.levels,
        None => {
            let window = args.window.ok_or_else(|| CliError::parse("shooting needs --window lo:hi"))?;
            let cfg = shooting_config(&args.solver)?;
            spectrum_scan(&sys.profile, &sys.particle, args.kind, args.l, window, &cfg)?
        }
    };
    let mut rows: Vec<LevelRecord> = levels
        .iter()
        .filter(|lv| in_window(lv.value, args.window))
        .filter_map(|lv| LevelRecord::from_level(lv, args.l))
        .collect();
    rows.sort_by(|a, b| a.value.total_cmp(&b.value));
    levels_text(&rows, args.out.format)
}

fn wavefunction(args: &WavefunctionArgs) -> CliResult<String> {
    let sys = load_system(&args.system)?;
    reject_magnetic(&sys)?;
    let q = QuantumNumbers::radial(args.kind, args.l, args.n_r);
    let sol = match closed_family(&sys, args.solver.method)? {
        Some(ClosedFamily::Constant(e0)) => {
            constant_field_closed_form(&sys.particle, e0, q, args.branch)?.sample_default()?
        }
        Some(ClosedFamily::Linear(beta)) => {
            linear_field_closed_form(&sys.particle, beta, q, args.branch)?.sample_default()?
        }
        None => {
            let window = args.window.ok_or_else(|| CliError::parse("shooting needs --window lo:hi"))?;
            let cfg = shooting_config(&args.solver)?;
            let states = scan_states(&sys.profile, &sys.particle, args.kind, args.l, window, &cfg)?;
            states
                .into_iter()
                .find(|s| s.n_r == args.n_r && EnergySign::of(s.energy) == args.branch)
                .map(|s| s.solution)
                .ok_or_else(|| CliError {
                    code: EXIT_SOLVER,
                    message: format!(
                        "no {} state with n_r = {} on the {} branch in [{}, {}]",
                        args.kind, args.n_r, args.branch_name(), window.0, window.1
                    ),
                })?
        }
    };
    wavefunction_text(&sol, args.out.format)
}

#[derive(Serialize)]
struct CriticalReport<'a> {
    status: &'a str,
    kind: Kind,
    energy: f64,
    l: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<&'a str>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    samples: Vec<Sample>,
}

fn critical(args: &CriticalArgs) -> CliResult<String> {
    let sys = load_system(&args.system)?;
    match critical_state(&sys.profile, &sys.particle, args.l)? {
        CriticalOutcome::Bound(sol) => match args.out.format {
            Format::Csv => wavefunction_text(&sol, Format::Csv),
            Format::Json => json_text(&CriticalReport {
                status: "bound",
                kind: sol.kind,
                energy: sol.energy,
                l: sol.l,
                reason: None,
                samples: (0..sol.len()).map(|i| Sample { r: sol.grid[i], u: sol.u[i], v: sol.v[i] }).collect(),
            }),
        },
        CriticalOutcome::NotNormalizable { kind, energy, l, reason } => match args.out.format {
            Format::Csv => Ok(format!(
                "status,kind,energy,l,reason\nNotNormalizable,{kind},{},{l},\"{}\"\n",
                real(energy),
                reason.replace('"', "'")
            )),
            Format::Json => {
                json_text(&CriticalReport { status: "NotNormalizable", kind, energy, l, reason: Some(&reason), samples: vec![] })
            }
        },
    }
}

/// Text and whether every check passed.
fn verify_cmd(args: &VerifyArgs) -> CliResult<(String, bool)> {
    let mut reports = verify::angular_suite(args.l_max);
    reports.extend(verify::constant_field_suite(args.index_max, args.index_max));
    reports.extend(verify::linear_field_suite(args.index_max, args.index_max));
    let ok = reports.iter().all(|r| r.passed);
    let text = match args.out.format {
        Format::Json => json_text(&reports)?,
        Format::Csv => {
            let mut s = String::from("status,check,max_error,tolerance\n");
            for r in &reports {
                let status = if r.passed { "PASS" } else { "FAIL" };
                let _ = writeln!(s, "{status},{},{},{}", r.name, real(r.max_error), real(r.tolerance));
            }
            s
        }
    };
    Ok((text, ok))
}

#[derive(Serialize)]
struct Estimate {
    field: &'static str,
    input: f64,
    moment: f64,
    length_m: f64,
}

fn estimate(args: &EstimateArgs) -> CliResult<String> {
    let moment = match (&args.preset, args.moment) {
        (_, Some(m)) => m,
        (Some(name), None) if name.eq_ignore_ascii_case("neutron") => units::NEUTRON_MOMENT_SI,
        (Some(name), None) => return Err(CliError::parse(format!("unknown preset {name:?}"))),
        (None, None) => return Err(CliError::parse("pass --preset or --moment")),
    };
    let density = if args.atomic_density { Some(units::atomic_charge_density()) } else { args.charge_density };
    let mut out = Vec::new();
    if let Some(e) = args.constant_field {
        let length_m = units::estimate_bohr_radius_constant(moment, e)?;
        out.push(Estimate { field: "constant", input: e, moment, length_m });
    }
    if let Some(rho) = density {
        let length_m = units::estimate_bohr_radius_linear(moment, rho)?;
        out.push(Estimate { field: "linear", input: rho, moment, length_m });
    }
    if out.is_empty() {
        return Err(CliError::parse("pass --constant-field, --charge-density or --atomic-density"));
    }
    match args.out.format {
        Format::Json => json_text(&out),
        Format::Csv => Ok(out.iter().map(|e| format!("{:.1e} m\n", e.length_m)).collect()),
    }
}

/// Where a command's output goes.
pub fn output_target(out: &OutputArgs, command: &str, env_dir: Option<&Path>) -> Option<PathBuf> {
    match (&out.output, env_dir) {
        (Some(p), Some(dir)) if p.is_relative() => Some(dir.join(p)),
        (Some(p), _) => Some(p.clone()),
        (None, Some(dir)) => Some(dir.join(format!("{command}.{}", out.format.ext()))),
        (None, None) => None,
    }
}

fn emit(text: &str, out: &OutputArgs, command: &str) -> CliResult<()> {
    let env_dir = std::env::var_os(OUTPUT_DIR_ENV).map(PathBuf::from);
    match output_target(out, command, env_dir.as_deref()) {
        Some(path) => {
            if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
                std::fs::create_dir_all(parent)
                    .map_err(|e| CliError { code: 1, message: format!("{}: {e}", parent.display()) })?;
            }
            std::fs::write(&path, text).map_err(|e| CliError { code: 1, message: format!("{}: {e}", path.display()) })
        }
        None => {
            use std::io::Write;
            match std::io::stdout().lock().write_all(text.as_bytes()) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(CliError { code: 1, message: e.to_string() }),
                _ => Ok(()),
            }
        }
    }
}

/// Runs one command and returns the process exit status.
pub fn run(cli: &Cli) -> CliResult<i32> {
    match &cli.command {
        Command::Spectrum(a) => emit(&spectrum(a)?, &a.out, "spectrum")?,
        Command::Wavefunction(a) => emit(&wavefunction(a)?, &a.out, "wavefunction")?,
        Command::Critical(a) => emit(&critical(a)?, &a.out, "critical")?,
        Command::Estimate(a) => emit(&estimate(a)?, &a.out, "estimate")?,
        Command::Verify(a) => {
            let (text, ok) = verify_cmd(a)?;
            emit(&text, &a.out, "verify")?;
            if !ok {
                return Ok(EXIT_VERIFY);
            }
        }
    }
    Ok(0)
}
