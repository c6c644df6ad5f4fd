//! The `inflecta` command line: `field`, `slice`, `compare` and `selftest`.
//!
//! Exit codes: 0 success, 1 a numerical gate failed (or a computation could
//! not be completed), 2 usage error.

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use crate::asymptotics::{abs_outer_bright, abs_outer_dark, asym_incoming, asymptotic_estimate};
use crate::pde::{initial_line, march_popov, MarchConfig};
use crate::selftest::{format_report, run_selftest};
use crate::wavefield::{
    eval_a, eval_a_direct_lambda, eval_split, grid_eval, regime_quantities, AxisSpec, FieldGrid, FieldMode,
    Frame, LambdaOracleOptions, WaveError, DEFAULT_GRID_TOL, DEFAULT_POINT_TOL,
};

/// Environment variable that replaces the default tolerance; `--tol` wins.
pub const TOL_ENV: &str = "INFLECTA_SEED_TOL";

#[derive(Debug, Parser)]
#[command(name = "inflecta", version, about = "Inflection-point caustic wavefield: integrals, asymptotics, PDE check")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample |A| (or the parabolic/Cartesian field) on a grid.
    Field(FieldArgs),
    /// Numerical |A| against the asymptotic forms along a line of fixed S.
    Slice(SliceArgs),
    /// Agreement of the independent evaluation routes on a lattice.
    Compare(CompareArgs),
    /// Built-in checks.
    Selftest(SelftestArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Curvature parameter, decimal or rational such as 4/9.
    #[arg(long, default_value = "4/9", value_parser = parse_gamma)]
    pub gamma: Gamma,
    /// Relative quadrature tolerance.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Worker threads; output does not depend on it.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    /// Output file (stdout when absent). A manifest is written next to it.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

/// `γ` with the text it was given as.
#[derive(Debug, Clone, PartialEq)]
pub struct Gamma {
    pub text: String,
    pub value: f64,
}

pub fn parse_gamma(s: &str) -> Result<Gamma, String> {
    let t = s.trim();
    let value = match t.split_once('/') {
        Some((p, q)) => {
            let p: f64 = p.trim().parse().map_err(|_| format!("bad numerator in '{s}'"))?;
            let q: f64 = q.trim().parse().map_err(|_| format!("bad denominator in '{s}'"))?;
            p / q
        }
        None => t.parse().map_err(|_| format!("bad gamma '{s}'"))?,
    };
    if !(value > 0.0 && value.is_finite()) {
        return Err(format!("gamma must be positive and finite, got '{s}'"));
    }
    Ok(Gamma { text: t.to_string(), value })
}

#[derive(Debug, Clone, Args)]
pub struct FieldArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, default_value = "sn")]
    pub frame: Frame,
    /// S range min:max:count (frame sn).
    #[arg(long, allow_hyphen_values = true)]
    pub s: Option<AxisSpec>,
    /// N range (frame sn).
    #[arg(long, allow_hyphen_values = true)]
    pub n: Option<AxisSpec>,
    /// X or x range (frames xy, cartesian).
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<AxisSpec>,
    /// Y or y range (frames xy, cartesian).
    #[arg(long, allow_hyphen_values = true)]
    pub y: Option<AxisSpec>,
    /// Carrier wavenumber; turns the xy frame into the Cartesian field.
    #[arg(long)]
    pub k: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct SliceArgs {
    #[command(flatten)]
    pub common: Common,
    /// The fixed S.
    #[arg(long, allow_hyphen_values = true)]
    pub s: f64,
    /// Parametrize by N.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "khat")]
    pub n: Option<AxisSpec>,
    /// Parametrize by K̂ = N/S − γS²/3.
    #[arg(long, allow_hyphen_values = true)]
    pub khat: Option<AxisSpec>,
}

#[derive(Debug, Clone, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, allow_hyphen_values = true, default_value = "-4:4:5")]
    pub s: AxisSpec,
    #[arg(long, allow_hyphen_values = true, default_value = "-4:4:5")]
    pub n: AxisSpec,
    /// Largest pairwise relative discrepancy allowed.
    #[arg(long, default_value_t = 1e-6)]
    pub gate: f64,
    /// Also march the PDE from S = −8 and compare |A| at S = 8 for each N.
    #[arg(long)]
    pub include_pde: bool,
    /// Gate for the march comparison.
    #[arg(long, default_value_t = 0.02)]
    pub pde_gate: f64,
}

#[derive(Debug, Clone, Args)]
pub struct SelftestArgs {
    /// Perturb the named check (test hook).
    #[arg(long, hide = true)]
    pub inject_fault: Option<String>,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Gate(String),
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Gate(_) | CliError::Failed(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Gate(m) => write!(f, "gate failed: {m}"),
            CliError::Failed(m) => write!(f, "error: {m}"),
        }
    }
}

impl From<WaveError> for CliError {
    fn from(e: WaveError) -> Self {
        match e {
            WaveError::InvalidArgument(m) => CliError::Usage(m),
            other => CliError::Failed(other.to_string()),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Failed(e.to_string())
    }
}

/// Sidecar written next to every data file.
#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    /// Canonical arguments; re-running them reproduces the data file.
    pub args: Vec<String>,
    pub version: String,
    pub timestamp_unix: u64,
    pub data_file: String,
    pub samples: usize,
    pub unconverged: usize,
    pub unconverged_points: Vec<[f64; 3]>,
}

/// Parses `std::env::args`, runs, and returns the process exit code.
pub fn main_from_env() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match run(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("inflecta: {e}");
            e.exit_code()
        }
    }
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Field(a) => cmd_field(&a),
        Command::Slice(a) => cmd_slice(&a),
        Command::Compare(a) => cmd_compare(&a),
        Command::Selftest(a) => cmd_selftest(&a),
    }
}

/// `--tol`, else the environment variable, else `default`.
pub fn resolve_tol(flag: Option<f64>, default: f64) -> Result<f64, CliError> {
    let tol = match flag {
        Some(t) => t,
        None => match std::env::var(TOL_ENV) {
            Ok(v) => v
                .trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("{TOL_ENV}='{v}' is not a number")))?,
            Err(_) => default,
        },
    };
    if !(1e-13..=1e-2).contains(&tol) {
        return Err(CliError::Usage(format!("tolerance {tol:e} outside [1e-13, 1e-2]")));
    }
    Ok(tol)
}

fn common_args(c: &Common, tol: f64) -> Vec<String> {
    vec!["--gamma".into(), c.gamma.text.clone(), "--tol".into(), format!("{tol:e}")]
}

fn axis_arg(flag: &str, a: &AxisSpec) -> [String; 2] {
    [flag.to_string(), format!("{}:{}:{}", a.min, a.max, a.count)]
}

fn now_unix() -> u64 {
    std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

pub fn manifest_path(output: &Path) -> PathBuf {
    let mut name = output.as_os_str().to_owned();
    name.push(".manifest.json");
    PathBuf::from(name)
}

/// Writes `data` to `--output` (with its manifest) or to stdout.
fn emit(
    common: &Common,
    command: &str,
    args: Vec<String>,
    data: &[u8],
    samples: usize,
    issues: Vec<[f64; 3]>,
) -> Result<(), CliError> {
    match &common.output {
        None => {
            io::stdout().write_all(data)?;
        }
        Some(path) => {
            fs::write(path, data)?;
            let m = RunManifest {
                command: command.to_string(),
                args,
                version: env!("CARGO_PKG_VERSION").to_string(),
                timestamp_unix: now_unix(),
                data_file: path.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default(),
                samples,
                unconverged: issues.len(),
                unconverged_points: issues,
            };
            let json = serde_json::to_string_pretty(&m).map_err(|e| CliError::Failed(e.to_string()))?;
            fs::write(manifest_path(path), json + "\n")?;
        }
    }
    Ok(())
}

fn report_unconverged(n: usize) {
    if n > 0 {
        eprintln!("inflecta: {n} samples did not reach the requested tolerance");
    }
}

pub fn cmd_field(a: &FieldArgs) -> Result<(), CliError> {
    let tol = resolve_tol(a.common.tol, DEFAULT_GRID_TOL)?;
    let gamma = a.common.gamma.value;
    let usage = |m: &str| Err(CliError::Usage(m.to_string()));
    let (frame, ax1, ax2, mode) = match a.frame {
        Frame::Sn => {
            if a.x.is_some() || a.y.is_some() || a.k.is_some() {
                return usage("frame sn takes --s and --n only");
            }
            match (a.s, a.n) {
                (Some(s), Some(n)) => (Frame::Sn, s, n, FieldMode::A),
                _ => return usage("frame sn needs --s and --n"),
            }
        }
        Frame::Xy | Frame::Cartesian => {
            if a.s.is_some() || a.n.is_some() {
                return usage("frames xy and cartesian take --x and --y");
            }
            let (Some(x), Some(y)) = (a.x, a.y) else {
                return usage("frames xy and cartesian need --x and --y");
            };
            match (a.frame, a.k) {
                (_, Some(k)) if !(k > 0.0 && k.is_finite()) => return usage("--k must be positive"),
                (_, Some(k)) => (Frame::Cartesian, x, y, FieldMode::Cartesian { k }),
                (Frame::Xy, None) => (Frame::Xy, x, y, FieldMode::A32),
                _ => return usage("frame cartesian needs --k"),
            }
        }
    };
    let grid = grid_eval(frame, ax1, ax2, gamma, mode, tol, a.common.jobs)?;
    let mut buf = Vec::new();
    grid.write_csv(&mut buf)?;

    let mut args = vec!["field".to_string(), "--frame".into(), frame.to_string()];
    args.extend(common_args(&a.common, tol));
    let (f1, f2) = if frame == Frame::Sn { ("--s", "--n") } else { ("--x", "--y") };
    args.extend(axis_arg(f1, &ax1));
    args.extend(axis_arg(f2, &ax2));
    if let Some(k) = a.k {
        args.extend(["--k".to_string(), format!("{k}")]);
    }
    report_unconverged(grid.unconverged.len());
    emit(&a.common, "field", args, &buf, grid.samples.len(), issues(&grid))
}

fn issues(grid: &FieldGrid) -> Vec<[f64; 3]> {
    grid.unconverged.iter().map(|u| [u.coord1, u.coord2, u.error_estimate]).collect()
}

/// Runs `f(0..count)` on `jobs` threads and returns the results in index order.
fn par_indexed<T, F>(count: usize, jobs: usize, f: F) -> Result<Vec<T>, CliError>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    use rayon::prelude::*;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| CliError::Failed(format!("thread pool: {e}")))?;
    Ok(pool.install(|| (0..count).into_par_iter().map(f).collect()))
}

fn fmt(x: f64) -> String {
    if x.is_nan() {
        "NaN".into()
    } else {
        crate::wavefield::fmt_num(x)
    }
}

/// One row of a slice.
#[derive(Debug, Clone, PartialEq)]
pub struct SliceRow {
    pub param: f64,
    pub n: f64,
    pub value: Complex64,
    pub converged: bool,
    pub asym_abs: f64,
    pub regime: &'static str,
    pub airy: f64,
    pub dark: f64,
    pub bright: f64,
    pub fresnel: f64,
}

impl SliceRow {
    pub fn rel_dev(&self) -> f64 {
        (self.value.norm() - self.asym_abs).abs() / self.asym_abs
    }
}

/// Evaluates one slice point; `n` is the absolute `N`.
pub fn slice_row(s: f64, param: f64, n: f64, gamma: f64, tol: f64) -> Result<SliceRow, WaveError> {
    let e = eval_a(s, n, gamma, tol)?;
    let q = regime_quantities(s, n, gamma);
    let (asym_abs, regime) = match asymptotic_estimate(s, n, gamma) {
        Ok(est) => (est.magnitude(), est.regime.tag()),
        Err(_) => (f64::NAN, "none"),
    };
    let nan = f64::NAN;
    let (mut airy, mut dark, mut bright, mut fresnel) = (nan, nan, nan, nan);
    if s < 0.0 {
        airy = asym_incoming(s, n, gamma).map(f64::abs).unwrap_or(nan);
    } else if s > 0.0 {
        let khat = q.khat.expect("S > 0");
        let k = q.k.expect("S > 0");
        fresnel = (2.0 * std::f64::consts::PI / s).sqrt();
        if khat >= 0.0 {
            dark = abs_outer_dark(s, khat, gamma);
        }
        if k <= 0.0 {
            bright = abs_outer_bright(s, k, gamma).unwrap_or(nan);
        }
    }
    Ok(SliceRow { param, n, value: e.value, converged: e.converged, asym_abs, regime, airy, dark, bright, fresnel })
}

/// Slice CSV: a three-line header (`param,gamma,s`, its values, column
/// names) then one row per point. Overlay columns are `NaN` where the form
/// does not apply.
pub fn write_slice_csv<W: Write>(mut w: W, param: &str, gamma: f64, s: f64, rows: &[SliceRow]) -> io::Result<()> {
    writeln!(w, "param,gamma,s")?;
    writeln!(w, "{param},{},{}", fmt(gamma), fmt(s))?;
    writeln!(w, "param,n,re,im,abs,asym_abs,regime,rel_dev,airy,dark,bright,fresnel")?;
    for r in rows {
        writeln!(
            w,
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            fmt(r.param),
            fmt(r.n),
            fmt(r.value.re),
            fmt(r.value.im),
            fmt(r.value.norm()),
            fmt(r.asym_abs),
            r.regime,
            fmt(r.rel_dev()),
            fmt(r.airy),
            fmt(r.dark),
            fmt(r.bright),
            fmt(r.fresnel)
        )?;
    }
    Ok(())
}

pub fn cmd_slice(a: &SliceArgs) -> Result<(), CliError> {
    let tol = resolve_tol(a.common.tol, DEFAULT_POINT_TOL)?;
    let gamma = a.common.gamma.value;
    let s = a.s;
    if !s.is_finite() {
        return Err(CliError::Usage("--s must be finite".into()));
    }
    let (name, axis) = match (a.n, a.khat) {
        (Some(n), None) => ("n", n),
        (None, Some(k)) => {
            if s == 0.0 {
                return Err(CliError::Usage("--khat needs S ≠ 0".into()));
            }
            ("khat", k)
        }
        _ => return Err(CliError::Usage("slice needs exactly one of --n and --khat".into())),
    };
    let to_n = |p: f64| if name == "n" { p } else { s * p + gamma * s * s * s / 3.0 };
    let rows = par_indexed(axis.count, a.common.jobs, |i| {
        let p = axis.value(i);
        slice_row(s, p, to_n(p), gamma, tol)
    })?;
    let rows = rows.into_iter().collect::<Result<Vec<_>, _>>()?;
    let mut buf = Vec::new();
    write_slice_csv(&mut buf, name, gamma, s, &rows)?;

    let mut args = vec!["slice".to_string()];
    args.extend(common_args(&a.common, tol));
    args.extend(["--s".to_string(), format!("{s}")]);
    args.extend(axis_arg(&format!("--{name}"), &axis));
    let issues: Vec<[f64; 3]> =
        rows.iter().filter(|r| !r.converged).map(|r| [s, r.n, f64::NAN]).collect();
    report_unconverged(issues.len());
    emit(&a.common, "slice", args, &buf, rows.len(), issues)
}

/// Values of the three routes at one lattice point.
#[derive(Debug, Clone, PartialEq)]
pub struct CompareRow {
    pub s: f64,
    pub n: f64,
    pub a32: Complex64,
    /// `I₊ + I₋`, only for `S > 0`.
    pub split: Option<Complex64>,
    pub lambda: Complex64,
    pub pde_rel: Option<f64>,
}

pub fn relative_gap(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / a.norm().max(b.norm())
}

impl CompareRow {
    /// Largest pairwise relative discrepancy among the routes present.
    pub fn max_gap(&self) -> f64 {
        let mut g = relative_gap(self.a32, self.lambda);
        if let Some(sp) = self.split {
            g = g.max(relative_gap(self.a32, sp)).max(relative_gap(sp, self.lambda));
        }
        g
    }
}

pub fn compare_point(s: f64, n: f64, gamma: f64, tol: f64) -> Result<CompareRow, WaveError> {
    let a32 = eval_a(s, n, gamma, tol)?.value;
    let split = if s > 0.0 { Some(eval_split(s, n, gamma, tol)?.value) } else { None };
    let lambda = eval_a_direct_lambda(s, n, gamma, &LambdaOracleOptions::default())?.value;
    Ok(CompareRow { s, n, a32, split, lambda, pde_rel: None })
}

fn median(mut v: Vec<f64>) -> f64 {
    if v.is_empty() {
        return f64::NAN;
    }
    v.sort_by(f64::total_cmp);
    let m = v.len() / 2;
    if v.len() % 2 == 1 {
        v[m]
    } else {
        0.5 * (v[m - 1] + v[m])
    }
}

pub fn write_compare_csv<W: Write>(mut w: W, gamma: f64, rows: &[CompareRow], with_pde: bool) -> io::Result<()> {
    writeln!(w, "gamma")?;
    writeln!(w, "{}", fmt(gamma))?;
    write!(w, "s,n,a32_re,a32_im,split_re,split_im,lambda_re,lambda_im,gap_a32_split,gap_a32_lambda,gap_split_lambda")?;
    writeln!(w, "{}", if with_pde { ",pde_rel" } else { "" })?;
    let nan = f64::NAN;
    for r in rows {
        let sp = r.split.unwrap_or(Complex64::new(nan, nan));
        let (g1, g3) = match r.split {
            Some(sp) => (relative_gap(r.a32, sp), relative_gap(sp, r.lambda)),
            None => (nan, nan),
        };
        write!(
            w,
            "{},{},{},{},{},{},{},{},{},{},{}",
            fmt(r.s),
            fmt(r.n),
            fmt(r.a32.re),
            fmt(r.a32.im),
            fmt(sp.re),
            fmt(sp.im),
            fmt(r.lambda.re),
            fmt(r.lambda.im),
            fmt(g1),
            fmt(relative_gap(r.a32, r.lambda)),
            fmt(g3)
        )?;
        if with_pde {
            write!(w, ",{}", fmt(r.pde_rel.unwrap_or(nan)))?;
        }
        writeln!(w)?;
    }
    Ok(())
}

/// Marches the default lattice and returns `||A_march| − |A|| / |A|` at
/// `S = 8` for each requested `N`.
pub fn pde_deviation_at(ns: &[f64], gamma: f64, tol: f64, jobs: usize) -> Result<Vec<f64>, CliError> {
    let cfg = MarchConfig::default_lattice(gamma);
    let fail = |e: crate::pde::PdeError| CliError::Failed(e.to_string());
    for &n in ns {
        if !cfg.is_interior(n) {
            return Err(CliError::Usage(format!("N = {n} is outside the march interior")));
        }
    }
    let init = initial_line(&cfg, tol, jobs).map_err(fail)?;
    let grid = march_popov(&cfg, &init, 2).map_err(fail)?;
    let axis = cfg.n_axis();
    ns.iter()
        .map(|&n| {
            let j = ((n - cfg.n_min) / cfg.dn).round() as usize;
            let want = eval_a(cfg.s_end, axis.value(j), gamma, tol)?.value.norm();
            Ok((grid.get(1, j).norm() - want).abs() / want)
        })
        .collect()
}

pub fn cmd_compare(a: &CompareArgs) -> Result<(), CliError> {
    let tol = resolve_tol(a.common.tol, DEFAULT_POINT_TOL)?;
    let gamma = a.common.gamma.value;
    if !(a.gate > 0.0 && a.pde_gate > 0.0) {
        return Err(CliError::Usage("gates must be positive".into()));
    }
    let (sa, na) = (a.s, a.n);
    let total = sa.count * na.count;
    let rows = par_indexed(total, a.common.jobs, |idx| {
        compare_point(sa.value(idx / na.count), na.value(idx % na.count), gamma, tol)
    })?;
    let mut rows = rows.into_iter().collect::<Result<Vec<_>, _>>()?;

    let mut report = String::new();
    let pairs: [(&str, Box<dyn Fn(&CompareRow) -> Option<f64>>); 3] = [
        ("a32 vs split", Box::new(|r: &CompareRow| r.split.map(|sp| relative_gap(r.a32, sp)))),
        ("a32 vs lambda", Box::new(|r: &CompareRow| Some(relative_gap(r.a32, r.lambda)))),
        ("split vs lambda", Box::new(|r: &CompareRow| r.split.map(|sp| relative_gap(sp, r.lambda)))),
    ];
    for (label, f) in &pairs {
        let gaps: Vec<f64> = rows.iter().filter_map(|r| f(r)).collect();
        let max = gaps.iter().cloned().fold(0.0, f64::max);
        let _ = writeln!(report, "{label:<16} points {:>3}  max {max:.3e}  median {:.3e}", gaps.len(), median(gaps));
    }
    let worst = rows.iter().map(CompareRow::max_gap).fold(0.0, f64::max);
    let mut failures = Vec::new();
    if !(worst <= a.gate) {
        failures.push(format!("route discrepancy {worst:.3e} exceeds {:.1e}", a.gate));
    }

    if a.include_pde {
        let ns: Vec<f64> = na.values();
        let dev = pde_deviation_at(&ns, gamma, tol, a.common.jobs)?;
        for r in rows.iter_mut() {
            let j = ns.iter().position(|&n| n == r.n).expect("lattice N");
            r.pde_rel = Some(dev[j]);
        }
        let max = dev.iter().cloned().fold(0.0, f64::max);
        let _ = writeln!(report, "pde march at S=8  points {:>3}  max {max:.3e}", dev.len());
        if !(max <= a.pde_gate) {
            failures.push(format!("march deviation {max:.3e} exceeds {:.1e}", a.pde_gate));
        }
    }
    eprint!("{report}");

    let mut buf = Vec::new();
    write_compare_csv(&mut buf, gamma, &rows, a.include_pde)?;
    let mut args = vec!["compare".to_string()];
    args.extend(common_args(&a.common, tol));
    args.extend(axis_arg("--s", &sa));
    args.extend(axis_arg("--n", &na));
    args.extend(["--gate".to_string(), format!("{:e}", a.gate)]);
    if a.include_pde {
        args.extend(["--include-pde".to_string(), "--pde-gate".into(), format!("{:e}", a.pde_gate)]);
    }
    emit(&a.common, "compare", args, &buf, rows.len(), Vec::new())?;
    if failures.is_empty() {
        Ok(())
    } else {
        Err(CliError::Gate(failures.join("; ")))
    }
}

pub fn cmd_selftest(a: &SelftestArgs) -> Result<(), CliError> {
    let outcomes = run_selftest(a.inject_fault.as_deref());
    print!("{}", format_report(&outcomes));
    let failed: Vec<_> = outcomes.iter().filter(|o| !o.passed).map(|o| o.name).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Gate(format!("failed checks: {}", failed.join(", "))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_rational_and_decimal() {
        let g = parse_gamma("4/9").unwrap();
        assert_eq!(g.value, 4.0 / 9.0);
        assert_eq!(g.text, "4/9");
        assert_eq!(parse_gamma("0.5").unwrap().value, 0.5);
        assert!(parse_gamma("-1").is_err());
        assert!(parse_gamma("1/0").is_err());
        assert!(parse_gamma("x").is_err());
    }

    #[test]
    fn tolerance_precedence() {
        assert_eq!(resolve_tol(Some(1e-9), 1e-8).unwrap(), 1e-9);
        assert!(resolve_tol(Some(1e-20), 1e-8).is_err());
    }

    #[test]
    fn manifest_sits_next_to_output() {
        assert_eq!(manifest_path(Path::new("out/a.csv")), PathBuf::from("out/a.csv.manifest.json"));
    }

    #[test]
    fn slice_row_overlays() {
        let g = 4.0 / 9.0;
        let r = slice_row(10.0, 0.0, g * 100.0 * 10.0 / 3.0, g, 1e-10).unwrap();
        assert_eq!(r.regime, "fresnel");
        assert!(r.airy.is_nan() && r.dark.is_finite() && r.bright.is_finite());
        let r = slice_row(-10.0, 0.0, 0.0, g, 1e-10).unwrap();
        assert_eq!(r.regime, "incoming");
        assert!(r.airy > 0.0 && r.dark.is_nan() && r.fresnel.is_nan());
        let r = slice_row(0.0, 1.0, 1.0, g, 1e-10).unwrap();
        assert_eq!(r.regime, "none");
    }
}
