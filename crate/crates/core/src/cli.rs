//! Command-line front end: scenario files, command dispatch and output
//! serialization.
//!
//! Exit codes: `0` success, `1` I/O failure, `2` configuration error,
//! `3` numerical failure, `4` tolerance violation.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::dynamics::{
    conserved_report, simulate, DynamicsTolerances, Engine, InitialState, SimulationConfig, SpinSign, Trajectory,
};
use crate::error::Error;
use crate::lie::{AlgebraElement, CMat, Complex64};
use crate::linalg::{anti_hermitian_spectrum, max_abs_diff};
use crate::orbits::{self, OrbitSpec};
use crate::reduction::{reduced_hamiltonian, ReducedPoint};
use crate::rmatrix;
use crate::sample;
use crate::verify;

#[derive(Debug, Parser)]
#[command(name = "spincm", version, about = "Spin Calogero-Moser systems by reduction of free motion")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, clap::Args)]
pub struct CommonArgs {
    /// Scenario file (JSON).
    #[arg(long)]
    pub config: PathBuf,
    /// Output directory.
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
    /// Seed overriding the scenario's.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Also write the gauge-dependent spin entries.
    #[arg(long)]
    pub raw_spin: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Integrate a scenario and write the trajectory and a report.
    Simulate(CommonArgs),
    /// Run the geometric verification suites.
    Verify(CommonArgs),
    /// Tabulate CDYBE residuals over base points.
    Rmatrix(CommonArgs),
    /// Orbit diagnostics.
    Orbit(CommonArgs),
}

/// Complex number written as `[re, im]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexEntry(pub f64, pub f64);

/// Complex matrix written as separate real and imaginary row lists.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixEntry {
    pub re: Vec<Vec<f64>>,
    #[serde(default)]
    pub im: Option<Vec<Vec<f64>>>,
}

impl MatrixEntry {
    fn to_matrix(&self, n: usize) -> Result<CMat, String> {
        let shape_ok = |rows: &Vec<Vec<f64>>| rows.len() == n && rows.iter().all(|r| r.len() == n);
        if !shape_ok(&self.re) || !self.im.as_ref().is_none_or(shape_ok) {
            return Err(format!("matrix must be {n}x{n}"));
        }
        Ok(CMat::from_fn(n, n, |i, j| Complex64::new(self.re[i][j], self.im.as_ref().map_or(0.0, |m| m[i][j]))))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum OrbitSection {
    /// `Z₀` given directly.
    Generator(MatrixEntry),
    /// `Z₀ = i(vv† - cI)` with `c = <v,v>/n`.
    RankOne { v: Vec<ComplexEntry> },
    /// Rank-one orbit with `|v_i|² = c`.
    Minimal { c: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemSection {
    pub n: usize,
    pub orbit: OrbitSection,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum SpinSource {
    Explicit(MatrixEntry),
    /// Point of `O ∩ m^⊥` found from the given seed.
    ProjectSeed(u64),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InitialSection {
    pub q: Vec<f64>,
    pub p: Vec<f64>,
    pub spin: SpinSource,
}

fn default_t_end() -> f64 {
    1.0
}
fn default_dt() -> f64 {
    0.01
}
fn default_engine() -> Engine {
    Engine::Both
}
fn default_sign() -> SpinSign {
    SpinSign::Auto
}
fn one() -> usize {
    1
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunSection {
    #[serde(default = "default_t_end")]
    pub t_end: f64,
    #[serde(default = "default_dt")]
    pub dt: f64,
    #[serde(default = "default_engine")]
    pub engine: Engine,
    #[serde(default = "default_sign")]
    pub spin_sign: SpinSign,
    /// Write every `stride`-th step.
    #[serde(default = "one")]
    pub stride: usize,
}

impl Default for RunSection {
    fn default() -> Self {
        Self {
            t_end: default_t_end(),
            dt: default_dt(),
            engine: default_engine(),
            spin_sign: default_sign(),
            stride: 1,
        }
    }
}

fn default_csv() -> String {
    "trajectory.csv".into()
}
fn default_report() -> String {
    "report.json".into()
}
fn default_plot() -> String {
    "trajectory.gp".into()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    #[serde(default = "default_csv")]
    pub csv: String,
    #[serde(default = "default_report")]
    pub report: String,
    #[serde(default)]
    pub plot_script: bool,
    #[serde(default = "default_plot")]
    pub plot: String,
}

impl Default for OutputSection {
    fn default() -> Self {
        Self { csv: default_csv(), report: default_report(), plot_script: false, plot: default_plot() }
    }
}

fn default_samples() -> usize {
    20
}
fn default_step() -> f64 {
    1e-5
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifySection {
    #[serde(default = "default_samples")]
    pub samples: usize,
}

impl Default for VerifySection {
    fn default() -> Self {
        Self { samples: default_samples() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RMatrixSection {
    /// Explicit base points; random ones are drawn when absent.
    #[serde(default)]
    pub points: Option<Vec<Vec<f64>>>,
    #[serde(default = "default_samples")]
    pub random: usize,
    #[serde(default = "default_step")]
    pub h: f64,
}

impl Default for RMatrixSection {
    fn default() -> Self {
        Self { points: None, random: default_samples(), h: default_step() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub system: SystemSection,
    #[serde(default)]
    pub initial: Option<InitialSection>,
    #[serde(default)]
    pub run: RunSection,
    #[serde(default)]
    pub output: OutputSection,
    #[serde(default)]
    pub verify: VerifySection,
    #[serde(default)]
    pub rmatrix: RMatrixSection,
    #[serde(default)]
    pub seed: u64,
}

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Numerical(Error),
    Tolerance(String),
    Io { path: PathBuf, message: String },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } => 1,
            CliError::Config(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Tolerance(_) => 4,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "configuration error: {m}"),
            CliError::Numerical(e) => write!(f, "numerical failure: {e}"),
            CliError::Tolerance(m) => write!(f, "tolerance violation: {m}"),
            CliError::Io { path, message } => write!(f, "{}: {message}", path.display()),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Numerical(e)
    }
}

/// Scenario after parse-time validation.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub file: ScenarioFile,
    pub orbit: OrbitSpec,
}

impl Scenario {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let file: ScenarioFile = serde_json::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        Self::validate(file)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text =
            fs::read_to_string(path).map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    fn validate(file: ScenarioFile) -> Result<Self, CliError> {
        let n = file.system.n;
        let config = |e: Error| CliError::Config(e.to_string());
        if n < 2 {
            return Err(config(Error::RankTooSmall { n }));
        }
        let orbit = match &file.system.orbit {
            OrbitSection::Generator(m) => {
                let z = m.to_matrix(n).map_err(CliError::Config)?;
                OrbitSpec::new(AlgebraElement::new(z).map_err(config)?, None).map_err(config)?
            }
            OrbitSection::RankOne { v } => {
                if v.len() != n {
                    return Err(config(Error::DimensionMismatch { left: n, right: v.len() }));
                }
                OrbitSpec::from_rank_one(v.iter().map(|c| Complex64::new(c.0, c.1)).collect()).map_err(config)?
            }
            OrbitSection::Minimal { c } => OrbitSpec::minimal(n, *c).map_err(config)?,
        };
        if let Some(init) = &file.initial {
            let z = match &init.spin {
                SpinSource::Explicit(m) => {
                    let z = AlgebraElement::new(m.to_matrix(n).map_err(CliError::Config)?).map_err(config)?;
                    let off = max_abs_diff(&anti_hermitian_spectrum(z.matrix()), &orbit.spectrum());
                    if off > 1e-8 {
                        return Err(CliError::Config(format!(
                            "explicit spin is not on the orbit (spectrum differs by {off:e})"
                        )));
                    }
                    z
                }
                SpinSource::ProjectSeed(_) => AlgebraElement::zeros(n),
            };
            ReducedPoint::new(init.q.clone(), init.p.clone(), z).map_err(config)?;
        }
        let run = &file.run;
        let probe = SimulationConfig {
            initial: InitialState::Reduced(
                ReducedPoint::new((0..n).map(|i| -(i as f64)).collect(), vec![0.0; n], AlgebraElement::zeros(n))
                    .expect("fixed chamber point"),
            ),
            t_end: run.t_end,
            dt: run.dt,
            engine: run.engine,
            spin_sign: run.spin_sign,
            stride: run.stride,
            tolerances: DynamicsTolerances::default(),
        };
        probe.steps().map_err(config)?;
        if let Some(points) = &file.rmatrix.points {
            if points.iter().any(|p| p.len() != n) {
                return Err(CliError::Config(format!("rmatrix points must have {n} entries")));
            }
        }
        Ok(Self { file, orbit })
    }

    fn seed(&self, overridden: Option<u64>) -> u64 {
        overridden.unwrap_or(self.file.seed)
    }

    /// Initial reduced point, running the `O ∩ m^⊥` search if requested.
    pub fn initial_point(&self) -> Result<ReducedPoint, CliError> {
        let init =
            self.file.initial.as_ref().ok_or_else(|| CliError::Config("the `initial` section is required".into()))?;
        let n = self.file.system.n;
        let z = match &init.spin {
            SpinSource::Explicit(m) => AlgebraElement::new(m.to_matrix(n).map_err(CliError::Config)?)?,
            SpinSource::ProjectSeed(seed) => orbits::project_to_ann_m(&self.orbit, *seed)?.value,
        };
        Ok(ReducedPoint::new(init.q.clone(), init.p.clone(), z)?.gauge_fixed())
    }

    pub fn simulation_config(&self) -> Result<SimulationConfig, CliError> {
        let run = &self.file.run;
        Ok(SimulationConfig {
            initial: InitialState::Reduced(self.initial_point()?),
            t_end: run.t_end,
            dt: run.dt,
            engine: run.engine,
            spin_sign: run.spin_sign,
            stride: run.stride,
            tolerances: DynamicsTolerances::default(),
        })
    }
}

/// Global tolerance multiplier from `SPINCM_TOL_SCALE`.
pub fn tolerance_scale() -> Result<f64, CliError> {
    match std::env::var("SPINCM_TOL_SCALE") {
        Err(_) => Ok(1.0),
        Ok(s) => match s.trim().parse::<f64>() {
            Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
            _ => Err(CliError::Config(format!("SPINCM_TOL_SCALE must be a positive number, got {s:?}"))),
        },
    }
}

/// C-style `%.17g`.
pub fn format_g17(x: f64) -> String {
    const P: i32 = 17;
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let sci = format!("{:.*e}", (P - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    let strip = |s: &str| -> String {
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s.to_string()
        }
    };
    if (-4..P).contains(&exp) {
        strip(&format!("{:.*}", (P - 1 - exp) as usize, x))
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", strip(mantissa), exp.abs())
    }
}

fn spin_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j))).collect()
}

/// CSV header for dimension `n`.
pub fn csv_header(n: usize, raw_spin: bool) -> String {
    let mut cols = vec!["t".to_string()];
    cols.extend((1..=n).map(|i| format!("q_{i}")));
    cols.extend((1..=n).map(|i| format!("p_{i}")));
    cols.push("energy".into());
    cols.extend((1..=n).map(|i| format!("lax_eig_{i}")));
    for (i, j) in spin_pairs(n) {
        cols.push(format!("spin_mod2_{}{}", i + 1, j + 1));
    }
    if raw_spin {
        for (i, j) in spin_pairs(n) {
            cols.push(format!("gauge_dependent_re_z_{}{}", i + 1, j + 1));
            cols.push(format!("gauge_dependent_im_z_{}{}", i + 1, j + 1));
        }
    }
    cols.join(",")
}

/// Trajectory as CSV text, LF line endings.
pub fn trajectory_csv(traj: &Trajectory, raw_spin: bool) -> String {
    let n = traj.points.first().map_or(0, |r| r.dim());
    let mut out = csv_header(n, raw_spin);
    out.push('\n');
    for ((t, r), d) in traj.times.iter().zip(&traj.points).zip(&traj.diagnostics) {
        let mut row = vec![format_g17(*t)];
        row.extend(r.q.iter().map(|x| format_g17(*x)));
        row.extend(r.p.iter().map(|x| format_g17(*x)));
        row.push(format_g17(d.energy));
        row.extend(d.lax_eigenvalues.iter().map(|x| format_g17(*x)));
        row.extend(r.spin_moduli().iter().map(|x| format_g17(*x)));
        if raw_spin {
            for (i, j) in spin_pairs(n) {
                let z = r.z.matrix()[(i, j)];
                row.push(format_g17(z.re));
                row.push(format_g17(z.im));
            }
        }
        let _ = writeln!(out, "{}", row.join(","));
    }
    out
}

/// gnuplot script plotting positions and energy from `csv`.
pub fn plot_script(csv: &str, n: usize) -> String {
    format!(
        "set datafile separator ','\n\
         set key autotitle columnhead\n\
         set xlabel 't'\n\
         set multiplot layout 2,1\n\
         plot for [i=2:{}] '{csv}' using 1:i with lines\n\
         plot '{csv}' using 1:{} with lines\n\
         unset multiplot\n",
        n + 1,
        2 * n + 2
    )
}

fn write_file(dir: &Path, name: &str, contents: &str) -> Result<PathBuf, CliError> {
    let path = dir.join(name);
    fs::write(&path, contents).map_err(|e| CliError::Io { path: path.clone(), message: e.to_string() })?;
    Ok(path)
}

fn status(passed: bool) -> &'static str {
    if passed {
        "ok"
    } else {
        "tolerance_violation"
    }
}

fn write_report(dir: &Path, name: &str, report: &Value) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(report).expect("reports serialize") + "\n";
    write_file(dir, name, &text)?;
    Ok(())
}

fn finish(passed: bool, what: &str) -> Result<(), CliError> {
    if passed {
        Ok(())
    } else {
        Err(CliError::Tolerance(format!("{what} exceeded its tolerance; see the report")))
    }
}

fn run_simulate(scenario: &Scenario, args: &CommonArgs, scale: f64) -> Result<(), CliError> {
    let cfg = scenario.simulation_config()?;
    let sim = simulate(&cfg)?;
    let primary = sim.primary();
    let drifts = conserved_report(primary)?;
    let mut drift_json = serde_json::to_value(drifts).expect("serializable");
    let mut passed = if primary.engine == Engine::Projection {
        drifts.energy <= 1e-10 * scale && drifts.max() <= 1e-8 * scale
    } else {
        drifts.casimirs <= 1e-8 * scale
    };
    if let Some(direct) = &sim.direct {
        let d = conserved_report(direct)?;
        drift_json["direct_casimirs"] = json!(d.casimirs);
        drift_json["direct_energy"] = json!(d.energy);
        drift_json["structural"] = json!(direct.max_structural_drift);
        passed &= d.casimirs <= 1e-8 * scale;
    }
    let agreement = sim.agreement.map(|a| {
        passed &= a.max() <= 1e-6 * scale;
        json!({
            "q": a.q,
            "p": a.p,
            "spin_moduli": a.spin_moduli,
            "spin_sign": sim.direct.as_ref().and_then(|d| d.spin_sign),
            "sign_residual_plus": sim.sign.map(|s| s.residual_plus),
            "sign_residual_minus": sim.sign.map(|s| s.residual_minus),
        })
    });
    let out = &scenario.file.output;
    write_file(&args.out, &out.csv, &trajectory_csv(primary, args.raw_spin))?;
    if out.plot_script {
        write_file(&args.out, &out.plot, &plot_script(&out.csv, scenario.file.system.n))?;
    }
    let report = json!({
        "scenario": scenario.file,
        "drifts": drift_json,
        "engine_agreement": agreement,
        "status": status(passed),
    });
    write_report(&args.out, &out.report, &report)?;
    finish(passed, "a conserved quantity or the engine agreement")
}

fn run_verify(scenario: &Scenario, args: &CommonArgs, scale: f64) -> Result<(), CliError> {
    let n = scenario.file.system.n;
    let seed = scenario.seed(args.seed);
    let report = verify::run_suite(n, seed, scenario.file.verify.samples)?;
    let passed = report.connection.max_residual() <= report.connection.tolerance * scale
        && report.connection.inertia_min_eigenvalue > 0.0
        && report.weinstein.max_residual <= report.weinstein.tolerance * scale
        && report.reduced_form.max_residual <= report.reduced_form.tolerance * scale
        && report.reduced_form.skipped < report.reduced_form.samples;
    let json = json!({
        "scenario": scenario.file,
        "seed": seed,
        "results": report,
        "status": status(passed),
    });
    write_report(&args.out, "verify_report.json", &json)?;
    finish(passed, "a verification residual")
}

fn run_rmatrix(scenario: &Scenario, args: &CommonArgs, scale: f64) -> Result<(), CliError> {
    let n = scenario.file.system.n;
    let section = &scenario.file.rmatrix;
    let points = match &section.points {
        Some(p) => p.clone(),
        None => {
            let mut rng = sample::rng(scenario.seed(args.seed));
            (0..section.random).map(|_| sample::random_chamber(n, 0.3, &mut rng)).collect()
        }
    };
    let tolerance = 1e-7 * scale;
    let rows = rmatrix::residual_table(&points, section.h, tolerance)?;
    let flip = match points.first() {
        Some(p) => Some(rmatrix::coth_flip_check(p, section.h)?),
        None => None,
    };
    let passed = rows.iter().all(|r| r.residual <= tolerance && r.perturbed_residual > 1e-3)
        && rows.iter().all(|r| r.symmetric_part_residual <= 1e-12 * scale);
    let mut table = String::from("family,base,residual,convention,perturbed_residual\n");
    for r in &rows {
        let base: Vec<String> = r.base.iter().map(|x| format_g17(*x)).collect();
        let _ = writeln!(
            table,
            "{:?},{},{},{:?},{}",
            r.family,
            base.join(" "),
            format_g17(r.residual),
            r.convention,
            format_g17(r.perturbed_residual)
        );
    }
    write_file(&args.out, "cdybe_residuals.csv", &table)?;
    let json = json!({
        "scenario": scenario.file,
        "results": { "rows": rows, "coth_flip": flip },
        "status": status(passed),
    });
    write_report(&args.out, "rmatrix_report.json", &json)?;
    finish(passed, "a CDYBE residual")
}

fn run_orbit(scenario: &Scenario, args: &CommonArgs, scale: f64) -> Result<(), CliError> {
    let spec = &scenario.orbit;
    let seed = scenario.seed(args.seed);
    let dimension = orbits::orbit_dimension(spec.generator().matrix());
    let point = orbits::project_to_ann_m(spec, seed)?;
    let mut passed = point.spectrum_residual() <= 1e-8 * scale;
    let moduli = crate::reduction::spin_moduli(point.value.matrix());
    // every rank-one orbit coincides with the one through sqrt(c)(1, …, 1)
    let collapse = match spec.rank_one() {
        Some(r1) => {
            let c2 = r1.c * r1.c;
            let moduli_residual = moduli.iter().map(|m| (m - c2).abs()).fold(0.0, f64::max);
            let n = spec.dim();
            let q: Vec<f64> = (0..n).map(|i| 1.0 - i as f64).collect();
            let p = vec![0.25; n];
            let r = ReducedPoint::new(q.clone(), p.clone(), point.value.clone())?;
            let mut spinless = 0.5 * p.iter().map(|x| x * x).sum::<f64>();
            for i in 0..n {
                for j in 0..i {
                    spinless += c2 / (q[i] - q[j]).powi(2);
                }
            }
            let hamiltonian_residual = (reduced_hamiltonian(&r) - spinless).abs();
            passed &= moduli_residual <= 1e-8 * scale && hamiltonian_residual <= 1e-10 * scale;
            Some(json!({ "c": r1.c, "moduli_residual": moduli_residual, "hamiltonian_residual": hamiltonian_residual }))
        }
        None => None,
    };
    let json = json!({
        "scenario": scenario.file,
        "results": {
            "dimension": dimension,
            "spectrum": spec.spectrum(),
            "ann_m_sample": {
                "seed": seed,
                "spin_moduli": moduli,
                "spectrum_residual": point.spectrum_residual(),
            },
            "minimal_orbit_collapse": collapse,
        },
        "status": status(passed),
    });
    write_report(&args.out, "orbit_report.json", &json)?;
    finish(passed, "an orbit diagnostic")
}

/// Runs one command and returns the process exit code.
pub fn run_command<I, T>(argv: I) -> i32
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
    let started = Instant::now();
    let (name, args) = match &cli.command {
        Command::Simulate(a) => ("simulate", a),
        Command::Verify(a) => ("verify", a),
        Command::Rmatrix(a) => ("rmatrix", a),
        Command::Orbit(a) => ("orbit", a),
    };
    let result = (|| {
        let scale = tolerance_scale()?;
        let scenario = Scenario::load(&args.config)?;
        fs::create_dir_all(&args.out).map_err(|e| CliError::Io { path: args.out.clone(), message: e.to_string() })?;
        match &cli.command {
            Command::Simulate(_) => run_simulate(&scenario, args, scale),
            Command::Verify(_) => run_verify(&scenario, args, scale),
            Command::Rmatrix(_) => run_rmatrix(&scenario, args, scale),
            Command::Orbit(_) => run_orbit(&scenario, args, scale),
        }
    })();
    eprintln!("{name}: {:.3} s", started.elapsed().as_secs_f64());
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("{e}");
            e.exit_code()
        }
    }
}
