//! Reduced spin Calogero–Moser flow.
//!
//! Two engines produce the same trajectories. The projection engine pushes
//! the free straight line `t ↦ (a + tα, α)` through [`project_point`]; it is
//! exact up to eigensolver error. The direct engine integrates the reduced
//! Hamilton equations in `(q, p, Z)` with classical RK4 and exists as an
//! independent cross-check.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lie::{bracket, AlgebraElement, CMat, Complex64, ConfigElement};
use crate::linalg::{hermitian_spectrum, max_abs_diff};
use crate::orbits::casimirs;
use crate::reduction::{
    check_chamber, check_pairwise_gaps, embed_reduced, gauge_fix_spin, lax_matrix, project_point, reduced_hamiltonian,
    PhasePoint, ReducedPoint,
};

/// Free motion `(a + tα, α)`.
pub fn free_flow(x: &PhasePoint, t: f64) -> PhasePoint {
    let a = x.a.matrix() + x.alpha.matrix() * Complex64::from(t);
    PhasePoint { a: ConfigElement::new_unchecked(a), alpha: x.alpha.clone() }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    Projection,
    Direct,
    Both,
}

/// Sign in front of the spin equation `dZ/dt = ±[∇_Z H, Z]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpinSign {
    Plus,
    Minus,
    /// Chosen by comparing a short run of each sign against the
    /// projection engine.
    Auto,
}

impl SpinSign {
    fn value(self) -> Option<f64> {
        match self {
            SpinSign::Plus => Some(1.0),
            SpinSign::Minus => Some(-1.0),
            SpinSign::Auto => None,
        }
    }
}

/// Initial condition, either already reduced or a phase point to project.
#[derive(Debug, Clone, PartialEq)]
pub enum InitialState {
    Reduced(ReducedPoint),
    Phase(PhasePoint),
}

impl InitialState {
    pub fn reduced(&self) -> Result<ReducedPoint> {
        match self {
            InitialState::Reduced(r) => Ok(r.clone()),
            InitialState::Phase(x) => project_point(x),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DynamicsTolerances {
    /// Largest structural correction of `Z` accepted in one RK4 step.
    pub drift_per_step: f64,
    /// Endpoint agreement needed for `SpinSign::Auto` to accept a sign.
    pub sign_agreement: f64,
}

impl Default for DynamicsTolerances {
    fn default() -> Self {
        Self { drift_per_step: 1e-6, sign_agreement: 1e-6 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimulationConfig {
    pub initial: InitialState,
    pub t_end: f64,
    pub dt: f64,
    pub engine: Engine,
    pub spin_sign: SpinSign,
    /// Record every `stride`-th step.
    pub stride: usize,
    pub tolerances: DynamicsTolerances,
}

impl SimulationConfig {
    pub fn new(initial: ReducedPoint, t_end: f64, dt: f64) -> Self {
        Self {
            initial: InitialState::Reduced(initial),
            t_end,
            dt,
            engine: Engine::Both,
            spin_sign: SpinSign::Auto,
            stride: 1,
            tolerances: DynamicsTolerances::default(),
        }
    }

    pub fn with_stride(mut self, stride: usize) -> Self {
        self.stride = stride;
        self
    }

    pub fn with_spin_sign(mut self, sign: SpinSign) -> Self {
        self.spin_sign = sign;
        self
    }

    pub fn with_engine(mut self, engine: Engine) -> Self {
        self.engine = engine;
        self
    }

    /// Number of steps; `t_end` must be an integer multiple of `dt`.
    pub fn steps(&self) -> Result<usize> {
        if !(self.dt > 0.0 && self.t_end > 0.0 && self.dt.is_finite() && self.t_end.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "need dt > 0 and t_end > 0, got dt = {}, t_end = {}",
                self.dt, self.t_end
            )));
        }
        if self.stride == 0 {
            return Err(Error::InvalidArgument("stride must be at least 1".into()));
        }
        let steps = (self.t_end / self.dt).round();
        if steps < 1.0 || (steps * self.dt - self.t_end).abs() > 1e-9 * self.t_end {
            return Err(Error::InvalidArgument(format!(
                "t_end = {} is not a multiple of dt = {}",
                self.t_end, self.dt
            )));
        }
        Ok(steps as usize)
    }

    fn sample_steps(&self) -> Result<Vec<usize>> {
        let steps = self.steps()?;
        let mut out: Vec<usize> = (0..=steps).step_by(self.stride).collect();
        if *out.last().expect("step 0 is always present") != steps {
            out.push(steps);
        }
        Ok(out)
    }
}

/// Conserved quantities evaluated at one sample.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleDiagnostics {
    pub energy: f64,
    /// Eigenvalues of the Lax matrix, decreasing.
    pub lax_eigenvalues: Vec<f64>,
    /// `Tr(L^k)` for `k = 2..n`.
    pub lax_traces: Vec<f64>,
    /// Real Casimirs of the spin for `k = 2..n`.
    pub casimirs: Vec<f64>,
}

impl SampleDiagnostics {
    pub fn of(r: &ReducedPoint) -> Self {
        let n = r.dim();
        let l = lax_matrix(r);
        let mut lax_traces = Vec::with_capacity(n.saturating_sub(1));
        let mut power = l.matrix().clone();
        for _ in 2..=n {
            power = &power * l.matrix();
            lax_traces.push(power.trace().re);
        }
        Self {
            energy: reduced_hamiltonian(r),
            lax_eigenvalues: hermitian_spectrum(l.matrix()),
            lax_traces,
            casimirs: casimirs(r.z.matrix(), n),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub points: Vec<ReducedPoint>,
    pub engine: Engine,
    pub diagnostics: Vec<SampleDiagnostics>,
    /// Sign used by the direct engine.
    pub spin_sign: Option<SpinSign>,
    /// Largest structural correction applied to `Z` in a single step.
    pub max_structural_drift: f64,
}

impl Trajectory {
    fn new(engine: Engine) -> Self {
        Self {
            times: Vec::new(),
            points: Vec::new(),
            engine,
            diagnostics: Vec::new(),
            spin_sign: None,
            max_structural_drift: 0.0,
        }
    }

    fn push(&mut self, t: f64, r: ReducedPoint) {
        self.diagnostics.push(SampleDiagnostics::of(&r));
        self.times.push(t);
        self.points.push(r);
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn last(&self) -> Option<&ReducedPoint> {
        self.points.last()
    }
}

fn wall(t: f64, err: Error) -> Error {
    match err {
        Error::NonRegular { min_gap } => Error::WallCollision { t, min_gap },
        Error::NotDecreasing { .. } => Error::WallCollision { t, min_gap: 0.0 },
        other => other,
    }
}

/// Exact trajectory: projection of the free flow through the initial lift.
pub fn trajectory_via_projection(cfg: &SimulationConfig) -> Result<Trajectory> {
    let r0 = cfg.initial.reduced()?;
    let x0 = embed_reduced(&r0);
    let mut traj = Trajectory::new(Engine::Projection);
    for k in cfg.sample_steps()? {
        let t = k as f64 * cfg.dt;
        let r = project_point(&free_flow(&x0, t)).map_err(|e| wall(t, e))?;
        traj.push(t, r);
    }
    Ok(traj)
}

/// Right-hand side of the reduced equations: `(dq, dp, dZ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorField {
    pub dq: Vec<f64>,
    pub dp: Vec<f64>,
    pub dz: CMat,
}

/// Pairing gradient of `H` in `Z`, entries `Z_ij/(q_i - q_j)²`.
pub fn spin_gradient(q: &[f64], z: &CMat) -> CMat {
    let n = q.len();
    CMat::from_fn(n, n, |i, j| {
        if i == j {
            Complex64::from(0.0)
        } else {
            let d = q[i] - q[j];
            z[(i, j)] / (d * d)
        }
    })
}

fn field(q: &[f64], p: &[f64], z: &CMat, sign: f64) -> Result<VectorField> {
    check_pairwise_gaps(q)?;
    let n = q.len();
    let dp = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| j != i)
                .map(|j| {
                    let d = q[i] - q[j];
                    2.0 * z[(i, j)].norm_sqr() / (d * d * d)
                })
                .sum()
        })
        .collect();
    let dz = bracket(&spin_gradient(q, z), z) * Complex64::from(sign);
    Ok(VectorField { dq: p.to_vec(), dp, dz })
}

/// Reduced Hamilton equations at `r` with `dZ = sign·[∇_Z H, Z]`.
pub fn reduced_vector_field(r: &ReducedPoint, sign: SpinSign) -> Result<VectorField> {
    let s = sign
        .value()
        .ok_or_else(|| Error::InvalidArgument("spin sign must be resolved before evaluating the field".into()))?;
    field(&r.q, &r.p, r.z.matrix(), s)
}

#[derive(Debug, Clone)]
struct State {
    q: Vec<f64>,
    p: Vec<f64>,
    z: CMat,
}

impl State {
    fn axpy(&self, h: f64, k: &VectorField) -> State {
        State {
            q: self.q.iter().zip(&k.dq).map(|(x, d)| x + h * d).collect(),
            p: self.p.iter().zip(&k.dp).map(|(x, d)| x + h * d).collect(),
            z: &self.z + &k.dz * Complex64::from(h),
        }
    }
}

fn rk4_step(s: &State, h: f64, sign: f64) -> Result<State> {
    let k1 = field(&s.q, &s.p, &s.z, sign)?;
    let s2 = s.axpy(0.5 * h, &k1);
    let k2 = field(&s2.q, &s2.p, &s2.z, sign)?;
    let s3 = s.axpy(0.5 * h, &k2);
    let k3 = field(&s3.q, &s3.p, &s3.z, sign)?;
    let s4 = s.axpy(h, &k3);
    let k4 = field(&s4.q, &s4.p, &s4.z, sign)?;
    let n = s.q.len();
    let comb = |a: &[f64], b: &[f64], c: &[f64], d: &[f64]| -> Vec<f64> {
        (0..n).map(|i| (a[i] + 2.0 * b[i] + 2.0 * c[i] + d[i]) / 6.0).collect()
    };
    let inc = VectorField {
        dq: comb(&k1.dq, &k2.dq, &k3.dq, &k4.dq),
        dp: comb(&k1.dp, &k2.dp, &k3.dp, &k4.dp),
        dz: (&k1.dz + &k2.dz * Complex64::from(2.0) + &k3.dz * Complex64::from(2.0) + &k4.dz)
            * Complex64::from(1.0 / 6.0),
    };
    Ok(s.axpy(h, &inc))
}

/// Projects `Z` back onto zero-diagonal anti-Hermitian matrices and
/// returns the size of the correction.
fn renormalize(z: &mut CMat) -> f64 {
    let n = z.nrows();
    let mut fixed = (&*z - z.adjoint()) * Complex64::from(0.5);
    for i in 0..n {
        fixed[(i, i)] = Complex64::from(0.0);
    }
    let drift = (&fixed - &*z).norm();
    *z = fixed;
    drift
}

fn integrate_with_sign(cfg: &SimulationConfig, r0: &ReducedPoint, sign: f64) -> Result<Trajectory> {
    let samples = cfg.sample_steps()?;
    let steps = *samples.last().expect("nonempty");
    let mut traj = Trajectory::new(Engine::Direct);
    traj.spin_sign = Some(if sign > 0.0 { SpinSign::Plus } else { SpinSign::Minus });
    let mut state = State { q: r0.q.clone(), p: r0.p.clone(), z: r0.z.matrix().clone() };
    let mut next = samples.iter().peekable();
    for k in 0..=steps {
        let t = k as f64 * cfg.dt;
        if k > 0 {
            state = rk4_step(&state, cfg.dt, sign).map_err(|e| wall(t, e))?;
            let drift = renormalize(&mut state.z);
            if drift > cfg.tolerances.drift_per_step {
                return Err(Error::StructuralDrift { t, drift });
            }
            traj.max_structural_drift = traj.max_structural_drift.max(drift);
            check_chamber(&state.q).map_err(|e| wall(t, e))?;
        }
        if next.peek() == Some(&&k) {
            next.next();
            let (z, gauge) = gauge_fix_spin(&AlgebraElement::new_unchecked(state.z.clone()));
            traj.push(t, ReducedPoint { q: state.q.clone(), p: state.p.clone(), z, gauge });
        }
    }
    Ok(traj)
}

/// Endpoint discrepancy between two reduced points in gauge-invariant terms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EndpointError {
    pub q: f64,
    pub p: f64,
    pub spin_moduli: f64,
}

impl EndpointError {
    pub fn between(a: &ReducedPoint, b: &ReducedPoint) -> Self {
        Self {
            q: max_abs_diff(&a.q, &b.q),
            p: max_abs_diff(&a.p, &b.p),
            spin_moduli: max_abs_diff(&a.spin_moduli(), &b.spin_moduli()),
        }
    }

    pub fn max(&self) -> f64 {
        self.q.max(self.p).max(self.spin_moduli)
    }
}

/// Outcome of the automatic sign resolution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SignResolution {
    pub chosen: f64,
    pub residual_plus: f64,
    pub residual_minus: f64,
}

/// Integrates both signs up to `t = 0.01` and keeps the one matching the
/// projection engine. When both match (the spin equation is trivial for
/// `n = 2`), `+1` is chosen.
pub fn resolve_spin_sign(r0: &ReducedPoint, tolerances: &DynamicsTolerances) -> Result<SignResolution> {
    const HORIZON: f64 = 0.01;
    let mut probe = SimulationConfig::new(r0.clone(), HORIZON, HORIZON / 10.0);
    probe.stride = 10;
    probe.tolerances = *tolerances;
    let oracle = trajectory_via_projection(&probe)?;
    let target = oracle.last().expect("nonempty");
    let residual = |sign: f64| -> Result<f64> {
        let traj = integrate_with_sign(&probe, r0, sign)?;
        Ok(EndpointError::between(traj.last().expect("nonempty"), target).max())
    };
    let plus = residual(1.0)?;
    let minus = residual(-1.0)?;
    let tol = tolerances.sign_agreement;
    let chosen = if plus <= tol {
        1.0
    } else if minus <= tol {
        -1.0
    } else {
        return Err(Error::SpinSignUnresolved { plus, minus });
    };
    Ok(SignResolution { chosen, residual_plus: plus, residual_minus: minus })
}

/// Fixed-step RK4 on the reduced equations, with `Z` projected back onto
/// its structural subspace after every step.
pub fn integrate_direct(cfg: &SimulationConfig) -> Result<Trajectory> {
    let r0 = cfg.initial.reduced()?;
    let sign = match cfg.spin_sign.value() {
        Some(s) => s,
        None => resolve_spin_sign(&r0, &cfg.tolerances)?.chosen,
    };
    integrate_with_sign(cfg, &r0, sign)
}

/// Largest deviation from the initial sample of every conserved quantity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConservedReport {
    pub energy: f64,
    pub lax_eigenvalues: f64,
    pub lax_traces: f64,
    pub casimirs: f64,
}

impl ConservedReport {
    pub fn max(&self) -> f64 {
        self.energy.max(self.lax_eigenvalues).max(self.lax_traces).max(self.casimirs)
    }
}

pub fn conserved_report(traj: &Trajectory) -> Result<ConservedReport> {
    let first = traj.diagnostics.first().ok_or_else(|| Error::InvalidArgument("empty trajectory".into()))?;
    let mut report = ConservedReport { energy: 0.0, lax_eigenvalues: 0.0, lax_traces: 0.0, casimirs: 0.0 };
    for d in &traj.diagnostics {
        report.energy = report.energy.max((d.energy - first.energy).abs());
        report.lax_eigenvalues = report.lax_eigenvalues.max(max_abs_diff(&d.lax_eigenvalues, &first.lax_eigenvalues));
        report.lax_traces = report.lax_traces.max(max_abs_diff(&d.lax_traces, &first.lax_traces));
        report.casimirs = report.casimirs.max(max_abs_diff(&d.casimirs, &first.casimirs));
    }
    Ok(report)
}

/// Products of one simulation run.
#[derive(Debug, Clone, PartialEq)]
pub struct Simulation {
    pub projection: Option<Trajectory>,
    pub direct: Option<Trajectory>,
    pub sign: Option<SignResolution>,
    /// Endpoint discrepancy when both engines ran.
    pub agreement: Option<EndpointError>,
}

impl Simulation {
    /// The exact trajectory when available, otherwise the direct one.
    pub fn primary(&self) -> &Trajectory {
        self.projection.as_ref().or(self.direct.as_ref()).expect("at least one engine ran")
    }
}

pub fn simulate(cfg: &SimulationConfig) -> Result<Simulation> {
    let r0 = cfg.initial.reduced()?;
    let projection = match cfg.engine {
        Engine::Projection | Engine::Both => Some(trajectory_via_projection(cfg)?),
        Engine::Direct => None,
    };
    let (direct, sign) = match cfg.engine {
        Engine::Direct | Engine::Both => {
            let (s, resolution) = match cfg.spin_sign.value() {
                Some(s) => (s, None),
                None => {
                    let res = resolve_spin_sign(&r0, &cfg.tolerances)?;
                    (res.chosen, Some(res))
                }
            };
            (Some(integrate_with_sign(cfg, &r0, s)?), resolution)
        }
        Engine::Projection => (None, None),
    };
    let agreement = match (&projection, &direct) {
        (Some(a), Some(b)) => Some(EndpointError::between(a.last().expect("nonempty"), b.last().expect("nonempty"))),
        _ => None,
    };
    Ok(Simulation { projection, direct, sign, agreement })
}
