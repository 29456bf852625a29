//! Numerical checks of the geometric identities behind the reduction:
//! the mechanical connection axioms, the symplectic form of the Weinstein
//! realization including its curvature term, and the characterization of
//! the reduced symplectic form.
//!
//! Every exterior-calculus statement is checked pointwise as a comparison of
//! two real numbers obtained by evaluating bilinear forms on explicit
//! tangent vectors; derivatives are central differences.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lie::{
    bracket, build_restricted_root_datum, conjugate, diag_real, matrix_exp, max_abs_diag, trace_pairing,
    AlgebraElement, CMat, Complex64, ConfigElement, RestrictedRootDatum, I,
};
use crate::linalg::{least_squares, min_gap, realify};
use crate::orbits::kks_form;
use crate::reduction::{
    check_chamber, connection_dual_at, connection_dual_raw, connection_form, diagonalize_to_chamber, locked_inertia,
    momentum_map, project_point, PhasePoint, ReducedPoint,
};
use crate::sample::{self, SampleRng};
use crate::tol;

/// Coordinates `(s, ξ, η, λ)` of the Weinstein realization near the frame
/// `exp(ξ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeinsteinChartPoint {
    pub s: Vec<f64>,
    pub xi: AlgebraElement,
    pub eta: Vec<f64>,
    pub lam: AlgebraElement,
}

impl WeinsteinChartPoint {
    pub fn new(s: Vec<f64>, xi: AlgebraElement, eta: Vec<f64>, lam: AlgebraElement) -> Result<Self> {
        let n = s.len();
        for other in [xi.dim(), eta.len(), lam.dim()] {
            if other != n {
                return Err(Error::DimensionMismatch { left: n, right: other });
            }
        }
        check_chamber(&s)?;
        let max_diag = max_abs_diag(lam.matrix()).max(max_abs_diag(xi.matrix()));
        if max_diag > tol::SPIN_DIAGONAL {
            return Err(Error::DiagonalNotZero { max_diag });
        }
        Ok(Self { s, xi, eta, lam })
    }

    pub fn dim(&self) -> usize {
        self.s.len()
    }

    fn frame(&self) -> CMat {
        matrix_exp(&self.xi)
    }
}

/// Tangent vector in chart coordinates. `dxi` is the vertical direction,
/// applied as a left translation of the frame.
#[derive(Debug, Clone, PartialEq)]
pub struct ChartTangent {
    pub ds: Vec<f64>,
    pub deta: Vec<f64>,
    pub dxi: AlgebraElement,
    pub dlam: AlgebraElement,
}

impl ChartTangent {
    pub fn is_vertical(&self) -> bool {
        self.dxi.matrix().norm() > 0.0
    }
}

/// Tangent vector `(ȧ, α̇)` to `T*V`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseTangent {
    pub da: CMat,
    pub dalpha: CMat,
}

impl PhaseTangent {
    pub fn zero(n: usize) -> Self {
        Self { da: CMat::zeros(n, n), dalpha: CMat::zeros(n, n) }
    }

    pub fn scaled(&self, c: f64) -> Self {
        let c = Complex64::from(c);
        Self { da: &self.da * c, dalpha: &self.dalpha * c }
    }

    pub fn plus(&self, other: &Self) -> Self {
        Self { da: &self.da + &other.da, dalpha: &self.dalpha + &other.dalpha }
    }
}

/// Canonical form `Ω(u₁, u₂) = Tr(α̇₂ȧ₁) - Tr(α̇₁ȧ₂)` on `T*V`.
pub fn canonical_form(u1: &PhaseTangent, u2: &PhaseTangent) -> f64 {
    trace_pairing(&u2.dalpha, &u1.da) - trace_pairing(&u1.dalpha, &u2.da)
}

/// Canonical form on `T*Σ ≅ ℝⁿ × ℝⁿ`.
pub fn canonical_form_slice(dq1: &[f64], dp1: &[f64], dq2: &[f64], dp2: &[f64]) -> f64 {
    let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
    dot(dp2, dq1) - dot(dp1, dq2)
}

/// Comparison of two evaluations of the same 2-form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FormCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
}

impl FormCheck {
    fn new(lhs: f64, rhs: f64) -> Self {
        Self { lhs, rhs, residual: (lhs - rhs).abs() }
    }
}

fn psi(frame: &CMat, s: &[f64], eta: &[f64], lam: &CMat) -> (CMat, CMat) {
    let mut local = connection_dual_raw(s, lam);
    for (i, e) in eta.iter().enumerate() {
        local[(i, i)] = Complex64::from(*e);
    }
    (conjugate(frame, &diag_real(s)), conjugate(frame, &local))
}

/// `ψ(s, ξ, η, λ) = (Ad(exp ξ)·diag(s), Ad(exp ξ)·(diag(η) + A_s^*(λ)))`.
pub fn weinstein_map(w: &WeinsteinChartPoint) -> PhasePoint {
    let (a, alpha) = psi(&w.frame(), &w.s, &w.eta, w.lam.matrix());
    PhasePoint { a: ConfigElement::new_unchecked(a), alpha: ConfigElement::new_unchecked(alpha) }
}

fn check_step(h: f64) -> Result<()> {
    if h.is_nan() || h < tol::MIN_FD_STEP {
        return Err(Error::StepUnderflow { h });
    }
    Ok(())
}

/// Point of the chart curve through `w` with velocity `t` at parameter `x`.
fn chart_curve(w: &WeinsteinChartPoint, frame: &CMat, t: &ChartTangent, x: f64) -> (CMat, CMat) {
    let moving = AlgebraElement::new_unchecked(conjugate(frame, t.dxi.matrix()) * Complex64::from(x));
    let g = matrix_exp(&moving) * frame;
    let s: Vec<f64> = w.s.iter().zip(&t.ds).map(|(a, b)| a + x * b).collect();
    let eta: Vec<f64> = w.eta.iter().zip(&t.deta).map(|(a, b)| a + x * b).collect();
    let lam = w.lam.matrix() + t.dlam.matrix() * Complex64::from(x);
    psi(&g, &s, &eta, &lam)
}

/// `Tψ·t` by central differences.
pub fn push_forward(w: &WeinsteinChartPoint, t: &ChartTangent, h: f64) -> Result<PhaseTangent> {
    check_step(h)?;
    let frame = w.frame();
    let (ap, alp) = chart_curve(w, &frame, t, h);
    let (am, alm) = chart_curve(w, &frame, t, -h);
    let scale = Complex64::from(0.5 / h);
    Ok(PhaseTangent { da: (ap - am) * scale, dalpha: (alp - alm) * scale })
}

/// Curvature of the mechanical connection at `a` on the tangent vectors
/// `v₁, v₂ ∈ V`: `dA(v₁, v₂) - [A(v₁), A(v₂)]`, with `dA` from central
/// differences of [`connection_form`] along constant extensions.
pub fn curvature_at(a: &ConfigElement, v1: &ConfigElement, v2: &ConfigElement, h: f64) -> Result<AlgebraElement> {
    check_step(h)?;
    let shifted =
        |v: &ConfigElement, x: f64| ConfigElement::new_unchecked(a.matrix() + v.matrix() * Complex64::from(x));
    let derivative = |along: &ConfigElement, of: &ConfigElement| -> Result<CMat> {
        let plus = connection_form(&shifted(along, h), of)?;
        let minus = connection_form(&shifted(along, -h), of)?;
        Ok((plus.matrix() - minus.matrix()) * Complex64::from(0.5 / h))
    };
    let da = derivative(v1, v2)? - derivative(v2, v1)?;
    let a1 = connection_form(a, v1)?;
    let a2 = connection_form(a, v2)?;
    Ok(AlgebraElement::new_unchecked(da - bracket(a1.matrix(), a2.matrix())))
}

/// Base-point velocity `q' = Ad(g)(diag(ds) + [dξ, diag(s)])` of a chart tangent.
fn base_velocity(w: &WeinsteinChartPoint, frame: &CMat, t: &ChartTangent) -> ConfigElement {
    let local = diag_real(&t.ds) + bracket(t.dxi.matrix(), &diag_real(&w.s));
    ConfigElement::new_unchecked(conjugate(frame, &local))
}

/// Curvature evaluated on the base-point velocities of two chart tangents.
pub fn curvature_fd(w: &WeinsteinChartPoint, t1: &ChartTangent, t2: &ChartTangent, h: f64) -> Result<AlgebraElement> {
    let frame = w.frame();
    let base = ConfigElement::new_unchecked(conjugate(&frame, &diag_real(&w.s)));
    curvature_at(&base, &base_velocity(w, &frame, t1), &base_velocity(w, &frame, t2), h)
}

/// Compares `(ψ*Ω)(t₁, t₂)` with `Ω^{T*Σ}(t₁, t₂) - dB(t₁, t₂)`, where
/// `dB = <λ'₁, Z₂> - <λ'₂, Z₁> + <λ, Curv(q'₁, q'₂)> + <λ, [Z₁, Z₂]>`.
pub fn verify_weinstein_form(
    w: &WeinsteinChartPoint,
    t1: &ChartTangent,
    t2: &ChartTangent,
    h: f64,
) -> Result<FormCheck> {
    let lhs = canonical_form(&push_forward(w, t1, h)?, &push_forward(w, t2, h)?);

    let frame = w.frame();
    let lam = conjugate(&frame, w.lam.matrix());
    let vertical = |t: &ChartTangent| conjugate(&frame, t.dxi.matrix());
    let lam_dot = |t: &ChartTangent, z: &CMat| bracket(z, &lam) + conjugate(&frame, t.dlam.matrix());
    let (z1, z2) = (vertical(t1), vertical(t2));
    let (l1, l2) = (lam_dot(t1, &z1), lam_dot(t2, &z2));
    let curvature = curvature_fd(w, t1, t2, h)?;
    let db = trace_pairing(&l1, &z2) - trace_pairing(&l2, &z1)
        + trace_pairing(&lam, curvature.matrix())
        + trace_pairing(&lam, &bracket(&z1, &z2));
    let rhs = canonical_form_slice(&t1.ds, &t1.deta, &t2.ds, &t2.deta) - db;
    Ok(FormCheck::new(lhs, rhs))
}

/// Full `u(n)` basis: `su(n)` plus `i·I/√n`.
fn unitary_basis(datum: &RestrictedRootDatum) -> Vec<CMat> {
    let n = datum.n;
    let mut basis = datum.algebra_basis();
    basis.push(CMat::identity(n, n) * (I / (n as f64).sqrt()));
    basis
}

/// Least-squares solution `X` of `[X, Z] = ż`, with the solve residual.
pub fn solve_orbit_velocity(z: &CMat, zdot: &CMat) -> Result<(AlgebraElement, f64)> {
    let datum = build_restricted_root_datum(z.nrows())?;
    let basis = unitary_basis(&datum);
    let columns: Vec<DVector<f64>> = basis.iter().map(|b| realify(&bracket(b, z))).collect();
    let m = DMatrix::from_columns(&columns);
    let (x, residual) = least_squares(&m, &realify(zdot));
    let n = z.nrows();
    let sol = basis.iter().zip(x.iter()).fold(CMat::zeros(n, n), |acc, (b, c)| acc + b * Complex64::from(*c));
    Ok((AlgebraElement::new_unchecked(sol), residual))
}

fn orbit_term(z: &CMat, zdot1: &CMat, zdot2: &CMat) -> Result<f64> {
    let mut xs = Vec::with_capacity(2);
    for zdot in [zdot1, zdot2] {
        let (x, residual) = solve_orbit_velocity(z, zdot)?;
        if residual > 1e-8 * (1.0 + zdot.norm()) {
            return Err(Error::IllConditioned { residual });
        }
        xs.push(x);
    }
    Ok(kks_form(&AlgebraElement::new_unchecked(z.clone()), &xs[0], &xs[1]))
}

/// `Tμ·u = [ȧ, α] + [a, α̇]`.
pub fn momentum_derivative(x: &PhasePoint, u: &PhaseTangent) -> CMat {
    bracket(&u.da, x.alpha.matrix()) + bracket(x.a.matrix(), &u.dalpha)
}

/// Derivative of the slice coordinates along `u`, by the fourth-order
/// five-point central stencil applied to [`project_point`].
pub fn reduced_derivative(x: &PhasePoint, u: &PhaseTangent, h: f64) -> Result<(Vec<f64>, Vec<f64>, CMat)> {
    check_step(h)?;
    let at = |s: f64| {
        project_point(&PhasePoint {
            a: ConfigElement::new_unchecked(x.a.matrix() + &u.da * Complex64::from(s)),
            alpha: ConfigElement::new_unchecked(x.alpha.matrix() + &u.dalpha * Complex64::from(s)),
        })
    };
    let (p2, p1, m1, m2) = (at(2.0 * h)?, at(h)?, at(-h)?, at(-2.0 * h)?);
    let stencil = |f: &dyn Fn(&ReducedPoint) -> Vec<f64>| {
        let (a, b, c, d) = (f(&p2), f(&p1), f(&m1), f(&m2));
        (0..a.len()).map(|i| (-a[i] + 8.0 * b[i] - 8.0 * c[i] + d[i]) / (12.0 * h)).collect::<Vec<_>>()
    };
    let dz = (-p2.z.matrix() + p1.z.matrix() * Complex64::from(8.0) - m1.z.matrix() * Complex64::from(8.0)
        + m2.z.matrix())
        * Complex64::from(1.0 / (12.0 * h));
    Ok((stencil(&|r| r.q.clone()), stencil(&|r| r.p.clone()), dz))
}

/// Compares `Ω(u₁, u₂) + Ω^O(Tμ·u₁, Tμ·u₂)` at `μ(x)` with the reduced form
/// `Ω^{T*Σ} + Ω^O` evaluated on the projected tangents at the gauge-fixed
/// spin. Both sides use the orbit form written with `kks_form`; with the
/// pairing `-Re Tr` the cotangent momentum map is `-μ`, which turns the
/// subtracted orbit term into an added one.
pub fn verify_reduced_form(x: &PhasePoint, u1: &PhaseTangent, u2: &PhaseTangent, h: f64) -> Result<FormCheck> {
    let mu = momentum_map(x);
    let lhs =
        canonical_form(u1, u2) + orbit_term(mu.matrix(), &momentum_derivative(x, u1), &momentum_derivative(x, u2))?;

    let r = project_point(x)?;
    let (dq1, dp1, dz1) = reduced_derivative(x, u1, h)?;
    let (dq2, dp2, dz2) = reduced_derivative(x, u2, h)?;
    let rhs = canonical_form_slice(&dq1, &dp1, &dq2, &dp2) + orbit_term(r.z.matrix(), &dz1, &dz2)?;
    Ok(FormCheck::new(lhs, rhs))
}

/// Direction of the free flow, `(α, 0)`.
pub fn free_flow_tangent(x: &PhasePoint) -> PhaseTangent {
    PhaseTangent { da: x.alpha.matrix().clone(), dalpha: CMat::zeros(x.dim(), x.dim()) }
}

/// Fundamental vector field `([X, a], [X, α])`.
pub fn gauge_tangent(x: &PhasePoint, generator: &AlgebraElement) -> PhaseTangent {
    PhaseTangent {
        da: bracket(generator.matrix(), x.a.matrix()),
        dalpha: bracket(generator.matrix(), x.alpha.matrix()),
    }
}

/// Tangent to the constraint obtained by moving the slice coordinates:
/// `q ↦ q + t·dq`, `p ↦ p + t·dp` and `Z ↦ Z + t·[Y, Z]` in the frame of
/// `x`. The component of `Y` that would push `Z` off `m^⊥` is removed.
pub fn slice_tangent(x: &PhasePoint, dq: &[f64], dp: &[f64], y: &AlgebraElement) -> Result<PhaseTangent> {
    let n = x.dim();
    let (g, q) = diagonalize_to_chamber(&x.a)?;
    let local = g.adjoint() * x.alpha.matrix() * &g;
    let z = CMat::from_fn(n, n, |i, j| local[(i, j)] * (q[i] - q[j]));

    let datum = build_restricted_root_datum(n)?;
    let basis = datum.algebra_basis();
    let coeffs = DVector::from_iterator(basis.len(), basis.iter().map(|b| -trace_pairing(y.matrix(), b)));
    let constraint = DMatrix::from_fn(n, basis.len(), |i, k| bracket(&basis[k], &z)[(i, i)].im);
    let (normal, _) = least_squares(&constraint, &(&constraint * &coeffs));
    let admissible = coeffs - normal;
    let y = basis.iter().zip(admissible.iter()).fold(CMat::zeros(n, n), |acc, (b, c)| acc + b * Complex64::from(*c));
    let dz = bracket(&y, &z);

    let dual_dot = CMat::from_fn(n, n, |i, j| {
        if i == j {
            Complex64::from(dp[i])
        } else {
            let d = q[i] - q[j];
            dz[(i, j)] / d - z[(i, j)] * ((dq[i] - dq[j]) / (d * d))
        }
    });
    Ok(PhaseTangent { da: conjugate(&g, &diag_real(dq)), dalpha: conjugate(&g, &dual_dot) })
}

/// Random tangent to `μ^{-1}(O)` at `x`: a combination of the free-flow,
/// gauge and slice directions.
pub fn random_constrained_tangent(x: &PhasePoint, rng: &mut SampleRng) -> Result<PhaseTangent> {
    let n = x.dim();
    let datum = build_restricted_root_datum(n)?;
    let flow = free_flow_tangent(x).scaled(sample::normal(rng));
    let gauge = gauge_tangent(x, &sample::random_algebra(&datum, rng));
    let dq = sample::random_vector(n, rng);
    let dp = sample::random_vector(n, rng);
    let slice = slice_tangent(x, &dq, &dp, &sample::random_algebra(&datum, rng))?;
    Ok(flow.plus(&gauge).plus(&slice))
}

/// Random Hermitian matrix whose eigenvalue gaps are at least `min_gap`.
pub fn random_regular_config(n: usize, min_gap_size: f64, rng: &mut SampleRng) -> ConfigElement {
    loop {
        let a = sample::random_config(n, rng);
        let spectrum = crate::linalg::hermitian_spectrum(a.matrix());
        if min_gap(&spectrum) >= min_gap_size {
            return a;
        }
    }
}

fn random_unitary(datum: &RestrictedRootDatum, rng: &mut SampleRng) -> CMat {
    matrix_exp(&sample::random_algebra(datum, rng))
}

/// Largest residual of each connection identity over a batch of samples.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConnectionReport {
    pub n: usize,
    pub samples: usize,
    /// `ζ(A(ζ_X(a))) = ζ_X(a)`.
    pub zeta_a_zeta: f64,
    /// `[a, A_a^*(λ)] = λ` for `λ ⊥ g_a`.
    pub mu_after_dual: f64,
    /// `A_a^*([a, v]) = v` for vertical `v`.
    pub dual_after_mu: f64,
    /// `A_{g·a}(g·v) = Ad(g)·A_a(v)`.
    pub equivariance: f64,
    /// `Re Tr(A_a^*(λ)·v) = Re Tr(λ·A_a(v))`.
    pub duality: f64,
    /// Smallest eigenvalue of the locked inertia tensor seen.
    pub inertia_min_eigenvalue: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl ConnectionReport {
    pub fn max_residual(&self) -> f64 {
        self.zeta_a_zeta.max(self.mu_after_dual).max(self.dual_after_mu).max(self.equivariance).max(self.duality)
    }
}

pub fn check_connection_identities(n: usize, seed: u64, samples: usize) -> Result<ConnectionReport> {
    let datum = build_restricted_root_datum(n)?;
    let mut rng = sample::rng(seed);
    let mut report = ConnectionReport {
        n,
        samples,
        zeta_a_zeta: 0.0,
        mu_after_dual: 0.0,
        dual_after_mu: 0.0,
        equivariance: 0.0,
        duality: 0.0,
        inertia_min_eigenvalue: f64::INFINITY,
        tolerance: 1e-9,
        passed: false,
    };
    for _ in 0..samples {
        let a = random_regular_config(n, 0.05, &mut rng);
        let (frame, _) = diagonalize_to_chamber(&a)?;

        let x = sample::random_algebra(&datum, &mut rng);
        let zeta = bracket(x.matrix(), a.matrix());
        let ax = connection_form(&a, &ConfigElement::new_unchecked(zeta.clone()))?;
        report.zeta_a_zeta = report.zeta_a_zeta.max((bracket(ax.matrix(), a.matrix()) - &zeta).norm());

        let lam = AlgebraElement::new_unchecked(conjugate(&frame, sample::random_m_perp(&datum, &mut rng).matrix()));
        let dual = connection_dual_at(&a, &lam)?;
        report.mu_after_dual = report.mu_after_dual.max((bracket(a.matrix(), dual.matrix()) - lam.matrix()).norm());

        let xv = AlgebraElement::new_unchecked(conjugate(&frame, sample::random_m_perp(&datum, &mut rng).matrix()));
        let vertical = bracket(xv.matrix(), a.matrix());
        let mu = AlgebraElement::new_unchecked(bracket(a.matrix(), &vertical));
        let back = connection_dual_at(&a, &mu)?;
        report.dual_after_mu = report.dual_after_mu.max((back.matrix() - &vertical).norm());

        let v = sample::random_config(n, &mut rng);
        let g = random_unitary(&datum, &mut rng);
        let moved_a = ConfigElement::new_unchecked(conjugate(&g, a.matrix()));
        let moved_v = ConfigElement::new_unchecked(conjugate(&g, v.matrix()));
        let lhs = connection_form(&moved_a, &moved_v)?;
        let av = connection_form(&a, &v)?;
        report.equivariance = report.equivariance.max((lhs.matrix() - conjugate(&g, av.matrix())).norm());

        let duality = trace_pairing(dual.matrix(), v.matrix()) - trace_pairing(lam.matrix(), av.matrix());
        report.duality = report.duality.max(duality.abs());

        report.inertia_min_eigenvalue = report.inertia_min_eigenvalue.min(locked_inertia(&a)?.min_eigenvalue());
    }
    report.passed = report.max_residual() <= report.tolerance && report.inertia_min_eigenvalue > 0.0;
    Ok(report)
}

/// Summary of a batch of 2-form comparisons.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FormSuiteReport {
    pub n: usize,
    pub samples: usize,
    /// Samples in which at least one tangent has a vertical component.
    pub vertical_samples: usize,
    /// Samples dropped because a least-squares solve was ill-conditioned.
    pub skipped: usize,
    pub max_residual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

/// Random chart point with frame near the identity.
pub fn random_chart_point(n: usize, rng: &mut SampleRng) -> Result<WeinsteinChartPoint> {
    let datum = build_restricted_root_datum(n)?;
    let s = sample::random_chamber(n, 0.5, rng);
    let xi = AlgebraElement::new_unchecked(sample::random_m_perp(&datum, rng).matrix() * Complex64::from(0.5));
    let eta = sample::random_vector(n, rng);
    let lam = sample::random_m_perp(&datum, rng);
    WeinsteinChartPoint::new(s, xi, eta, lam)
}

/// Random chart tangent; `vertical = false` gives `dξ = 0`.
pub fn random_chart_tangent(n: usize, vertical: bool, rng: &mut SampleRng) -> Result<ChartTangent> {
    let datum = build_restricted_root_datum(n)?;
    let dxi = if vertical { sample::random_m_perp(&datum, rng) } else { AlgebraElement::zeros(n) };
    Ok(ChartTangent {
        ds: sample::random_vector(n, rng),
        deta: sample::random_vector(n, rng),
        dxi,
        dlam: sample::random_m_perp(&datum, rng),
    })
}

/// Weinstein form identity on `samples` random chart/tangent pairs. Every
/// fourth pair is purely horizontal; the rest carry vertical components.
pub fn weinstein_suite(n: usize, seed: u64, samples: usize, h: f64) -> Result<FormSuiteReport> {
    let mut rng = sample::rng(seed);
    let mut report = FormSuiteReport {
        n,
        samples,
        vertical_samples: 0,
        skipped: 0,
        max_residual: 0.0,
        tolerance: tol::FINITE_DIFFERENCE,
        passed: false,
    };
    for k in 0..samples {
        let vertical = k % 4 != 0;
        let w = random_chart_point(n, &mut rng)?;
        let t1 = random_chart_tangent(n, vertical, &mut rng)?;
        let t2 = random_chart_tangent(n, vertical, &mut rng)?;
        if vertical {
            report.vertical_samples += 1;
        }
        let check = verify_weinstein_form(&w, &t1, &t2, h)?;
        report.max_residual = report.max_residual.max(check.residual);
    }
    report.passed = report.max_residual <= report.tolerance;
    Ok(report)
}

/// Reduced-form identity on `samples` random constrained tangent pairs.
pub fn reduced_form_suite(n: usize, seed: u64, samples: usize, h: f64) -> Result<FormSuiteReport> {
    let mut rng = sample::rng(seed);
    let mut report = FormSuiteReport {
        n,
        samples,
        vertical_samples: 0,
        skipped: 0,
        max_residual: 0.0,
        tolerance: tol::FINITE_DIFFERENCE,
        passed: false,
    };
    for _ in 0..samples {
        let x = PhasePoint::new(random_regular_config(n, 0.3, &mut rng), sample::random_config(n, &mut rng))?;
        let u1 = random_constrained_tangent(&x, &mut rng)?;
        let u2 = random_constrained_tangent(&x, &mut rng)?;
        report.vertical_samples += 1;
        match verify_reduced_form(&x, &u1, &u2, h) {
            Ok(check) => report.max_residual = report.max_residual.max(check.residual),
            Err(Error::IllConditioned { .. }) => report.skipped += 1,
            Err(e) => return Err(e),
        }
    }
    report.passed = report.max_residual <= report.tolerance && report.skipped < samples;
    Ok(report)
}

/// All geometric checks at one dimension.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VerifyReport {
    pub connection: ConnectionReport,
    pub weinstein: FormSuiteReport,
    pub reduced_form: FormSuiteReport,
    pub passed: bool,
}

pub fn run_suite(n: usize, seed: u64, samples: usize) -> Result<VerifyReport> {
    let connection = check_connection_identities(n, seed, samples)?;
    let weinstein = weinstein_suite(n, seed, samples, tol::FD_STEP)?;
    let reduced_form = reduced_form_suite(n, seed, samples, tol::FD_STEP)?;
    let passed = connection.passed && weinstein.passed && reduced_form.passed;
    Ok(VerifyReport { connection, weinstein, reduced_form, passed })
}
