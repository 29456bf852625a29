//! Adjoint orbits of `SU(n)` in `su(n)` (identified with coadjoint orbits
//! through the invariant pairing): sampling, the intersection with `m^⊥`,
//! the normal form of the minimal orbit, Casimirs and the KKS form.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::lie::{
    self, bracket, build_restricted_root_datum, conjugate, max_abs_diag, AlgebraElement, CMat, Complex64, I,
};
use crate::linalg::{anti_hermitian_spectrum, max_abs_diff, rank};
use crate::sample;
use crate::tol;

/// Maximum number of random restarts in [`project_to_ann_m`].
pub const MAX_RESTARTS: u64 = 50;
/// Convergence threshold on `Σ |Z_ii|²`.
pub const ANN_M_THRESHOLD: f64 = 1e-18;
const MAX_ITERATIONS: usize = 200;

/// Rank-one data `(v, c)` describing `Z₀ = i(vv† - cI)` with `c = <v,v>/n`.
#[derive(Debug, Clone, PartialEq)]
pub struct RankOne {
    pub v: Vec<Complex64>,
    pub c: f64,
}

/// Descriptor of the orbit through `Z₀`.
#[derive(Debug, Clone, PartialEq)]
pub struct OrbitSpec {
    generator: AlgebraElement,
    rank_one: Option<RankOne>,
}

/// A point `Z` on the orbit of `spec`.
#[derive(Debug, Clone)]
pub struct OrbitPoint<'a> {
    pub value: AlgebraElement,
    pub spec: &'a OrbitSpec,
}

fn rank_one_generator(v: &[Complex64], c: f64) -> CMat {
    let n = v.len();
    CMat::from_fn(n, n, |i, j| {
        let delta = if i == j { c } else { 0.0 };
        (v[i] * v[j].conj() - Complex64::from(delta)) * I
    })
}

impl OrbitSpec {
    pub fn new(generator: AlgebraElement, rank_one: Option<RankOne>) -> Result<Self> {
        if let Some(r1) = &rank_one {
            let n = generator.dim();
            if r1.v.len() != n {
                return Err(Error::DimensionMismatch { left: n, right: r1.v.len() });
            }
            let c = r1.v.iter().map(|x| x.norm_sqr()).sum::<f64>() / n as f64;
            if (c - r1.c).abs() > tol::STRUCTURAL * (1.0 + c) {
                return Err(Error::InvalidArgument(format!(
                    "rank-one constant c = {} differs from <v,v>/n = {c}",
                    r1.c
                )));
            }
            let residual = (rank_one_generator(&r1.v, r1.c) - generator.matrix()).norm();
            if residual > tol::STRUCTURAL * (1.0 + generator.matrix().norm()) {
                return Err(Error::InvalidArgument(format!(
                    "rank-one data does not reproduce the generator (residual {residual:e})"
                )));
            }
        }
        Ok(Self { generator, rank_one })
    }

    pub fn from_generator(generator: AlgebraElement) -> Self {
        Self { generator, rank_one: None }
    }

    /// Orbit through `i(vv† - cI)`, `c = <v,v>/n`.
    pub fn from_rank_one(v: Vec<Complex64>) -> Result<Self> {
        let n = v.len();
        if n < 2 {
            return Err(Error::RankTooSmall { n });
        }
        let c = v.iter().map(|x| x.norm_sqr()).sum::<f64>() / n as f64;
        if c <= 0.0 {
            return Err(Error::InvalidArgument("rank-one vector must be nonzero".into()));
        }
        let generator = AlgebraElement::new(rank_one_generator(&v, c))?;
        Ok(Self { generator, rank_one: Some(RankOne { v, c }) })
    }

    /// Minimal orbit with `v = sqrt(c)·(1, …, 1)`, which meets `m^⊥` at `Z₀`.
    pub fn minimal(n: usize, c: f64) -> Result<Self> {
        if c <= 0.0 {
            return Err(Error::InvalidArgument(format!("c must be positive, got {c}")));
        }
        Self::from_rank_one(vec![Complex64::from(c.sqrt()); n])
    }

    pub fn generator(&self) -> &AlgebraElement {
        &self.generator
    }

    pub fn rank_one(&self) -> Option<&RankOne> {
        self.rank_one.as_ref()
    }

    pub fn dim(&self) -> usize {
        self.generator.dim()
    }

    /// Spectrum of `-iZ₀`, decreasing.
    pub fn spectrum(&self) -> Vec<f64> {
        anti_hermitian_spectrum(self.generator.matrix())
    }

    /// Largest deviation `| |v_i|² - c |`, or `None` without rank-one data.
    pub fn minimality_defect(&self) -> Option<f64> {
        self.rank_one.as_ref().map(|r| r.v.iter().map(|x| (x.norm_sqr() - r.c).abs()).fold(0.0, f64::max))
    }
}

impl OrbitPoint<'_> {
    /// `max |spec(Z) - spec(Z₀)|`, the orbit-membership certificate.
    pub fn spectrum_residual(&self) -> f64 {
        max_abs_diff(&anti_hermitian_spectrum(self.value.matrix()), &self.spec.spectrum())
    }
}

/// `Z = g Z₀ g†`.
pub fn orbit_point<'a>(spec: &'a OrbitSpec, g: &CMat) -> Result<OrbitPoint<'a>> {
    let value = lie::adjoint_action(g, spec.generator.matrix())?;
    Ok(OrbitPoint { value: AlgebraElement::new_unchecked(value), spec })
}

/// Orbit point at `g = exp(ξ)` with `ξ` Gaussian in an orthonormal basis of
/// `su(n)`. Not Haar distributed.
pub fn random_orbit_sample(spec: &OrbitSpec, seed: u64) -> OrbitPoint<'_> {
    let datum = build_restricted_root_datum(spec.dim()).expect("orbit dimension is at least 2");
    let mut rng = sample::rng(seed);
    let xi = sample::random_algebra(&datum, &mut rng);
    let g = lie::matrix_exp(&xi);
    OrbitPoint { value: AlgebraElement::new_unchecked(conjugate(&g, spec.generator.matrix())), spec }
}

fn diag_residual(z: &CMat) -> f64 {
    (0..z.nrows()).map(|i| z[(i, i)].norm_sqr()).sum()
}

/// Finds a point of the orbit with vanishing diagonal, i.e. in `O ∩ m^⊥`.
///
/// Levenberg-Marquardt on `Σ|diag(Ad(exp ξ) Z)|²` with left-trivialized
/// steps `Z ← Ad(exp δ) Z`, restarted from [`random_orbit_sample`] at
/// seeds `seed, seed+1, …`.
pub fn project_to_ann_m(spec: &OrbitSpec, seed: u64) -> Result<OrbitPoint<'_>> {
    let n = spec.dim();
    let datum = build_restricted_root_datum(n)?;
    let basis = datum.algebra_basis();
    let mut best = f64::INFINITY;
    for restart in 0..MAX_RESTARTS {
        let mut z = random_orbit_sample(spec, seed.wrapping_add(restart)).value.into_matrix();
        let mut f = diag_residual(&z);
        let mut damping = 1e-3;
        let mut polish = 0;
        for _ in 0..MAX_ITERATIONS {
            if f <= ANN_M_THRESHOLD {
                polish += 1;
                if polish > 3 || f == 0.0 {
                    break;
                }
            }
            let moved: Vec<CMat> = basis.iter().map(|e| bracket(e, &z)).collect();
            let jac = DMatrix::from_fn(n, basis.len(), |i, k| moved[k][(i, i)].im);
            let r = DVector::from_fn(n, |i, _| z[(i, i)].im);
            let jt = jac.transpose();
            let mut accepted = false;
            while damping < 1e10 {
                let lhs = &jt * &jac + DMatrix::identity(basis.len(), basis.len()) * damping;
                let Some(chol) = lhs.cholesky() else {
                    damping *= 4.0;
                    continue;
                };
                let step = chol.solve(&(-(&jt * &r)));
                let xi =
                    basis.iter().zip(step.iter()).fold(CMat::zeros(n, n), |acc, (e, c)| acc + e * Complex64::from(*c));
                let g = lie::matrix_exp(&AlgebraElement::new_unchecked(xi));
                let trial = conjugate(&g, &z);
                let ft = diag_residual(&trial);
                if ft < f {
                    z = trial;
                    f = ft;
                    damping = (damping / 3.0).max(1e-14);
                    accepted = true;
                    break;
                }
                damping *= 4.0;
            }
            if !accepted {
                break;
            }
        }
        best = best.min(f);
        if f <= ANN_M_THRESHOLD {
            let z = AlgebraElement::project(&z);
            debug_assert!(max_abs_diag(z.matrix()) <= 1e-9);
            return Ok(OrbitPoint { value: z, spec });
        }
    }
    Err(Error::NoIntersection { best_residual: best })
}

/// Normal form `i·c·(J - I)` (J the all-ones matrix) of the minimal orbit.
pub fn minimal_orbit_normal_form(spec: &OrbitSpec) -> Result<OrbitPoint<'_>> {
    let Some(r1) = spec.rank_one() else {
        return Err(Error::NotMinimalOrbit { reason: "no rank-one data".into() });
    };
    let defect = spec.minimality_defect().unwrap_or(f64::INFINITY);
    if defect > tol::DERIVED {
        return Err(Error::NotMinimalOrbit { reason: format!("max ||v_i|^2 - c| = {defect:e}") });
    }
    let n = spec.dim();
    let value = CMat::from_fn(n, n, |i, j| if i == j { Complex64::from(0.0) } else { I * r1.c });
    Ok(OrbitPoint { value: AlgebraElement::new_unchecked(value), spec })
}

/// KKS form `Ω(Z)([X,Z],[Y,Z]) = <Z, [X,Y]>_g`.
pub fn kks_form(z: &AlgebraElement, x: &AlgebraElement, y: &AlgebraElement) -> f64 {
    -lie::trace_pairing(z.matrix(), &bracket(x.matrix(), y.matrix()))
}

/// Normalized traces `Re(i^{-k} Tr Z^k)` for `k = 2..=k_max`.
pub fn casimirs(z: &CMat, k_max: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(k_max.saturating_sub(1));
    let mut power = z.clone();
    for k in 2..=k_max {
        power = &power * z;
        let tr = power.trace();
        let value = match k % 4 {
            0 => tr.re,
            1 => tr.im,
            2 => -tr.re,
            _ => -tr.im,
        };
        out.push(value);
    }
    out
}

/// Dimension of the orbit through `Z`: rank of `X ↦ [X, Z]` on `su(n)`.
pub fn orbit_dimension(z: &CMat) -> usize {
    let n = z.nrows();
    let datum = build_restricted_root_datum(n).expect("n >= 2");
    let basis = datum.algebra_basis();
    let cols: Vec<DVector<f64>> = basis.iter().map(|e| crate::linalg::realify(&bracket(e, z))).collect();
    rank(&DMatrix::from_columns(&cols), 1e-10)
}
