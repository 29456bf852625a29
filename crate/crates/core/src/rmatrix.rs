//! Classical dynamical r-matrices obtained from the dual of the mechanical
//! connection, and a numerical check of the classical dynamical Yang–Baxter
//! equation in the fundamental representation of `sl(n, ℂ)`.
//!
//! An r-matrix is held both as an operator on `sl(n)` and as a 2-tensor
//! `Σ c·a⊗b`; the two are related by contraction in the second factor,
//! `R(λ) = Σ c·a·Tr(bλ)`.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lie::{cartan_basis, diag_real, elementary, CMat, Complex64};
use crate::linalg::min_gap;
use crate::tol;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Rational,
    Trigonometric,
}

/// Sign pattern of the derivative terms in the CDYBE.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Convention {
    /// `x^(1)∂r²³ - x^(2)∂r¹³ + x^(3)∂r¹²`.
    Standard,
    /// `-x^(1)∂r²³ + x^(2)∂r¹³ - x^(3)∂r¹²`.
    Mirrored,
}

impl Convention {
    fn signs(self) -> [f64; 3] {
        match self {
            Convention::Standard => [1.0, -1.0, 1.0],
            Convention::Mirrored => [-1.0, 1.0, -1.0],
        }
    }
}

/// Optional deformations, used for the sensitivity probes.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Variant {
    /// Scale the coefficient of `E_ij ⊗ E_ji` by the given factor.
    pub scale_root: Option<((usize, usize), f64)>,
    /// Use `coth(-α(a)/2)` in place of `coth(α(a)/2)`.
    pub flip_argument: bool,
}

/// One summand `c·a⊗b`.
#[derive(Debug, Clone, PartialEq)]
pub struct TensorTerm {
    pub coeff: f64,
    pub left: CMat,
    pub right: CMat,
}

/// `Ω = Σ x_k⊗x_k + Σ_{i≠j} E_ij⊗E_ji` for the trace form.
#[derive(Debug, Clone, PartialEq)]
pub struct CasimirTensor {
    pub n: usize,
    pub terms: Vec<TensorTerm>,
}

fn cartan_matrices(n: usize) -> Vec<CMat> {
    cartan_basis(n).iter().map(|d| diag_real(d)).collect()
}

fn off_diagonal_pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
}

impl CasimirTensor {
    pub fn new(n: usize) -> Self {
        let mut terms: Vec<TensorTerm> =
            cartan_matrices(n).into_iter().map(|x| TensorTerm { coeff: 1.0, left: x.clone(), right: x }).collect();
        for (i, j) in off_diagonal_pairs(n) {
            terms.push(TensorTerm { coeff: 1.0, left: elementary(n, i, j), right: elementary(n, j, i) });
        }
        Self { n, terms }
    }

    pub fn matrix(&self) -> CMat {
        two_tensor(&self.terms, self.n)
    }

    /// `max_X |[X⊗1 + 1⊗X, Ω]|` over the elementary matrices.
    pub fn invariance_residual(&self) -> f64 {
        let n = self.n;
        let omega = self.matrix();
        let id = CMat::identity(n, n);
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                let x = elementary(n, i, j);
                let delta = x.kronecker(&id) + id.kronecker(&x);
                worst = worst.max((&delta * &omega - &omega * &delta).norm());
            }
        }
        worst
    }
}

/// `Σ c·a⊗b` as an `n²×n²` matrix.
pub fn two_tensor(terms: &[TensorTerm], n: usize) -> CMat {
    terms.iter().fold(CMat::zeros(n * n, n * n), |acc, t| acc + t.left.kronecker(&t.right) * Complex64::from(t.coeff))
}

/// Swapped tensor `r²¹`.
pub fn flipped(terms: &[TensorTerm]) -> Vec<TensorTerm> {
    terms.iter().map(|t| TensorTerm { coeff: t.coeff, left: t.right.clone(), right: t.left.clone() }).collect()
}

/// Embeds `Σ c·a⊗b` into `(ℂⁿ)^⊗3` with `a` in slot `first` and `b` in slot `second`.
fn embed3(terms: &[TensorTerm], n: usize, first: usize, second: usize) -> CMat {
    let id = CMat::identity(n, n);
    terms.iter().fold(CMat::zeros(n * n * n, n * n * n), |acc, t| {
        let mut factors = [&id, &id, &id];
        factors[first] = &t.left;
        factors[second] = &t.right;
        acc + factors[0].kronecker(factors[1]).kronecker(factors[2]) * Complex64::from(t.coeff)
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct DynamicalRMatrix {
    pub family: Family,
    pub n: usize,
    pub base: Vec<f64>,
    /// Matrix of the operator in the basis `{E_ij}_{i≠j} ∪ {x_k}`.
    pub operator: DMatrix<Complex64>,
    pub tensor: Vec<TensorTerm>,
}

/// Basis `{E_ij}_{i≠j}` (row-major) followed by the orthonormal Cartan basis.
pub fn sl_basis(n: usize) -> Vec<CMat> {
    let mut basis: Vec<CMat> = off_diagonal_pairs(n).map(|(i, j)| elementary(n, i, j)).collect();
    basis.extend(cartan_matrices(n));
    basis
}

/// Coordinates of a traceless matrix in [`sl_basis`].
pub fn sl_coordinates(m: &CMat) -> Vec<Complex64> {
    let n = m.nrows();
    let mut out: Vec<Complex64> = off_diagonal_pairs(n).map(|(i, j)| m[(i, j)]).collect();
    for x in cartan_matrices(n) {
        out.push((&x * m).trace());
    }
    out
}

fn root_coefficient(family: Family, alpha: f64, variant: &Variant) -> f64 {
    match family {
        Family::Rational => 1.0 / alpha,
        Family::Trigonometric => {
            let arg = if variant.flip_argument { -alpha } else { alpha };
            0.5 * (1.0 + 1.0 / (arg / 2.0).tanh())
        }
    }
}

fn check_base(n: usize, q: &[f64]) -> Result<()> {
    if q.len() != n {
        return Err(Error::DimensionMismatch { left: n, right: q.len() });
    }
    if n < 2 {
        return Err(Error::RankTooSmall { n });
    }
    if q.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite);
    }
    let mut sorted = q.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let gap = min_gap(&sorted);
    if gap < tol::EPS_REG {
        return Err(Error::NonRegular { min_gap: gap });
    }
    Ok(())
}

impl DynamicalRMatrix {
    pub fn build(family: Family, q: &[f64], variant: &Variant) -> Result<Self> {
        let n = q.len();
        check_base(n, q)?;
        let cartan_coeff = match family {
            Family::Rational => 0.0,
            Family::Trigonometric => 0.5,
        };
        let mut tensor = Vec::new();
        let mut diagonal = Vec::new();
        for (i, j) in off_diagonal_pairs(n) {
            let mut c = root_coefficient(family, q[i] - q[j], variant);
            if let Some(((a, b), s)) = variant.scale_root {
                if (a, b) == (i, j) {
                    c *= s;
                }
            }
            diagonal.push(Complex64::from(c));
            tensor.push(TensorTerm { coeff: c, left: elementary(n, i, j), right: elementary(n, j, i) });
        }
        for x in cartan_matrices(n) {
            diagonal.push(Complex64::from(cartan_coeff));
            if cartan_coeff != 0.0 {
                tensor.push(TensorTerm { coeff: cartan_coeff, left: x.clone(), right: x });
            }
        }
        let operator = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(diagonal));
        Ok(Self { family, n, base: q.to_vec(), operator, tensor })
    }

    /// `R(λ)` using the operator matrix.
    pub fn apply(&self, lambda: &CMat) -> CMat {
        let coords = nalgebra::DVector::from_vec(sl_coordinates(lambda));
        let image = &self.operator * coords;
        sl_basis(self.n).iter().zip(image.iter()).fold(CMat::zeros(self.n, self.n), |acc, (b, c)| acc + b * *c)
    }

    /// `R(λ) = Σ c·a·Tr(bλ)` using the tensor.
    pub fn contract(&self, lambda: &CMat) -> CMat {
        self.tensor
            .iter()
            .fold(CMat::zeros(self.n, self.n), |acc, t| acc + &t.left * ((&t.right * lambda).trace() * t.coeff))
    }

    /// Largest discrepancy between the operator and tensor forms on the basis.
    pub fn consistency_residual(&self) -> f64 {
        sl_basis(self.n).iter().map(|b| (self.apply(b) - self.contract(b)).norm()).fold(0.0, f64::max)
    }

    pub fn matrix(&self) -> CMat {
        two_tensor(&self.tensor, self.n)
    }

    /// `|r + r²¹ - target|_max` where the target is `0` for the rational
    /// family and `Ω` for the trigonometric one.
    pub fn symmetric_part_residual(&self) -> f64 {
        let sum = self.matrix() + two_tensor(&flipped(&self.tensor), self.n);
        let target = match self.family {
            Family::Rational => CMat::zeros(self.n * self.n, self.n * self.n),
            Family::Trigonometric => CasimirTensor::new(self.n).matrix(),
        };
        (sum - target).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

/// Rational r-matrix `Σ_α E_α⊗E_{-α}/α(q)`.
pub fn rational_r(n: usize, q: &[f64]) -> Result<DynamicalRMatrix> {
    check_base(n, q)?;
    DynamicalRMatrix::build(Family::Rational, q, &Variant::default())
}

/// Trigonometric r-matrix `½Ω + ½Σ_α coth(α(a)/2) E_α⊗E_{-α}`.
pub fn trig_r(n: usize, a: &[f64]) -> Result<DynamicalRMatrix> {
    check_base(n, a)?;
    DynamicalRMatrix::build(Family::Trigonometric, a, &Variant::default())
}

/// Operator norm of the CDYBE left-hand side
/// `Alt(dr) + [r¹²,r¹³] + [r¹²,r²³] + [r¹³,r²³]` on `(ℂⁿ)^⊗3`, with
/// `dr` from central differences of step `h`.
pub fn cdybe_residual_with(
    family: Family,
    q: &[f64],
    h: f64,
    convention: Convention,
    variant: &Variant,
) -> Result<f64> {
    if h.is_nan() || h < tol::MIN_FD_STEP {
        return Err(Error::StepUnderflow { h });
    }
    let n = q.len();
    let r = DynamicalRMatrix::build(family, q, variant)?;
    let r12 = embed3(&r.tensor, n, 0, 1);
    let r13 = embed3(&r.tensor, n, 0, 2);
    let r23 = embed3(&r.tensor, n, 1, 2);
    let comm = |a: &CMat, b: &CMat| a * b - b * a;
    let mut total = comm(&r12, &r13) + comm(&r12, &r23) + comm(&r13, &r23);

    let id = CMat::identity(n, n);
    let signs = convention.signs();
    for (x, dir) in cartan_matrices(n).iter().zip(cartan_basis(n)) {
        let shifted = |s: f64| -> Result<DynamicalRMatrix> {
            let qs: Vec<f64> = q.iter().zip(&dir).map(|(a, d)| a + s * d).collect();
            DynamicalRMatrix::build(family, &qs, variant)
        };
        let plus = shifted(h)?;
        let minus = shifted(-h)?;
        let derivative = |first: usize, second: usize| {
            (embed3(&plus.tensor, n, first, second) - embed3(&minus.tensor, n, first, second))
                * Complex64::from(0.5 / h)
        };
        let x1 = x.kronecker(&id).kronecker(&id);
        let x2 = id.kronecker(x).kronecker(&id);
        let x3 = id.kronecker(&id).kronecker(x);
        total += (x1 * derivative(1, 2)) * Complex64::from(signs[0])
            + (x2 * derivative(0, 2)) * Complex64::from(signs[1])
            + (x3 * derivative(0, 1)) * Complex64::from(signs[2]);
    }
    Ok(total.singular_values().max())
}

/// CDYBE residual in the standard convention.
pub fn cdybe_residual(family: Family, n: usize, q: &[f64], h: f64) -> Result<f64> {
    check_base(n, q)?;
    cdybe_residual_with(family, q, h, Convention::Standard, &Variant::default())
}

/// Residual together with the convention it was measured in.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CdybeCheck {
    pub residual: f64,
    pub convention: Convention,
    pub passed: bool,
}

/// Tries the standard convention and falls back to the mirrored one when
/// the residual exceeds `tolerance`.
pub fn cdybe_check(family: Family, q: &[f64], h: f64, tolerance: f64) -> Result<CdybeCheck> {
    let standard = cdybe_residual_with(family, q, h, Convention::Standard, &Variant::default())?;
    if standard <= tolerance {
        return Ok(CdybeCheck { residual: standard, convention: Convention::Standard, passed: true });
    }
    let mirrored = cdybe_residual_with(family, q, h, Convention::Mirrored, &Variant::default())?;
    if mirrored <= tolerance {
        return Ok(CdybeCheck { residual: mirrored, convention: Convention::Mirrored, passed: true });
    }
    Ok(CdybeCheck { residual: standard.min(mirrored), convention: Convention::Standard, passed: false })
}

/// CDYBE residual after scaling the coefficient of `E_12⊗E_21` by 1.01.
pub fn perturbation_probe(family: Family, q: &[f64], h: f64) -> Result<f64> {
    let variant = Variant { scale_root: Some(((0, 1), 1.01)), flip_argument: false };
    cdybe_residual_with(family, q, h, Convention::Standard, &variant)
}

/// Effect of writing the trigonometric coefficient as `coth(-α(a)/2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CothFlipReport {
    /// `|A(r_flip) + A(r)|`, where `A` is the antisymmetric part; zero
    /// when flipping the argument exactly negates it.
    pub antisymmetric_flip_residual: f64,
    /// `|S(r_flip) - S(r)|` for the symmetric parts.
    pub symmetric_change: f64,
    pub flipped_standard_residual: f64,
    pub flipped_mirrored_residual: f64,
}

pub fn coth_flip_check(a: &[f64], h: f64) -> Result<CothFlipReport> {
    let n = a.len();
    let r = trig_r(n, a)?;
    let flip_variant = Variant { scale_root: None, flip_argument: true };
    let f = DynamicalRMatrix::build(Family::Trigonometric, a, &flip_variant)?;
    let parts = |terms: &[TensorTerm]| {
        let m = two_tensor(terms, n);
        let t = two_tensor(&flipped(terms), n);
        ((&m + &t) * Complex64::from(0.5), (m - t) * Complex64::from(0.5))
    };
    let (sym_r, anti_r) = parts(&r.tensor);
    let (sym_f, anti_f) = parts(&f.tensor);
    Ok(CothFlipReport {
        antisymmetric_flip_residual: (anti_f + anti_r).norm(),
        symmetric_change: (sym_f - sym_r).norm(),
        flipped_standard_residual: cdybe_residual_with(
            Family::Trigonometric,
            a,
            h,
            Convention::Standard,
            &flip_variant,
        )?,
        flipped_mirrored_residual: cdybe_residual_with(
            Family::Trigonometric,
            a,
            h,
            Convention::Mirrored,
            &flip_variant,
        )?,
    })
}

/// One row of a residual scan.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CdybeRow {
    pub family: Family,
    pub base: Vec<f64>,
    pub residual: f64,
    pub convention: Convention,
    pub perturbed_residual: f64,
    pub symmetric_part_residual: f64,
}

/// CDYBE residuals over a list of base points for both families.
pub fn residual_table(points: &[Vec<f64>], h: f64, tolerance: f64) -> Result<Vec<CdybeRow>> {
    let mut rows = Vec::new();
    for family in [Family::Rational, Family::Trigonometric] {
        for q in points {
            let check = cdybe_check(family, q, h, tolerance)?;
            let r = DynamicalRMatrix::build(family, q, &Variant::default())?;
            rows.push(CdybeRow {
                family,
                base: q.clone(),
                residual: check.residual,
                convention: check.convention,
                perturbed_residual: perturbation_probe(family, q, h)?,
                symmetric_part_residual: r.symmetric_part_residual(),
            });
        }
    }
    Ok(rows)
}
