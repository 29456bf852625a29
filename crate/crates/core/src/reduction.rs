//! Momentum map, mechanical connection and the slice coordinates
//! `(q, p, Z)` on the reduced phase space `T*C_r × O⫽₀M`.
//!
//! A phase point `(a, α)` with regular `a = g·diag(q)·g†` is sent to the
//! chamber position `q`, the slice momentum `p = diag(g†αg)` and the spin
//! `Z = [diag(q), g†αg]`, which has zero diagonal. The inverse direction
//! rebuilds `α̃ = diag(p) + A_q^*(Z)` with `A_q^*(Z)_ij = Z_ij / (q_i - q_j)`.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::lie::{
    bracket, conjugate, diag_real, max_abs_diag, trace_pairing, AlgebraElement, CMat, Complex64, ConfigElement,
    RestrictedRootDatum,
};
use crate::linalg::{hermitian_eigen, min_gap};
use crate::tol;

/// A point `(a, α)` of `T*V ≅ V × V`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhasePoint {
    pub a: ConfigElement,
    pub alpha: ConfigElement,
}

impl PhasePoint {
    pub fn new(a: ConfigElement, alpha: ConfigElement) -> Result<Self> {
        if a.dim() != alpha.dim() {
            return Err(Error::DimensionMismatch { left: a.dim(), right: alpha.dim() });
        }
        Ok(Self { a, alpha })
    }

    pub fn dim(&self) -> usize {
        self.a.dim()
    }
}

/// Normalization applied to the spin of a [`ReducedPoint`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gauge {
    /// No normalization; `Z` is whatever the caller supplied.
    Raw,
    /// Conjugated by a diagonal unitary so that `Z_1j ≥ 0` for all `j`.
    FirstRowReal,
}

/// A point of `T*C_r × O⫽₀M` in gauge-fixed slice coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedPoint {
    pub q: Vec<f64>,
    pub p: Vec<f64>,
    pub z: AlgebraElement,
    pub gauge: Gauge,
}

/// Checks `q_1 > q_2 > … > q_n` with gaps above [`tol::EPS_REG`].
pub fn check_chamber(q: &[f64]) -> Result<()> {
    if q.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite);
    }
    for (index, w) in q.windows(2).enumerate() {
        let gap = w[0] - w[1];
        if gap <= 0.0 {
            return Err(Error::NotDecreasing { index });
        }
        if gap <= tol::EPS_REG {
            return Err(Error::NonRegular { min_gap: gap });
        }
    }
    Ok(())
}

pub(crate) fn check_pairwise_gaps(q: &[f64]) -> Result<()> {
    let mut sorted = q.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let gap = min_gap(&sorted);
    if gap < tol::EPS_REG {
        return Err(Error::NonRegular { min_gap: gap });
    }
    Ok(())
}

fn check_zero_diagonal(z: &CMat) -> Result<()> {
    let max_diag = max_abs_diag(z);
    if max_diag > tol::SPIN_DIAGONAL {
        return Err(Error::DiagonalNotZero { max_diag });
    }
    Ok(())
}

impl ReducedPoint {
    pub fn new(q: Vec<f64>, p: Vec<f64>, z: AlgebraElement) -> Result<Self> {
        let n = q.len();
        if p.len() != n {
            return Err(Error::DimensionMismatch { left: n, right: p.len() });
        }
        if z.dim() != n {
            return Err(Error::DimensionMismatch { left: n, right: z.dim() });
        }
        if p.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite);
        }
        check_chamber(&q)?;
        check_zero_diagonal(z.matrix())?;
        Ok(Self { q, p, z, gauge: Gauge::Raw })
    }

    pub fn dim(&self) -> usize {
        self.q.len()
    }

    /// Gauge-invariant spin observables `|Z_ij|²` for `i < j`, row-major.
    pub fn spin_moduli(&self) -> Vec<f64> {
        spin_moduli(self.z.matrix())
    }

    /// Same point with the spin brought to the first-row-real gauge.
    pub fn gauge_fixed(self) -> Self {
        let (z, gauge) = gauge_fix_spin(&self.z);
        Self { z, gauge, ..self }
    }
}

/// `|Z_ij|²` for `i < j`, row-major.
pub fn spin_moduli(z: &CMat) -> Vec<f64> {
    let n = z.nrows();
    let mut out = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in (i + 1)..n {
            out.push(z[(i, j)].norm_sqr());
        }
    }
    out
}

/// Momentum map `μ(a, α) = [a, α]`.
pub fn momentum_map(x: &PhasePoint) -> AlgebraElement {
    AlgebraElement::new_unchecked(bracket(x.a.matrix(), x.alpha.matrix()))
}

/// Locked inertia tensor `I_q(X, Y) = <[X,q], [Y,q]>_V` on `g_q^⊥`.
#[derive(Debug, Clone)]
pub struct LockedInertia {
    pub base: ConfigElement,
    /// Orthonormal basis of `g_q^⊥`: the restricted-root vectors `E_λ^k`
    /// transported into the eigenframe of `q`.
    pub basis: Vec<CMat>,
    pub gram: DMatrix<f64>,
}

impl LockedInertia {
    pub fn min_eigenvalue(&self) -> f64 {
        self.gram.symmetric_eigenvalues().min()
    }

    /// `max |I - Iᵀ|`.
    pub fn asymmetry(&self) -> f64 {
        (&self.gram - self.gram.transpose()).abs().max()
    }

    /// Solves `I x = rhs` and returns `Σ x_k basis_k`.
    fn solve(&self, rhs: &DVector<f64>) -> Result<CMat> {
        let chol =
            self.gram.clone().cholesky().ok_or(Error::NonRegular { min_gap: self.min_eigenvalue().max(0.0).sqrt() })?;
        let x = chol.solve(rhs);
        let n = self.base.dim();
        Ok(self.basis.iter().zip(x.iter()).fold(CMat::zeros(n, n), |acc, (e, c)| acc + e * Complex64::from(*c)))
    }
}

pub fn locked_inertia(q: &ConfigElement) -> Result<LockedInertia> {
    let n = q.dim();
    let (g, _) = diagonalize_to_chamber(q)?;
    let datum = crate::lie::build_restricted_root_datum(n)?;
    let basis: Vec<CMat> = datum.m_perp_basis().iter().map(|e| conjugate(&g, e)).collect();
    let moved: Vec<CMat> = basis.iter().map(|e| bracket(e, q.matrix())).collect();
    let gram = DMatrix::from_fn(basis.len(), basis.len(), |k, l| trace_pairing(&moved[k], &moved[l]));
    Ok(LockedInertia { base: q.clone(), basis, gram })
}

/// `A_q^*(Z)_ij = Z_ij / (q_i - q_j)`, zero diagonal; no validation.
pub(crate) fn connection_dual_raw(q: &[f64], z: &CMat) -> CMat {
    let n = q.len();
    CMat::from_fn(n, n, |i, j| if i == j { Complex64::from(0.0) } else { z[(i, j)] / (q[i] - q[j]) })
}

/// Dual of the mechanical connection at a diagonal base point.
///
/// Returns the Hermitian matrix with entries `Z_ij/(q_i - q_j)` off the
/// diagonal; it satisfies `[diag(q), A_q^*(Z)] = Z`.
pub fn connection_dual(q: &[f64], z: &AlgebraElement) -> Result<ConfigElement> {
    if z.dim() != q.len() {
        return Err(Error::DimensionMismatch { left: q.len(), right: z.dim() });
    }
    check_pairwise_gaps(q)?;
    check_zero_diagonal(z.matrix())?;
    Ok(ConfigElement::new_unchecked(connection_dual_raw(q, z.matrix())))
}

/// `A_a^*(λ)` at an arbitrary regular base point, for `λ ∈ g_a^⊥`.
pub fn connection_dual_at(a: &ConfigElement, lambda: &AlgebraElement) -> Result<ConfigElement> {
    let (g, q) = diagonalize_to_chamber(a)?;
    let local = g.adjoint() * lambda.matrix() * &g;
    check_zero_diagonal(&local)?;
    Ok(ConfigElement::new_unchecked(conjugate(&g, &connection_dual_raw(&q, &local))))
}

/// Mechanical connection `A_a(v)`: the element `X ∈ g_a^⊥` whose
/// fundamental field `[X, a]` is the vertical part of `v`, found by solving
/// the locked-inertia system `I_a(X, E_k) = <v, [E_k, a]>_V`.
pub fn connection_form(a: &ConfigElement, v: &ConfigElement) -> Result<AlgebraElement> {
    if a.dim() != v.dim() {
        return Err(Error::DimensionMismatch { left: a.dim(), right: v.dim() });
    }
    let inertia = locked_inertia(a)?;
    let rhs = DVector::from_iterator(
        inertia.basis.len(),
        inertia.basis.iter().map(|e| trace_pairing(v.matrix(), &bracket(e, a.matrix()))),
    );
    Ok(AlgebraElement::new_unchecked(inertia.solve(&rhs)?))
}

/// Writes `a = g·diag(q)·g†` with `q` strictly decreasing.
pub fn diagonalize_to_chamber(a: &ConfigElement) -> Result<(CMat, Vec<f64>)> {
    let (q, g) = hermitian_eigen(a.matrix());
    let gap = min_gap(&q);
    if gap < tol::EPS_REG {
        return Err(Error::NonRegular { min_gap: gap });
    }
    Ok((g, q))
}

/// Brings a zero-diagonal spin into the gauge where its first row is real
/// and nonnegative, by conjugation with a diagonal unitary.
pub fn gauge_fix_spin(z: &AlgebraElement) -> (AlgebraElement, Gauge) {
    let m = z.matrix();
    let n = m.nrows();
    let phases: Vec<Complex64> = (0..n)
        .map(|j| {
            let r = m[(0, j)].norm();
            if j == 0 || r <= 1e-12 {
                Complex64::from(1.0)
            } else {
                Complex64::new(m[(0, j)].re / r, m[(0, j)].im / r)
            }
        })
        .collect();
    let mut fixed = CMat::from_fn(n, n, |i, j| phases[i] * m[(i, j)] * phases[j].conj());
    for j in 1..n {
        if m[(0, j)].norm() > 1e-12 {
            let r = fixed[(0, j)].re;
            fixed[(0, j)] = Complex64::from(r);
            fixed[(j, 0)] = Complex64::from(-r);
        }
    }
    (AlgebraElement::new_unchecked(fixed), Gauge::FirstRowReal)
}

/// Slice coordinates of a phase point, gauge-fixed.
pub fn project_point(x: &PhasePoint) -> Result<ReducedPoint> {
    let (g, q) = diagonalize_to_chamber(&x.a)?;
    let local = g.adjoint() * x.alpha.matrix() * &g;
    let n = q.len();
    let p: Vec<f64> = (0..n).map(|i| local[(i, i)].re).collect();
    let z = CMat::from_fn(n, n, |i, j| local[(i, j)] * (q[i] - q[j]));
    let z = AlgebraElement::project(&z);
    let (z, gauge) = gauge_fix_spin(&z);
    Ok(ReducedPoint { q, p, z, gauge })
}

/// Section of the orbit projection: `a = diag(q)`, `α = diag(p) + A_q^*(Z)`.
pub fn embed_reduced(r: &ReducedPoint) -> PhasePoint {
    PhasePoint { a: ConfigElement::diagonal(&r.q), alpha: lax_matrix(r) }
}

/// `H = ½Σ p_i² + Σ_{i>j} |Z_ij|²/(q_i - q_j)²`.
pub fn reduced_hamiltonian(r: &ReducedPoint) -> f64 {
    let n = r.dim();
    let z = r.z.matrix();
    let kinetic = 0.5 * r.p.iter().map(|p| p * p).sum::<f64>();
    let mut potential = 0.0;
    for i in 0..n {
        for j in 0..i {
            let d = r.q[i] - r.q[j];
            potential += z[(i, j)].norm_sqr() / (d * d);
        }
    }
    kinetic + potential
}

/// Lax matrix `L = diag(p) + A_q^*(Z)`.
pub fn lax_matrix(r: &ReducedPoint) -> ConfigElement {
    let mut l = connection_dual_raw(&r.q, r.z.matrix());
    for (i, p) in r.p.iter().enumerate() {
        l[(i, i)] = Complex64::from(*p);
    }
    ConfigElement::new_unchecked(l)
}

/// `A_q^*(Z) = Σ_λ Σ_k z_λ^k/λ(q) B_λ^k` evaluated in the restricted-root basis.
pub fn polar_connection_dual(q: &[f64], z: &AlgebraElement, datum: &RestrictedRootDatum) -> Result<ConfigElement> {
    if datum.n != q.len() || z.dim() != q.len() {
        return Err(Error::DimensionMismatch { left: datum.n, right: q.len() });
    }
    let n = q.len();
    let mut out = CMat::zeros(n, n);
    for root in &datum.positive_restricted_roots {
        let lam = root.eval(q);
        for (e, b) in &root.pairs {
            let coeff = -trace_pairing(z.matrix(), e);
            out += b * Complex64::from(coeff / lam);
        }
    }
    Ok(ConfigElement::new_unchecked(out))
}

/// Reduced Hamiltonian in restricted-root coordinates,
/// `½Σ p_i² + ½ Σ_λ Σ_k (z_λ^k)²/λ(q)²`.
pub fn polar_hamiltonian(r: &ReducedPoint, datum: &RestrictedRootDatum) -> Result<f64> {
    if datum.n != r.dim() {
        return Err(Error::DimensionMismatch { left: datum.n, right: r.dim() });
    }
    let kinetic = 0.5 * r.p.iter().map(|p| p * p).sum::<f64>();
    let mut potential = 0.0;
    for root in &datum.positive_restricted_roots {
        let lam = root.eval(&r.q);
        let weight: f64 = root
            .pairs
            .iter()
            .map(|(e, _)| {
                let coeff = -trace_pairing(r.z.matrix(), e);
                coeff * coeff
            })
            .sum();
        potential += 0.5 * weight / (lam * lam);
    }
    Ok(kinetic + potential)
}

/// `diag(q)` as a configuration.
pub fn chamber_point(q: &[f64]) -> ConfigElement {
    ConfigElement::new_unchecked(diag_real(q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{build_restricted_root_datum, elementary, I};
    use crate::linalg::{hermitian_spectrum, max_abs_diff};
    use crate::sample;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn m2(entries: [Complex64; 4]) -> CMat {
        CMat::from_row_slice(2, 2, &entries)
    }

    fn spin2(z12: Complex64) -> AlgebraElement {
        AlgebraElement::new(m2([c(0., 0.), z12, -z12.conj(), c(0., 0.)])).unwrap()
    }

    #[test]
    fn momentum_map_examples() {
        let diag = PhasePoint::new(ConfigElement::diagonal(&[1., 2.]), ConfigElement::diagonal(&[3., -1.])).unwrap();
        assert_eq!(momentum_map(&diag).matrix().norm(), 0.0);

        let x = PhasePoint::new(
            ConfigElement::diagonal(&[1., -1.]),
            ConfigElement::new(m2([c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)])).unwrap(),
        )
        .unwrap();
        let expected = m2([c(0., 0.), c(2., 0.), c(-2., 0.), c(0., 0.)]);
        assert_eq!(momentum_map(&x).matrix(), &expected);
    }

    #[test]
    fn locked_inertia_examples() {
        let q = ConfigElement::diagonal(&[1., -1.]);
        let inertia = locked_inertia(&q).unwrap();
        // basis vector (E12 - E21)/sqrt2 has I = λ² = 4, so I(X,X) = 8 for X = E12 - E21
        let x = elementary(2, 0, 1) - elementary(2, 1, 0);
        let fx = bracket(&x, q.matrix());
        assert!((trace_pairing(&fx, &fx) - 8.0).abs() < 1e-14);
        assert!((&inertia.gram - DMatrix::from_diagonal_element(2, 2, 4.0)).norm() < 1e-14);

        let q = ConfigElement::diagonal(&[2.0, 0.5, -1.0]);
        let inertia = locked_inertia(&q).unwrap();
        let lams: [f64; 3] = [1.5, 3.0, 1.5];
        let expected = DMatrix::from_fn(6, 6, |k, l| if k == l { lams[k / 2].powi(2) } else { 0.0 });
        assert!((&inertia.gram - expected).norm() < 1e-13);

        assert!(matches!(locked_inertia(&ConfigElement::diagonal(&[1.0, 1.0])), Err(Error::NonRegular { .. })));
    }

    #[test]
    fn locked_inertia_positive_definite() {
        let mut rng = sample::rng(4);
        for n in 2..=4 {
            for _ in 0..5 {
                let a = sample::random_config(n, &mut rng);
                let inertia = locked_inertia(&a).unwrap();
                assert!(inertia.min_eigenvalue() > 0.0);
                assert!(inertia.asymmetry() < 1e-12);
            }
        }
    }

    #[test]
    fn connection_dual_examples() {
        let q = [1.0, -1.0];
        assert_eq!(connection_dual(&q, &AlgebraElement::zeros(2)).unwrap().matrix().norm(), 0.0);
        let z = spin2(c(1., 0.));
        let dual = connection_dual(&q, &z).unwrap();
        let expected = m2([c(0., 0.), c(0.5, 0.), c(0.5, 0.), c(0., 0.)]);
        assert_eq!(dual.matrix(), &expected);
        assert!((bracket(&diag_real(&q), dual.matrix()) - z.matrix()).norm() < 1e-15);

        assert!(matches!(connection_dual(&[1.0, 1.0], &z), Err(Error::NonRegular { .. })));
        let with_diag = AlgebraElement::new(diag_real(&[1., -1.]) * I).unwrap();
        assert!(matches!(connection_dual(&q, &with_diag), Err(Error::DiagonalNotZero { .. })));
    }

    #[test]
    fn connection_dual_is_hermitian() {
        let datum = build_restricted_root_datum(4).unwrap();
        let mut rng = sample::rng(8);
        for _ in 0..20 {
            let q = sample::random_chamber(4, 0.2, &mut rng);
            let z = sample::random_m_perp(&datum, &mut rng);
            let dual = connection_dual(&q, &z).unwrap();
            assert!(crate::lie::hermitian_residual(dual.matrix()) < 1e-14);
        }
    }

    #[test]
    fn connection_form_examples() {
        let a = ConfigElement::diagonal(&[1.5, 0.2, -0.9]);
        let v = ConfigElement::diagonal(&[0.3, -1.0, 2.0]);
        assert!(connection_form(&a, &v).unwrap().matrix().norm() < 1e-14);

        let datum = build_restricted_root_datum(3).unwrap();
        let mut rng = sample::rng(2);
        let x = sample::random_m_perp(&datum, &mut rng);
        let v = ConfigElement::new_unchecked(bracket(x.matrix(), a.matrix()));
        let recovered = connection_form(&a, &v).unwrap();
        assert!((recovered.matrix() - x.matrix()).norm() < 1e-10);
    }

    #[test]
    fn connection_form_reproduces_vertical_vectors() {
        let datum = build_restricted_root_datum(3).unwrap();
        let mut rng = sample::rng(21);
        for _ in 0..10 {
            let a = sample::random_config(3, &mut rng);
            let x = sample::random_algebra(&datum, &mut rng);
            let zeta = bracket(x.matrix(), a.matrix());
            let ax = connection_form(&a, &ConfigElement::new_unchecked(zeta.clone())).unwrap();
            assert!((bracket(ax.matrix(), a.matrix()) - zeta).norm() < 1e-10);
        }
    }

    #[test]
    fn diagonalize_examples() {
        let a = ConfigElement::diagonal(&[3.0, 1.0, -2.0]);
        let (g, q) = diagonalize_to_chamber(&a).unwrap();
        assert_eq!(q, vec![3.0, 1.0, -2.0]);
        for i in 0..3 {
            assert!((g[(i, i)].norm() - 1.0).abs() < 1e-14);
        }

        let a = ConfigElement::new(m2([c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)])).unwrap();
        let (_, q) = diagonalize_to_chamber(&a).unwrap();
        assert!(max_abs_diff(&q, &[1.0, -1.0]) < 1e-15);

        let mut rng = sample::rng(1);
        for n in 2..=4 {
            let a = sample::random_config(n, &mut rng);
            let (g, q) = diagonalize_to_chamber(&a).unwrap();
            assert!(q.windows(2).all(|w| w[0] > w[1]));
            assert!(crate::lie::unitarity_residual(&g) < 1e-10);
            assert!((conjugate(&g, &diag_real(&q)) - a.matrix()).norm() < 1e-10);
        }

        match diagonalize_to_chamber(&ConfigElement::diagonal(&[1.0, 1.0, 0.0])) {
            Err(Error::NonRegular { min_gap }) => assert!(min_gap < 1e-8),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn project_point_hand_example() {
        let x = PhasePoint::new(
            ConfigElement::new(m2([c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)])).unwrap(),
            ConfigElement::diagonal(&[1.0, 0.0]),
        )
        .unwrap();
        let r = project_point(&x).unwrap();
        assert!(max_abs_diff(&r.q, &[1.0, -1.0]) < 1e-14);
        assert!(max_abs_diff(&r.p, &[0.5, 0.5]) < 1e-14);
        assert!((r.z.matrix()[(0, 1)] - c(1.0, 0.0)).norm() < 1e-14);
        assert_eq!(r.gauge, Gauge::FirstRowReal);
        assert!((reduced_hamiltonian(&r) - 0.5).abs() < 1e-14);
        let back = embed_reduced(&r);
        assert!((momentum_map(&back).matrix() - r.z.matrix()).norm() < 1e-14);
    }

    #[test]
    fn project_point_of_commuting_pair() {
        let mut rng = sample::rng(3);
        let a = sample::random_config(3, &mut rng);
        let x = PhasePoint::new(a.clone(), a).unwrap();
        let r = project_point(&x).unwrap();
        assert!(max_abs_diff(&r.q, &r.p) < 1e-12);
        assert!(r.z.matrix().norm() < 1e-12);
    }

    #[test]
    fn embed_examples() {
        let r = ReducedPoint::new(vec![1.0, 0.0, -2.0], vec![0.1, 0.2, 0.3], AlgebraElement::zeros(3)).unwrap();
        let x = embed_reduced(&r);
        assert_eq!(x.a, ConfigElement::diagonal(&r.q));
        assert_eq!(x.alpha, ConfigElement::diagonal(&r.p));

        let datum = build_restricted_root_datum(3).unwrap();
        let mut rng = sample::rng(17);
        let z = sample::random_m_perp(&datum, &mut rng);
        let r = ReducedPoint::new(vec![1.0, 0.0, -2.0], vec![0.1, 0.2, 0.3], z).unwrap();
        let x = embed_reduced(&r);
        assert!((momentum_map(&x).matrix() - r.z.matrix()).norm() < 1e-14);
    }

    #[test]
    fn gauge_fix_examples() {
        let (fixed, gauge) = gauge_fix_spin(&spin2(c(0., 1.)));
        assert_eq!(gauge, Gauge::FirstRowReal);
        assert!((fixed.matrix()[(0, 1)] - c(1., 0.)).norm() < 1e-15);

        let datum = build_restricted_root_datum(4).unwrap();
        let mut rng = sample::rng(5);
        for _ in 0..10 {
            let z = sample::random_m_perp(&datum, &mut rng);
            let (once, _) = gauge_fix_spin(&z);
            let (twice, _) = gauge_fix_spin(&once);
            assert_eq!(once, twice);
            for (x, y) in z.matrix().iter().zip(once.matrix().iter()) {
                assert!((x.norm() - y.norm()).abs() < 1e-14);
            }
            for j in 1..4 {
                assert!(once.matrix()[(0, j)].im == 0.0 && once.matrix()[(0, j)].re >= 0.0);
            }
        }
    }

    #[test]
    fn hamiltonian_examples() {
        let r = ReducedPoint::new(vec![1., -1.], vec![0., 0.], spin2(c(0., 2.))).unwrap();
        assert!((reduced_hamiltonian(&r) - 1.0).abs() < 1e-15);
        let r = ReducedPoint::new(vec![1., -1.], vec![0.5, 0.5], spin2(c(1., 0.))).unwrap();
        assert!((reduced_hamiltonian(&r) - 0.5).abs() < 1e-15);
        let r = ReducedPoint::new(vec![1., -1.], vec![0.3, -2.0], AlgebraElement::zeros(2)).unwrap();
        assert!((reduced_hamiltonian(&r) - 0.5 * (0.09 + 4.0)).abs() < 1e-15);
    }

    #[test]
    fn lax_examples() {
        let r = ReducedPoint::new(vec![1., -1.], vec![0.3, -2.0], AlgebraElement::zeros(2)).unwrap();
        assert_eq!(lax_matrix(&r), ConfigElement::diagonal(&[0.3, -2.0]));

        let mut rng = sample::rng(12);
        for n in 2..=4 {
            let a = sample::random_config(n, &mut rng);
            let alpha = sample::random_config(n, &mut rng);
            let x = PhasePoint::new(a, alpha.clone()).unwrap();
            let r = project_point(&x).unwrap();
            let l = lax_matrix(&r);
            assert!(max_abs_diff(&hermitian_spectrum(l.matrix()), &hermitian_spectrum(alpha.matrix())) < 1e-10);
            let half_trace = 0.5 * trace_pairing(l.matrix(), l.matrix());
            assert!((half_trace - reduced_hamiltonian(&r)).abs() < 1e-12);
        }
    }

    #[test]
    fn polar_examples() {
        let datum = build_restricted_root_datum(3).unwrap();
        let r = ReducedPoint::new(vec![1., 0., -1.], vec![0.3, -0.2, 0.4], AlgebraElement::zeros(3)).unwrap();
        assert!((polar_hamiltonian(&r, &datum).unwrap() - 0.5 * 0.29).abs() < 1e-15);

        // single-root excitation z^1 = s on λ_13
        let s = 0.7;
        let e = &datum.positive_restricted_roots[1].pairs[0].0;
        let r =
            ReducedPoint::new(vec![1., 0., -1.], vec![0., 0., 0.], AlgebraElement::new(e * c(s, 0.)).unwrap()).unwrap();
        assert!((polar_hamiltonian(&r, &datum).unwrap() - 0.5 * s * s / 4.0).abs() < 1e-15);

        let mut rng = sample::rng(33);
        let q = sample::random_chamber(3, 0.3, &mut rng);
        let z = sample::random_m_perp(&datum, &mut rng);
        let a = connection_dual(&q, &z).unwrap();
        let b = polar_connection_dual(&q, &z, &datum).unwrap();
        assert!((a.matrix() - b.matrix()).norm() < 1e-13);
    }

    #[test]
    fn reduced_point_validation() {
        let z = AlgebraElement::zeros(2);
        assert_eq!(ReducedPoint::new(vec![-1., 1.], vec![0., 0.], z.clone()), Err(Error::NotDecreasing { index: 0 }));
        assert!(matches!(
            ReducedPoint::new(vec![1., 1. - 1e-9], vec![0., 0.], z.clone()),
            Err(Error::NonRegular { .. })
        ));
        assert!(matches!(ReducedPoint::new(vec![1., 0.], vec![0.], z), Err(Error::DimensionMismatch { .. })));
    }
}
