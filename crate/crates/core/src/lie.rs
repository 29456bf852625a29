//! Matrix arithmetic for the symmetric pair (su(n), Hermitian matrices).
//!
//! Elements of the Lie algebra `g = su(n)` are traceless anti-Hermitian
//! matrices; configurations live in the space `V` of Hermitian matrices.
//! The two halves are paired by
//!
//! ```text
//!   <a, b>_V = Tr(ab)        (a, b Hermitian)
//!   <X, Y>_g = -Tr(XY)       (X, Y anti-Hermitian, positive definite)
//! ```
//!
//! Both forms are Ad-invariant. Root vectors are normalized against the
//! trace form so that `Tr(E_ij E_ji) = 1`.

use nalgebra::{Complex, DMatrix};
use std::f64::consts::FRAC_1_SQRT_2;

use crate::error::{Error, Result};
use crate::tol;

pub type Complex64 = Complex<f64>;
pub type CMat = DMatrix<Complex64>;

pub const I: Complex64 = Complex64::new(0.0, 1.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Which half of the symmetric pair a matrix belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Space {
    Algebra,
    Config,
}

/// An element of `su(n)`: anti-Hermitian and traceless.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraElement(CMat);

/// An element of `V`: a Hermitian matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigElement(CMat);

fn scale(m: &CMat) -> f64 {
    1.0 + m.norm()
}

fn check_square_finite(m: &CMat) -> Result<()> {
    if m.nrows() != m.ncols() {
        return Err(Error::NotSquare { rows: m.nrows(), cols: m.ncols() });
    }
    if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::NonFinite);
    }
    Ok(())
}

/// `|M - M†|_F`.
pub fn hermitian_residual(m: &CMat) -> f64 {
    (m - m.adjoint()).norm()
}

/// `|M + M†|_F`.
pub fn anti_hermitian_residual(m: &CMat) -> f64 {
    (m + m.adjoint()).norm()
}

impl AlgebraElement {
    pub fn new(m: CMat) -> Result<Self> {
        check_square_finite(&m)?;
        let residual = anti_hermitian_residual(&m);
        if residual > tol::STRUCTURAL * scale(&m) {
            return Err(Error::NotAntiHermitian { residual });
        }
        let trace = m.trace().norm();
        if trace > tol::STRUCTURAL * scale(&m) {
            return Err(Error::NotTraceless { trace });
        }
        Ok(Self(m))
    }

    /// Projects an arbitrary square matrix onto `su(n)`.
    pub fn project(m: &CMat) -> Self {
        let n = m.nrows();
        let mut x = (m - m.adjoint()) * Complex64::from(0.5);
        let tr = x.trace() / Complex64::from(n as f64);
        for i in 0..n {
            x[(i, i)] -= tr;
        }
        Self(x)
    }

    pub fn new_unchecked(m: CMat) -> Self {
        Self(m)
    }

    pub fn zeros(n: usize) -> Self {
        Self(CMat::zeros(n, n))
    }

    pub fn matrix(&self) -> &CMat {
        &self.0
    }

    pub fn into_matrix(self) -> CMat {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }
}

impl ConfigElement {
    pub fn new(m: CMat) -> Result<Self> {
        check_square_finite(&m)?;
        let residual = hermitian_residual(&m);
        if residual > tol::STRUCTURAL * scale(&m) {
            return Err(Error::NotHermitian { residual });
        }
        Ok(Self(m))
    }

    /// Projects an arbitrary square matrix onto the Hermitian matrices.
    pub fn project(m: &CMat) -> Self {
        Self((m + m.adjoint()) * Complex64::from(0.5))
    }

    pub fn new_unchecked(m: CMat) -> Self {
        Self(m)
    }

    /// Real diagonal matrix `diag(d)`.
    pub fn diagonal(d: &[f64]) -> Self {
        Self(diag_real(d))
    }

    pub fn matrix(&self) -> &CMat {
        &self.0
    }

    pub fn into_matrix(self) -> CMat {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }
}

fn same_dim(x: &CMat, y: &CMat) -> Result<()> {
    if x.nrows() != y.nrows() || x.ncols() != y.ncols() {
        return Err(Error::DimensionMismatch { left: x.nrows(), right: y.nrows() });
    }
    Ok(())
}

/// `[X, Y] = XY - YX`.
pub fn commutator(x: &CMat, y: &CMat) -> Result<CMat> {
    same_dim(x, y)?;
    Ok(bracket(x, y))
}

/// Unchecked commutator for internal use on matrices of known shape.
pub(crate) fn bracket(x: &CMat, y: &CMat) -> CMat {
    x * y - y * x
}

/// `Re Tr(XY)`.
pub fn trace_pairing(x: &CMat, y: &CMat) -> f64 {
    let n = x.nrows();
    let mut acc = 0.0;
    for i in 0..n {
        for k in 0..n {
            acc += (x[(i, k)] * y[(k, i)]).re;
        }
    }
    acc
}

/// Invariant pairing on either half of the symmetric pair.
///
/// `Config`: `Tr(XY)`; `Algebra`: `-Tr(XY)`. Both arguments must belong to
/// the named space, otherwise [`Error::MixedSpace`] is returned.
pub fn invariant_pairing(x: &CMat, y: &CMat, space: Space) -> Result<f64> {
    same_dim(x, y)?;
    let belongs = |m: &CMat| match space {
        Space::Config => hermitian_residual(m) <= tol::STRUCTURAL * scale(m),
        Space::Algebra => anti_hermitian_residual(m) <= tol::STRUCTURAL * scale(m),
    };
    if !belongs(x) || !belongs(y) {
        return Err(Error::MixedSpace);
    }
    Ok(match space {
        Space::Config => trace_pairing(x, y),
        Space::Algebra => -trace_pairing(x, y),
    })
}

/// `<X, Y>_g = -Re Tr(XY)`.
pub fn algebra_pairing(x: &AlgebraElement, y: &AlgebraElement) -> f64 {
    -trace_pairing(&x.0, &y.0)
}

/// `<a, b>_V = Re Tr(ab)`.
pub fn config_pairing(a: &ConfigElement, b: &ConfigElement) -> f64 {
    trace_pairing(&a.0, &b.0)
}

/// Matrix exponential of an algebra element (Padé scaling and squaring).
pub fn matrix_exp(x: &AlgebraElement) -> CMat {
    x.0.exp()
}

/// `|g g† - 1|_F`.
pub fn unitarity_residual(g: &CMat) -> f64 {
    let n = g.nrows();
    (g * g.adjoint() - CMat::identity(n, n)).norm()
}

/// `Ad(g) X = g X g†` for unitary `g`.
pub fn adjoint_action(g: &CMat, x: &CMat) -> Result<CMat> {
    same_dim(g, x)?;
    let residual = unitarity_residual(g);
    if residual > tol::DERIVED {
        return Err(Error::NotUnitary { residual });
    }
    Ok(conjugate(g, x))
}

/// `g X g†` without the unitarity check.
pub(crate) fn conjugate(g: &CMat, x: &CMat) -> CMat {
    g * x * g.adjoint()
}

/// Fundamental vector field of the conjugation action, `ζ_X(a) = [X, a]`.
pub fn fundamental_field(x: &AlgebraElement, a: &ConfigElement) -> Result<ConfigElement> {
    Ok(ConfigElement(commutator(&x.0, &a.0)?))
}

/// Elementary matrix with a single one at `(i, j)`.
pub fn elementary(n: usize, i: usize, j: usize) -> CMat {
    let mut m = CMat::zeros(n, n);
    m[(i, j)] = ONE;
    m
}

pub fn diag_real(d: &[f64]) -> CMat {
    let n = d.len();
    CMat::from_fn(n, n, |i, j| if i == j { Complex64::from(d[i]) } else { Complex64::from(0.0) })
}

/// Real parts of the diagonal.
pub fn diag_re(m: &CMat) -> Vec<f64> {
    (0..m.nrows()).map(|i| m[(i, i)].re).collect()
}

/// Largest modulus of a diagonal entry.
pub fn max_abs_diag(m: &CMat) -> f64 {
    (0..m.nrows()).map(|i| m[(i, i)].norm()).fold(0.0, f64::max)
}

/// Orthonormal basis of traceless real diagonal matrices
/// (Gell-Mann style: `diag(1,..,1,-k,0,..)/sqrt(k(k+1))`).
pub fn cartan_basis(n: usize) -> Vec<Vec<f64>> {
    (1..n)
        .map(|k| {
            let norm = ((k * (k + 1)) as f64).sqrt();
            (0..n)
                .map(|i| match i.cmp(&k) {
                    std::cmp::Ordering::Less => 1.0 / norm,
                    std::cmp::Ordering::Equal => -(k as f64) / norm,
                    std::cmp::Ordering::Greater => 0.0,
                })
                .collect()
        })
        .collect()
}

/// A root `α_ij(q) = q_i - q_j` of `sl(n, C)` with its root vector `E_ij`.
#[derive(Debug, Clone)]
pub struct Root {
    pub i: usize,
    pub j: usize,
    pub vector: CMat,
}

impl Root {
    pub fn eval(&self, q: &[f64]) -> f64 {
        q[self.i] - q[self.j]
    }
}

#[derive(Debug, Clone)]
pub struct RootDatum {
    pub n: usize,
    pub roots: Vec<Root>,
    /// Scale applied to root vectors so that `Tr(E_α E_{-α}) = 1`.
    pub pairing_normalization: f64,
}

pub fn build_root_datum(n: usize) -> Result<RootDatum> {
    if n < 2 {
        return Err(Error::RankTooSmall { n });
    }
    let mut roots = Vec::with_capacity(n * (n - 1));
    for i in 0..n {
        for j in 0..n {
            if i != j {
                roots.push(Root { i, j, vector: elementary(n, i, j) });
            }
        }
    }
    Ok(RootDatum { n, roots, pairing_normalization: 1.0 })
}

/// One positive restricted root `λ_ij(q) = q_i - q_j` (`i < j`) with its two
/// basis pairs `(E^k, B^k)`, `E^k ∈ g`, `B^k ∈ V`.
#[derive(Debug, Clone)]
pub struct RestrictedRoot {
    pub i: usize,
    pub j: usize,
    pub pairs: [(CMat, CMat); 2],
}

impl RestrictedRoot {
    pub fn eval(&self, q: &[f64]) -> f64 {
        q[self.i] - q[self.j]
    }
}

#[derive(Debug, Clone)]
pub struct RestrictedRootDatum {
    pub n: usize,
    pub positive_restricted_roots: Vec<RestrictedRoot>,
    /// `B_0^j = E_jj`, spanning the real diagonal matrices Σ.
    pub slice_basis: Vec<CMat>,
    /// Orthonormal basis of `m`, the traceless diagonal anti-Hermitian matrices.
    pub centralizer_basis: Vec<CMat>,
}

pub fn build_restricted_root_datum(n: usize) -> Result<RestrictedRootDatum> {
    if n < 2 {
        return Err(Error::RankTooSmall { n });
    }
    let s = Complex64::from(FRAC_1_SQRT_2);
    let mut roots = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in (i + 1)..n {
            let eij = elementary(n, i, j);
            let eji = elementary(n, j, i);
            let minus = (&eij - &eji) * s;
            let plus = (&eij + &eji) * s;
            let pairs = [(minus.clone(), plus.clone()), (&plus * I, &minus * I)];
            roots.push(RestrictedRoot { i, j, pairs });
        }
    }
    let slice_basis = (0..n).map(|j| elementary(n, j, j)).collect();
    let centralizer_basis = cartan_basis(n).iter().map(|d| diag_real(d) * I).collect();
    Ok(RestrictedRootDatum { n, positive_restricted_roots: roots, slice_basis, centralizer_basis })
}

impl RestrictedRootDatum {
    /// Orthonormal basis `{E_λ^k}` of `m^⊥`.
    pub fn m_perp_basis(&self) -> Vec<CMat> {
        self.positive_restricted_roots.iter().flat_map(|r| r.pairs.iter().map(|(e, _)| e.clone())).collect()
    }

    /// Basis `{B_λ^k}` of `Σ^⊥`, ordered like [`Self::m_perp_basis`].
    pub fn sigma_perp_basis(&self) -> Vec<CMat> {
        self.positive_restricted_roots.iter().flat_map(|r| r.pairs.iter().map(|(_, b)| b.clone())).collect()
    }

    /// Orthonormal basis of all of `su(n)`: `{E_λ^k} ∪ {E_0^i}`.
    pub fn algebra_basis(&self) -> Vec<CMat> {
        let mut basis = self.m_perp_basis();
        basis.extend(self.centralizer_basis.iter().cloned());
        basis
    }

    /// Orthonormal basis of `V`: `{B_λ^k} ∪ {B_0^j}`.
    pub fn config_basis(&self) -> Vec<CMat> {
        let mut basis = self.sigma_perp_basis();
        basis.extend(self.slice_basis.iter().cloned());
        basis
    }

    /// Coefficients `z_λ^k = <Z, E_λ^k>_g`, ordered like [`Self::m_perp_basis`].
    pub fn m_perp_coefficients(&self, z: &CMat) -> Vec<f64> {
        self.m_perp_basis().iter().map(|e| -trace_pairing(z, e)).collect()
    }
}
