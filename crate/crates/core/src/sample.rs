//! Seeded random generators for algebra elements, configurations and
//! chamber points. All sampling in the crate goes through these so that a
//! seed fully determines every result.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::lie::{AlgebraElement, CMat, Complex64, ConfigElement, RestrictedRootDatum};

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn normal(rng: &mut SampleRng) -> f64 {
    rng.sample(StandardNormal)
}

fn gaussian_complex(n: usize, rng: &mut SampleRng) -> CMat {
    DMatrix::from_fn(n, n, |_, _| Complex64::new(normal(rng), normal(rng)))
}

/// `ξ = Σ c_k e_k` with independent standard normal `c_k` in the given
/// orthonormal basis.
pub fn combination(basis: &[CMat], rng: &mut SampleRng) -> CMat {
    let n = basis[0].nrows();
    basis.iter().fold(CMat::zeros(n, n), |acc, e| acc + e * Complex64::from(normal(rng)))
}

/// Gaussian element of `su(n)` (standard normal coefficients in an
/// orthonormal basis).
pub fn random_algebra(datum: &RestrictedRootDatum, rng: &mut SampleRng) -> AlgebraElement {
    AlgebraElement::new_unchecked(combination(&datum.algebra_basis(), rng))
}

/// Gaussian element of `m^⊥` (zero-diagonal anti-Hermitian).
pub fn random_m_perp(datum: &RestrictedRootDatum, rng: &mut SampleRng) -> AlgebraElement {
    AlgebraElement::new_unchecked(combination(&datum.m_perp_basis(), rng))
}

/// Gaussian Hermitian matrix.
pub fn random_config(n: usize, rng: &mut SampleRng) -> ConfigElement {
    ConfigElement::project(&gaussian_complex(n, rng))
}

/// Strictly decreasing vector with consecutive gaps of at least `min_gap`.
pub fn random_chamber(n: usize, min_gap: f64, rng: &mut SampleRng) -> Vec<f64> {
    let mut q = Vec::with_capacity(n);
    let mut x = normal(rng);
    for _ in 0..n {
        q.push(x);
        x -= min_gap + rng.random::<f64>() * 1.5;
    }
    let shift = q.iter().sum::<f64>() / n as f64 - 0.3 * normal(rng);
    q.iter().map(|v| v - shift).collect()
}

/// Gaussian real vector.
pub fn random_vector(n: usize, rng: &mut SampleRng) -> Vec<f64> {
    (0..n).map(|_| normal(rng)).collect()
}
