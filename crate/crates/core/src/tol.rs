//! Numerical tolerances shared across modules.

/// Structural invariants: Hermitian-ness, tracelessness.
pub const STRUCTURAL: f64 = 1e-12;
/// Algebraic identities evaluated in floating point.
pub const DERIVED: f64 = 1e-10;
/// Identities that go through a finite-difference derivative.
pub const FINITE_DIFFERENCE: f64 = 1e-6;
/// Minimal eigenvalue gap for a configuration to count as regular.
pub const EPS_REG: f64 = 1e-8;
/// Default central-difference step.
pub const FD_STEP: f64 = 1e-5;
/// Smallest admissible finite-difference step.
pub const MIN_FD_STEP: f64 = 1e-12;
/// Zero-diagonal tolerance for spins in `m^⊥`.
pub const SPIN_DIAGONAL: f64 = 1e-10;
