//! Dynamical r-matrices of `sl(n)`: the classical dynamical Yang-Baxter
//! residual, its sensitivity to perturbation, and what happens when the
//! argument of `coth` is flipped.
//!
//! ```text
//! cargo run --release --example r_matrices
//! ```

use spincm::rmatrix::{coth_flip_check, residual_table};

fn main() -> spincm::Result<()> {
    let points = vec![vec![0.9, -0.4], vec![1.2, 0.1, -1.3]];
    for row in residual_table(&points, 1e-5, 1e-7)? {
        println!(
            "{:<14} at {:<18} residual {:.1e} ({:?}), perturbed {:.1e}, r + r21 - Omega {:.1e}",
            format!("{:?}", row.family),
            format!("{:?}", row.base),
            row.residual,
            row.convention,
            row.perturbed_residual,
            row.symmetric_part_residual
        );
    }
    let flip = coth_flip_check(&points[1], 1e-5)?;
    println!("coth(-x/2) variant:");
    println!("  antisymmetric part negated up to {:.1e}", flip.antisymmetric_flip_residual);
    println!("  residual with (+, -, +) signs    {:.1e}", flip.flipped_standard_residual);
    println!("  residual with (-, +, -) signs    {:.1e}", flip.flipped_mirrored_residual);
    Ok(())
}
