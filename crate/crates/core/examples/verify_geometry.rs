//! Numerical checks of the mechanical connection, the Weinstein form with its
//! curvature term, and the reduced symplectic form.
//!
//! ```text
//! cargo run --release --example verify_geometry
//! ```

use spincm::verify::run_suite;

fn main() -> spincm::Result<()> {
    for n in 2..=3 {
        let report = run_suite(n, 11, 40)?;
        let c = &report.connection;
        println!("n = {n}");
        println!(
            "  connection    max {:.1e} (min locked-inertia eigenvalue {:.3})",
            c.max_residual(),
            c.inertia_min_eigenvalue
        );
        let w = &report.weinstein;
        println!(
            "  weinstein     max {:.1e} over {} samples ({} with vertical parts)",
            w.max_residual, w.samples, w.vertical_samples
        );
        let f = &report.reduced_form;
        println!("  reduced form  max {:.1e} over {} samples ({} skipped)", f.max_residual, f.samples, f.skipped);
        println!("  passed        {}", report.passed);
    }
    Ok(())
}
