//! From a point of `T*V` to the reduced coordinates `(q, p, Z)` and back.
//!
//! ```text
//! cargo run --example reduction
//! ```

use spincm::lie::{build_restricted_root_datum, trace_pairing};
use spincm::linalg::hermitian_spectrum;
use spincm::reduction::{
    embed_reduced, lax_matrix, momentum_map, polar_hamiltonian, project_point, reduced_hamiltonian, PhasePoint,
};
use spincm::sample;
use spincm::verify::random_regular_config;

fn main() -> spincm::Result<()> {
    let n = 3;
    let mut rng = sample::rng(42);
    let x = PhasePoint::new(random_regular_config(n, 0.2, &mut rng), sample::random_config(n, &mut rng))?;
    let r = project_point(&x)?;

    println!("q = {:.6?}", r.q);
    println!("p = {:.6?}", r.p);
    println!("Z =\n{:.6}", r.z.matrix());
    println!("|Z_ij|^2 = {:.6?}", r.spin_moduli());

    let free = 0.5 * trace_pairing(x.alpha.matrix(), x.alpha.matrix());
    let datum = build_restricted_root_datum(n)?;
    println!("Tr(alpha^2)/2     {free:.15}");
    println!("H(q, p, Z)        {:.15}", reduced_hamiltonian(&r));
    println!("H via connection  {:.15}", polar_hamiltonian(&r, &datum)?);

    println!("spec alpha        {:.12?}", hermitian_spectrum(x.alpha.matrix()));
    println!("spec L(q, p, Z)   {:.12?}", hermitian_spectrum(lax_matrix(&r).matrix()));

    let back = embed_reduced(&r);
    let mu = momentum_map(&back);
    println!("diag of mu at the embedded point {:?}", (0..n).map(|i| mu.matrix()[(i, i)].norm()).collect::<Vec<_>>());
    let again = project_point(&back)?;
    println!("round trip |dq| = {:.2e}", spincm::linalg::max_abs_diff(&again.q, &r.q));
    Ok(())
}
