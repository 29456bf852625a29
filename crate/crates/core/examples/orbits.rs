//! Coadjoint orbits of `SU(3)` and their intersection with the
//! zero-diagonal subspace, which is where the reduced spin lives.
//!
//! ```text
//! cargo run --example orbits
//! ```

use spincm::lie::{build_restricted_root_datum, Complex64};
use spincm::orbits::{casimirs, orbit_dimension, project_to_ann_m, OrbitSpec};
use spincm::reduction::spin_moduli;
use spincm::sample;

fn main() -> spincm::Result<()> {
    // generic orbit: a random element of su(3)
    let datum = build_restricted_root_datum(3)?;
    let generic = OrbitSpec::from_generator(sample::random_algebra(&datum, &mut sample::rng(1)));
    println!("generic orbit");
    println!("  dimension      {}", orbit_dimension(generic.generator().matrix()));
    println!("  spectrum       {:.6?}", generic.spectrum());
    let z = project_to_ann_m(&generic, 0)?;
    println!("  |Z_ij|^2       {:.6?}", spin_moduli(z.value.matrix()));
    println!("  casimirs       {:.6?}", casimirs(z.value.matrix(), 3));

    // rank-one orbit i(vv† - cI)
    let v = vec![Complex64::new(1.0, 0.0), Complex64::new(0.8, 0.3), Complex64::new(1.1, -0.2)];
    let rank_one = OrbitSpec::from_rank_one(v)?;
    let c = rank_one.rank_one().map(|r| r.c).unwrap_or_default();
    println!("rank-one orbit, c = {c:.6}");
    println!("  dimension      {}", orbit_dimension(rank_one.generator().matrix()));
    for seed in 0..3 {
        let z = project_to_ann_m(&rank_one, seed)?;
        println!("  seed {seed}: |Z_ij|^2 = {:.12?}  (c^2 = {:.12})", spin_moduli(z.value.matrix()), c * c);
    }
    Ok(())
}
