use proptest::prelude::*;

use spincm::dynamics::{free_flow, integrate_direct, reduced_vector_field, Engine, SimulationConfig, SpinSign};
use spincm::lie::{build_restricted_root_datum, matrix_exp, trace_pairing, AlgebraElement, CMat, ConfigElement};
use spincm::linalg::{hermitian_spectrum, max_abs_diff};
use spincm::orbits::{casimirs, project_to_ann_m, OrbitSpec};
use spincm::reduction::{
    embed_reduced, gauge_fix_spin, lax_matrix, momentum_map, polar_hamiltonian, project_point, reduced_hamiltonian,
    PhasePoint, ReducedPoint,
};
use spincm::sample;
use spincm::verify::random_regular_config;
use spincm::Error;

fn phase_point(n: usize, seed: u64) -> PhasePoint {
    let mut rng = sample::rng(seed);
    PhasePoint::new(random_regular_config(n, 0.2, &mut rng), sample::random_config(n, &mut rng)).unwrap()
}

fn reduced_point(n: usize, seed: u64) -> ReducedPoint {
    let datum = build_restricted_root_datum(n).unwrap();
    let mut rng = sample::rng(seed);
    let q = sample::random_chamber(n, 0.5, &mut rng);
    let p = sample::random_vector(n, &mut rng);
    ReducedPoint::new(q, p, sample::random_m_perp(&datum, &mut rng)).unwrap()
}

fn random_unitary(n: usize, seed: u64) -> CMat {
    let datum = build_restricted_root_datum(n).unwrap();
    matrix_exp(&sample::random_algebra(&datum, &mut sample::rng(seed)))
}

fn conjugated(x: &PhasePoint, g: &CMat) -> PhasePoint {
    let c = |m: &CMat| ConfigElement::new_unchecked(g * m * g.adjoint());
    PhasePoint::new(c(x.a.matrix()), c(x.alpha.matrix())).unwrap()
}

fn amax(m: &CMat) -> f64 {
    m.iter().map(|c| c.norm()).fold(0.0, f64::max)
}

fn close(a: &ReducedPoint, b: &ReducedPoint) -> f64 {
    max_abs_diff(&a.q, &b.q).max(max_abs_diff(&a.p, &b.p)).max(amax(&(a.z.matrix() - b.z.matrix())))
}

fn spinless_free_energy(r: &ReducedPoint) -> f64 {
    let n = r.dim();
    let mut h = 0.5 * r.p.iter().map(|p| p * p).sum::<f64>();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                h += 0.5 * r.z.matrix()[(i, j)].norm_sqr() / (r.q[i] - r.q[j]).powi(2);
            }
        }
    }
    h
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn projection_is_gauge_invariant(n in 2usize..=4, seed in any::<u64>(), g_seed in any::<u64>()) {
        let x = phase_point(n, seed);
        let g = random_unitary(n, g_seed);
        let r = project_point(&x).unwrap();
        let rg = project_point(&conjugated(&x, &g)).unwrap();
        prop_assert!(close(&r, &rg) < 1e-8, "difference {}", close(&r, &rg));
    }

    #[test]
    fn embedding_round_trips(n in 2usize..=4, seed in any::<u64>()) {
        let r = reduced_point(n, seed).gauge_fixed();
        let back = project_point(&embed_reduced(&r)).unwrap();
        prop_assert!(close(&r, &back) < 1e-10);
    }

    #[test]
    fn gauge_fix_is_idempotent_and_keeps_moduli(n in 2usize..=4, seed in any::<u64>()) {
        let r = reduced_point(n, seed);
        let (once, _) = gauge_fix_spin(&r.z);
        let (twice, _) = gauge_fix_spin(&once);
        prop_assert_eq!(once.matrix(), twice.matrix());
        let fixed = ReducedPoint::new(r.q.clone(), r.p.clone(), once).unwrap();
        prop_assert!(max_abs_diff(&fixed.spin_moduli(), &r.spin_moduli()) < 1e-12);
        prop_assert!((reduced_hamiltonian(&fixed) - reduced_hamiltonian(&r)).abs() < 1e-12);
    }

    #[test]
    fn reduced_energy_is_free_energy(n in 2usize..=4, seed in any::<u64>()) {
        let x = phase_point(n, seed);
        let free = 0.5 * trace_pairing(x.alpha.matrix(), x.alpha.matrix());
        let r = project_point(&x).unwrap();
        prop_assert!((reduced_hamiltonian(&r) - free).abs() < 1e-10 * (1.0 + free));
        prop_assert!((spinless_free_energy(&r) - free).abs() < 1e-10 * (1.0 + free));
    }

    #[test]
    fn lax_matrix_is_isospectral_to_momentum(n in 2usize..=4, seed in any::<u64>(), t in -2.0f64..2.0) {
        let x = phase_point(n, seed);
        let moved = free_flow(&x, t);
        prop_assume!(project_point(&moved).is_ok());
        let lax = lax_matrix(&project_point(&moved).unwrap());
        let spectrum = hermitian_spectrum(x.alpha.matrix());
        prop_assert!(max_abs_diff(&hermitian_spectrum(lax.matrix()), &spectrum) < 1e-9);
    }

    #[test]
    fn free_flow_preserves_momentum_map(n in 2usize..=4, seed in any::<u64>(), t in -3.0f64..3.0) {
        let x = phase_point(n, seed);
        let mu0 = momentum_map(&x);
        let mu1 = momentum_map(&free_flow(&x, t));
        prop_assert!(amax(&(mu0.matrix() - mu1.matrix())) < 1e-10 * (1.0 + amax(mu0.matrix())));
    }

    #[test]
    fn polar_and_entrywise_hamiltonians_agree(n in 2usize..=4, seed in any::<u64>()) {
        let datum = build_restricted_root_datum(n).unwrap();
        let r = reduced_point(n, seed);
        prop_assert!((reduced_hamiltonian(&r) - polar_hamiltonian(&r, &datum).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn vector_field_conserves_energy_and_casimirs(n in 2usize..=4, seed in any::<u64>(), plus in any::<bool>()) {
        let r = reduced_point(n, seed);
        let sign = if plus { SpinSign::Plus } else { SpinSign::Minus };
        let v = reduced_vector_field(&r, sign).unwrap();
        let eps = 1e-6;
        let shifted = |s: f64| {
            let q: Vec<f64> = r.q.iter().zip(&v.dq).map(|(a, b)| a + s * b).collect();
            let p: Vec<f64> = r.p.iter().zip(&v.dp).map(|(a, b)| a + s * b).collect();
            let z = r.z.matrix() + &v.dz * spincm::lie::Complex64::from(s);
            ReducedPoint::new(q, p, AlgebraElement::new_unchecked(z)).unwrap()
        };
        let (fwd, bwd) = (shifted(eps), shifted(-eps));
        let dh = (spinless_free_energy(&fwd) - spinless_free_energy(&bwd)) / (2.0 * eps);
        let scale = 1.0 + spinless_free_energy(&r);
        prop_assert!(dh.abs() < 1e-6 * scale, "dH = {dh}");
        let dc = max_abs_diff(&casimirs(fwd.z.matrix(), n), &casimirs(bwd.z.matrix(), n)) / (2.0 * eps);
        prop_assert!(dc < 1e-5 * (1.0 + casimirs(r.z.matrix(), n).iter().map(|c| c.abs()).fold(0.0, f64::max)));
    }

    #[test]
    fn ann_m_projection_stays_on_orbit(n in 2usize..=4, gen_seed in any::<u64>(), seed in 0u64..1000) {
        let datum = build_restricted_root_datum(n).unwrap();
        let spec = OrbitSpec::from_generator(sample::random_algebra(&datum, &mut sample::rng(gen_seed)));
        let z = match project_to_ann_m(&spec, seed) {
            Ok(p) => p.value,
            Err(Error::NoIntersection { .. }) => return Ok(()),
            Err(e) => panic!("{e}"),
        };
        let diag = (0..n).map(|i| z.matrix()[(i, i)].norm()).fold(0.0, f64::max);
        prop_assert!(diag < 1e-8);
        let expected = casimirs(spec.generator().matrix(), n);
        let got = casimirs(z.matrix(), n);
        for (a, b) in expected.iter().zip(&got) {
            prop_assert!((a - b).abs() < 1e-8 * (1.0 + a.abs()));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn direct_flow_is_time_reversible(n in 2usize..=3, seed in any::<u64>(), plus in any::<bool>()) {
        let r0 = reduced_point(n, seed);
        let sign = if plus { SpinSign::Plus } else { SpinSign::Minus };
        let run = |r: ReducedPoint| {
            let cfg = SimulationConfig::new(r, 0.2, 1e-3).with_engine(Engine::Direct).with_spin_sign(sign);
            integrate_direct(&cfg).map(|t| t.last().unwrap().clone())
        };
        let reverse = |r: &ReducedPoint| {
            let p = r.p.iter().map(|p| -p).collect();
            ReducedPoint::new(r.q.clone(), p, AlgebraElement::new_unchecked(r.z.matrix().transpose())).unwrap()
        };
        let forward = match run(r0.clone()) {
            Ok(r) => r,
            Err(Error::WallCollision { .. }) => return Ok(()),
            Err(e) => panic!("{e}"),
        };
        let back = reverse(&run(reverse(&forward)).unwrap()).gauge_fixed();
        let err = close(&back, &r0.gauge_fixed());
        prop_assert!(err < 1e-8, "difference {}", err);
    }
}
