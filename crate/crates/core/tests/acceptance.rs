//! End-to-end acceptance suite. Runs every criterion, prints one line per
//! criterion and exits non-zero if any of them fails.

use std::process::ExitCode;
use std::time::Instant;

use spincm::dynamics::{
    conserved_report, simulate, trajectory_via_projection, EndpointError, Engine, InitialState, SimulationConfig,
    SpinSign,
};
use spincm::lie::{build_restricted_root_datum, trace_pairing, Complex64};
use spincm::linalg::{hermitian_spectrum, max_abs_diff};
use spincm::orbits::{project_to_ann_m, OrbitSpec};
use spincm::reduction::{polar_hamiltonian, project_point, reduced_hamiltonian, PhasePoint, ReducedPoint};
use spincm::rmatrix::{cdybe_check, perturbation_probe, trig_r, Convention, Family};
use spincm::sample;
use spincm::verify::{check_connection_identities, random_regular_config, reduced_form_suite, weinstein_suite};

struct Outcome {
    passed: bool,
    detail: String,
}

type Criterion = (&'static str, fn() -> Outcome);

fn outcome(passed: bool, detail: String) -> Outcome {
    Outcome { passed, detail }
}

fn random_reduced(n: usize, rng: &mut sample::SampleRng) -> ReducedPoint {
    let datum = build_restricted_root_datum(n).unwrap();
    let q = sample::random_chamber(n, 0.5, rng);
    let p = sample::random_vector(n, rng);
    let z = sample::random_m_perp(&datum, rng);
    ReducedPoint::new(q, p, z).unwrap()
}

fn engine_equivalence() -> Outcome {
    let (mut dq, mut dp, mut dz) = (0.0f64, 0.0f64, 0.0f64);
    let mut signs = Vec::new();
    for seed in 0..10 {
        let r0 = random_reduced(3, &mut sample::rng(1000 + seed));
        let cfg = SimulationConfig::new(r0, 1.0, 1e-4).with_stride(10_000);
        let sim = match simulate(&cfg) {
            Ok(s) => s,
            Err(e) => return outcome(false, format!("seed {seed}: {e}")),
        };
        let err = sim.agreement.expect("both engines ran");
        dq = dq.max(err.q);
        dp = dp.max(err.p);
        dz = dz.max(err.spin_moduli);
        signs.push(sim.sign.expect("auto sign").chosen);
    }
    let consistent = signs.iter().all(|s| *s == signs[0]);
    outcome(
        dq <= 1e-6 && dp <= 1e-6 && dz <= 1e-6 && consistent,
        format!(
            "max |dq| {dq:.2e}, |dp| {dp:.2e}, |d|Z|^2| {dz:.2e}; sign {:+} on all 10 seeds: {consistent}",
            signs[0]
        ),
    )
}

fn conservation() -> Outcome {
    let mut worst = [0.0f64; 5];
    for n in 2..=4 {
        for seed in 0..5 {
            let mut rng = sample::rng(2000 + 10 * n as u64 + seed);
            let a = random_regular_config(n, 0.1, &mut rng);
            let alpha = sample::random_config(n, &mut rng);
            let initial_spectrum = hermitian_spectrum(alpha.matrix());
            let mut cfg = SimulationConfig::new(
                project_point(&PhasePoint::new(a.clone(), alpha.clone()).unwrap()).unwrap(),
                2.0,
                0.01,
            )
            .with_engine(Engine::Projection);
            cfg.initial = InitialState::Phase(PhasePoint::new(a, alpha).unwrap());
            let traj = match trajectory_via_projection(&cfg) {
                Ok(t) => t,
                Err(e) => return outcome(false, format!("n = {n}, seed {seed}: {e}")),
            };
            let report = conserved_report(&traj).unwrap();
            let spectrum_gap = traj
                .diagnostics
                .iter()
                .map(|d| max_abs_diff(&d.lax_eigenvalues, &initial_spectrum))
                .fold(0.0, f64::max);
            for (w, v) in worst.iter_mut().zip([
                report.energy,
                report.lax_eigenvalues,
                report.lax_traces,
                report.casimirs,
                spectrum_gap,
            ]) {
                *w = w.max(v);
            }
        }
    }
    let [h, eig, tr, cas, spec] = worst;
    outcome(
        h <= 1e-10 && eig <= 1e-8 && tr <= 1e-8 && cas <= 1e-8 && spec <= 1e-8,
        format!("H {h:.2e}, spec L {eig:.2e}, Tr L^k {tr:.2e}, Casimirs {cas:.2e}, spec L vs spec alpha0 {spec:.2e}"),
    )
}

fn energy_matching() -> Outcome {
    let mut rng = sample::rng(3000);
    let mut worst = 0.0f64;
    let mut count = 0;
    for n in 2..=4 {
        let samples = if n == 4 { 334 } else { 333 };
        for _ in 0..samples {
            let a = random_regular_config(n, 1e-6, &mut rng);
            let alpha = sample::random_config(n, &mut rng);
            let free = 0.5 * trace_pairing(alpha.matrix(), alpha.matrix());
            let r = project_point(&PhasePoint::new(a, alpha).unwrap()).unwrap();
            worst = worst.max((reduced_hamiltonian(&r) - free).abs());
            count += 1;
        }
    }
    outcome(worst <= 1e-10, format!("max |H_red - Tr(alpha^2)/2| {worst:.2e} over {count} points"))
}

fn connection_identities() -> Outcome {
    let mut worst = 0.0f64;
    let mut min_eig = f64::INFINITY;
    for n in 2..=4 {
        let r = check_connection_identities(n, 4000 + n as u64, 100).unwrap();
        worst = worst.max(r.max_residual());
        min_eig = min_eig.min(r.inertia_min_eigenvalue);
    }
    outcome(
        worst <= 1e-9 && min_eig > 0.0,
        format!("max residual {worst:.2e}, min locked-inertia eigenvalue {min_eig:.2e}"),
    )
}

fn weinstein_form() -> Outcome {
    let mut worst = 0.0f64;
    let mut vertical = usize::MAX;
    for n in [2, 3] {
        let r = weinstein_suite(n, 5000 + n as u64, 200, 1e-5).unwrap();
        worst = worst.max(r.max_residual);
        vertical = vertical.min(r.vertical_samples);
    }
    outcome(
        worst <= 1e-6 && vertical >= 50,
        format!("max residual {worst:.2e}; at least {vertical} pairs with vertical components per dimension"),
    )
}

fn reduced_form() -> Outcome {
    let mut worst = 0.0f64;
    let mut skipped = 0;
    for n in [2, 3] {
        let r = reduced_form_suite(n, 6000 + n as u64, 100, 1e-5).unwrap();
        worst = worst.max(r.max_residual);
        skipped += r.skipped;
    }
    outcome(worst <= 1e-6, format!("max residual {worst:.2e}, {skipped} ill-conditioned samples skipped"))
}

fn minimal_orbit_collapse() -> Outcome {
    let mut moduli_err = 0.0f64;
    let mut ham_err = 0.0f64;
    let mut rng = sample::rng(7000);
    for n in 2..=4 {
        for c in [0.5f64, 1.0, 2.0] {
            let v: Vec<Complex64> =
                (0..n).map(|_| Complex64::from_polar(c.sqrt(), 6.0 * sample::normal(&mut rng))).collect();
            let spec = OrbitSpec::from_rank_one(v).unwrap();
            for seed in 0..20 {
                let z = match project_to_ann_m(&spec, seed) {
                    Ok(p) => p.value,
                    Err(e) => return outcome(false, format!("n = {n}, c = {c}, seed {seed}: {e}")),
                };
                let r =
                    ReducedPoint::new(sample::random_chamber(n, 0.5, &mut rng), sample::random_vector(n, &mut rng), z)
                        .unwrap();
                for m in r.spin_moduli() {
                    moduli_err = moduli_err.max((m - c * c).abs());
                }
                let mut spinless = 0.5 * r.p.iter().map(|p| p * p).sum::<f64>();
                for i in 0..n {
                    for j in 0..i {
                        spinless += c * c / (r.q[i] - r.q[j]).powi(2);
                    }
                }
                ham_err = ham_err.max((reduced_hamiltonian(&r) - spinless).abs());
            }
        }
    }
    outcome(
        moduli_err <= 1e-8 && ham_err <= 1e-10,
        format!("max ||Z_ij|^2 - c^2| {moduli_err:.2e}, max |H - H_CM| {ham_err:.2e}"),
    )
}

fn cdybe() -> Outcome {
    let mut worst = [0.0f64; 2];
    let mut conventions = Vec::new();
    let mut probe_min = f64::INFINITY;
    let mut quasi = 0.0f64;
    let mut rng = sample::rng(8000);
    for n in [2, 3] {
        for _ in 0..20 {
            let q = sample::random_chamber(n, 0.3, &mut rng);
            for (k, family) in [Family::Rational, Family::Trigonometric].into_iter().enumerate() {
                let check = cdybe_check(family, &q, 1e-5, 1e-7).unwrap();
                worst[k] = worst[k].max(check.residual);
                if !conventions.contains(&check.convention) {
                    conventions.push(check.convention);
                }
                probe_min = probe_min.min(perturbation_probe(family, &q, 1e-5).unwrap());
            }
            quasi = quasi.max(trig_r(n, &q).unwrap().symmetric_part_residual());
        }
    }
    let single_convention = conventions == vec![Convention::Standard];
    outcome(
        worst[0] <= 1e-7 && worst[1] <= 1e-7 && quasi <= 1e-12 && probe_min > 1e-3,
        format!(
            "rational {:.2e}, trigonometric {:.2e} (conventions {conventions:?}, standard only: {single_convention}); r + r21 - Omega {quasi:.2e}; perturbed min {probe_min:.2e}",
            worst[0], worst[1]
        ),
    )
}

fn cross_formula() -> Outcome {
    let mut worst = 0.0f64;
    for n in 2..=4 {
        let datum = build_restricted_root_datum(n).unwrap();
        let mut rng = sample::rng(9000 + n as u64);
        for _ in 0..100 {
            let r = random_reduced(n, &mut rng);
            worst = worst.max((reduced_hamiltonian(&r) - polar_hamiltonian(&r, &datum).unwrap()).abs());
        }
    }
    outcome(worst <= 1e-12, format!("max |H - H_polar| {worst:.2e}"))
}

fn convergence_order() -> Outcome {
    let spec = OrbitSpec::minimal(2, 1.0).unwrap();
    let z = project_to_ann_m(&spec, 0).unwrap().value;
    let r0 = ReducedPoint::new(vec![0.5, -0.5], vec![0.0, 0.0], z).unwrap();
    let error = |dt: f64| -> f64 {
        let cfg = SimulationConfig::new(r0.clone(), 1.0, dt).with_stride(usize::MAX).with_spin_sign(SpinSign::Auto);
        let sim = simulate(&cfg).unwrap();
        let a = sim.projection.as_ref().unwrap().last().unwrap();
        let b = sim.direct.as_ref().unwrap().last().unwrap();
        EndpointError::between(a, b).max()
    };
    let coarse = error(0.05);
    let fine = error(0.025);
    let ratio = coarse / fine;
    outcome(
        (12.0..=20.0).contains(&ratio),
        format!("endpoint error {coarse:.3e} at dt 0.05, {fine:.3e} at dt 0.025, ratio {ratio:.2}"),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("engine equivalence", engine_equivalence),
        ("conservation along projected flow", conservation),
        ("energy matching", energy_matching),
        ("connection identities", connection_identities),
        ("Weinstein form with curvature", weinstein_form),
        ("reduced symplectic form", reduced_form),
        ("minimal-orbit collapse", minimal_orbit_collapse),
        ("classical dynamical Yang-Baxter", cdybe),
        ("polar vs entrywise Hamiltonian", cross_formula),
        ("RK4 convergence order", convergence_order),
    ];
    let mut failures = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let started = Instant::now();
        let result = run();
        let verdict = if result.passed { "PASS" } else { "FAIL" };
        if !result.passed {
            failures += 1;
        }
        println!("{verdict} [{:>2}] {name}: {} ({:.1} s)", k + 1, result.detail, started.elapsed().as_secs_f64());
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
