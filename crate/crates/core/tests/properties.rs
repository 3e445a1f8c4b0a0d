//! Solver-level invariants checked on random data.

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use lwfr_core::cases::{find_case, run_case, RunConfig};
use lwfr_core::driver::{Boundaries1D, Boundary, LimiterKind, Mesh1D, Solver1D, SolverOptions};
use lwfr_core::equations::{euler_prim_to_cons_1d, Equation, Euler1D};
use lwfr_core::State;

const G: f64 = 1.4;

fn limiter_of(k: u8) -> LimiterKind {
    match k % 3 {
        0 => LimiterKind::None,
        1 => LimiterKind::BlendFo,
        _ => LimiterKind::BlendMh,
    }
}

/// Periodic Euler solver with a random smooth field built from a few modes.
fn smooth_solver(degree: usize, cells: usize, amp: [f64; 3], phase: f64, opts: SolverOptions) -> Solver1D<Euler1D, 3> {
    let mesh = Mesh1D::uniform(0.0, 1.0, cells).unwrap();
    let tau = std::f64::consts::TAU;
    Solver1D::new(Euler1D::new(G), degree, mesh, Boundaries1D::periodic(), opts, |x| {
        let rho = 1.0 + amp[0] * (tau * x + phase).sin();
        let v = amp[1] * (2.0 * tau * x).cos();
        let p = 1.0 + amp[2] * (tau * x - phase).cos();
        euler_prim_to_cons_1d(&[rho, v, p], G)
    })
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // Each element mean moves by exactly the difference of its two face fluxes.
    #[test]
    fn mean_update_matches_face_fluxes(
        degree in 1usize..=4, cells in 4usize..16, limiter in 0u8..3, alpha in proptest::option::of(0.0..1.0f64),
        a0 in 0.0..0.5f64, a1 in -1.0..1.0f64, a2 in 0.0..0.5f64, phase in 0.0..6.3f64,
    ) {
        let opts = SolverOptions { limiter: limiter_of(limiter), force_alpha: alpha, ..SolverOptions::default() };
        let mut s = smooth_solver(degree, cells, [a0, a1, a2], phase, opts);
        let before = s.means();
        let dt = s.compute_dt().unwrap();
        s.step(dt).unwrap();
        let f = s.face_fluxes();
        let dx = 1.0 / cells as f64;
        for (e, (old, new)) in before.iter().zip(s.means()).enumerate() {
            let expect = *old - (f[e + 1] - f[e]) * (dt / dx);
            for v in 0..3 {
                prop_assert!((new[v] - expect[v]).abs() <= 1e-13 * (1.0 + old[v].abs()), "element {} var {}: {} vs {}", e, v, new[v], expect[v]);
            }
        }
    }

    // With open boundaries the total only changes through the two end fluxes.
    #[test]
    fn totals_change_only_through_boundaries(
        degree in 1usize..=4, limiter in 1u8..3,
        rl in 0.2..5.0f64, pl in 0.2..5.0f64, rr in 0.2..5.0f64, pr in 0.2..5.0f64, v in -1.0..1.0f64,
    ) {
        let opts = SolverOptions { limiter: limiter_of(limiter), ..SolverOptions::default() };
        let mesh = Mesh1D::uniform(0.0, 1.0, 30).unwrap();
        let mut s = Solver1D::new(Euler1D::new(G), degree, mesh, Boundaries1D::same(Boundary::Transmissive), opts, |x| {
            if x < 0.5 { euler_prim_to_cons_1d(&[rl, v, pl], G) } else { euler_prim_to_cons_1d(&[rr, v, pr], G) }
        }).unwrap();
        let start = s.totals();
        let mut through = State::<3>::zero();
        let mut scale = start.0.map(f64::abs);
        for _ in 0..100 {
            let dt = s.compute_dt().unwrap();
            let info = s.step(dt).unwrap();
            let f = s.face_fluxes();
            through = through.axpy(info.dt, &(f[0] - f[f.len() - 1]));
            for k in 0..3 {
                scale[k] = scale[k].max(s.totals()[k].abs());
            }
        }
        let end = s.totals();
        for k in 0..3 {
            prop_assert!((end[k] - start[k] - through[k]).abs() <= 1e-12 * scale[k], "var {}", k);
        }
    }

    // Blended runs from random two-state data stay admissible at every step.
    #[test]
    fn steps_stay_admissible(
        degree in 1usize..=4, fo in any::<bool>(),
        rl in 1e-3..10.0f64, pl in 1e-3..100.0f64, vl in -5.0..5.0f64,
        rr in 1e-3..10.0f64, pr in 1e-3..100.0f64, vr in -5.0..5.0f64,
    ) {
        let limiter = if fo { LimiterKind::BlendFo } else { LimiterKind::BlendMh };
        let opts = SolverOptions { limiter, ..SolverOptions::default() };
        let mesh = Mesh1D::uniform(-1.0, 1.0, 40).unwrap();
        let mut s = Solver1D::new(Euler1D::new(G), degree, mesh, Boundaries1D::same(Boundary::Transmissive), opts, |x| {
            if x < 0.0 { euler_prim_to_cons_1d(&[rl, vl, pl], G) } else { euler_prim_to_cons_1d(&[rr, vr, pr], G) }
        }).unwrap();
        let eq = Euler1D::new(G);
        for _ in 0..30 {
            let t = s.t + s.compute_dt().unwrap();
            s.advance_to(t, |_, _| {}).unwrap();
            prop_assert!(s.u.iter().all(|u| (0..2).all(|k| eq.constraint(k, u) > 0.0)));
        }
    }
}

// Pure MUSCL-Hancock steps taken within the diagnosed time-step bound keep
// every nodal state admissible.
#[test]
fn muscl_hancock_steps_within_cfl_are_admissible() {
    let eq = Euler1D::new(G);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let opts = SolverOptions {
        limiter: LimiterKind::BlendMh,
        force_alpha: Some(1.0),
        flux_correction: false,
        scaling_limiter: false,
        cfl_diagnostic: true,
        ..SolverOptions::default()
    };
    let mesh = Mesh1D::uniform(0.0, 1.0, 6).unwrap();
    let mut s = Solver1D::new(eq, 4, mesh, Boundaries1D::periodic(), opts, |_| euler_prim_to_cons_1d(&[1.0, 0.0, 1.0], G)).unwrap();
    let mut accepted = 0;
    for trial in 0..10_000 {
        let field: Vec<State<3>> = (0..s.u.len())
            .map(|_| {
                let rho = 10f64.powf(rng.gen_range(-3.0..1.0));
                let p = 10f64.powf(rng.gen_range(-3.0..1.0));
                euler_prim_to_cons_1d(&[rho, rng.gen_range(-2.0..2.0), p], G)
            })
            .collect();
        s.u.clone_from(&field);
        let mut dt = s.compute_dt().unwrap();
        let mut ok = false;
        for _ in 0..40 {
            s.u.clone_from(&field);
            match s.step(dt) {
                Ok(info) if info.cfl_ratio.is_some_and(|r| r <= 1.0) => {
                    ok = true;
                    break;
                }
                _ => dt *= 0.5,
            }
        }
        assert!(ok, "trial {trial}: no admissible time step found");
        accepted += 1;
        for (i, u) in s.u.iter().enumerate() {
            for k in 0..2 {
                assert!(eq.constraint(k, u) > 0.0, "trial {trial} node {i}: constraint {k} = {}", eq.constraint(k, u));
            }
        }
    }
    assert_eq!(accepted, 10_000);
}

#[test]
fn identical_runs_give_identical_snapshots() {
    let spec = find_case("blast").unwrap();
    let cfg = RunConfig { cells: Some([60, 1]), t_end: Some(0.005), ..RunConfig::for_case(&spec) };
    let a = run_case(&spec, &cfg).unwrap();
    let b = run_case(&spec, &cfg).unwrap();
    assert_eq!(a.last.rows, b.last.rows);
    assert_eq!(a.manifest.steps, b.manifest.steps);
}

#[test]
fn restart_mid_run_is_bitwise() {
    let spec = find_case("shu_osher").unwrap();
    let mut full = spec.build(3, [80, 1], spec.default_options()).unwrap();
    full.advance(0.1, &mut |_, _| {}).unwrap();
    let saved = full.checkpoint();
    full.advance(0.2, &mut |_, _| {}).unwrap();
    let mut resumed = spec.build(3, [80, 1], spec.default_options()).unwrap();
    resumed.restore(&saved).unwrap();
    resumed.advance(0.2, &mut |_, _| {}).unwrap();
    assert_eq!(full.snapshot().rows, resumed.snapshot().rows);
}
