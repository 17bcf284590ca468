use thermomachine_core::dynamics::{
    build_triad_hamiltonian, collide_analytic, exact_unitary, iterate_recurrence, reduce_d_level,
    swap_time, transient_population, triad::basis_index, CollisionOracle, DLevelSample, TriadState,
};
use thermomachine_core::estimation::rng::{stream, uniform};
use thermomachine_core::{collision_params, tune_config, MachineConfig64, Strictness};

fn random_config(rng: &mut impl rand_core::RngCore) -> MachineConfig64 {
    let mut pick = |lo: f64, hi: f64| lo + (hi - lo) * uniform(rng);
    let eps_s = pick(0.5, 2.0);
    let t_prior = pick(0.05, 0.5) * eps_s;
    let t_v = pick(2.0, 8.0) * t_prior;
    let eps_i = pick(0.1, 3.0);
    let t = pick(0.05, 1.95) * t_prior;
    tune_config(eps_s, t_prior, t_v, eps_i, 1.0, Strictness::Strict)
        .unwrap()
        .with_temperature(t)
        .unwrap()
}

#[test]
fn oracle_matches_recurrence_on_random_configs() {
    let mut rng = stream(0xC0111DE);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let c = random_config(&mut rng);
        let oracle = CollisionOracle::qubit(&c).unwrap();
        let params = collision_params(&c);
        for p0 in [0.0, 0.37, 1.0, uniform(&mut rng)] {
            worst = worst.max((oracle.step(p0) - collide_analytic(p0, &params)).abs());
        }
    }
    assert!(worst < 1e-10, "max deviation {worst:e}");
}

#[test]
fn iterated_oracle_converges_to_steady_population() {
    let mut rng = stream(17);
    for _ in 0..5 {
        let c = random_config(&mut rng);
        let oracle = CollisionOracle::qubit(&c).unwrap();
        let params = collision_params(&c);
        let mut p = 1.0;
        for _ in 0..200 {
            p = oracle.step(p);
        }
        assert!((p - transient_population(200, 1.0, &params)).abs() < 1e-10);
    }
}

#[test]
fn closed_form_matches_iteration_up_to_ten_thousand_collisions() {
    let mut rng = stream(23);
    for _ in 0..20 {
        let c = random_config(&mut rng);
        let params = collision_params(&c);
        let p00 = uniform(&mut rng);
        let mut p = p00;
        for k in 1..=10_000u64 {
            p = collide_analytic(p, &params);
            if k % 500 == 0 || k < 20 {
                assert!((p - transient_population(k, p00, &params)).abs() < 1e-12, "k = {k}");
            }
        }
        assert!((iterate_recurrence(10_000, p00, &c) - p).abs() == 0.0);
    }
}

#[test]
fn contraction_is_geometric() {
    let c: MachineConfig64 = tune_config(1.0, 0.2, 1.0, 1.0, 1.0, Strictness::Strict).unwrap().with_temperature(0.15).unwrap();
    let params = collision_params(&c);
    let p00 = 0.93;
    for k in [1u64, 10, 100, 1000] {
        let lhs = (transient_population(k, p00, &params) - params.p0_inf).abs();
        let rhs = (1.0 - params.r).powi(k as i32) * (p00 - params.p0_inf).abs();
        assert!((lhs - rhs).abs() <= 1e-14 * rhs.max(1e-300) + 1e-16);
    }
}

#[test]
fn swap_unitary_permutes_the_coupled_pair() {
    let mut rng = stream(5);
    for _ in 0..50 {
        let c = random_config(&mut rng);
        let u = exact_unitary(&build_triad_hamiltonian(&c), swap_time(c.eps_i())).unwrap();
        let lower = basis_index(0, 0, 1);
        let upper = basis_index(1, 1, 0);
        assert!((u[(upper, lower)].norm() - 1.0).abs() < 1e-10);
        assert!((u[(lower, upper)].norm() - 1.0).abs() < 1e-10);
        for idx in (0..8).filter(|i| *i != lower && *i != upper) {
            assert!((u[(idx, idx)].norm() - 1.0).abs() < 1e-10);
        }
        let unitarity = (&u * u.adjoint() - nalgebra::DMatrix::identity(8, 8))
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        assert!(unitarity < 1e-12);
    }
}

#[test]
fn diagonal_triad_swap_matches_oracle_marginals() {
    let mut rng = stream(8);
    for _ in 0..20 {
        let c = random_config(&mut rng);
        let p0 = uniform(&mut rng);
        let triad = TriadState::product(p0, c.sample().p0, c.ancilla().p0).swap_coupled();
        let m = CollisionOracle::qubit(&c).unwrap().step_marginals(p0);
        assert!((triad.probe_ground() - m.probe_ground).abs() < 1e-12);
        assert!((triad.sample_ground() - m.sample_populations[0]).abs() < 1e-12);
        assert!((triad.ancilla_ground() - m.ancilla_ground).abs() < 1e-12);
    }
}

#[test]
fn three_level_oracle_matches_reduction() {
    // equally spaced spectrum, pair (0, 1)
    let sample = DLevelSample::new(vec![0.0, 1.0, 2.0], 0.3, (0, 1)).unwrap();
    let (eps_p, t_v) = (2.0, 1.2);
    let eps_v = eps_p + 1.0;
    let red = reduce_d_level(&sample, eps_p, eps_v, t_v).unwrap();
    let oracle = CollisionOracle::d_level(&sample, eps_p, eps_v, t_v, 0.8).unwrap();
    assert_eq!(oracle.unitary().nrows(), 12);

    // qubit formula for the pair gap, evaluated directly
    let p_inf = 1.0 / (1.0 + (1.0 / 0.3 - eps_v / t_v).exp());
    let mut p = 1.0;
    for _ in 0..20_000 {
        p = oracle.step(p);
    }
    assert!((p - p_inf).abs() < 1e-10);
    assert!((oracle.step(p_inf) - p_inf).abs() < 1e-12);

    for p0 in [0.0, 0.4, 1.0] {
        let expected = (1.0 - red.effective.r) * p0 + red.effective.r * p_inf;
        assert!((oracle.step(p0) - expected).abs() < 1e-12);
    }
    assert!(red.pair_weight < 1.0);
}
