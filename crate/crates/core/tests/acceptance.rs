//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit status if
//! any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use thermomachine_core::dynamics::{
    build_triad_hamiltonian, collide_analytic, exact_unitary, reduce_d_level, swap_time,
    transient_population, triad::basis_index, CollisionOracle, DLevelSample,
};
use thermomachine_core::estimation::rng::{stream, uniform};
use thermomachine_core::estimation::{empirical_snr_study, DEFAULT_SEED};
use thermomachine_core::metrology::{
    max_thermal_snr, noisy_ancilla_peak, sample_bound_ratio, snr_steady, snr_thermal, ErrorSign,
    NoisyAncillaSpec, SQRT_2_OVER_PI,
};
use thermomachine_core::thermo::{heat_ancilla, heat_sample, heat_sample_limit, perturbation_trajectory};
use thermomachine_core::{collision_params, tune_config, MachineConfig64, Stage, Strictness};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn tuned(eps_s: f64, t_prior: f64, t: f64) -> MachineConfig64 {
    tune_config(eps_s, t_prior, 1.0, 1.0, 1.0, Strictness::Lenient)
        .unwrap()
        .with_temperature(t)
        .unwrap()
}

fn random_config(rng: &mut impl rand_core::RngCore) -> MachineConfig64 {
    let mut pick = |lo: f64, hi: f64| lo + (hi - lo) * uniform(rng);
    let eps_s = pick(0.5, 2.0);
    let t_prior = pick(0.05, 0.5) * eps_s;
    let t_v = pick(2.0, 8.0) * t_prior;
    let eps_i = pick(0.1, 3.0);
    let t = pick(0.05, 1.95) * t_prior;
    tune_config(eps_s, t_prior, t_v, eps_i, pick(0.0, 1.0), Strictness::Strict)
        .unwrap()
        .with_temperature(t)
        .unwrap()
}

/// `e^{−x/2}/(1+e^{−x})` written out independently of the library.
fn half_sech(x: f64) -> f64 {
    1.0 / (2.0 * (x / 2.0).cosh())
}

fn unitary_swap() -> Outcome {
    let start = Instant::now();
    let mut rng = stream(1);
    let mut configs = vec![tuned(1.0, 0.25, 0.2)];
    configs.extend((0..20).map(|_| random_config(&mut rng)));
    let (lower, upper) = (basis_index(0, 0, 1), basis_index(1, 1, 0));
    let mut worst: f64 = 0.0;
    for c in &configs {
        let u = exact_unitary(&build_triad_hamiltonian(c), swap_time(c.eps_i())).unwrap();
        worst = worst
            .max((u[(upper, lower)].norm() - 1.0).abs())
            .max((u[(lower, upper)].norm() - 1.0).abs());
        for idx in (0..8).filter(|i| *i != lower && *i != upper) {
            worst = worst.max((u[(idx, idx)].norm() - 1.0).abs());
        }
    }
    let elapsed = start.elapsed();
    outcome(
        worst < 1e-10 && elapsed < Duration::from_secs(1),
        format!("max ||amplitude| - 1| = {worst:.2e} over {} configs, {elapsed:.2?}", configs.len()),
    )
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let mut rng = stream(2);
    let mut worst_step: f64 = 0.0;
    for _ in 0..1000 {
        let c = random_config(&mut rng);
        let oracle = CollisionOracle::qubit(&c).unwrap();
        let params = collision_params(&c);
        for p0 in [0.0, 1.0, c.p00()] {
            worst_step = worst_step.max((oracle.step(p0) - collide_analytic(p0, &params)).abs());
        }
    }
    let mut worst_closed: f64 = 0.0;
    for _ in 0..20 {
        let c = random_config(&mut rng);
        let params = collision_params(&c);
        let mut p = c.p00();
        for k in 1..=10_000u64 {
            p = collide_analytic(p, &params);
            worst_closed = worst_closed.max((p - transient_population(k, c.p00(), &params)).abs());
        }
    }
    let elapsed = start.elapsed();
    outcome(
        worst_step < 1e-10 && worst_closed < 1e-12 && elapsed < Duration::from_secs(30),
        format!(
            "oracle vs recurrence {worst_step:.2e} (1000 configs), closed form vs iteration {worst_closed:.2e} (k <= 1e4), {elapsed:.2?}"
        ),
    )
}

fn maximum_steady_snr() -> Outcome {
    let mut worst: f64 = 0.0;
    for t_prior in [0.5, 0.25, 0.125, 1.0 / 12.0, 0.0625, 0.01] {
        let snr = snr_steady(&tuned(1.0, t_prior, t_prior), 1).unwrap().snr;
        worst = worst.max((snr / (0.5 / t_prior) - 1.0).abs());
    }
    let quarter = snr_steady(&tuned(1.0, 0.25, 0.25), 1).unwrap().snr;
    let s2 = snr_steady(&tuned(1.0, 1.0 / 7.0, 1.0 / 8.0), 1).unwrap().snr;
    outcome(
        worst < 1e-12 && (quarter - 2.0).abs() < 0.01 && (s2 - 3.547).abs() < 0.01,
        format!("max rel. dev. from eps_s/(2T~) {worst:.1e}; T~ = eps_s/4: {quarter:.6}; eps_s/T = 8, eps_s/T~ = 7: {s2:.4}"),
    )
}

fn thermal_baseline() -> Outcome {
    let opt = max_thermal_snr::<f64>(1).unwrap();
    let m16 = snr_thermal(1.0, opt.ratio, 16).unwrap();
    let value_ok = (opt.snr - 0.662).abs() < 1e-3;
    let ratio_ok = (opt.ratio - 2.50).abs() <= 0.05;
    outcome(
        value_ok && ratio_ok && m16 > 2.0,
        format!(
            "max = {:.6}·sqrt(M) at eps/T = {:.6} (required 2.50 ± 0.05); M = 16 gives {m16:.4}",
            opt.snr, opt.ratio
        ),
    )
}

fn measurement_cost() -> Outcome {
    let (t, t_prior) = (1.0 / 11.0, 1.0 / 10.0);
    let c = tuned(1.0, t_prior, t).with_p00(1.0).unwrap();
    let machine = snr_steady(&c, 2).unwrap().snr;
    let thermal = snr_thermal(t, 1.0, 20_000).unwrap();
    let machine_cf = 2f64.sqrt() * half_sech(11.0 - 10.0) * 11.0;
    let thermal_cf = 20_000f64.sqrt() * half_sech(11.0) * 11.0;
    outcome(
        machine > thermal && (machine - machine_cf).abs() < 1e-3 && (thermal - thermal_cf).abs() < 1e-3,
        format!("machine (M = 2) {machine:.5} > thermal (M = 20000) {thermal:.5}"),
    )
}

fn noisy_ancilla() -> Outcome {
    let c = tune_config(1.0, 0.1, 4.0, 1.0, 1.0, Strictness::Strict).unwrap();
    let mut worst: f64 = 0.0;
    for delta in [0.0, 0.05, 0.2, 0.4, 0.5, 0.7] {
        for (sign, factor) in [(ErrorSign::Plus, 1.0 + delta), (ErrorSign::Minus, 1.0 - delta)] {
            let spec = NoisyAncillaSpec::new(delta, sign).unwrap();
            for m in [1u64, 9] {
                let peak = noisy_ancilla_peak(&c, &spec, m).unwrap();
                let expected = (m as f64).sqrt() / 2.0 * factor / 0.1;
                worst = worst
                    .max((peak.snr / expected - 1.0).abs())
                    .max((peak.temperature / (0.1 / factor) - 1.0).abs());
            }
        }
    }
    let mut iff_holds = true;
    for i in 0..=40 {
        let delta = i as f64 * 0.02;
        let spec = NoisyAncillaSpec::new(delta, ErrorSign::Minus).unwrap();
        let inside = noisy_ancilla_peak(&c, &spec, 1).unwrap().within_prior;
        iff_holds &= inside == (delta <= 0.5);
    }
    outcome(
        worst < 1e-12 && iff_holds,
        format!("max rel. dev. {worst:.1e}; minus-branch peak inside prior iff dT_v/T_v <= 1/2: {iff_holds}"),
    )
}

fn heat_bounds() -> Outcome {
    let mut rng = stream(7);
    let (mut limit_dev, mut bound_ok, mut conservation, mut signs_ok): (f64, bool, f64, bool) = (0.0, true, 0.0, true);
    for _ in 0..300 {
        let c = random_config(&mut rng);
        let p_inf = collision_params(&c).p0_inf;
        for i in 0..=10 {
            let p00 = i as f64 / 10.0;
            let q_inf = heat_sample_limit(p00, &c);
            limit_dev = limit_dev.max((q_inf - c.eps_s() * (p00 - p_inf)).abs());
            bound_ok &= q_inf.abs() <= c.eps_s();
            let k = (uniform(&mut rng) * 5000.0) as u64 + 1;
            let (qs, qv) = (heat_sample(k, p00, &c), heat_ancilla(k, p00, &c));
            if qs != 0.0 && qv != 0.0 {
                signs_ok &= qs.signum() == -qv.signum();
            }
        }
        for step in perturbation_trajectory(50, c.p00(), &c).steps {
            conservation = conservation.max(step.conservation_residual(&c).abs());
        }
    }
    outcome(
        limit_dev < 1e-12 && bound_ok && conservation < 1e-12 && signs_ok,
        format!("Q_S limit dev. {limit_dev:.1e}, |Q_S| <= eps_s: {bound_ok}, per-collision balance {conservation:.1e}, opposite signs: {signs_ok}"),
    )
}

fn crb_saturation() -> Outcome {
    let start = Instant::now();
    let c = tuned(1.0, 0.25, 0.25);
    let r = empirical_snr_study(&c, Stage::Steady, 10_000, 1000, DEFAULT_SEED).unwrap();
    let elapsed = start.elapsed();
    let (emp, crb) = (r.empirical_snr.unwrap_or(0.0), r.crb_snr.unwrap_or(f64::NAN));
    let crb_cf = 100.0 * half_sech(0.0) * 4.0;
    outcome(
        (emp / crb - 1.0).abs() < 0.05 && (crb - crb_cf).abs() < 1e-9 && elapsed < Duration::from_secs(120),
        format!("empirical {emp:.3} vs T·sqrt(M·F) = {crb:.3} ({:+.2}%), {elapsed:.2?}", 100.0 * (emp / crb - 1.0)),
    )
}

fn d_level_reduction() -> Outcome {
    let sample = DLevelSample::new(vec![0.0, 1.0, 2.0], 0.5, (0, 1)).unwrap();
    let (eps_p, t_v) = (1.0, 1.5);
    let eps_v = eps_p + 1.0;
    let oracle = CollisionOracle::d_level(&sample, eps_p, eps_v, t_v, 0.6).unwrap();
    let red = reduce_d_level(&sample, eps_p, eps_v, t_v).unwrap();
    // qubit steady state for the pair gap ε⁽¹⁾ − ε⁽⁰⁾ = 1
    let p_inf = 1.0 / (1.0 + (1.0 / 0.5 - eps_v / t_v).exp());
    let mut p = 1.0;
    for _ in 0..5000 {
        p = oracle.step(p);
    }
    let fixed = (p - p_inf).abs();
    let map = [0.0, 0.3, 1.0]
        .iter()
        .map(|p0| (oracle.step(*p0) - ((1.0 - red.effective.r) * p0 + red.effective.r * p_inf)).abs())
        .fold(0.0, f64::max);
    let weight = (red.effective.r - red.pair_weight * red.pair.r).abs();
    outcome(
        fixed < 1e-10 && map < 1e-10 && weight < 1e-15,
        format!("dim {}: fixed point dev. {fixed:.1e}, one-step map dev. {map:.1e} (w = {:.6})", oracle.unitary().nrows(), red.pair_weight),
    )
}

fn ratio_floor() -> Outcome {
    let c = tuned(1.0, 1.0 / 7.0, 1.0 / 8.0);
    let (mut min, mut at) = (f64::INFINITY, 0);
    for k in 1..=6000u64 {
        let ratio = sample_bound_ratio(k, 1.0, &c).unwrap();
        if ratio < min {
            min = ratio;
            at = k;
        }
    }
    let last = sample_bound_ratio(6000, 1.0, &c).unwrap();
    // informational: the same ratio for a probe starting excited
    let excited = (1..=6000u64)
        .map(|k| sample_bound_ratio(k, 0.0, &c).unwrap())
        .fold(f64::INFINITY, f64::min);
    outcome(
        min >= 0.38,
        format!(
            "min ratio {min:.5} at k = {at} (k = 6000: {last:.4}; p00 = 0 min {excited:.4}); reference sqrt(2/pi) = {SQRT_2_OVER_PI:.6}"
        ),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("unitary swap", unitary_swap),
        ("oracle equivalence", oracle_equivalence),
        ("maximum steady SNR", maximum_steady_snr),
        ("thermal baseline", thermal_baseline),
        ("measurement cost", measurement_cost),
        ("noisy ancilla", noisy_ancilla),
        ("heat bounds", heat_bounds),
        ("CRB saturation", crb_saturation),
        ("d-level reduction", d_level_reduction),
        ("ratio floor", ratio_floor),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        failed += usize::from(!o.pass);
        println!("criterion {:>2} {} {name}: {}", i + 1, if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
