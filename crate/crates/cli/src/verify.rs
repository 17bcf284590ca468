//! Self-test: oracle agreement, closed forms and conservation checks.

use thermomachine_core::dynamics::{collide_analytic, transient_population, CollisionOracle};
use thermomachine_core::estimation::empirical_snr_study;
use thermomachine_core::estimation::rng::{stream, uniform, RngCore};
use thermomachine_core::metrology::{sensitivity_steady, sensitivity_transient, snr_steady};
use thermomachine_core::thermo::{balance_residual, perturbation_trajectory};
use thermomachine_core::{collision_params, tune_config, MachineConfig64, Stage, Strictness};

use crate::error::CliError;
use crate::scenario::Scenario;

struct Check {
    name: &'static str,
    deviation: f64,
    tolerance: f64,
}

fn random_config(rng: &mut impl RngCore) -> Result<MachineConfig64, CliError> {
    let mut pick = |lo: f64, hi: f64| lo + (hi - lo) * uniform(rng);
    let eps_s = pick(0.5, 2.0);
    let t_prior = pick(0.05, 0.5) * eps_s;
    let t_v = pick(2.0, 8.0) * t_prior;
    let eps_i = pick(0.1, 3.0);
    let t = pick(0.05, 1.95) * t_prior;
    let p00 = pick(0.0, 1.0);
    tune_config(eps_s, t_prior, t_v, eps_i, p00, Strictness::Strict)
        .and_then(|c| c.with_temperature(t))
        .map_err(CliError::usage)
}

/// Rows `[check, passed, deviation, tolerance]` and the check names.
pub fn run_checks(s: &Scenario) -> Result<(Vec<Vec<f64>>, Vec<&'static str>), CliError> {
    let mut rng = stream(s.seed);
    let configs = (0..200).map(|_| random_config(&mut rng)).collect::<Result<Vec<_>, _>>()?;
    let mut checks = Vec::new();

    let mut dev: f64 = 0.0;
    for c in &configs {
        let oracle = CollisionOracle::qubit(c).map_err(CliError::usage)?;
        let params = collision_params(c);
        for p0 in [0.0, c.p00(), 1.0] {
            dev = dev.max((oracle.step(p0) - collide_analytic(p0, &params)).abs());
        }
    }
    checks.push(Check { name: "exact collision unitary vs recurrence", deviation: dev, tolerance: 1e-10 });

    let mut dev: f64 = 0.0;
    for c in configs.iter().take(5) {
        let params = collision_params(c);
        let mut p = c.p00();
        for k in 1..=10_000u64 {
            p = collide_analytic(p, &params);
            dev = dev.max((p - transient_population(k, c.p00(), &params)).abs());
        }
    }
    checks.push(Check { name: "closed-form transient vs iteration", deviation: dev, tolerance: 1e-12 });

    let mut dev: f64 = 0.0;
    for t_prior in [0.25_f64, 0.125, 0.0625] {
        let c = tune_config(1.0, t_prior, 1.0, 1.0, 1.0, Strictness::Lenient).map_err(CliError::usage)?;
        let snr = snr_steady(&c, 1).map_err(CliError::usage)?.snr;
        dev = dev.max((snr * 2.0 * t_prior - 1.0).abs());
    }
    checks.push(Check { name: "steady SNR at the prior temperature", deviation: dev, tolerance: 1e-12 });

    let mut dev: f64 = 0.0;
    for c in &configs {
        for step in perturbation_trajectory(50, c.p00(), c).steps {
            dev = dev.max(step.conservation_residual(c).abs());
        }
        dev = dev.max(balance_residual(1000, c.p00(), c).abs());
    }
    checks.push(Check { name: "per-collision energy conservation", deviation: dev, tolerance: 1e-12 });

    let mut dev: f64 = 0.0;
    for c in configs.iter().take(20) {
        let late = sensitivity_transient(u64::MAX / 4, c.p00(), c);
        let steady = sensitivity_steady(c);
        dev = dev.max((late - steady).abs() / steady.abs().max(f64::MIN_POSITIVE));
    }
    checks.push(Check { name: "transient sensitivity reaches the steady limit", deviation: dev, tolerance: 1e-12 });

    let c = tune_config(1.0, 0.25, 1.0, 1.0, 1.0, Strictness::Lenient).map_err(CliError::usage)?;
    let r = empirical_snr_study(&c, Stage::Steady, 10_000, 1000, s.seed).map_err(CliError::usage)?;
    let dev = match (r.empirical_snr, r.crb_snr) {
        (Some(e), Some(b)) => (e / b - 1.0).abs(),
        _ => f64::INFINITY,
    };
    checks.push(Check { name: "Monte Carlo estimator saturates the Cramer-Rao bound", deviation: dev, tolerance: 0.05 });

    let rows = checks
        .iter()
        .enumerate()
        .map(|(i, ch)| {
            let passed = ch.deviation <= ch.tolerance;
            vec![(i + 1) as f64, f64::from(u8::from(passed)), ch.deviation, ch.tolerance]
        })
        .collect();
    Ok((rows, checks.iter().map(|c| c.name).collect()))
}
