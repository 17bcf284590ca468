//! Simulated measurement records and maximum-likelihood temperature
//! estimates on the prior interval `(0, 2·T_prior]`.

use super::rng::{binomial, split_seed, stream};
use super::EstimationError;
use crate::dynamics::{population_pair, Stage};
use crate::metrology::{golden_section_max, snr_at, snr_thermal};
use crate::physics::{MachineConfig, ThermalQubit};

/// Grid size of the transient likelihood scan.
pub const LIKELIHOOD_GRID: usize = 1024;
/// Records with fewer measurements than this are flagged as small-M.
pub const SMALL_M: u64 = 1000;
/// Minimum number of trials in a study.
pub const MIN_TRIALS: u64 = 100;

/// Outcome counts of `M` probe energy measurements.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MeasurementRecord {
    /// Ground outcomes.
    pub m0: u64,
    pub measurements: u64,
    pub seed: u64,
}

/// Draws `m0 ~ Binomial(M, p0)` from the stream seeded with `seed`.
pub fn sample_measurements(p0: f64, measurements: u64, seed: u64) -> Result<MeasurementRecord, EstimationError> {
    if measurements == 0 {
        return Err(EstimationError::InvalidInput("M must be >= 1".into()));
    }
    if !(0.0..=1.0).contains(&p0) {
        return Err(EstimationError::InvalidInput(format!("p0 must lie in [0, 1], got {p0}")));
    }
    let mut rng = stream(seed);
    Ok(MeasurementRecord {
        m0: binomial(&mut rng, measurements, p0),
        measurements,
        seed,
    })
}

/// Population `T ↦ (p0, p1)` assumed by the estimator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PopulationModel {
    /// Steady state of the machine; increasing in `T`.
    Steady,
    /// After `k` collisions from ground population `p00`.
    Transient { k: u64, p00: f64 },
    /// Probe of gap `gap` thermalized with the sample; decreasing in `T`.
    Thermal { gap: f64 },
}

impl PopulationModel {
    pub fn for_stage(stage: Stage, p00: f64) -> Self {
        match stage {
            Stage::Steady => Self::Steady,
            Stage::After(k) => Self::Transient { k, p00 },
        }
    }

    /// `(p0, p1)` at temperature `t`; the gaps and `T_v` come from `config`.
    pub fn populations(&self, config: &MachineConfig<f64>, t: f64) -> Result<(f64, f64), EstimationError> {
        Ok(match *self {
            Self::Steady => population_pair(Stage::Steady, 0.0, &config.with_temperature(t)?),
            Self::Transient { k, p00 } => population_pair(Stage::After(k), p00, &config.with_temperature(t)?),
            Self::Thermal { gap } => {
                let q = ThermalQubit::new(gap, t)?;
                (q.p0, q.p1)
            }
        })
    }

    /// Cramér–Rao SNR at the configured temperature, `None` if singular.
    pub fn crb_snr(&self, config: &MachineConfig<f64>, measurements: u64) -> Option<f64> {
        match *self {
            Self::Steady => snr_at(Stage::Steady, 0.0, config, measurements).ok().map(|p| p.snr),
            Self::Transient { k, p00 } => snr_at(Stage::After(k), p00, config, measurements).ok().map(|p| p.snr),
            Self::Thermal { gap } => snr_thermal(config.temperature(), gap, measurements).ok(),
        }
    }
}

/// Which end of the prior interval an estimate was clamped to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    Lower,
    Upper,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Estimate {
    Interior(f64),
    /// Clamped to `0` or `2·T_prior`.
    Clamped { value: f64, bound: Bound },
}

impl Estimate {
    pub fn value(self) -> f64 {
        match self {
            Self::Interior(t) => t,
            Self::Clamped { value, .. } => value,
        }
    }

    pub fn is_clamped(self) -> bool {
        matches!(self, Self::Clamped { .. })
    }
}

fn clamp(bound: Bound, t_max: f64) -> Estimate {
    let value = match bound {
        Bound::Lower => 0.0,
        Bound::Upper => t_max,
    };
    Estimate::Clamped { value, bound }
}

/// Maximum-likelihood temperature for a record.
///
/// Monotone models (`Steady`, `Thermal`) solve `p0(T̂) = m0/M` by bisection
/// to `1e-12·T_prior`. The transient model maximizes
/// `m0·ln p0(T) + (M−m0)·ln p1(T)` over a 1024-point grid and refines the
/// best cell by golden-section search.
pub fn ml_estimate(
    record: &MeasurementRecord,
    model: &PopulationModel,
    config: &MachineConfig<f64>,
) -> Result<Estimate, EstimationError> {
    if record.measurements == 0 || record.m0 > record.measurements {
        return Err(EstimationError::InvalidInput(format!(
            "invalid record: m0 = {}, M = {}",
            record.m0, record.measurements
        )));
    }
    match model {
        PopulationModel::Transient { .. } => likelihood_scan(record, model, config),
        _ => bisect(record, model, config),
    }
}

fn bisect(
    record: &MeasurementRecord,
    model: &PopulationModel,
    config: &MachineConfig<f64>,
) -> Result<Estimate, EstimationError> {
    let t_prior = config.t_prior();
    let t_max = config.t_max();
    let target = record.m0 as f64 / record.measurements as f64;
    let p_at = |t: f64| model.populations(config, t).map(|(p0, _)| p0);
    let increasing = !matches!(model, PopulationModel::Thermal { .. });
    // p0 at T → 0⁺ is 0 for the machine and 1 for a thermal probe
    let (at_zero, at_max) = (if increasing { 0.0 } else { 1.0 }, p_at(t_max)?);
    let below = |p: f64| if increasing { p < target } else { p > target };

    if target == at_zero {
        return Ok(clamp(Bound::Lower, t_max));
    }
    if target == at_max {
        return Ok(Estimate::Interior(t_max));
    }
    if below(at_max) {
        return Ok(clamp(Bound::Upper, t_max));
    }
    let (mut lo, mut hi) = (0.0, t_max);
    while hi - lo > 1e-12 * t_prior {
        let mid = 0.5 * (lo + hi);
        if below(p_at(mid)?) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(Estimate::Interior(0.5 * (lo + hi)))
}

fn log_likelihood(record: &MeasurementRecord, p0: f64, p1: f64) -> f64 {
    let m1 = record.measurements - record.m0;
    let mut ll = 0.0;
    if record.m0 > 0 {
        ll += record.m0 as f64 * p0.ln();
    }
    if m1 > 0 {
        ll += m1 as f64 * p1.ln();
    }
    ll
}

fn likelihood_scan(
    record: &MeasurementRecord,
    model: &PopulationModel,
    config: &MachineConfig<f64>,
) -> Result<Estimate, EstimationError> {
    let t_max = config.t_max();
    let step = t_max / LIKELIHOOD_GRID as f64;
    let ll = |t: f64| {
        model
            .populations(config, t)
            .map(|(p0, p1)| log_likelihood(record, p0, p1))
            .unwrap_or(f64::NEG_INFINITY)
    };
    let mut best = (0usize, f64::NEG_INFINITY);
    for i in 0..LIKELIHOOD_GRID {
        let v = ll(step * (i + 1) as f64);
        if v > best.1 {
            best = (i, v);
        }
    }
    let i = best.0;
    let lo = if i == 0 { 1e-6 * step } else { step * i as f64 };
    let hi = (step * (i + 2) as f64).min(t_max);
    let t = golden_section_max(lo, hi, 1e-12 * config.t_prior(), ll);
    let edge = 1e-9 * t_max;
    Ok(if t >= t_max - edge {
        clamp(Bound::Upper, t_max)
    } else if i == 0 && t <= lo + edge {
        clamp(Bound::Lower, t_max)
    } else {
        Estimate::Interior(t)
    })
}

/// Outcome of repeated simulate-then-estimate rounds.
#[derive(Debug, Clone, PartialEq)]
pub struct EstimationReport {
    pub t_true: f64,
    pub measurements: u64,
    pub trials: u64,
    pub seed: u64,
    pub t_hat_mean: f64,
    /// Sample standard deviation (`n − 1` normalization).
    pub t_hat_std: f64,
    pub rmse: f64,
    /// `T/std(T̂)`; `None` when every trial gave the same estimate.
    pub empirical_snr: Option<f64>,
    /// `T·√(M·F)`; `None` when the Fisher information is undefined.
    pub crb_snr: Option<f64>,
    pub clamped_fraction: f64,
    /// `M < 1000`: the estimator is far from its asymptotic regime.
    pub small_m: bool,
    /// The true probe population is pure.
    pub singular: bool,
}

/// Runs `trials` rounds for the probe state at `stage`, starting the
/// transient from `config.p00()`.
pub fn empirical_snr_study(
    config: &MachineConfig<f64>,
    stage: Stage,
    measurements: u64,
    trials: u64,
    seed: u64,
) -> Result<EstimationReport, EstimationError> {
    study_with_model(config, &PopulationModel::for_stage(stage, config.p00()), measurements, trials, seed)
}

/// Same as [`empirical_snr_study`] for an arbitrary population model.
/// Trial `i` uses seed `split_seed(seed, i)`.
pub fn study_with_model(
    config: &MachineConfig<f64>,
    model: &PopulationModel,
    measurements: u64,
    trials: u64,
    seed: u64,
) -> Result<EstimationReport, EstimationError> {
    if trials < MIN_TRIALS {
        return Err(EstimationError::InvalidInput(format!("need at least {MIN_TRIALS} trials, got {trials}")));
    }
    let t_true = config.temperature();
    let (p0, p1) = model.populations(config, t_true)?;
    let mut estimates = Vec::with_capacity(trials as usize);
    let mut clamped = 0u64;
    for i in 0..trials {
        let record = sample_measurements(p0, measurements, split_seed(seed, i))?;
        let est = ml_estimate(&record, model, config)?;
        clamped += est.is_clamped() as u64;
        estimates.push(est.value());
    }
    let n = trials as f64;
    let mean = estimates.iter().sum::<f64>() / n;
    let var = estimates.iter().map(|t| (t - mean).powi(2)).sum::<f64>() / (n - 1.0);
    let mse = estimates.iter().map(|t| (t - t_true).powi(2)).sum::<f64>() / n;
    let std = var.sqrt();
    Ok(EstimationReport {
        t_true,
        measurements,
        trials,
        seed,
        t_hat_mean: mean,
        t_hat_std: std,
        rmse: mse.sqrt(),
        empirical_snr: (std > 0.0).then(|| t_true / std),
        crb_snr: model.crb_snr(config, measurements),
        clamped_fraction: clamped as f64 / n,
        small_m: measurements < SMALL_M,
        singular: p0 == 0.0 || p1 == 0.0,
    })
}
