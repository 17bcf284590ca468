//! Fisher information and signal-to-noise ratios.
//!
//! A measurement of the probe energy has two outcomes, so the Fisher
//! information about `T` is `F = λ²/(p0·p1)` with `λ = ∂p0/∂T`, and the
//! Cramér–Rao bound for `M` independent measurements reads
//! `SNR = T/ΔT ≤ T·√(M·F)`. Binary outcomes saturate it, so every SNR here is
//! computed as `T·√(M·F)` from a population and its sensitivity. The
//! [`closed_form`] submodule keeps the simplified expressions for
//! cross-checking.
//!
//! SNR values that would need a division by a pure population are reported as
//! [`MetrologyError::Singular`] instead of `NaN`.

use thiserror::Error;

use crate::dynamics::{decay_complement, decay_factor, population_pair, Stage};
use crate::physics::{collision_params, MachineConfig, PhysicsError, ThermalQubit};
use crate::scalar::{fermi, Real};

/// `√(2/π)`, the reference level for the machine-to-sample SNR ratio.
pub const SQRT_2_OVER_PI: f64 = 0.797_884_560_802_865_4;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MetrologyError {
    #[error("Fisher information undefined: probe population is pure (p0 = {p0})")]
    Singular { p0: f64 },
    #[error("{0}")]
    InvalidInput(String),
    #[error(transparent)]
    Physics(#[from] PhysicsError),
}

fn invalid(msg: impl Into<String>) -> MetrologyError {
    MetrologyError::InvalidInput(msg.into())
}

/// One evaluation of the thermometric precision.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SnrPoint<F> {
    pub temperature: F,
    /// Number of independent measurements `M`.
    pub measurements: u64,
    pub stage: Stage,
    /// Probe ground population.
    pub p0: F,
    /// `∂p0/∂T`.
    pub sensitivity: F,
    /// Fisher information per measurement.
    pub fisher: F,
    /// `T·√(M·F)`.
    pub snr: F,
}

impl<F: Real> SnrPoint<F> {
    /// Assembles a point from the two outcome probabilities. `p1` is passed
    /// separately so that an excited population close to zero keeps its
    /// relative precision.
    pub fn from_binary(
        temperature: F,
        measurements: u64,
        stage: Stage,
        p0: F,
        p1: F,
        sensitivity: F,
    ) -> Result<Self, MetrologyError> {
        if measurements == 0 {
            return Err(invalid("measurement count M must be >= 1"));
        }
        let unit = if p0 > F::zero() && p1 > F::zero() {
            sensitivity.abs() / (p0.sqrt() * p1.sqrt())
        } else if sensitivity == F::zero() && p0 + p1 > F::zero() {
            // both the population and its derivative underflowed: the
            // information is below the representable range, not undefined
            F::zero()
        } else {
            return Err(MetrologyError::Singular { p0: p0.as_f64() });
        };
        let m = F::from_u64(measurements).expect("measurement count representable");
        Ok(Self {
            temperature,
            measurements,
            stage,
            p0,
            sensitivity,
            fisher: unit * unit,
            snr: temperature * m.sqrt() * unit,
        })
    }
}

/// `λ²/(p0·(1−p0))`.
pub fn fisher_binary<F: Real>(p0: F, lambda: F) -> Result<F, MetrologyError> {
    if !(p0 > F::zero() && p0 < F::one()) {
        return Err(MetrologyError::Singular { p0: p0.as_f64() });
    }
    Ok(lambda * lambda / (p0 * (F::one() - p0)))
}

/// Steady ground and excited populations `(p0_inf, p1_inf)`.
fn steady_pair<F: Real>(config: &MachineConfig<F>) -> (F, F) {
    let x = config.steady_exponent();
    (fermi(x), fermi(-x))
}

/// `λ_∞ = p0_inf·p1_inf·ε_s/T²`.
pub fn sensitivity_steady<F: Real>(config: &MachineConfig<F>) -> F {
    let (p0, p1) = steady_pair(config);
    let t = config.temperature();
    p0 * p1 * config.eps_s() / (t * t)
}

/// `∂r/∂T = (∂p1^s/∂T)·(p0^v − p1^v)`.
pub fn jump_rate_derivative<F: Real>(config: &MachineConfig<F>) -> F {
    let v = config.ancilla();
    config.sample().excited_sensitivity() * (v.p0 - v.p1)
}

/// Sensitivity after `k` completed collisions:
/// `[1 − (1−r)^k]·λ_∞ + k·(p0_inf − p00)·(∂r/∂T)·(1−r)^{k−1}`.
pub fn sensitivity_transient<F: Real>(k: u64, p00: F, config: &MachineConfig<F>) -> F {
    if k == 0 {
        return F::zero();
    }
    let params = collision_params(config);
    let kf = F::from_u64(k).expect("collision count representable");
    let memory = kf * (params.p0_inf - p00) * jump_rate_derivative(config);
    let memory = if memory == F::zero() {
        F::zero()
    } else {
        memory * decay_factor(params.r, k - 1)
    };
    decay_complement(params.r, k) * sensitivity_steady(config) + memory
}

/// Steady-state SNR for `M` measurements.
pub fn snr_steady<F: Real>(config: &MachineConfig<F>, m: u64) -> Result<SnrPoint<F>, MetrologyError> {
    let (p0, p1) = steady_pair(config);
    SnrPoint::from_binary(
        config.temperature(),
        m,
        Stage::Steady,
        p0,
        p1,
        sensitivity_steady(config),
    )
}

/// Transient SNR after `k` collisions from initial ground population `p00`.
pub fn snr_transient<F: Real>(
    k: u64,
    p00: F,
    config: &MachineConfig<F>,
    m: u64,
) -> Result<SnrPoint<F>, MetrologyError> {
    if !(p00 >= F::zero() && p00 <= F::one()) {
        return Err(invalid(format!("p00 must lie in [0, 1], got {p00}")));
    }
    let (p0, p1) = population_pair(Stage::After(k), p00, config);
    if k == 0 && (p0 == F::zero() || p1 == F::zero()) {
        return Err(MetrologyError::Singular { p0: p0.as_f64() });
    }
    SnrPoint::from_binary(
        config.temperature(),
        m,
        Stage::After(k),
        p0,
        p1,
        sensitivity_transient(k, p00, config),
    )
}

/// SNR at an arbitrary stage.
pub fn snr_at<F: Real>(
    stage: Stage,
    p00: F,
    config: &MachineConfig<F>,
    m: u64,
) -> Result<SnrPoint<F>, MetrologyError> {
    match stage {
        Stage::After(k) => snr_transient(k, p00, config, m),
        Stage::Steady => snr_steady(config, m),
    }
}

/// Largest transient SNR over `k ∈ [1, k_max]`, as `(k, point)`.
pub fn transient_snr_peak<F: Real>(
    p00: F,
    config: &MachineConfig<F>,
    m: u64,
    k_max: u64,
) -> Result<(u64, SnrPoint<F>), MetrologyError> {
    if k_max == 0 {
        return Err(invalid("k_max must be >= 1"));
    }
    let mut best = (1, snr_transient(1, p00, config, m)?);
    for k in 2..=k_max {
        let p = snr_transient(k, p00, config, m)?;
        if p.snr > best.1.snr {
            best = (k, p);
        }
    }
    Ok(best)
}

/// SNR of a qubit of gap `eps` measured directly in its Gibbs state at `T`.
pub fn snr_thermal<F: Real>(temperature: F, eps: F, m: u64) -> Result<F, MetrologyError> {
    let q = ThermalQubit::new(eps, temperature)?;
    let point = SnrPoint::from_binary(
        temperature,
        m,
        Stage::Steady,
        q.p0,
        q.p1,
        -q.excited_sensitivity(),
    )?;
    Ok(point.snr)
}

/// Optimum of the thermal SNR over the gap at fixed temperature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalOptimum<F> {
    /// Optimal `ε/T`.
    pub ratio: F,
    pub snr: F,
}

/// Maximizes [`snr_thermal`] over `ε/T` by golden-section search on `[0, 20]`.
pub fn max_thermal_snr<F: Real>(m: u64) -> Result<ThermalOptimum<F>, MetrologyError> {
    let f = |x: F| snr_thermal(F::one(), x, m);
    let ratio = golden_section_max(F::zero(), F::lit(20.0), F::lit(1e-10), |x| {
        f(x).unwrap_or(F::zero())
    });
    Ok(ThermalOptimum {
        ratio,
        snr: f(ratio)?,
    })
}

/// Argmax of a unimodal function on `[a, b]`.
pub(crate) fn golden_section_max<F: Real>(mut a: F, mut b: F, tol: F, f: impl Fn(F) -> F) -> F {
    let inv_phi = (F::lit(5.0).sqrt() - F::one()) / F::lit(2.0);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..200 {
        if (b - a).abs() <= tol {
            break;
        }
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    (a + b) / F::lit(2.0)
}

/// Sign of the error on the ancilla temperature estimate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorSign {
    Plus,
    Minus,
}

/// The ancilla gap is tuned with `T_v^est = T_v·(1 ± delta_tv_rel)` while the
/// ancilla actually sits at `T_v`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoisyAncillaSpec<F> {
    /// `ΔT_v/T_v ≥ 0`.
    pub delta_tv_rel: F,
    pub sign: ErrorSign,
}

impl<F: Real> NoisyAncillaSpec<F> {
    pub fn new(delta_tv_rel: F, sign: ErrorSign) -> Result<Self, MetrologyError> {
        if !(delta_tv_rel >= F::zero() && delta_tv_rel.is_finite()) {
            return Err(invalid(format!("delta_tv_rel must be finite and >= 0, got {delta_tv_rel}")));
        }
        Ok(Self { delta_tv_rel, sign })
    }

    /// `1 ± ΔT_v/T_v`.
    pub fn factor(&self) -> F {
        match self.sign {
            ErrorSign::Plus => F::one() + self.delta_tv_rel,
            ErrorSign::Minus => F::one() - self.delta_tv_rel,
        }
    }

    /// Machine whose ancilla gap was tuned with the mis-estimated `T_v`.
    pub fn detune(&self, config: &MachineConfig<F>) -> Result<MachineConfig<F>, MetrologyError> {
        let factor = self.factor();
        if factor <= F::zero() {
            return Err(invalid("1 - delta_tv_rel must be positive"));
        }
        Ok(MachineConfig::with_ancilla_gap(
            config.eps_s(),
            config.eps_v() * factor,
            config.temperature(),
            config.t_v(),
            config.t_prior(),
            config.eps_i(),
            config.p00(),
        )?)
    }
}

/// Steady SNR of a machine tuned with a wrong ancilla temperature.
pub fn snr_noisy_ancilla<F: Real>(
    config: &MachineConfig<F>,
    noisy: &NoisyAncillaSpec<F>,
    m: u64,
) -> Result<SnrPoint<F>, MetrologyError> {
    snr_steady(&noisy.detune(config)?, m)
}

/// Point where the steady exponent of a mis-tuned machine vanishes.
///
/// There the population factor `e^{−x/2}/(1+e^{−x})` reaches its maximum
/// `1/2`. The SNR as a function of `T` peaks slightly colder, because of the
/// extra `ε_s/T` factor, but stays within a few percent of this value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoisyPeak<F> {
    /// `T_prior/(1 ± ΔT_v/T_v)`.
    pub temperature: F,
    /// SNR at that temperature.
    /// `(√M/2)·(1 ± ΔT_v/T_v)·ε_s/T_prior`.
    pub snr: F,
    /// Whether the peak lies in the prior interval, `T ≤ 2·T_prior`.
    pub within_prior: bool,
}

/// [`NoisyPeak`] of a tuned configuration.
pub fn noisy_ancilla_peak<F: Real>(
    config: &MachineConfig<F>,
    noisy: &NoisyAncillaSpec<F>,
    m: u64,
) -> Result<NoisyPeak<F>, MetrologyError> {
    let factor = noisy.factor();
    if factor <= F::zero() {
        return Err(invalid("no peak: 1 - delta_tv_rel must be positive"));
    }
    let temperature = config.t_prior() / factor;
    let at_peak = config.with_temperature(temperature)?;
    let point = snr_noisy_ancilla(&at_peak, noisy, m)?;
    Ok(NoisyPeak {
        temperature,
        snr: point.snr,
        within_prior: temperature <= config.t_max(),
    })
}

/// Best SNR reachable by any measurement on `k` sample qubits of gap `eps_s`.
pub fn snr_sample_bound<F: Real>(k: u64, temperature: F, eps_s: F) -> Result<F, MetrologyError> {
    if k == 0 {
        return Err(invalid("k must be >= 1"));
    }
    snr_thermal(temperature, eps_s, k)
}

/// Smallest `k` whose sample bound reaches `target_snr`.
pub fn required_interactions<F: Real>(
    target_snr: F,
    temperature: F,
    eps_s: F,
) -> Result<u64, MetrologyError> {
    if !(target_snr > F::zero() && target_snr.is_finite()) {
        return Err(invalid(format!("target SNR must be finite and > 0, got {target_snr}")));
    }
    let per_qubit = snr_sample_bound(1, temperature, eps_s)?;
    if per_qubit <= F::zero() {
        return Err(invalid("sample bound vanishes at this temperature"));
    }
    let estimate = (target_snr / per_qubit).powi(2).ceil();
    let mut k = estimate
        .to_u64()
        .filter(|k| *k < u64::MAX / 2)
        .ok_or_else(|| invalid(format!("required k = {estimate} exceeds u64")))?
        .max(1);
    // settle rounding of the closed-form inversion
    while k > 1 && snr_sample_bound(k - 1, temperature, eps_s)? >= target_snr {
        k -= 1;
    }
    while snr_sample_bound(k, temperature, eps_s)? < target_snr {
        k += 1;
    }
    Ok(k)
}

/// `snr_transient(k)/snr_sample_bound(k)` at `M = 1`.
pub fn sample_bound_ratio<F: Real>(
    k: u64,
    p00: F,
    config: &MachineConfig<F>,
) -> Result<F, MetrologyError> {
    let machine = snr_transient(k, p00, config, 1)?.snr;
    let bound = snr_sample_bound(k, config.temperature(), config.eps_s())?;
    Ok(machine / bound)
}

/// Simplified expressions, independent of the population/sensitivity path.
pub mod closed_form {
    use crate::scalar::Real;

    /// `e^{−x/2}/(1 + e^{−x})`, even in `x`.
    pub fn half_sech<F: Real>(x: F) -> F {
        let a = x.abs();
        (-a / F::lit(2.0)).exp() / (F::one() + (-a).exp())
    }

    /// `√M·e^{−x/2}/(1+e^{−x})·(ε_s/T)` with `x = ε_s/T − ε_v/T_v`.
    pub fn steady_snr<F: Real>(eps_s: F, temperature: F, eps_v: F, t_v: F, m: u64) -> F {
        let x = eps_s / temperature - eps_v / t_v;
        sqrt_m::<F>(m) * half_sech(x) * eps_s / temperature
    }

    /// `√M·e^{−ε/2T}/(1+e^{−ε/T})·(ε/T)`.
    pub fn thermal_snr<F: Real>(temperature: F, eps: F, m: u64) -> F {
        let x = eps / temperature;
        sqrt_m::<F>(m) * half_sech(x) * x
    }

    /// Steady SNR with `x_T = 1 − (T/T_prior)·factor`, `factor = 1 ± ΔT_v/T_v`.
    pub fn noisy_snr<F: Real>(eps_s: F, temperature: F, t_prior: F, factor: F, m: u64) -> F {
        let x = eps_s / temperature * (F::one() - temperature / t_prior * factor);
        sqrt_m::<F>(m) * half_sech(x) * eps_s / temperature
    }

    /// `√(k·e^{−ε_s/T})/(1+e^{−ε_s/T})·(ε_s/T)`.
    pub fn sample_bound<F: Real>(k: u64, temperature: F, eps_s: F) -> F {
        thermal_snr(temperature, eps_s, k)
    }

    fn sqrt_m<F: Real>(m: u64) -> F {
        F::from_u64(m).expect("count representable").sqrt()
    }
}
