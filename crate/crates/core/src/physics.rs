//! Domain types of the machine: energies, temperatures, thermal qubits, the
//! machine configuration and the two numbers that drive the probe.
//!
//! Units: `k_B = ħ = 1`, every energy and temperature shares one arbitrary
//! unit. Gibbs weights are always built from exponent differences (`ε/T`
//! terms) and never from ratios of exponentials.

use thiserror::Error;

use crate::scalar::{fermi, Real};

/// Errors raised when a physical quantity leaves its domain.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum PhysicsError {
    #[error("{quantity} must be {requirement}, got {value}")]
    Domain {
        quantity: &'static str,
        requirement: &'static str,
        value: f64,
    },
    #[error("ancilla temperature T_v = {t_v} is below the prior maximum 2*T_prior = {t_max}")]
    GapOrdering { t_v: f64, t_max: f64 },
    #[error("probe gap eps_p = {eps_p} must be positive (eps_v = {eps_v}, eps_s = {eps_s})")]
    NonPositiveProbeGap { eps_p: f64, eps_v: f64, eps_s: f64 },
}

fn domain<F: Real>(quantity: &'static str, requirement: &'static str, value: F) -> PhysicsError {
    PhysicsError::Domain {
        quantity,
        requirement,
        value: value.as_f64(),
    }
}

/// A nonnegative energy.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Energy<F>(F);

impl<F: Real> Energy<F> {
    pub fn new(value: F) -> Result<Self, PhysicsError> {
        if value.is_finite() && value >= F::zero() {
            Ok(Self(value))
        } else {
            Err(domain("energy", "finite and >= 0", value))
        }
    }

    #[inline]
    pub fn get(self) -> F {
        self.0
    }
}

/// A strictly positive, finite temperature.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Temperature<F>(F);

impl<F: Real> Temperature<F> {
    pub fn new(value: F) -> Result<Self, PhysicsError> {
        if value.is_finite() && value > F::zero() {
            Ok(Self(value))
        } else {
            Err(domain("temperature", "finite and > 0", value))
        }
    }

    #[inline]
    pub fn get(self) -> F {
        self.0
    }
}

/// Gibbs populations of a two-level system.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalQubit<F> {
    pub gap: Energy<F>,
    pub temperature: Temperature<F>,
    /// Ground population.
    pub p0: F,
    /// Excited population.
    pub p1: F,
}

impl<F: Real> ThermalQubit<F> {
    /// Convenience constructor from raw values.
    pub fn new(gap: F, temperature: F) -> Result<Self, PhysicsError> {
        Ok(thermal_population(
            Energy::new(gap)?,
            Temperature::new(temperature)?,
        ))
    }

    /// `∂p1/∂T = p0·p1·ε/T²`.
    pub fn excited_sensitivity(&self) -> F {
        let t = self.temperature.get();
        self.p0 * self.p1 * self.gap.get() / (t * t)
    }
}

/// Ground and excited Gibbs populations of a qubit with the given gap.
pub fn thermal_population<F: Real>(gap: Energy<F>, temperature: Temperature<F>) -> ThermalQubit<F> {
    let x = gap.get() / temperature.get();
    ThermalQubit {
        gap,
        temperature,
        p0: fermi(-x),
        p1: fermi(x),
    }
}

/// How `tune_config` treats an ancilla colder than the prior maximum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strictness {
    /// Accept and report through [`MachineConfig::warnings`].
    #[default]
    Lenient,
    /// Reject with [`PhysicsError::GapOrdering`].
    Strict,
}

/// Non-fatal conditions attached to a configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ConfigWarning {
    /// `T_v < 2·T_prior`: the tuned probe gap is smaller than the sample gap.
    AncillaBelowPriorMax { t_v: f64, t_max: f64 },
    /// The sample temperature lies outside the prior interval `(0, 2·T_prior)`.
    OutsidePrior { temperature: f64, t_max: f64 },
}

/// Energies and temperatures of probe, sample and ancilla.
///
/// The resonance `eps_v = eps_p + eps_s` always holds: `eps_p` is derived
/// from `eps_v` at construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MachineConfig<F> {
    eps_s: F,
    temperature: F,
    t_v: F,
    t_prior: F,
    eps_v: F,
    eps_p: F,
    eps_i: F,
    p00: F,
}

fn positive<F: Real>(quantity: &'static str, value: F) -> Result<F, PhysicsError> {
    if value.is_finite() && value > F::zero() {
        Ok(value)
    } else {
        Err(domain(quantity, "finite and > 0", value))
    }
}

fn probability<F: Real>(quantity: &'static str, value: F) -> Result<F, PhysicsError> {
    if value >= F::zero() && value <= F::one() {
        Ok(value)
    } else {
        Err(domain(quantity, "in [0, 1]", value))
    }
}

impl<F: Real> MachineConfig<F> {
    /// Builds a configuration from an explicit ancilla gap; the probe gap is
    /// set to `eps_v - eps_s`.
    #[allow(clippy::too_many_arguments)]
    pub fn with_ancilla_gap(
        eps_s: F,
        eps_v: F,
        temperature: F,
        t_v: F,
        t_prior: F,
        eps_i: F,
        p00: F,
    ) -> Result<Self, PhysicsError> {
        let eps_s = positive("eps_s", eps_s)?;
        let eps_v = positive("eps_v", eps_v)?;
        let eps_p = eps_v - eps_s;
        if eps_p <= F::zero() {
            return Err(PhysicsError::NonPositiveProbeGap {
                eps_p: eps_p.as_f64(),
                eps_v: eps_v.as_f64(),
                eps_s: eps_s.as_f64(),
            });
        }
        Ok(Self {
            eps_s,
            temperature: positive("temperature", temperature)?,
            t_v: positive("t_v", t_v)?,
            t_prior: positive("t_prior", t_prior)?,
            eps_v,
            eps_p,
            eps_i: positive("eps_i", eps_i)?,
            p00: probability("p00", p00)?,
        })
    }

    /// Returns a copy at a different sample temperature.
    pub fn with_temperature(mut self, temperature: F) -> Result<Self, PhysicsError> {
        self.temperature = positive("temperature", temperature)?;
        Ok(self)
    }

    /// Returns a copy with a different initial probe ground population.
    pub fn with_p00(mut self, p00: F) -> Result<Self, PhysicsError> {
        self.p00 = probability("p00", p00)?;
        Ok(self)
    }

    pub fn eps_s(&self) -> F {
        self.eps_s
    }
    pub fn temperature(&self) -> F {
        self.temperature
    }
    pub fn t_v(&self) -> F {
        self.t_v
    }
    pub fn t_prior(&self) -> F {
        self.t_prior
    }
    /// Upper end of the prior interval, `2·T_prior`.
    pub fn t_max(&self) -> F {
        self.t_prior + self.t_prior
    }
    pub fn eps_v(&self) -> F {
        self.eps_v
    }
    pub fn eps_p(&self) -> F {
        self.eps_p
    }
    pub fn eps_i(&self) -> F {
        self.eps_i
    }
    pub fn p00(&self) -> F {
        self.p00
    }

    /// Sample qubit populations at the current temperature.
    pub fn sample(&self) -> ThermalQubit<F> {
        ThermalQubit::new(self.eps_s, self.temperature).expect("validated at construction")
    }

    /// Ancilla populations at `T_v`.
    pub fn ancilla(&self) -> ThermalQubit<F> {
        ThermalQubit::new(self.eps_v, self.t_v).expect("validated at construction")
    }

    /// Exponent `ε_s/T − ε_v/T_v` of the steady probe population.
    pub fn steady_exponent(&self) -> F {
        self.eps_s / self.temperature - self.eps_v / self.t_v
    }

    /// Whether `eps_v` equals the tuning rule `(T_v/T_prior)·eps_s` to
    /// relative `1e-12` (`1e-5` for `f32`).
    pub fn is_tuned(&self) -> bool {
        let target = self.t_v / self.t_prior * self.eps_s;
        let tol = F::lit(1e-12).max(F::epsilon() * F::lit(64.0));
        (self.eps_v - target).abs() <= tol * target
    }

    pub fn warnings(&self) -> Vec<ConfigWarning> {
        let mut out = Vec::new();
        let t_max = self.t_max();
        if self.t_v < t_max {
            out.push(ConfigWarning::AncillaBelowPriorMax {
                t_v: self.t_v.as_f64(),
                t_max: t_max.as_f64(),
            });
        }
        if self.temperature >= t_max {
            out.push(ConfigWarning::OutsidePrior {
                temperature: self.temperature.as_f64(),
                t_max: t_max.as_f64(),
            });
        }
        out
    }
}

/// Tunes the ancilla gap to the prior temperature, `ε_v = (T_v/T_prior)·ε_s`,
/// and sets `ε_P = ε_v − ε_s`. The sample temperature starts at `T_prior`;
/// use [`MachineConfig::with_temperature`] to move it.
pub fn tune_config<F: Real>(
    eps_s: F,
    t_prior: F,
    t_v: F,
    eps_i: F,
    p00: F,
    strictness: Strictness,
) -> Result<MachineConfig<F>, PhysicsError> {
    let eps_s = positive("eps_s", eps_s)?;
    let t_prior = positive("t_prior", t_prior)?;
    let t_v = positive("t_v", t_v)?;
    let t_max = t_prior + t_prior;
    if strictness == Strictness::Strict && t_v < t_max {
        return Err(PhysicsError::GapOrdering {
            t_v: t_v.as_f64(),
            t_max: t_max.as_f64(),
        });
    }
    let eps_v = t_v / t_prior * eps_s;
    MachineConfig::with_ancilla_gap(eps_s, eps_v, t_prior, t_v, t_prior, eps_i, p00)
}

/// The pair `(r, p0_inf)` that fully determines the probe dynamics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CollisionParams<F> {
    /// Jump rate `p1^s·p0^v + p0^s·p1^v`.
    pub r: F,
    /// Steady ground population of the probe.
    pub p0_inf: F,
}

impl<F: Real> CollisionParams<F> {
    pub fn new(r: F, p0_inf: F) -> Result<Self, PhysicsError> {
        Ok(Self {
            r: probability("r", r)?,
            p0_inf: probability("p0_inf", p0_inf)?,
        })
    }
}

/// Jump rate and steady population for a configuration.
pub fn collision_params<F: Real>(config: &MachineConfig<F>) -> CollisionParams<F> {
    let s = config.sample();
    let v = config.ancilla();
    CollisionParams {
        r: s.p1 * v.p0 + s.p0 * v.p1,
        p0_inf: fermi(config.steady_exponent()),
    }
}
