//! Closed-form probe dynamics: one-collision recurrence, transient
//! population after `k` collisions and the steady state.

use crate::physics::{collision_params, CollisionParams, MachineConfig};
use crate::scalar::{fermi, underflow_floor, Real};

/// Number of completed collisions, or the steady-state limit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    After(u64),
    Steady,
}

impl Stage {
    /// `None` for the steady limit.
    pub fn collisions(self) -> Option<u64> {
        match self {
            Stage::After(k) => Some(k),
            Stage::Steady => None,
        }
    }
}

/// Probe ground population after `k` collisions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbeState<F> {
    pub p0: F,
    pub k: u64,
}

impl<F: Real> ProbeState<F> {
    pub fn initial(p00: F) -> Self {
        Self { p0: p00, k: 0 }
    }

    /// Advances by one collision using the recurrence.
    pub fn collide(self, params: &CollisionParams<F>) -> Self {
        Self {
            p0: collide_analytic(self.p0, params),
            k: self.k + 1,
        }
    }
}

/// One collision: `p0' = (1 − r)·p0 + r·p0_inf`.
#[inline]
pub fn collide_analytic<F: Real>(p0: F, params: &CollisionParams<F>) -> F {
    (F::one() - params.r) * p0 + params.r * params.p0_inf
}

/// `(1 − r)^k`, evaluated as `exp(k·ln(1 − r))`.
///
/// Results below [`underflow_floor`] (`1e-300` in `f64`) are returned as
/// exactly zero, so the transient only collapses onto the steady value once
/// the memory of the initial state is below `1e-300`.
pub fn decay_factor<F: Real>(r: F, k: u64) -> F {
    if k == 0 || r == F::zero() {
        return F::one();
    }
    if r >= F::one() {
        return F::zero();
    }
    let kf = F::from_u64(k).expect("collision count representable");
    let d = (kf * (-r).ln_1p()).exp();
    if d < underflow_floor() {
        F::zero()
    } else {
        d
    }
}

/// `1 − (1−r)^k` without cancellation when `k·r` is small.
pub fn decay_complement<F: Real>(r: F, k: u64) -> F {
    if k == 0 || r == F::zero() {
        return F::zero();
    }
    if r >= F::one() {
        return F::one();
    }
    let kf = F::from_u64(k).expect("collision count representable");
    -(kf * (-r).ln_1p()).exp_m1()
}

/// `p0_k = [1 − (1−r)^k]·p0_inf + (1−r)^k·p00`; returns `p00` at `k = 0`.
pub fn transient_population<F: Real>(k: u64, p00: F, params: &CollisionParams<F>) -> F {
    let d = decay_factor(params.r, k);
    (F::one() - d) * params.p0_inf + d * p00
}

/// Ground population at a given stage.
pub fn population_at<F: Real>(stage: Stage, p00: F, params: &CollisionParams<F>) -> F {
    match stage {
        Stage::After(k) => transient_population(k, p00, params),
        Stage::Steady => params.p0_inf,
    }
}

/// Ground and excited probe populations `(p0, p1)` at a stage. The excited
/// population is built from its own terms instead of `1 − p0`, so it keeps
/// full relative precision when it is tiny.
pub fn population_pair<F: Real>(stage: Stage, p00: F, config: &MachineConfig<F>) -> (F, F) {
    let x = config.steady_exponent();
    let (p0_inf, p1_inf) = (fermi(x), fermi(-x));
    match stage {
        Stage::Steady => (p0_inf, p1_inf),
        Stage::After(k) => {
            let r = collision_params(config).r;
            let (c, d) = (decay_complement(r, k), decay_factor(r, k));
            (c * p0_inf + d * p00, c * p1_inf + d * (F::one() - p00))
        }
    }
}

/// `p0_inf = 1/(1 + e^{ε_s/T − ε_v/T_v})`, the fixed point of the recurrence.
pub fn steady_population<F: Real>(config: &MachineConfig<F>) -> F {
    fermi(config.steady_exponent())
}

/// Iterates the recurrence `k` times; reference path for the closed form.
pub fn iterate_recurrence<F: Real>(k: u64, p00: F, config: &MachineConfig<F>) -> F {
    let params = collision_params(config);
    (0..k).fold(p00, |p, _| collide_analytic(p, &params))
}
