//! Heat bookkeeping.
//!
//! Sign convention: energy absorbed by a subsystem is positive.
//!
//! A collision moves the probe ground population by `Δp`. Through the swap
//! `|0_P 0_s 1_v⟩ ↔ |1_P 1_s 0_v⟩` the sample qubit gains the same `Δp` in
//! its ground population and the ancilla loses it, so the sample absorbs
//! `−ε_s·Δp`, the ancilla `+ε_v·Δp` and the probe `−ε_P·Δp`. Resonance makes
//! the three add up to zero.

use crate::dynamics::{decay_complement, decay_factor, transient_population};
use crate::physics::{collision_params, MachineConfig};
use crate::scalar::Real;

/// Heat absorbed by the sample over `k` collisions,
/// `ε_s·(p00 − p0_inf)·[1 − (1−r)^k]`.
pub fn heat_sample<F: Real>(k: u64, p00: F, config: &MachineConfig<F>) -> F {
    let p = collision_params(config);
    config.eps_s() * (p00 - p.p0_inf) * decay_complement(p.r, k)
}

/// Heat absorbed by the ancillas over `k` collisions,
/// `ε_v·(p0_inf − p00)·[1 − (1−r)^k]`.
pub fn heat_ancilla<F: Real>(k: u64, p00: F, config: &MachineConfig<F>) -> F {
    let p = collision_params(config);
    config.eps_v() * (p.p0_inf - p00) * decay_complement(p.r, k)
}

/// Energy absorbed by the probe, `ε_P·(p00 − p0_k)`. Neither heat nor work:
/// it only closes the balance `Q_S + Q_v + Q_P = 0`.
pub fn probe_energy_change<F: Real>(k: u64, p00: F, config: &MachineConfig<F>) -> F {
    let p = collision_params(config);
    config.eps_p() * (p00 - p.p0_inf) * decay_complement(p.r, k)
}

/// Sample heat in the limit `k → ∞`, `ε_s·(p00 − p0_inf)`.
pub fn heat_sample_limit<F: Real>(p00: F, config: &MachineConfig<F>) -> F {
    config.eps_s() * (p00 - collision_params(config).p0_inf)
}

/// `Q_S + Q_v + Q_P` after `k` collisions; zero up to rounding.
pub fn balance_residual<F: Real>(k: u64, p00: F, config: &MachineConfig<F>) -> F {
    heat_sample(k, p00, config) + heat_ancilla(k, p00, config) + probe_energy_change(k, p00, config)
}

/// Bookkeeping of collision `j` (1-based).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CollisionHeat<F> {
    pub j: u64,
    /// `Δ_j p = r·(p0_inf − p0_{j−1})`.
    pub delta_p: F,
    /// Probe ground population after the collision.
    pub probe_ground: F,
    /// Ground population of the sample qubit that just collided.
    pub sample_ground: F,
    /// Ground population of the ancilla that just collided.
    pub ancilla_ground: F,
    /// Cumulative heats after `j` collisions.
    pub q_sample: F,
    pub q_ancilla: F,
    pub q_probe: F,
}

impl<F: Real> CollisionHeat<F> {
    /// `ε_v·Δp − ε_s·Δp − ε_P·Δp` for this step.
    pub fn conservation_residual(&self, config: &MachineConfig<F>) -> F {
        config.eps_v() * self.delta_p - config.eps_s() * self.delta_p - config.eps_p() * self.delta_p
    }
}

/// Per-collision perturbations of sample and ancilla qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct HeatTrajectory<F> {
    pub p00: F,
    /// Unperturbed ground population of a sample qubit.
    pub sample_thermal_ground: F,
    /// Unperturbed ground population of an ancilla.
    pub ancilla_thermal_ground: F,
    pub steps: Vec<CollisionHeat<F>>,
}

/// Follows `k_max` collisions starting from probe ground population `p00`.
pub fn perturbation_trajectory<F: Real>(
    k_max: u64,
    p00: F,
    config: &MachineConfig<F>,
) -> HeatTrajectory<F> {
    let params = collision_params(config);
    let s0 = config.sample().p0;
    let v0 = config.ancilla().p0;
    let gap = params.p0_inf - p00;
    let steps = (1..=k_max)
        .map(|j| {
            // r·(p0_inf − p0_{j−1}) with p0_inf − p0_{j−1} = (1−r)^{j−1}·(p0_inf − p00)
            let delta_p = params.r * gap * decay_factor(params.r, j - 1);
            CollisionHeat {
                j,
                delta_p,
                probe_ground: transient_population(j, p00, &params),
                sample_ground: s0 + delta_p,
                ancilla_ground: v0 - delta_p,
                q_sample: heat_sample(j, p00, config),
                q_ancilla: heat_ancilla(j, p00, config),
                q_probe: probe_energy_change(j, p00, config),
            }
        })
        .collect();
    HeatTrajectory {
        p00,
        sample_thermal_ground: s0,
        ancilla_thermal_ground: v0,
        steps,
    }
}
