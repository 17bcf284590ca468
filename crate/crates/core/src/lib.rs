//! Collisional thermometric machine.
//!
//! A two-level probe repeatedly collides with qubits of a cold sample and a
//! hot ancilla through a resonant three-body interaction. The crate provides
//! the probe dynamics (closed forms plus an exact-evolution reference), the
//! Fisher-information and signal-to-noise formulas, Monte Carlo
//! maximum-likelihood estimation and heat accounting.
//!
//! Analytic code is generic over [`Real`] (`f32` or `f64`); the
//! exact-evolution oracle and the Monte Carlo estimator run in `f64`.

pub mod dynamics;
pub mod estimation;
pub mod metrology;
pub mod physics;
pub mod scalar;
pub mod thermo;

pub use physics::{
    collision_params, thermal_population, tune_config, CollisionParams, ConfigWarning, Energy,
    MachineConfig, PhysicsError, Strictness, Temperature, ThermalQubit,
};
pub use scalar::Real;

pub use dynamics::{
    collide_analytic, collide_oracle, reduce_d_level, steady_population, transient_population,
    CollisionOracle, DLevelSample, DynamicsError, ProbeState, Stage, TriadState,
};
pub use estimation::{empirical_snr_study, EstimationError, EstimationReport, PopulationModel};
pub use metrology::{
    snr_noisy_ancilla, snr_sample_bound, snr_steady, snr_thermal, snr_transient, ErrorSign,
    MetrologyError, NoisyAncillaSpec, SnrPoint, SQRT_2_OVER_PI,
};
pub use thermo::{perturbation_trajectory, CollisionHeat, HeatTrajectory};

pub type MachineConfig64 = MachineConfig<f64>;
pub type MachineConfig32 = MachineConfig<f32>;
pub type CollisionParams64 = CollisionParams<f64>;
pub type CollisionParams32 = CollisionParams<f32>;
pub type ThermalQubit64 = ThermalQubit<f64>;
pub type ThermalQubit32 = ThermalQubit<f32>;
pub type SnrPoint64 = SnrPoint<f64>;
pub type SnrPoint32 = SnrPoint<f32>;
pub type HeatTrajectory64 = HeatTrajectory<f64>;
pub type HeatTrajectory32 = HeatTrajectory<f32>;
pub type DLevelSample64 = DLevelSample<f64>;
