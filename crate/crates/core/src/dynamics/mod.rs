//! Probe dynamics under repeated collisions.
//!
//! [`analytic`] holds the closed forms used everywhere else; [`oracle`]
//! evolves the full probe ⊗ sample ⊗ ancilla density matrix with an exact
//! matrix exponential and is kept as an independent reference.

pub mod analytic;
pub mod dlevel;
pub mod oracle;
pub mod triad;

use thiserror::Error;

use crate::physics::PhysicsError;

pub use analytic::{
    collide_analytic, decay_complement, decay_factor, iterate_recurrence, population_at, population_pair, steady_population,
    transient_population, ProbeState, Stage,
};
pub use dlevel::{reduce_d_level, DLevelReduction, DLevelSample};
pub use oracle::{
    build_hamiltonian, build_triad_hamiltonian, collide_oracle, commutator_norm, exact_unitary,
    swap_time, CollisionOracle, CouplingLayout,
};
pub use triad::TriadState;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DynamicsError {
    #[error(transparent)]
    Physics(#[from] PhysicsError),
    #[error("invalid sample spectrum: {0}")]
    InvalidSample(String),
    #[error("pair ({j}, {j_prime}) is degenerate: both levels at energy {energy}")]
    DegeneratePair { j: usize, j_prime: usize, energy: f64 },
    #[error("resonance violated: eps_v = {eps_v} but pair gap + eps_p = {expected}")]
    Resonance { eps_v: f64, expected: f64 },
    #[error("matrix is not Hermitian (max |H - H^dagger| = {deviation:e})")]
    NonHermitian { deviation: f64 },
}
