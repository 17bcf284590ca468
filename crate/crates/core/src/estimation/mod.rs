//! Monte Carlo check of the Cramér–Rao bound: simulate binomial measurement
//! records, invert them by maximum likelihood and compare the spread of the
//! estimates with the predicted SNR. Runs in `f64`.

pub mod ml;
pub mod rng;

use thiserror::Error;

use crate::physics::PhysicsError;

pub use ml::{
    empirical_snr_study, ml_estimate, sample_measurements, study_with_model, Bound, Estimate,
    EstimationReport, MeasurementRecord, PopulationModel,
};
pub use rng::{split_seed, DEFAULT_SEED};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EstimationError {
    #[error("{0}")]
    InvalidInput(String),
    #[error(transparent)]
    Physics(#[from] PhysicsError),
}
