//! Reduction of a `d`-level sample to an effective qubit.
//!
//! When the interaction addresses a single pair of sample levels `(j, j')`,
//! each collision acts on the probe like a collision with a thermal qubit of
//! gap `ε^{(j')} − ε^{(j)}`, happening with probability `w = p_j + p_{j'}`.
//! The one-collision map becomes `p0' = (1 − w·r')·p0 + w·r'·p0_inf`: the
//! rate shrinks by `w` and the fixed point is unchanged.

use super::DynamicsError;
use crate::physics::{CollisionParams, Temperature};
use crate::scalar::{fermi, Real};

/// Thermal sample with an arbitrary spectrum and one addressed level pair.
#[derive(Debug, Clone, PartialEq)]
pub struct DLevelSample<F> {
    levels: Vec<F>,
    temperature: Temperature<F>,
    pair: (usize, usize),
}

impl<F: Real> DLevelSample<F> {
    /// `levels` must be sorted ascending with at least two entries, and the
    /// pair must satisfy `ε^{(j')} > ε^{(j)}`.
    pub fn new(levels: Vec<F>, temperature: F, pair: (usize, usize)) -> Result<Self, DynamicsError> {
        let temperature = Temperature::new(temperature)?;
        if levels.len() < 2 {
            return Err(DynamicsError::InvalidSample(format!(
                "need at least 2 levels, got {}",
                levels.len()
            )));
        }
        if levels.iter().any(|e| !e.is_finite()) {
            return Err(DynamicsError::InvalidSample("non-finite level".into()));
        }
        if levels.windows(2).any(|w| w[1] < w[0]) {
            return Err(DynamicsError::InvalidSample("levels not sorted ascending".into()));
        }
        let (j, jp) = pair;
        if j >= levels.len() || jp >= levels.len() {
            return Err(DynamicsError::InvalidSample(format!(
                "pair ({j}, {jp}) out of range for {} levels",
                levels.len()
            )));
        }
        if levels[jp] == levels[j] {
            return Err(DynamicsError::DegeneratePair {
                j,
                j_prime: jp,
                energy: levels[j].as_f64(),
            });
        }
        if levels[jp] < levels[j] {
            return Err(DynamicsError::InvalidSample(format!(
                "pair ({j}, {jp}) must point from the lower to the upper level"
            )));
        }
        Ok(Self {
            levels,
            temperature,
            pair,
        })
    }

    pub fn levels(&self) -> &[F] {
        &self.levels
    }

    pub fn temperature(&self) -> F {
        self.temperature.get()
    }

    pub fn pair(&self) -> (usize, usize) {
        self.pair
    }

    pub fn dimension(&self) -> usize {
        self.levels.len()
    }

    /// `ε^{(j')} − ε^{(j)}`.
    pub fn pair_gap(&self) -> F {
        self.levels[self.pair.1] - self.levels[self.pair.0]
    }

    /// Normalized Gibbs populations, `p_i ∝ e^{−ε_i/T}`.
    pub fn populations(&self) -> Vec<F> {
        let t = self.temperature.get();
        let ground = self.levels[0];
        let weights: Vec<F> = self
            .levels
            .iter()
            .map(|e| (-(*e - ground) / t).exp())
            .collect();
        let z = weights.iter().fold(F::zero(), |a, w| a + *w);
        weights.into_iter().map(|w| w / z).collect()
    }

    /// Probability `w = p_j + p_{j'}` that a collision involves the pair.
    pub fn pair_weight(&self) -> F {
        let p = self.populations();
        p[self.pair.0] + p[self.pair.1]
    }
}

/// Effective two-level description of a `d`-level machine.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DLevelReduction<F> {
    /// `w = p_j + p_{j'}`.
    pub pair_weight: F,
    /// Parameters of a qubit machine with the pair's normalized populations.
    pub pair: CollisionParams<F>,
    /// Parameters of the actual one-collision map, `r_eff = w·r'`.
    pub effective: CollisionParams<F>,
}

/// Reduces a `d`-level sample machine to qubit collision parameters.
///
/// The ancilla must be resonant with the addressed pair:
/// `eps_v = (ε^{(j')} − ε^{(j)}) + eps_p`.
pub fn reduce_d_level<F: Real>(
    sample: &DLevelSample<F>,
    eps_p: F,
    eps_v: F,
    t_v: F,
) -> Result<DLevelReduction<F>, DynamicsError> {
    let t_v = Temperature::new(t_v)?.get();
    let gap = sample.pair_gap();
    let expected = gap + eps_p;
    let tol = F::lit(1e-12).max(F::epsilon() * F::lit(64.0)) * eps_v.abs().max(F::one());
    if (eps_v - expected).abs() > tol {
        return Err(DynamicsError::Resonance {
            eps_v: eps_v.as_f64(),
            expected: expected.as_f64(),
        });
    }
    let p = sample.populations();
    let (j, jp) = sample.pair();
    let w = p[j] + p[jp];
    let (q0, q1) = (p[j] / w, p[jp] / w);
    let x_v = eps_v / t_v;
    let (v0, v1) = (fermi(-x_v), fermi(x_v));
    let r_pair = q1 * v0 + q0 * v1;
    let p0_inf = fermi(gap / sample.temperature() - x_v);
    Ok(DLevelReduction {
        pair_weight: w,
        pair: CollisionParams::new(r_pair, p0_inf)?,
        effective: CollisionParams::new(w * r_pair, p0_inf)?,
    })
}
