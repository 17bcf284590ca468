//! Diagonal probe ⊗ sample ⊗ ancilla populations.
//!
//! Basis order is `|i_P j_s k_v⟩` with index `4·i_P + 2·j_s + k_v`, so the
//! two states coupled by the interaction sit at index 1 (`|001⟩`) and
//! index 6 (`|110⟩`).

use crate::scalar::Real;

/// Index of `|0_P 0_s 1_v⟩`.
pub const LOWER_COUPLED: usize = 1;
/// Index of `|1_P 1_s 0_v⟩`.
pub const UPPER_COUPLED: usize = 6;

#[inline]
pub const fn basis_index(probe: usize, sample: usize, ancilla: usize) -> usize {
    4 * probe + 2 * sample + ancilla
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TriadState<F> {
    pub populations: [F; 8],
}

impl<F: Real> TriadState<F> {
    /// Product of three diagonal qubit states, given their ground populations.
    pub fn product(probe_p0: F, sample_p0: F, ancilla_p0: F) -> Self {
        let pair = |p0: F| [p0, F::one() - p0];
        let (p, s, v) = (pair(probe_p0), pair(sample_p0), pair(ancilla_p0));
        let mut populations = [F::zero(); 8];
        for (i, pi) in p.iter().enumerate() {
            for (j, sj) in s.iter().enumerate() {
                for (k, vk) in v.iter().enumerate() {
                    populations[basis_index(i, j, k)] = *pi * *sj * *vk;
                }
            }
        }
        Self { populations }
    }

    /// Action of the full swap unitary on a diagonal state: the two coupled
    /// populations are exchanged, all others are untouched.
    pub fn swap_coupled(mut self) -> Self {
        self.populations.swap(LOWER_COUPLED, UPPER_COUPLED);
        self
    }

    fn marginal(&self, select: impl Fn(usize) -> bool) -> F {
        self.populations
            .iter()
            .enumerate()
            .filter(|(idx, _)| select(*idx))
            .fold(F::zero(), |acc, (_, p)| acc + *p)
    }

    pub fn probe_ground(&self) -> F {
        self.marginal(|idx| idx & 4 == 0)
    }

    pub fn sample_ground(&self) -> F {
        self.marginal(|idx| idx & 2 == 0)
    }

    pub fn ancilla_ground(&self) -> F {
        self.marginal(|idx| idx & 1 == 0)
    }

    pub fn total(&self) -> F {
        self.marginal(|_| true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coupled_indices() {
        assert_eq!(basis_index(0, 0, 1), LOWER_COUPLED);
        assert_eq!(basis_index(1, 1, 0), UPPER_COUPLED);
    }

    #[test]
    fn product_marginals_and_swap() {
        let s = TriadState::<f64>::product(0.7, 0.9, 0.6);
        assert!((s.total() - 1.0).abs() < 1e-15);
        assert!((s.probe_ground() - 0.7).abs() < 1e-15);
        assert!((s.sample_ground() - 0.9).abs() < 1e-15);
        assert!((s.ancilla_ground() - 0.6).abs() < 1e-15);

        let after = s.swap_coupled();
        let dp = after.probe_ground() - s.probe_ground();
        // the probe gains exactly what the sample gains and the ancilla loses
        assert!((after.sample_ground() - s.sample_ground() - dp).abs() < 1e-15);
        assert!((s.ancilla_ground() - after.ancilla_ground() - dp).abs() < 1e-15);
        assert!((after.total() - 1.0).abs() < 1e-15);
    }
}
