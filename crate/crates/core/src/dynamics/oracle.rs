//! Brute-force reference for the collision map.
//!
//! Builds the joint Hamiltonian `H = H_P + H_s + H_v + H_I`, exponentiates it
//! through a Hermitian eigendecomposition and pushes a product state
//! `ρ_P ⊗ ρ_s ⊗ ρ_v` through `U = e^{−iHt}` before tracing out sample and
//! ancilla. Nothing here uses the closed forms of [`super::analytic`].
//!
//! The joint basis is `|i_P j_s k_v⟩` with index `i·2d + 2j + k` for a
//! `d`-level sample (for a qubit sample this is `4i + 2j + k`).

use nalgebra::{Complex, DMatrix, Matrix2, SymmetricEigen};

use super::{analytic::ProbeState, DLevelSample, DynamicsError};
use crate::physics::{MachineConfig, ThermalQubit};

pub type C64 = Complex<f64>;
pub type CMatrix = DMatrix<C64>;

const HERMITIAN_TOL: f64 = 1e-12;

/// Energies and coupling of a probe, a `d`-level sample and an ancilla.
#[derive(Debug, Clone, PartialEq)]
pub struct CouplingLayout {
    pub eps_p: f64,
    pub sample_levels: Vec<f64>,
    /// Addressed sample levels `(j, j')`.
    pub pair: (usize, usize),
    pub eps_v: f64,
    pub eps_i: f64,
}

impl CouplingLayout {
    /// Qubit sample with levels `{0, ε_s}`.
    pub fn qubit(config: &MachineConfig<f64>) -> Self {
        Self {
            eps_p: config.eps_p(),
            sample_levels: vec![0.0, config.eps_s()],
            pair: (0, 1),
            eps_v: config.eps_v(),
            eps_i: config.eps_i(),
        }
    }

    pub fn sample_dim(&self) -> usize {
        self.sample_levels.len()
    }

    pub fn dim(&self) -> usize {
        4 * self.sample_dim()
    }

    pub fn index(&self, probe: usize, sample: usize, ancilla: usize) -> usize {
        probe * 2 * self.sample_dim() + 2 * sample + ancilla
    }
}

/// Diagonal `H_P + H_s + H_v`.
pub fn free_hamiltonian(layout: &CouplingLayout) -> CMatrix {
    let mut h = CMatrix::zeros(layout.dim(), layout.dim());
    for i in 0..2 {
        for (j, e_s) in layout.sample_levels.iter().enumerate() {
            for k in 0..2 {
                let idx = layout.index(i, j, k);
                let e = i as f64 * layout.eps_p + e_s + k as f64 * layout.eps_v;
                h[(idx, idx)] = C64::new(e, 0.0);
            }
        }
    }
    h
}

/// `ε_I (|0_P j_s 1_v⟩⟨1_P j'_s 0_v| + h.c.)`.
pub fn interaction_hamiltonian(layout: &CouplingLayout) -> CMatrix {
    let mut h = CMatrix::zeros(layout.dim(), layout.dim());
    let (j, jp) = layout.pair;
    let lower = layout.index(0, j, 1);
    let upper = layout.index(1, jp, 0);
    h[(lower, upper)] = C64::new(layout.eps_i, 0.0);
    h[(upper, lower)] = C64::new(layout.eps_i, 0.0);
    h
}

pub fn build_hamiltonian(layout: &CouplingLayout) -> CMatrix {
    free_hamiltonian(layout) + interaction_hamiltonian(layout)
}

/// 8×8 Hamiltonian of the qubit machine.
pub fn build_triad_hamiltonian(config: &MachineConfig<f64>) -> CMatrix {
    build_hamiltonian(&CouplingLayout::qubit(config))
}

/// Frobenius norm of `[a, b]`.
pub fn commutator_norm(a: &CMatrix, b: &CMatrix) -> f64 {
    (a * b - b * a).norm()
}

/// Duration of a full swap, `π/(2ε_I)`.
pub fn swap_time(eps_i: f64) -> f64 {
    std::f64::consts::FRAC_PI_2 / eps_i
}

fn hermitian_deviation(h: &CMatrix) -> f64 {
    (h - h.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// `U = e^{−iHt}` from the eigendecomposition of a Hermitian `H`.
pub fn exact_unitary(h: &CMatrix, t: f64) -> Result<CMatrix, DynamicsError> {
    let scale = h.iter().map(|z| z.norm()).fold(1.0, f64::max);
    let deviation = hermitian_deviation(h);
    if !h.is_square() || deviation > HERMITIAN_TOL * scale || !deviation.is_finite() {
        return Err(DynamicsError::NonHermitian { deviation });
    }
    let eig = SymmetricEigen::new(h.clone());
    let v = &eig.eigenvectors;
    let phases = CMatrix::from_diagonal(&eig.eigenvalues.map(|l| C64::from_polar(1.0, -l * t)));
    Ok(v * phases * v.adjoint())
}

/// Collision map computed from the full joint density matrix.
#[derive(Debug, Clone)]
pub struct CollisionOracle {
    layout: CouplingLayout,
    unitary: CMatrix,
    sample_populations: Vec<f64>,
    ancilla_p0: f64,
}

/// Reduced populations after one collision.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleMarginals {
    pub probe_ground: f64,
    pub sample_populations: Vec<f64>,
    pub ancilla_ground: f64,
}

impl CollisionOracle {
    /// Qubit machine evolved for the full swap time `π/(2ε_I)`.
    pub fn qubit(config: &MachineConfig<f64>) -> Result<Self, DynamicsError> {
        Self::qubit_for(config, swap_time(config.eps_i()))
    }

    /// Qubit machine evolved for an arbitrary interaction time.
    pub fn qubit_for(config: &MachineConfig<f64>, t: f64) -> Result<Self, DynamicsError> {
        let layout = CouplingLayout::qubit(config);
        let unitary = exact_unitary(&build_hamiltonian(&layout), t)?;
        let s = config.sample();
        Ok(Self {
            layout,
            unitary,
            sample_populations: vec![s.p0, s.p1],
            ancilla_p0: config.ancilla().p0,
        })
    }

    /// `d`-level sample addressed on its selected pair, full swap time.
    pub fn d_level(
        sample: &DLevelSample<f64>,
        eps_p: f64,
        eps_v: f64,
        t_v: f64,
        eps_i: f64,
    ) -> Result<Self, DynamicsError> {
        let layout = CouplingLayout {
            eps_p,
            sample_levels: sample.levels().to_vec(),
            pair: sample.pair(),
            eps_v,
            eps_i,
        };
        let unitary = exact_unitary(&build_hamiltonian(&layout), swap_time(eps_i))?;
        Ok(Self {
            layout,
            unitary,
            sample_populations: sample.populations(),
            ancilla_p0: ThermalQubit::new(eps_v, t_v)?.p0,
        })
    }

    pub fn unitary(&self) -> &CMatrix {
        &self.unitary
    }

    /// Joint state `U (ρ_P ⊗ ρ_s ⊗ ρ_v) U†` for an arbitrary probe state.
    pub fn joint_after(&self, rho_p: &Matrix2<C64>) -> CMatrix {
        let rho_p = CMatrix::from_fn(2, 2, |a, b| rho_p[(a, b)]);
        let rho_s = CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
            self.layout.sample_dim(),
            self.sample_populations.iter().map(|p| C64::new(*p, 0.0)),
        ));
        let rho_v = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
            C64::new(self.ancilla_p0, 0.0),
            C64::new(1.0 - self.ancilla_p0, 0.0),
        ]));
        let joint = rho_p.kronecker(&rho_s).kronecker(&rho_v);
        &self.unitary * joint * self.unitary.adjoint()
    }

    /// Probe state after one collision (coherences included).
    pub fn step_density(&self, rho_p: &Matrix2<C64>) -> Matrix2<C64> {
        let joint = self.joint_after(rho_p);
        let d = self.layout.sample_dim();
        let mut out = Matrix2::zeros();
        for a in 0..2 {
            for b in 0..2 {
                for j in 0..d {
                    for k in 0..2 {
                        out[(a, b)] +=
                            joint[(self.layout.index(a, j, k), self.layout.index(b, j, k))];
                    }
                }
            }
        }
        out
    }

    /// Reduced populations of all three parties after one collision of a
    /// diagonal probe state.
    pub fn step_marginals(&self, p0: f64) -> OracleMarginals {
        let rho_p = Matrix2::new(
            C64::new(p0, 0.0),
            C64::new(0.0, 0.0),
            C64::new(0.0, 0.0),
            C64::new(1.0 - p0, 0.0),
        );
        let joint = self.joint_after(&rho_p);
        let d = self.layout.sample_dim();
        let mut probe_ground = 0.0;
        let mut sample_populations = vec![0.0; d];
        let mut ancilla_ground = 0.0;
        for i in 0..2 {
            for (j, sj) in sample_populations.iter_mut().enumerate() {
                for k in 0..2 {
                    let idx = self.layout.index(i, j, k);
                    let p = joint[(idx, idx)].re;
                    if i == 0 {
                        probe_ground += p;
                    }
                    *sj += p;
                    if k == 0 {
                        ancilla_ground += p;
                    }
                }
            }
        }
        OracleMarginals {
            probe_ground,
            sample_populations,
            ancilla_ground,
        }
    }

    /// Probe ground population after one collision.
    pub fn step(&self, p0: f64) -> f64 {
        self.step_marginals(p0).probe_ground
    }
}

/// One collision of the qubit machine through the exact joint evolution.
pub fn collide_oracle(
    probe: ProbeState<f64>,
    config: &MachineConfig<f64>,
) -> Result<ProbeState<f64>, DynamicsError> {
    let oracle = CollisionOracle::qubit(config)?;
    Ok(ProbeState {
        p0: oracle.step(probe.p0),
        k: probe.k + 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::physics::{collision_params, tune_config, Strictness};

    fn config() -> MachineConfig<f64> {
        MachineConfig::with_ancilla_gap(1.0, 4.0, 0.2, 1.0, 0.25, 0.7, 1.0).unwrap()
    }

    fn identity_deviation(m: &CMatrix) -> f64 {
        let n = m.nrows();
        (m - CMatrix::identity(n, n)).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    #[test]
    fn zero_coupling_gives_free_spectrum() {
        let mut layout = CouplingLayout::qubit(&config());
        layout.eps_i = 0.0;
        let h = build_hamiltonian(&layout);
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    let idx = layout.index(i, j, k);
                    let e = i as f64 * 3.0 + j as f64 + k as f64 * 4.0;
                    assert_eq!(h[(idx, idx)], C64::new(e, 0.0));
                }
            }
        }
        assert_eq!(h.iter().filter(|z| z.norm() > 0.0).count(), 7);
    }

    #[test]
    fn hamiltonian_is_hermitian() {
        let h = build_triad_hamiltonian(&config());
        assert!(hermitian_deviation(&h) < 1e-14);
    }

    #[test]
    fn commutator_vanishes_only_at_resonance() {
        let c = config();
        let layout = CouplingLayout::qubit(&c);
        let free = free_hamiltonian(&layout);
        let int = interaction_hamiltonian(&layout);
        assert!(commutator_norm(&int, &free) < 1e-14);

        for delta in [-0.3, 0.01, 0.5] {
            let detuned = CouplingLayout {
                eps_v: layout.eps_v + delta,
                ..layout.clone()
            };
            let n = commutator_norm(&interaction_hamiltonian(&detuned), &free_hamiltonian(&detuned));
            let expected = std::f64::consts::SQRT_2 * c.eps_i() * f64::abs(delta);
            assert!((n - expected).abs() < 1e-13, "{n} vs {expected}");
        }
    }

    #[test]
    fn unitary_at_zero_time_is_identity() {
        let u = exact_unitary(&build_triad_hamiltonian(&config()), 0.0).unwrap();
        assert!(identity_deviation(&u) < 1e-13);
    }

    #[test]
    fn rejects_non_hermitian_input() {
        let mut h = build_triad_hamiltonian(&config());
        h[(0, 1)] = C64::new(0.5, 0.0);
        assert!(matches!(
            exact_unitary(&h, 1.0),
            Err(DynamicsError::NonHermitian { .. })
        ));
    }

    #[test]
    fn oracle_fixed_point_and_example() {
        let c = config();
        let p = collision_params(&c);
        let oracle = CollisionOracle::qubit(&c).unwrap();
        assert!((oracle.step(p.p0_inf) - p.p0_inf).abs() < 1e-14);
        assert!((oracle.step(1.0) - 0.982_134_169_059_877_6).abs() < 1e-14);
        let probe = collide_oracle(ProbeState::initial(1.0), &c).unwrap();
        assert_eq!(probe.k, 1);
    }

    #[test]
    fn equator_coherence_does_not_grow() {
        let c = tune_config(1.0, 0.25, 1.0, 1.3, 0.5, Strictness::Strict)
            .unwrap()
            .with_temperature(0.21)
            .unwrap();
        let oracle = CollisionOracle::qubit(&c).unwrap();
        for step in 0..16 {
            let phi = step as f64 * std::f64::consts::PI / 8.0;
            let coh = C64::from_polar(0.5, phi);
            let rho = Matrix2::new(C64::new(0.5, 0.0), coh, coh.conj(), C64::new(0.5, 0.0));
            let out = oracle.step_density(&rho);
            assert!(out[(0, 1)].norm() <= coh.norm() + 1e-14);
            assert!((out[(0, 0)].re + out[(1, 1)].re - 1.0).abs() < 1e-13);
        }
    }
}
