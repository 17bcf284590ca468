//! Evaluation of a scenario into a result table.

use rayon::prelude::*;
use thermomachine_core::estimation::{empirical_snr_study, split_seed};
use thermomachine_core::metrology::{
    snr_noisy_ancilla, snr_sample_bound, snr_steady, snr_thermal, snr_transient, ErrorSign, NoisyAncillaSpec,
};
use thermomachine_core::thermo::perturbation_trajectory;
use thermomachine_core::{SnrPoint64, Stage};

use crate::error::CliError;
use crate::scenario::{Kind, Scenario, SignChoice};
use crate::table::ResultTable;
use crate::verify;

pub const ARTIFACT: &str = concat!("thermomachine-cli ", env!("CARGO_PKG_VERSION"));

/// Column names per kind; the count never depends on the scenario.
pub fn columns(kind: Kind) -> &'static [&'static str] {
    match kind {
        Kind::SteadySweep => &["t_prior", "temperature", "measurements", "p0", "sensitivity", "fisher", "snr", "snr_thermal"],
        Kind::TransientSweep => &[
            "t_prior", "temperature", "p00", "measurements", "k", "p0", "sensitivity", "fisher", "snr",
        ],
        Kind::CostComparison => &["t_prior", "temperature", "p00", "measurements", "k", "snr_machine", "snr_thermal"],
        Kind::HeatTrajectory => &[
            "t_prior",
            "temperature",
            "p00",
            "k",
            "delta_p",
            "probe_ground",
            "sample_ground",
            "ancilla_ground",
            "sample_thermal_ground",
            "ancilla_thermal_ground",
            "q_sample",
            "q_ancilla",
            "q_probe",
        ],
        Kind::NoisyAncilla => &["t_prior", "delta_tv_rel", "sign", "measurements", "temperature", "snr", "snr_tuned"],
        Kind::Montecarlo => &[
            "t_prior",
            "temperature",
            "p00",
            "k",
            "measurements",
            "trials",
            "t_hat_mean",
            "t_hat_std",
            "rmse",
            "empirical_snr",
            "crb_snr",
            "clamped_fraction",
        ],
        Kind::Verify => &["check", "passed", "deviation", "tolerance"],
        Kind::BoundRatio => &["t_prior", "temperature", "p00", "k", "snr_machine", "snr_sample_bound", "ratio"],
    }
}

/// Runs the scenario. Rows follow the nesting order of the scenario lists
/// (prior, temperature, initial population, measurements, k), whatever
/// order the points are computed in.
pub fn run_scenario(s: &Scenario) -> Result<ResultTable, CliError> {
    s.validate()?;
    let mut table = ResultTable::new(columns(s.kind));
    table.set_meta("name", &s.name);
    table.set_meta("kind", s.kind.label());
    table.set_meta("artifact", ARTIFACT);
    table.set_meta("seed", format!("{:#018x}", s.seed));
    table.set_meta("units", "temperatures and energies in units of eps_s");
    if let serde_json::Value::Object(fields) = serde_json::to_value(s).expect("serializable scenario") {
        for (key, value) in fields {
            table.set_meta(&format!("scenario.{key}"), value);
        }
    }
    let rows = match s.kind {
        Kind::SteadySweep => steady(s)?,
        Kind::TransientSweep => transient(s)?,
        Kind::CostComparison => cost(s)?,
        Kind::HeatTrajectory => heat(s)?,
        Kind::NoisyAncilla => noisy(s)?,
        Kind::Montecarlo => montecarlo(s)?,
        Kind::BoundRatio => bound_ratio(s)?,
        Kind::Verify => {
            let (rows, names) = verify::run_checks(s)?;
            for (i, name) in names.iter().enumerate() {
                table.set_meta(&format!("check.{:02}", i + 1), name);
            }
            rows
        }
    };
    for row in rows {
        table.push(row);
    }
    Ok(table)
}

fn point_or_nan(point: Result<SnrPoint64, impl std::fmt::Display>) -> [f64; 4] {
    match point {
        Ok(p) => [p.p0, p.sensitivity, p.fisher, p.snr],
        Err(_) => [f64::NAN; 4],
    }
}

fn steady(s: &Scenario) -> Result<Vec<Vec<f64>>, CliError> {
    let mut rows = Vec::new();
    for &tp in &s.t_priors {
        for &m in &s.measurements {
            for t in s.sweep.grid(tp)? {
                let c = s.machine(tp, t, 1.0)?;
                let [p0, lambda, fisher, snr] = point_or_nan(snr_steady(&c, m));
                let thermal = snr_thermal(c.temperature(), c.eps_s(), m).map_err(CliError::usage)?;
                let e = s.eps_s;
                rows.push(vec![tp, t, m as f64, p0, lambda * e, fisher * e * e, snr, thermal]);
            }
        }
    }
    Ok(rows)
}

fn transient(s: &Scenario) -> Result<Vec<Vec<f64>>, CliError> {
    let ks = s.collisions.values()?;
    let mut rows = Vec::new();
    for &tp in &s.t_priors {
        for t in s.temperatures_for(tp) {
            for &p00 in &s.p00s {
                let c = s.machine(tp, t, p00)?;
                for &m in &s.measurements {
                    for &k in &ks {
                        let [p0, lambda, fisher, snr] = point_or_nan(snr_transient(k, p00, &c, m));
                        let e = s.eps_s;
                        rows.push(vec![tp, t, p00, m as f64, k as f64, p0, lambda * e, fisher * e * e, snr]);
                    }
                }
            }
        }
    }
    Ok(rows)
}

fn cost(s: &Scenario) -> Result<Vec<Vec<f64>>, CliError> {
    let ks = s.collisions.values()?;
    let mut rows = Vec::new();
    for &tp in &s.t_priors {
        for t in s.temperatures_for(tp) {
            for &p00 in &s.p00s {
                let c = s.machine(tp, t, p00)?;
                for &m in &s.measurements {
                    for &k in &ks {
                        let machine = snr_transient(k, p00, &c, m).map(|p| p.snr).unwrap_or(f64::NAN);
                        // thermalized probe of gap eps_s measured k times
                        let thermal = snr_thermal(c.temperature(), c.eps_s(), k).map_err(CliError::usage)?;
                        rows.push(vec![tp, t, p00, m as f64, k as f64, machine, thermal]);
                    }
                }
            }
        }
    }
    Ok(rows)
}

fn heat(s: &Scenario) -> Result<Vec<Vec<f64>>, CliError> {
    let ks = s.collisions.values()?;
    let mut rows = Vec::new();
    for &tp in &s.t_priors {
        for t in s.temperatures_for(tp) {
            for &p00 in &s.p00s {
                let c = s.machine(tp, t, p00)?;
                let traj = perturbation_trajectory(*ks.last().unwrap_or(&0), p00, &c);
                let e = s.eps_s;
                for &k in ks.iter().filter(|k| **k >= 1) {
                    let h = &traj.steps[(k - 1) as usize];
                    rows.push(vec![
                        tp,
                        t,
                        p00,
                        k as f64,
                        h.delta_p,
                        h.probe_ground,
                        h.sample_ground,
                        h.ancilla_ground,
                        traj.sample_thermal_ground,
                        traj.ancilla_thermal_ground,
                        h.q_sample / e,
                        h.q_ancilla / e,
                        h.q_probe / e,
                    ]);
                }
            }
        }
    }
    Ok(rows)
}

fn noisy(s: &Scenario) -> Result<Vec<Vec<f64>>, CliError> {
    let signs: &[(ErrorSign, f64)] = match s.sign {
        SignChoice::Plus => &[(ErrorSign::Plus, 1.0)],
        SignChoice::Minus => &[(ErrorSign::Minus, -1.0)],
        SignChoice::Both => &[(ErrorSign::Plus, 1.0), (ErrorSign::Minus, -1.0)],
    };
    let mut rows = Vec::new();
    for &tp in &s.t_priors {
        for &delta in &s.deltas {
            for &(sign, label) in signs {
                let spec = NoisyAncillaSpec::new(delta, sign).map_err(CliError::usage)?;
                for &m in &s.measurements {
                    for t in s.sweep.grid(tp)? {
                        let c = s.machine(tp, t, 1.0)?;
                        let snr = snr_noisy_ancilla(&c, &spec, m).map_err(CliError::usage)?.snr;
                        let tuned = snr_steady(&c, m).map(|p| p.snr).unwrap_or(f64::NAN);
                        rows.push(vec![tp, delta, label, m as f64, t, snr, tuned]);
                    }
                }
            }
        }
    }
    Ok(rows)
}

fn montecarlo(s: &Scenario) -> Result<Vec<Vec<f64>>, CliError> {
    let mut points = Vec::new();
    for &tp in &s.t_priors {
        for t in s.temperatures_for(tp) {
            for &p00 in &s.p00s {
                for &m in &s.measurements {
                    points.push((tp, t, p00, m));
                }
            }
        }
    }
    let stage = s.stage_k.map_or(Stage::Steady, Stage::After);
    points
        .par_iter()
        .enumerate()
        .map(|(i, &(tp, t, p00, m))| {
            let c = s.machine(tp, t, p00)?;
            let r = empirical_snr_study(&c, stage, m, s.trials, split_seed(s.seed, i as u64))
                .map_err(CliError::usage)?;
            let e = s.eps_s;
            Ok(vec![
                tp,
                t,
                p00,
                s.stage_k.map_or(f64::NAN, |k| k as f64),
                m as f64,
                s.trials as f64,
                r.t_hat_mean / e,
                r.t_hat_std / e,
                r.rmse / e,
                r.empirical_snr.unwrap_or(f64::NAN),
                r.crb_snr.unwrap_or(f64::NAN),
                r.clamped_fraction,
            ])
        })
        .collect()
}

fn bound_ratio(s: &Scenario) -> Result<Vec<Vec<f64>>, CliError> {
    let ks = s.collisions.values()?;
    let mut rows = Vec::new();
    for &tp in &s.t_priors {
        for t in s.temperatures_for(tp) {
            for &p00 in &s.p00s {
                let c = s.machine(tp, t, p00)?;
                for &k in ks.iter().filter(|k| **k >= 1) {
                    let machine = snr_transient(k, p00, &c, 1).map(|p| p.snr).unwrap_or(f64::NAN);
                    let bound = snr_sample_bound(k, c.temperature(), c.eps_s()).map_err(CliError::usage)?;
                    rows.push(vec![tp, t, p00, k as f64, machine, bound, machine / bound]);
                }
            }
        }
    }
    Ok(rows)
}
