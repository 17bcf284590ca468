//! Scenario descriptions, user settings and the built-in presets.
//!
//! Every temperature and energy stored in a [`Scenario`] is expressed in
//! units of the sample gap `eps_s`; `eps_s` itself only rescales the
//! configuration handed to the core library.

use serde::{Deserialize, Serialize};
use thermomachine_core::estimation::DEFAULT_SEED;
use thermomachine_core::{tune_config, MachineConfig64, Strictness};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    SteadySweep,
    TransientSweep,
    CostComparison,
    HeatTrajectory,
    NoisyAncilla,
    Montecarlo,
    Verify,
    /// Machine SNR over the best measurement on the sampled qubits.
    BoundRatio,
}

impl Kind {
    pub fn label(self) -> &'static str {
        match self {
            Kind::SteadySweep => "steady-sweep",
            Kind::TransientSweep => "transient-sweep",
            Kind::CostComparison => "cost-comparison",
            Kind::HeatTrajectory => "heat-trajectory",
            Kind::NoisyAncilla => "noisy-ancilla",
            Kind::Montecarlo => "montecarlo",
            Kind::Verify => "verify",
            Kind::BoundRatio => "bound-ratio",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SignChoice {
    Plus,
    Minus,
    Both,
}

/// Temperature axis. Without `min` the grid is `max·i/points`,
/// `i = 1..=points`; with `min` it is `points` evenly spaced values
/// including both ends. `max` defaults to `2·t_prior`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TemperatureSweep {
    pub min: Option<f64>,
    pub max: Option<f64>,
    pub points: usize,
}

impl TemperatureSweep {
    pub fn grid(&self, t_prior: f64) -> Result<Vec<f64>, CliError> {
        let max = self.max.unwrap_or(2.0 * t_prior);
        let n = self.points;
        match self.min {
            None => {
                check_positive("t_max", max)?;
                Ok((1..=n).map(|i| max * i as f64 / n as f64).collect())
            }
            Some(min) => {
                check_positive("t_min", min)?;
                check_positive("t_max", max)?;
                if max <= min {
                    return Err(CliError::usage(format!("sweep needs t_min < t_max, got {min} and {max}")));
                }
                Ok(match n {
                    0 => vec![],
                    1 => vec![min],
                    _ => (0..n).map(|i| min + (max - min) * i as f64 / (n - 1) as f64).collect(),
                })
            }
        }
    }
}

/// `min, min + step, …`, always ending at `max`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CollisionRange {
    pub min: u64,
    pub max: u64,
    pub step: u64,
}

impl CollisionRange {
    pub fn values(&self) -> Result<Vec<u64>, CliError> {
        if self.step == 0 {
            return Err(CliError::usage("k_step must be >= 1"));
        }
        if self.min > self.max {
            return Err(CliError::usage(format!("k range is empty: k_min = {} > k_max = {}", self.min, self.max)));
        }
        let mut ks: Vec<u64> = (self.min..=self.max).step_by(self.step as usize).collect();
        if ks.last() != Some(&self.max) {
            ks.push(self.max);
        }
        Ok(ks)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Scenario {
    pub name: String,
    pub kind: Kind,
    pub eps_s: f64,
    pub t_v: f64,
    pub eps_i: f64,
    pub t_priors: Vec<f64>,
    /// Fixed sample temperatures; empty means `T = t_prior`.
    pub temperatures: Vec<f64>,
    pub sweep: TemperatureSweep,
    pub p00s: Vec<f64>,
    pub collisions: CollisionRange,
    pub measurements: Vec<u64>,
    pub trials: u64,
    pub deltas: Vec<f64>,
    pub sign: SignChoice,
    /// Collisions before the measurement in Monte Carlo runs; `None` is the
    /// steady state.
    pub stage_k: Option<u64>,
    #[serde(serialize_with = "hex_seed")]
    pub seed: u64,
}

fn hex_seed<S: serde::Serializer>(seed: &u64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format!("{seed:#018x}"))
}

fn check_positive(name: &str, v: f64) -> Result<(), CliError> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(CliError::usage(format!("{name} must be finite and > 0, got {v}")))
    }
}

impl Scenario {
    pub fn defaults(kind: Kind) -> Self {
        Self {
            name: kind.label().to_string(),
            kind,
            eps_s: 1.0,
            t_v: 1.0,
            eps_i: 1.0,
            t_priors: vec![0.25],
            temperatures: vec![],
            sweep: TemperatureSweep {
                min: None,
                max: None,
                points: 400,
            },
            p00s: vec![1.0],
            collisions: CollisionRange {
                min: 1,
                max: 400,
                step: 1,
            },
            measurements: vec![if kind == Kind::Montecarlo { 10_000 } else { 1 }],
            trials: 1000,
            deltas: vec![0.25],
            sign: SignChoice::Both,
            stage_k: None,
            seed: DEFAULT_SEED,
        }
    }

    /// Temperatures at which fixed-temperature kinds are evaluated.
    pub fn temperatures_for(&self, t_prior: f64) -> Vec<f64> {
        if self.temperatures.is_empty() {
            vec![t_prior]
        } else {
            self.temperatures.clone()
        }
    }

    /// Core configuration for one point, scaled by `eps_s`.
    pub fn machine(&self, t_prior: f64, temperature: f64, p00: f64) -> Result<MachineConfig64, CliError> {
        check_positive("temperature", temperature)?;
        let s = self.eps_s;
        tune_config(s, t_prior * s, self.t_v * s, self.eps_i * s, p00, Strictness::Lenient)
            .and_then(|c| c.with_temperature(temperature * s))
            .map_err(CliError::usage)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        check_positive("eps_s", self.eps_s)?;
        check_positive("t_v", self.t_v)?;
        check_positive("eps_i", self.eps_i)?;
        for t in &self.t_priors {
            check_positive("t_prior", *t)?;
        }
        for t in &self.temperatures {
            check_positive("temperature", *t)?;
        }
        for p in &self.p00s {
            if !(0.0..=1.0).contains(p) {
                return Err(CliError::usage(format!("p00 must lie in [0, 1], got {p}")));
            }
        }
        for d in &self.deltas {
            if !(*d >= 0.0 && d.is_finite()) {
                return Err(CliError::usage(format!("delta_tv_rel must be >= 0, got {d}")));
            }
        }
        if self.measurements.contains(&0) {
            return Err(CliError::usage("measurements must be >= 1"));
        }
        Ok(())
    }

    /// Applies explicitly given settings; a scalar replaces a whole list.
    pub fn apply(&mut self, s: &Settings) -> Result<(), CliError> {
        if let Some(v) = &s.name {
            self.name = v.clone();
        }
        macro_rules! set {
            ($field:ident => $target:expr) => {
                if let Some(v) = s.$field {
                    $target = v;
                }
            };
        }
        set!(eps_s => self.eps_s);
        set!(t_v => self.t_v);
        set!(eps_i => self.eps_i);
        set!(trials => self.trials);
        set!(points => self.sweep.points);
        set!(k_min => self.collisions.min);
        set!(k_max => self.collisions.max);
        set!(k_step => self.collisions.step);
        set!(sign => self.sign);
        if let Some(v) = s.t_prior {
            self.t_priors = vec![v];
        }
        if let Some(v) = s.temperature {
            self.temperatures = vec![v];
        }
        if let Some(v) = s.p00 {
            self.p00s = vec![v];
        }
        if let Some(v) = s.measurements {
            self.measurements = vec![v];
        }
        if let Some(v) = s.delta_tv_rel {
            self.deltas = vec![v];
        }
        if s.t_min.is_some() {
            self.sweep.min = s.t_min;
        }
        if s.t_max.is_some() {
            self.sweep.max = s.t_max;
        }
        if s.k.is_some() {
            self.stage_k = s.k;
        }
        if let Some(seed) = &s.seed {
            self.seed = seed.value()?;
        }
        Ok(())
    }
}

/// Seed given as an integer or as a decimal/hex string.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum SeedValue {
    Int(u64),
    Text(String),
}

impl SeedValue {
    pub fn value(&self) -> Result<u64, CliError> {
        match self {
            SeedValue::Int(v) => Ok(*v),
            SeedValue::Text(t) => parse_seed(t).map_err(CliError::Usage),
        }
    }
}

/// Decimal or `0x`-prefixed hexadecimal, underscores allowed.
pub fn parse_seed(text: &str) -> Result<u64, String> {
    let clean = text.trim().replace('_', "");
    let parsed = match clean.strip_prefix("0x").or_else(|| clean.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => clean.parse::<u64>(),
    };
    parsed.map_err(|e| format!("invalid seed {text:?}: {e}"))
}

/// Keys accepted in a config file and by `--set`. Temperatures and
/// energies are in units of `eps_s`.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Settings {
    pub name: Option<String>,
    pub eps_s: Option<f64>,
    pub t_prior: Option<f64>,
    pub t_v: Option<f64>,
    pub eps_i: Option<f64>,
    pub p00: Option<f64>,
    pub temperature: Option<f64>,
    pub t_min: Option<f64>,
    pub t_max: Option<f64>,
    pub points: Option<usize>,
    pub k_min: Option<u64>,
    pub k_max: Option<u64>,
    pub k_step: Option<u64>,
    pub k: Option<u64>,
    pub measurements: Option<u64>,
    pub trials: Option<u64>,
    pub delta_tv_rel: Option<f64>,
    pub sign: Option<SignChoice>,
    pub seed: Option<SeedValue>,
}

impl Settings {
    /// Config file contents overlaid with `key=value` pairs; pairs win.
    pub fn load(file: Option<&str>, overrides: &[String]) -> Result<Self, CliError> {
        let mut table: toml::Table = match file {
            Some(text) => toml::from_str(text).map_err(|e| CliError::usage(format!("config file: {e}")))?,
            None => toml::Table::new(),
        };
        for pair in overrides {
            let (key, raw) = pair
                .split_once('=')
                .ok_or_else(|| CliError::usage(format!("--set expects key=value, got {pair:?}")))?;
            table.insert(key.trim().to_string(), parse_value(raw.trim()));
        }
        toml::Value::Table(table)
            .try_into()
            .map_err(|e| CliError::usage(format!("settings: {e}")))
    }
}

/// A TOML literal if it parses as one, otherwise a bare string.
fn parse_value(raw: &str) -> toml::Value {
    toml::from_str::<toml::Table>(&format!("v = {raw}"))
        .ok()
        .and_then(|mut t| t.remove("v"))
        .unwrap_or_else(|| toml::Value::String(raw.to_string()))
}

pub const PRESETS: [&str; 7] = ["fig1b", "fig2a", "fig2b", "fig3", "figS1a", "figS1b", "figS2-ratio"];

/// Built-in scenarios. The ancilla temperature is `T_v = eps_s`; tuned
/// results depend on `T_v` only through `T_v/T_prior`, which the tuning
/// fixes, so any `T_v >= 2·T_prior` gives the same tables.
pub fn preset(name: &str) -> Result<Scenario, CliError> {
    let mut s = match name {
        "fig1b" => {
            let mut s = Scenario::defaults(Kind::SteadySweep);
            s.t_priors = vec![1.0 / 4.0, 1.0 / 8.0, 1.0 / 12.0, 1.0 / 16.0];
            s
        }
        "fig2a" | "fig2b" => {
            let mut s = Scenario::defaults(Kind::TransientSweep);
            let d = if name == "fig2a" { 4.0 } else { 10.0 };
            s.t_priors = vec![1.0 / d];
            s.temperatures = vec![1.0 / d, 1.0 / (d + 0.5), 1.0 / (d - 0.5)];
            s.p00s = vec![0.5, 1.0, 0.0];
            s.collisions = if name == "fig2a" {
                CollisionRange { min: 1, max: 400, step: 1 }
            } else {
                CollisionRange { min: 1, max: 100_000, step: 100 }
            };
            s
        }
        "fig3" => {
            let mut s = Scenario::defaults(Kind::CostComparison);
            s.t_priors = vec![1.0 / 10.0];
            s.temperatures = vec![1.0 / 11.0];
            s.p00s = vec![1.0, 0.0];
            s.measurements = vec![1, 2];
            s.collisions = CollisionRange { min: 1, max: 20_000, step: 20 };
            s
        }
        "figS1a" | "figS1b" => {
            let mut s = Scenario::defaults(Kind::HeatTrajectory);
            let d = if name == "figS1a" { 4.0 } else { 10.0 };
            s.t_priors = vec![1.0 / d];
            s.temperatures = vec![1.0 / (d + 0.5), 1.0 / (d - 0.5)];
            s.p00s = vec![1.0, 0.5];
            s.collisions = if name == "figS1a" {
                CollisionRange { min: 1, max: 300, step: 1 }
            } else {
                CollisionRange { min: 1, max: 100_000, step: 100 }
            };
            s
        }
        "figS2-ratio" => {
            let mut s = Scenario::defaults(Kind::BoundRatio);
            s.t_priors = vec![1.0 / 7.0];
            s.temperatures = vec![1.0 / 8.0];
            s.p00s = vec![1.0, 0.0];
            s.collisions = CollisionRange { min: 1, max: 6000, step: 1 };
            s
        }
        other => {
            return Err(CliError::usage(format!(
                "unknown preset {other:?}; available: {}",
                PRESETS.join(", ")
            )))
        }
    };
    s.name = name.to_string();
    Ok(s)
}
