//! Per-command experiment configuration read from JSON.

use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::disk_core::{Arc, DiskFunction};
use crate::error::{Error, Result};
use crate::robin_lab::SplineBump;

fn config_err<T>(path: &str, message: impl Into<String>) -> Result<T> {
    Err(Error::Config {
        path: path.to_string(),
        message: message.into(),
    })
}

fn positive(path: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        config_err(path, format!("must be positive and finite, got {v}"))
    }
}

/// Parse `text` as `T`, reporting the offending field path on failure.
pub fn parse_config<T: DeserializeOwned>(text: &str) -> Result<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| Error::Config {
        path: e.path().to_string(),
        message: e.inner().to_string(),
    })
}

pub fn read_config<T: DeserializeOwned>(path: &Path) -> Result<T> {
    parse_config(&std::fs::read_to_string(path)?)
}

fn default_semicircle() -> Arc {
    Arc::semicircle()
}

fn one() -> usize {
    1
}

fn two() -> f64 {
    2.0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    HardyConvexity,
    MeanGrowth,
    TwoConstants,
    TailBound,
}

impl Suite {
    pub const ALL: [Suite; 4] = [
        Suite::HardyConvexity,
        Suite::MeanGrowth,
        Suite::TwoConstants,
        Suite::TailBound,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::HardyConvexity => "hardy_convexity",
            Suite::MeanGrowth => "mean_growth",
            Suite::TwoConstants => "two_constants",
            Suite::TailBound => "tail_bound",
        }
    }
}

/// One explicit inequality case.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "check", rename_all = "snake_case", deny_unknown_fields)]
pub enum VerifyCase {
    HardyConvexity {
        id: String,
        function: DiskFunction,
        r1: f64,
        r2: f64,
        alpha: f64,
    },
    MeanGrowth {
        id: String,
        function: DiskFunction,
        r: f64,
        rho: f64,
    },
    TwoConstants {
        id: String,
        function: DiskFunction,
        arc: Arc,
        z_re: f64,
        z_im: f64,
    },
    TailBound {
        id: String,
        function: DiskFunction,
        k: usize,
        r: f64,
    },
}

impl VerifyCase {
    pub fn id(&self) -> &str {
        match self {
            VerifyCase::HardyConvexity { id, .. }
            | VerifyCase::MeanGrowth { id, .. }
            | VerifyCase::TwoConstants { id, .. }
            | VerifyCase::TailBound { id, .. } => id,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyConfig {
    #[serde(default)]
    pub seed: u64,
    /// Random functions per suite.
    #[serde(default)]
    pub count: usize,
    #[serde(default = "default_degree")]
    pub degree: usize,
    /// Order used by the tail-bound suite.
    #[serde(default = "one")]
    pub k: usize,
    #[serde(default = "all_suites")]
    pub suites: Vec<Suite>,
    #[serde(default)]
    pub cases: Vec<VerifyCase>,
}

fn default_degree() -> usize {
    64
}

fn all_suites() -> Vec<Suite> {
    Suite::ALL.to_vec()
}

impl VerifyConfig {
    pub fn validate(&self) -> Result<()> {
        if self.k < 1 {
            return config_err("k", "tail bound order must be at least 1");
        }
        if self.count > 0 && self.degree < 1 {
            return config_err("degree", "must be at least 1");
        }
        let mut ids: Vec<&str> = self.cases.iter().map(|c| c.id()).collect();
        ids.sort_unstable();
        if let Some(w) = ids.windows(2).find(|w| w[0] == w[1]) {
            return config_err("cases", format!("duplicate case id `{}`", w[0]));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SharpnessConfig {
    #[serde(default)]
    pub seed: u64,
    pub a: f64,
    #[serde(default = "one")]
    pub k: usize,
    pub n_max: usize,
    #[serde(default = "default_semicircle")]
    pub arc: Arc,
    /// If set, the last `prop_functional` must lie within this relative
    /// distance of the limit.
    #[serde(default)]
    pub limit_tolerance: Option<f64>,
}

impl SharpnessConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.a > 1.0 && self.a.is_finite()) {
            return config_err("a", format!("must exceed 1, got {}", self.a));
        }
        if self.k < 1 {
            return config_err("k", "must be at least 1");
        }
        if self.n_max <= self.k {
            return config_err("n_max", "must exceed k");
        }
        if let Some(t) = self.limit_tolerance {
            positive("limit_tolerance", t)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScheduleSpec {
    /// Explicit point counts, each dividing the next.
    Counts { counts: Vec<usize> },
    /// `2^j` points for `min <= 2^j <= max`.
    Dyadic { min: usize, max: usize },
}

impl ScheduleSpec {
    pub fn counts(&self) -> Vec<usize> {
        match self {
            ScheduleSpec::Counts { counts } => counts.clone(),
            ScheduleSpec::Dyadic { min, max } => {
                std::iter::successors(Some(*min), |n| n.checked_mul(2))
                    .take_while(|n| n <= max)
                    .collect()
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InterpConfig {
    #[serde(default)]
    pub seed: u64,
    pub function: DiskFunction,
    #[serde(default = "default_semicircle")]
    pub arc: Arc,
    #[serde(default = "one")]
    pub k: usize,
    pub truncation: usize,
    pub schedule: ScheduleSpec,
    #[serde(default = "default_interp_tol")]
    pub tolerance: f64,
}

fn default_interp_tol() -> f64 {
    1e-8
}

impl InterpConfig {
    pub fn validate(&self) -> Result<()> {
        positive("tolerance", self.tolerance)?;
        if self.truncation < 1 {
            return config_err("truncation", "must be at least 1");
        }
        if self.function.degree() > self.truncation {
            return config_err(
                "function.degree",
                format!("exceeds truncation {}", self.truncation),
            );
        }
        let counts = self.schedule.counts();
        if counts.is_empty() || counts[0] == 0 {
            return config_err("schedule", "needs at least one level with a positive count");
        }
        if counts.windows(2).any(|w| w[1] <= w[0] || w[1] % w[0] != 0) {
            return config_err("schedule", "counts must increase and divide each other");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RobinConfig {
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_semicircle")]
    pub arc: Arc,
    pub phi: SplineBump,
    pub q0: SplineBump,
    pub dq: SplineBump,
    /// Subarc of the complement on which `q >= c`.
    pub k_arc: Arc,
    pub c: f64,
    pub c_prime: f64,
    pub t_schedule: Vec<f64>,
    pub degree: usize,
    pub collocation: usize,
    /// Rows with `t` at or below the median `t` may not exceed this multiple
    /// of the median functional.
    #[serde(default = "two")]
    pub growth_factor: f64,
}

impl RobinConfig {
    pub fn validate(&self) -> Result<()> {
        positive("c", self.c)?;
        positive("c_prime", self.c_prime)?;
        positive("growth_factor", self.growth_factor)?;
        for (name, b) in [("phi", &self.phi), ("q0", &self.q0), ("dq", &self.dq)] {
            if let Err(e) = b.validate() {
                return config_err(name, e.to_string());
            }
        }
        if self.t_schedule.is_empty() {
            return config_err("t_schedule", "must not be empty");
        }
        if let Some((i, t)) = self
            .t_schedule
            .iter()
            .enumerate()
            .find(|(_, t)| !(t.is_finite() && **t >= 0.0))
        {
            return config_err(&format!("t_schedule[{i}]"), format!("must be >= 0, got {t}"));
        }
        if self.degree < 1 {
            return config_err("degree", "must be at least 1");
        }
        if self.collocation < 2 * self.degree + 1 {
            return config_err("collocation", "must be at least 2 * degree + 1");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstantsConfig {
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_orders")]
    pub orders: Vec<usize>,
    #[serde(default = "two")]
    pub c: f64,
    /// Random admissible `N_I` values fed to the radius choice.
    #[serde(default)]
    pub radius_samples: usize,
    #[serde(default = "default_residual_tol")]
    pub residual_tolerance: f64,
}

fn default_orders() -> Vec<usize> {
    vec![1]
}

fn default_residual_tol() -> f64 {
    1e-12
}

impl ConstantsConfig {
    pub fn validate(&self) -> Result<()> {
        positive("residual_tolerance", self.residual_tolerance)?;
        if !(self.c >= 2.0 && self.c.is_finite()) {
            return config_err("c", format!("must be at least 2, got {}", self.c));
        }
        if self.orders.is_empty() {
            return config_err("orders", "must not be empty");
        }
        if let Some(i) = self.orders.iter().position(|&k| k < 1) {
            return config_err(&format!("orders[{i}]"), "must be at least 1");
        }
        Ok(())
    }
}
