use std::fmt;
use std::str::FromStr;

use chargepair::dynamics::auto_cutoff;
use chargepair::C64;
use serde::{Deserialize, Serialize};

use crate::error::{Result, ScenarioError};

/// Which propagator drives a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Propagator {
    Blockwise,
    Full,
    /// Blockwise results, checked point by point against the full path.
    Both,
}

impl FromStr for Propagator {
    type Err = ScenarioError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "blockwise" => Ok(Propagator::Blockwise),
            "full" => Ok(Propagator::Full),
            "both" => Ok(Propagator::Both),
            other => Err(ScenarioError::Config(format!(
                "unknown propagator `{other}`"
            ))),
        }
    }
}

impl fmt::Display for Propagator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Propagator::Blockwise => "blockwise",
            Propagator::Full => "full",
            Propagator::Both => "both",
        })
    }
}

/// All parameters of one run. Amplitudes are polar; the field is a coherent
/// state with real `α = √nbar`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioConfig {
    pub a_mag: f64,
    pub a_phase: f64,
    pub b_mag: f64,
    pub b_phase: f64,
    pub nbar: f64,
    #[serde(rename = "R")]
    pub r: f64,
    pub t_max: f64,
    pub steps: usize,
    /// Fock cutoff; 0 selects the automatic rule.
    pub cutoff: usize,
    pub propagator: Propagator,
    pub normalize_doe: bool,
    /// When set, the run is evaluated at exactly these times instead of the
    /// uniform grid.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub snapshot_times: Option<Vec<f64>>,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self {
            a_mag: 1.0,
            a_phase: 0.0,
            b_mag: 0.0,
            b_phase: 0.0,
            nbar: 20.0,
            r: 0.9,
            t_max: 60.0,
            steps: 2400,
            cutoff: 0,
            propagator: Propagator::Blockwise,
            normalize_doe: false,
            snapshot_times: None,
        }
    }
}

/// Partial view of [`ScenarioConfig`] read from a JSON file; absent fields
/// keep the base value.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigOverrides {
    pub a_mag: Option<f64>,
    pub a_phase: Option<f64>,
    pub b_mag: Option<f64>,
    pub b_phase: Option<f64>,
    pub nbar: Option<f64>,
    #[serde(rename = "R")]
    pub r: Option<f64>,
    pub t_max: Option<f64>,
    pub steps: Option<usize>,
    pub cutoff: Option<usize>,
    pub propagator: Option<Propagator>,
    pub normalize_doe: Option<bool>,
    pub snapshot_times: Option<Vec<f64>>,
}

impl ConfigOverrides {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| ScenarioError::Config(format!("config file: {e}")))
    }

    pub fn apply(&self, cfg: &mut ScenarioConfig) {
        macro_rules! set {
            ($($f:ident),*) => {$(
                if let Some(v) = self.$f.clone() {
                    cfg.$f = v;
                }
            )*};
        }
        set!(
            a_mag,
            a_phase,
            b_mag,
            b_phase,
            nbar,
            r,
            t_max,
            steps,
            cutoff,
            propagator,
            normalize_doe
        );
        if let Some(times) = &self.snapshot_times {
            cfg.snapshot_times = Some(times.clone());
        }
    }
}

impl ScenarioConfig {
    /// Check invariants and rescale `(a, b)` onto the unit sphere.
    pub fn validated(mut self) -> Result<Self> {
        let finite = [
            self.a_mag,
            self.a_phase,
            self.b_mag,
            self.b_phase,
            self.nbar,
            self.r,
            self.t_max,
        ]
        .iter()
        .all(|x| x.is_finite());
        if !finite {
            return Err(ScenarioError::Config("non-finite parameter".into()));
        }
        if self.a_mag < 0.0 || self.b_mag < 0.0 {
            return Err(ScenarioError::Config(
                "amplitude magnitudes must be non-negative".into(),
            ));
        }
        let norm = (self.a_mag * self.a_mag + self.b_mag * self.b_mag).sqrt();
        if norm == 0.0 {
            return Err(ScenarioError::Config("a and b cannot both vanish".into()));
        }
        self.a_mag /= norm;
        self.b_mag /= norm;
        if self.nbar < 0.0 {
            return Err(ScenarioError::Config(format!("nbar = {} < 0", self.nbar)));
        }
        if self.r < 0.0 {
            return Err(ScenarioError::Config(format!("R = {} < 0", self.r)));
        }
        match &self.snapshot_times {
            Some(times) => {
                if times.is_empty() || times.iter().any(|t| !t.is_finite() || *t < 0.0) {
                    return Err(ScenarioError::Config(
                        "snapshot times must be finite and >= 0".into(),
                    ));
                }
            }
            None => {
                if self.steps < 2 {
                    return Err(ScenarioError::Config(format!("steps = {} < 2", self.steps)));
                }
                if self.t_max <= 0.0 {
                    return Err(ScenarioError::Config(format!(
                        "t_max = {} <= 0",
                        self.t_max
                    )));
                }
            }
        }
        Ok(self)
    }

    pub fn a(&self) -> C64 {
        C64::from_polar(self.a_mag, self.a_phase)
    }

    pub fn b(&self) -> C64 {
        C64::from_polar(self.b_mag, self.b_phase)
    }

    pub fn alpha(&self) -> C64 {
        C64::new(self.nbar.sqrt(), 0.0)
    }

    pub fn effective_cutoff(&self) -> usize {
        if self.cutoff == 0 {
            auto_cutoff(self.nbar)
        } else {
            self.cutoff
        }
    }

    /// Evaluation times: the snapshot list, or `steps` points spanning `[0, t_max]`.
    pub fn times(&self) -> Vec<f64> {
        match &self.snapshot_times {
            Some(times) => times.clone(),
            None => {
                let last = (self.steps - 1) as f64;
                (0..self.steps)
                    .map(|k| self.t_max * k as f64 / last)
                    .collect()
            }
        }
    }
}
