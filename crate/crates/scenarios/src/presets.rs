//! Named parameter sets, one per plot panel.

use std::f64::consts::FRAC_1_SQRT_2;

use crate::config::{Propagator, ScenarioConfig};
use crate::error::{Result, ScenarioError};
use crate::plot::PlotKind;

pub const PRESET_NAMES: [&str; 15] = [
    "fig1a", "fig1b", "fig2", "fig3a", "fig3b", "fig3c", "fig3d", "fig4a", "fig4b", "fig5a",
    "fig5b", "fig6a", "fig6b", "fig7a", "fig7b",
];

/// Snapshot times of the Bloch-sphere panels.
pub const FIG2_TIMES: [f64; 8] = [10.2, 10.5, 10.6, 10.7, 10.8, 11.0, 11.5, 11.6];

const WEAK: f64 = 0.003;
const STRONG: f64 = 0.9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InitialPair {
    /// `|ee⟩`
    Excited,
    /// `(|ee⟩ + |gg⟩)/√2`
    Partial,
}

impl InitialPair {
    pub fn label(self) -> &'static str {
        match self {
            InitialPair::Excited => "excited",
            InitialPair::Partial => "partial",
        }
    }
}

/// One curve family of a figure panel.
#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub label: &'static str,
    pub config: ScenarioConfig,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Preset {
    pub name: &'static str,
    pub description: String,
    pub plot: PlotKind,
    /// First entry is the primary (solid-curve) series.
    pub series: Vec<Series>,
}

fn config(pair: InitialPair, nbar: f64, r: f64) -> ScenarioConfig {
    let (a, b) = match pair {
        InitialPair::Excited => (1.0, 0.0),
        InitialPair::Partial => (FRAC_1_SQRT_2, FRAC_1_SQRT_2),
    };
    ScenarioConfig {
        a_mag: a,
        b_mag: b,
        nbar,
        r,
        propagator: Propagator::Both,
        ..ScenarioConfig::default()
    }
}

fn single(name: &'static str, plot: PlotKind, pair: InitialPair, nbar: f64, r: f64) -> Preset {
    Preset {
        name,
        description: format!("{} pair, nbar = {nbar}, R = {r}", pair.label()),
        plot,
        series: vec![Series {
            label: pair.label(),
            config: config(pair, nbar, r),
        }],
    }
}

pub fn preset_definition(name: &str) -> Result<Preset> {
    use InitialPair::{Excited, Partial};
    use PlotKind::{Bloch, Capacity, Doe};
    let key = PRESET_NAMES
        .iter()
        .find(|&&n| n == name)
        .copied()
        .ok_or_else(|| ScenarioError::UnknownPreset(name.to_string()))?;
    let preset = match key {
        "fig1a" => single(key, Bloch, Excited, 20.0, WEAK),
        "fig1b" => single(key, Bloch, Excited, 20.0, STRONG),
        "fig2" => {
            let mut p = single(key, Bloch, Excited, 20.0, STRONG);
            p.description
                .push_str("; first-qubit Bloch vector snapshots");
            p.series[0].config.snapshot_times = Some(FIG2_TIMES.to_vec());
            p
        }
        "fig3a" => single(key, Bloch, Partial, 20.0, WEAK),
        "fig3b" => single(key, Bloch, Partial, 20.0, STRONG),
        "fig3c" => single(key, Bloch, Partial, 10.0, WEAK),
        "fig3d" => single(key, Bloch, Partial, 10.0, STRONG),
        "fig4a" => single(key, Doe, Excited, 20.0, WEAK),
        "fig4b" => single(key, Doe, Excited, 20.0, STRONG),
        "fig5a" => single(key, Doe, Partial, 20.0, WEAK),
        "fig5b" => single(key, Doe, Partial, 20.0, STRONG),
        "fig6a" => single(key, Doe, Excited, 10.0, WEAK),
        "fig6b" => single(key, Doe, Partial, 10.0, WEAK),
        "fig7a" | "fig7b" => {
            let nbar = if key == "fig7a" { 10.0 } else { 20.0 };
            let mut description =
                format!("partial (solid) and excited (dot) pairs, nbar = {nbar}, R = {STRONG}");
            if key == "fig7b" {
                description.push_str("; rerun with --nbar 10 for the lower-field variant");
            }
            Preset {
                name: key,
                description,
                plot: Capacity,
                series: vec![
                    Series {
                        label: Partial.label(),
                        config: config(Partial, nbar, STRONG),
                    },
                    Series {
                        label: Excited.label(),
                        config: config(Excited, nbar, STRONG),
                    },
                ],
            }
        }
        _ => unreachable!("name list and match arms out of sync"),
    };
    Ok(preset)
}

/// Primary configuration of a preset.
pub fn preset(name: &str) -> Result<ScenarioConfig> {
    Ok(preset_definition(name)?.series.remove(0).config)
}
