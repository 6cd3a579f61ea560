//! Figure presets, time-grid sweeps and output formats built on
//! [`chargepair`].

pub mod config;
pub mod csv;
pub mod error;
pub mod pipeline;
pub mod plot;
pub mod presets;

pub use config::{ConfigOverrides, Propagator, ScenarioConfig};
pub use csv::{emit_csv, CSV_HEADER};
pub use error::{Result, ScenarioError};
pub use pipeline::{run_scenario, Simulation, TimeSeriesRecord};
pub use plot::{emit_plot, PlotKind, PlotSeries};
pub use presets::{preset, preset_definition, Preset, Series, PRESET_NAMES};
