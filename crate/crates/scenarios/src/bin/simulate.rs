use std::fs::File;
use std::io::{self, BufWriter};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::Parser;
use scenarios::{
    emit_csv, emit_plot, preset_definition, run_scenario, ConfigOverrides, PlotKind, PlotSeries,
    Propagator, Result, ScenarioConfig, ScenarioError, TimeSeriesRecord, PRESET_NAMES,
};

/// Two charge qubits in a cavity: Bloch vectors, degree of entanglement and
/// dense-coding capacity over time.
#[derive(Debug, Parser)]
#[command(name = "simulate", version, allow_negative_numbers = true)]
struct Cli {
    /// Figure preset (fig1a ... fig7b).
    #[arg(long)]
    preset: Option<String>,

    /// JSON file with ScenarioConfig fields; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,

    /// Magnitude of the |ee⟩ amplitude.
    #[arg(long)]
    a_mag: Option<f64>,
    /// Phase of the |ee⟩ amplitude (radians).
    #[arg(long)]
    a_phase: Option<f64>,
    /// Magnitude of the |gg⟩ amplitude.
    #[arg(long)]
    b_mag: Option<f64>,
    /// Phase of the |gg⟩ amplitude (radians).
    #[arg(long)]
    b_phase: Option<f64>,
    /// Mean photon number of the coherent field.
    #[arg(long)]
    nbar: Option<f64>,
    /// Coupling ratio λ2/λ1.
    #[arg(long = "R")]
    r: Option<f64>,
    /// Final scaled time λ1·t.
    #[arg(long)]
    tmax: Option<f64>,
    /// Number of grid points on [0, tmax], both ends included.
    #[arg(long)]
    steps: Option<usize>,
    /// Fock cutoff (0 = automatic).
    #[arg(long)]
    cutoff: Option<usize>,
    /// blockwise | full | both
    #[arg(long)]
    propagator: Option<Propagator>,
    /// Divide the degree of entanglement by its Bell-state value 3.
    #[arg(long)]
    normalize_doe: bool,

    /// CSV destination (stdout when omitted for single-series runs).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write an SVG chart: bloch | doe | capacity.
    #[arg(long)]
    plot: Option<PlotKind>,
    /// SVG destination; derived from --out or the run name when omitted.
    #[arg(long)]
    plot_out: Option<PathBuf>,

    /// Print the preset names with their parameters and exit.
    #[arg(long)]
    list_presets: bool,
}

impl Cli {
    fn overrides(&self) -> ConfigOverrides {
        ConfigOverrides {
            a_mag: self.a_mag,
            a_phase: self.a_phase,
            b_mag: self.b_mag,
            b_phase: self.b_phase,
            nbar: self.nbar,
            r: self.r,
            t_max: self.tmax,
            steps: self.steps,
            cutoff: self.cutoff,
            propagator: self.propagator,
            normalize_doe: self.normalize_doe.then_some(true),
            snapshot_times: None,
        }
    }
}

struct Run {
    label: String,
    records: Vec<TimeSeriesRecord>,
}

fn with_suffix(path: &Path, label: &str) -> PathBuf {
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("out");
    let name = match path.extension().and_then(|e| e.to_str()) {
        Some(ext) => format!("{stem}-{label}.{ext}"),
        None => format!("{stem}-{label}"),
    };
    path.with_file_name(name)
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(path)?))
}

fn execute(cli: &Cli) -> Result<()> {
    if cli.list_presets {
        for name in PRESET_NAMES {
            println!("{name}: {}", preset_definition(name)?.description);
        }
        return Ok(());
    }

    let (name, default_plot, mut series) = match &cli.preset {
        Some(p) => {
            let def = preset_definition(p)?;
            let series: Vec<(String, ScenarioConfig)> = def
                .series
                .into_iter()
                .map(|s| (s.label.to_string(), s.config))
                .collect();
            (def.name.to_string(), def.plot, series)
        }
        None => (
            "scenario".to_string(),
            PlotKind::Bloch,
            vec![("scenario".to_string(), ScenarioConfig::default())],
        ),
    };

    let file_overrides = match &cli.config {
        Some(path) => ConfigOverrides::from_json(&std::fs::read_to_string(path)?)?,
        None => ConfigOverrides::default(),
    };
    let flag_overrides = cli.overrides();
    for (_, cfg) in series.iter_mut() {
        file_overrides.apply(cfg);
        flag_overrides.apply(cfg);
    }

    let mut runs = Vec::with_capacity(series.len());
    for (label, cfg) in &series {
        let mut records = run_scenario(cfg)?;
        if cfg.normalize_doe {
            records = records
                .into_iter()
                .map(TimeSeriesRecord::with_normalized_doe)
                .collect();
        }
        runs.push(Run {
            label: label.clone(),
            records,
        });
    }

    let multi = runs.len() > 1;
    for run in &runs {
        match (&cli.out, multi) {
            (Some(out), false) => emit_csv(&run.records, create(out)?)?,
            (Some(out), true) => emit_csv(&run.records, create(&with_suffix(out, &run.label))?)?,
            (None, false) => emit_csv(&run.records, io::stdout().lock())?,
            (None, true) => emit_csv(
                &run.records,
                create(Path::new(&format!("{name}-{}.csv", run.label)))?,
            )?,
        }
    }

    if let Some(kind) = cli.plot {
        let path = match (&cli.plot_out, &cli.out) {
            (Some(p), _) => p.clone(),
            (None, Some(out)) => out.with_extension("svg"),
            (None, None) => PathBuf::from(format!("{name}-{}.svg", kind.name())),
        };
        let series: Vec<PlotSeries<'_>> = runs
            .iter()
            .map(|r| PlotSeries {
                label: &r.label,
                records: &r.records,
            })
            .collect();
        emit_plot(&series, create(&path)?, kind, &name)?;
    } else if cli.plot_out.is_some() {
        return Err(ScenarioError::Config(format!(
            "--plot-out given without --plot (this run defaults to {})",
            default_plot.name()
        )));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("simulate: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
