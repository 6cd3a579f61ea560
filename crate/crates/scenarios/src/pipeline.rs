use chargepair::dynamics::{
    initial_joint_state, BlockEvolution, BlockPropagator, FullEvolution, FullPropagator,
    JointState, ModelParams, GUARD_LEVELS, NORM_TOL,
};
use chargepair::observables::{
    bloch_decomposition, channel_capacity, degree_of_entanglement, entangled_dyadic,
};
use chargepair::quantum::{
    partial_trace_field, partial_trace_qubit, von_neumann_entropy, DensityOperator, Qubit,
    QubitPairDensity,
};
use rayon::prelude::*;

use crate::config::{Propagator, ScenarioConfig};
use crate::error::{Result, ScenarioError};

/// Reduced states from the two propagators must agree this closely (Frobenius).
pub const ORACLE_STATE_TOL: f64 = 1e-8;
/// Every emitted scalar must agree this closely between the two propagators.
pub const ORACLE_SCALAR_TOL: f64 = 1e-7;

/// One row of output.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeSeriesRecord {
    pub t: f64,
    pub s: [f64; 3],
    pub t_vec: [f64; 3],
    pub s_len: f64,
    pub t_len: f64,
    pub doe: f64,
    pub capacity: f64,
    pub entropy_b: f64,
    pub purity: f64,
    /// Cross dyadic `C_ij = ⟨σ_i ⊗ τ_j⟩`.
    pub cross: [[f64; 3]; 3],
}

fn norm3(v: &[f64; 3]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

impl TimeSeriesRecord {
    pub fn from_density(t: f64, rho: &QubitPairDensity) -> Self {
        let d = bloch_decomposition(rho);
        let doe = degree_of_entanglement(&entangled_dyadic(&d));
        let s = [d.s[0], d.s[1], d.s[2]];
        let t_vec = [d.t[0], d.t[1], d.t[2]];
        let cross = [0, 1, 2].map(|i| [0, 1, 2].map(|j| d.c[(i, j)]));
        Self {
            t,
            s,
            t_vec,
            s_len: norm3(&s),
            t_len: norm3(&t_vec),
            doe,
            capacity: channel_capacity(rho),
            entropy_b: von_neumann_entropy(&partial_trace_qubit(rho, Qubit::First)),
            purity: rho.purity(),
            cross,
        }
    }

    /// `Σ_ij (C_ij - s_i t_j)²` from the stored fields.
    pub fn doe_from_parts(&self) -> f64 {
        let mut sum = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                let e = self.cross[i][j] - self.s[i] * self.t_vec[j];
                sum += e * e;
            }
        }
        sum
    }

    /// Scalars in CSV column order (after `t`).
    pub fn columns(&self) -> [(&'static str, f64); 12] {
        [
            ("s_x", self.s[0]),
            ("s_y", self.s[1]),
            ("s_z", self.s[2]),
            ("s_len", self.s_len),
            ("t_x", self.t_vec[0]),
            ("t_y", self.t_vec[1]),
            ("t_z", self.t_vec[2]),
            ("t_len", self.t_len),
            ("doe", self.doe),
            ("capacity", self.capacity),
            ("entropy_B", self.entropy_b),
            ("purity", self.purity),
        ]
    }

    /// Same record with the degree of entanglement scaled to the Bell value 1.
    pub fn with_normalized_doe(self) -> Self {
        Self {
            doe: self.doe / 3.0,
            ..self
        }
    }
}

/// Propagators and initial state for one configuration.
#[derive(Debug, Clone)]
pub struct Simulation {
    config: ScenarioConfig,
    initial: JointState,
    blockwise: Option<BlockPropagator>,
    full: Option<FullPropagator>,
}

/// States of each requested propagator at one time.
#[derive(Debug, Clone)]
pub struct GridPoint {
    pub t: f64,
    pub blockwise: Option<JointState>,
    pub full: Option<JointState>,
}

impl GridPoint {
    /// The state reported downstream: blockwise when available.
    pub fn primary(&self) -> &JointState {
        self.blockwise
            .as_ref()
            .or(self.full.as_ref())
            .expect("at least one propagator runs")
    }
}

impl Simulation {
    pub fn new(config: &ScenarioConfig) -> Result<Self> {
        let config = config.clone().validated()?;
        let cutoff = config.effective_cutoff();
        let params = ModelParams::resonant(config.r)?;
        let initial = initial_joint_state(config.a(), config.b(), config.alpha(), cutoff)?;
        if !initial.is_cutoff_sufficient() {
            return Err(ScenarioError::CutoffTooSmall {
                cutoff,
                detail: format!(
                    "top {GUARD_LEVELS} Fock levels hold {:.3e}",
                    initial.top_level_occupancy(GUARD_LEVELS)
                ),
            });
        }
        let blockwise = match config.propagator {
            Propagator::Blockwise | Propagator::Both => {
                Some(BlockPropagator::new(&params, cutoff)?)
            }
            Propagator::Full => None,
        };
        let full = match config.propagator {
            Propagator::Full | Propagator::Both => Some(FullPropagator::new(&params, cutoff)?),
            Propagator::Blockwise => None,
        };
        Ok(Self {
            config,
            initial,
            blockwise,
            full,
        })
    }

    pub fn config(&self) -> &ScenarioConfig {
        &self.config
    }

    pub fn initial(&self) -> &JointState {
        &self.initial
    }

    pub fn cutoff(&self) -> usize {
        self.initial.cutoff()
    }

    pub fn prepare(&self) -> Result<Prepared<'_>> {
        let blockwise = self
            .blockwise
            .as_ref()
            .map(|p| p.prepare(&self.initial))
            .transpose()?;
        let full = self
            .full
            .as_ref()
            .map(|p| p.prepare(&self.initial))
            .transpose()?;
        Ok(Prepared { blockwise, full })
    }
}

#[derive(Debug, Clone)]
pub struct Prepared<'a> {
    blockwise: Option<BlockEvolution<'a>>,
    full: Option<FullEvolution<'a>>,
}

impl Prepared<'_> {
    pub fn at(&self, t: f64) -> GridPoint {
        GridPoint {
            t,
            blockwise: self.blockwise.as_ref().map(|e| e.at(t)),
            full: self.full.as_ref().map(|e| e.at(t)),
        }
    }
}

fn check_state(t: f64, psi: &JointState) -> Result<()> {
    let norm_sqr = psi.norm_sqr();
    if (norm_sqr - 1.0).abs() > NORM_TOL {
        return Err(chargepair::Error::NotNormalized { norm_sqr }.into());
    }
    if !psi.is_cutoff_sufficient() {
        return Err(ScenarioError::CutoffTooSmall {
            cutoff: psi.cutoff(),
            detail: format!(
                "at t = {t} the top {GUARD_LEVELS} Fock levels hold {:.3e}",
                psi.top_level_occupancy(GUARD_LEVELS)
            ),
        });
    }
    Ok(())
}

fn evaluate(point: &GridPoint) -> Result<TimeSeriesRecord> {
    let t = point.t;
    let primary = point.primary();
    check_state(t, primary)?;
    let rho = partial_trace_field(primary)?;
    let record = TimeSeriesRecord::from_density(t, &rho);

    if let (Some(_), Some(full)) = (&point.blockwise, &point.full) {
        check_state(t, full)?;
        let rho_full = partial_trace_field(full)?;
        let delta = rho.frobenius_distance(&rho_full);
        if delta.is_nan() || delta >= ORACLE_STATE_TOL {
            return Err(ScenarioError::OracleMismatch {
                t,
                field: "rho_c".into(),
                delta,
            });
        }
        let oracle = TimeSeriesRecord::from_density(t, &rho_full);
        for ((field, x), (_, y)) in record.columns().into_iter().zip(oracle.columns()) {
            let delta = (x - y).abs();
            if delta.is_nan() || delta >= ORACLE_SCALAR_TOL {
                return Err(ScenarioError::OracleMismatch {
                    t,
                    field: field.into(),
                    delta,
                });
            }
        }
    }
    Ok(record)
}

/// Evaluate the pipeline on the configured time grid, in time order.
pub fn run_scenario(cfg: &ScenarioConfig) -> Result<Vec<TimeSeriesRecord>> {
    let sim = Simulation::new(cfg)?;
    let prepared = sim.prepare()?;
    sim.config()
        .times()
        .into_par_iter()
        .map(|t| evaluate(&prepared.at(t)))
        .collect()
}
