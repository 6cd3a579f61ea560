use nalgebra::DVector;

use crate::{Error, Result, C64};

/// Tail mass a truncated coherent field may discard.
pub const COHERENT_TAIL_TOL: f64 = 1e-12;
/// Norm tolerance for states and for `|a|² + |b|²`.
pub const NORM_TOL: f64 = 1e-10;
/// Occupancy allowed in the top [`GUARD_LEVELS`] Fock levels.
pub const GUARD_OCCUPANCY: f64 = 1e-8;
pub const GUARD_LEVELS: usize = 5;
/// Below this weight the clipped top blocks are considered empty, which makes
/// truncation exact regardless of how close the populated levels sit to the
/// cutoff.
const CLIPPED_EXACT: f64 = 1e-20;

/// Qubit level; the discriminant is the basis index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Level {
    Excited = 0,
    Ground = 1,
}

impl Level {
    pub const BOTH: [Level; 2] = [Level::Excited, Level::Ground];

    /// Eigenvalue of `σ_z`.
    pub fn z(self) -> i32 {
        match self {
            Level::Excited => 1,
            Level::Ground => -1,
        }
    }

    fn from_index(i: usize) -> Self {
        if i == 0 {
            Level::Excited
        } else {
            Level::Ground
        }
    }
}

/// Excitation number `a†a + (σ_z + τ_z)/2 + 1` of a basis state.
pub fn excitation_number(q1: Level, q2: Level, n: usize) -> usize {
    (n as i64 + ((q1.z() + q2.z()) / 2) as i64 + 1) as usize
}

/// Wavefunction of qubits ⊗ field, indexed `(q1 * 2 + q2) * (cutoff + 1) + n`.
#[derive(Debug, Clone, PartialEq)]
pub struct JointState {
    cutoff: usize,
    amplitudes: DVector<C64>,
}

impl JointState {
    pub fn new(cutoff: usize, amplitudes: DVector<C64>) -> Result<Self> {
        let expected = 4 * (cutoff + 1);
        if amplitudes.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                found: amplitudes.len(),
            });
        }
        let norm_sqr = amplitudes.norm_squared();
        if (norm_sqr - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized { norm_sqr });
        }
        Ok(Self { cutoff, amplitudes })
    }

    pub(crate) fn from_parts(cutoff: usize, amplitudes: DVector<C64>) -> Self {
        debug_assert_eq!(amplitudes.len(), 4 * (cutoff + 1));
        Self { cutoff, amplitudes }
    }

    pub fn basis(cutoff: usize, q1: Level, q2: Level, n: usize) -> Result<Self> {
        if n > cutoff {
            return Err(Error::InvalidParameter(format!(
                "Fock level {n} above cutoff {cutoff}"
            )));
        }
        let mut amps = DVector::zeros(4 * (cutoff + 1));
        amps[Self::index(cutoff, q1, q2, n)] = C64::new(1.0, 0.0);
        Ok(Self::from_parts(cutoff, amps))
    }

    #[inline]
    pub fn index(cutoff: usize, q1: Level, q2: Level, n: usize) -> usize {
        (q1 as usize * 2 + q2 as usize) * (cutoff + 1) + n
    }

    /// Inverse of [`JointState::index`].
    pub fn unpack(cutoff: usize, index: usize) -> (Level, Level, usize) {
        let levels = cutoff + 1;
        let q = index / levels;
        (
            Level::from_index(q / 2),
            Level::from_index(q % 2),
            index % levels,
        )
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &DVector<C64> {
        &self.amplitudes
    }

    pub fn amplitude(&self, q1: Level, q2: Level, n: usize) -> C64 {
        self.amplitudes[Self::index(self.cutoff, q1, q2, n)]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.norm_squared()
    }

    /// `⟨self|other⟩`
    pub fn inner(&self, other: &Self) -> C64 {
        self.amplitudes.dotc(&other.amplitudes)
    }

    /// `|⟨self|other⟩|²`
    pub fn fidelity(&self, other: &Self) -> f64 {
        self.inner(other).norm_sqr()
    }

    fn weighted_sum(&self, weight: impl Fn(Level, Level, usize) -> f64) -> f64 {
        self.amplitudes
            .iter()
            .enumerate()
            .map(|(i, z)| {
                let (q1, q2, n) = Self::unpack(self.cutoff, i);
                z.norm_sqr() * weight(q1, q2, n)
            })
            .sum()
    }

    pub fn mean_photon_number(&self) -> f64 {
        self.weighted_sum(|_, _, n| n as f64)
    }

    /// `⟨N⟩` with `N = a†a + (σ_z + τ_z)/2 + 1`.
    pub fn mean_excitation(&self) -> f64 {
        self.weighted_sum(|q1, q2, n| excitation_number(q1, q2, n) as f64)
    }

    /// Probability of finding the field in one of the top `levels` Fock states.
    pub fn top_level_occupancy(&self, levels: usize) -> f64 {
        let first = (self.cutoff + 1).saturating_sub(levels);
        self.weighted_sum(|_, _, n| if n >= first { 1.0 } else { 0.0 })
    }

    /// Weight on invariant blocks that lose partner states to the truncation
    /// (excitation number above the cutoff).
    pub fn clipped_block_weight(&self) -> f64 {
        let cutoff = self.cutoff;
        self.weighted_sum(|q1, q2, n| {
            if excitation_number(q1, q2, n) > cutoff {
                1.0
            } else {
                0.0
            }
        })
    }

    /// Cutoff-sufficiency guard: the top Fock levels are essentially empty, or
    /// the populated blocks all fit below the cutoff so truncation is exact.
    pub fn is_cutoff_sufficient(&self) -> bool {
        self.top_level_occupancy(GUARD_LEVELS) < GUARD_OCCUPANCY
            || self.clipped_block_weight() < CLIPPED_EXACT
    }
}

/// Coherent-state amplitudes `q_n = αⁿ/√(n!) e^{-|α|²/2}` for `n = 0..=cutoff`.
///
/// Magnitudes are accumulated in log space so large `n` never overflows.
pub fn coherent_amplitudes(alpha: C64, cutoff: usize) -> Result<Vec<C64>> {
    let r = alpha.norm();
    let mut q = Vec::with_capacity(cutoff + 1);
    if r == 0.0 {
        q.push(C64::new(1.0, 0.0));
        q.resize(cutoff + 1, C64::new(0.0, 0.0));
        return Ok(q);
    }
    let phase = alpha.arg();
    let ln_r = r.ln();
    let mut ln_fact = 0.0;
    for n in 0..=cutoff {
        if n > 0 {
            ln_fact += (n as f64).ln();
        }
        let ln_mag = n as f64 * ln_r - 0.5 * ln_fact - 0.5 * r * r;
        q.push(C64::from_polar(ln_mag.exp(), n as f64 * phase));
    }
    let mass: f64 = q.iter().map(|z| z.norm_sqr()).sum();
    let tail = 1.0 - mass;
    if tail >= COHERENT_TAIL_TOL {
        return Err(Error::CutoffTooSmall { cutoff, tail });
    }
    Ok(q)
}

/// `(a|ee⟩ + b|gg⟩) ⊗ Σ q_n |n⟩`, renormalized after truncation.
pub fn initial_joint_state(a: C64, b: C64, alpha: C64, cutoff: usize) -> Result<JointState> {
    let pair_norm = a.norm_sqr() + b.norm_sqr();
    if (pair_norm - 1.0).abs() > NORM_TOL {
        return Err(Error::NotNormalized {
            norm_sqr: pair_norm,
        });
    }
    let q = coherent_amplitudes(alpha, cutoff)?;
    let mut amps = DVector::zeros(4 * (cutoff + 1));
    for (n, &qn) in q.iter().enumerate() {
        amps[JointState::index(cutoff, Level::Excited, Level::Excited, n)] = a * qn;
        amps[JointState::index(cutoff, Level::Ground, Level::Ground, n)] = b * qn;
    }
    let norm = amps.norm();
    amps.unscale_mut(norm);
    JointState::new(cutoff, amps)
}

/// `Σ_{j ≥ k} e^{-λ} λ^j / j!`, summed in log space.
pub fn poisson_upper_tail(mean: f64, k: usize) -> f64 {
    if mean == 0.0 {
        return if k == 0 { 1.0 } else { 0.0 };
    }
    let ln_mean = mean.ln();
    let mut ln_fact: f64 = (1..=k).map(|j| (j as f64).ln()).sum();
    let mut sum = 0.0;
    let mut j = k;
    loop {
        let term = (j as f64 * ln_mean - ln_fact - mean).exp();
        sum += term;
        if j as f64 > mean && term < 1e-40 {
            break;
        }
        j += 1;
        ln_fact += (j as f64).ln();
    }
    sum
}

/// Default Fock cutoff for a coherent field of mean photon number `nbar`.
///
/// Starts from `⌈n̄ + 10√n̄⌉ + 2` and grows until both the truncated tail is
/// below [`COHERENT_TAIL_TOL`] and the top guard levels (allowing for the
/// two-photon reach of the dynamics) carry less than [`GUARD_OCCUPANCY`].
/// A vacuum field needs only cutoff 2, where truncation is exact.
pub fn auto_cutoff(nbar: f64) -> usize {
    if nbar <= 0.0 {
        return 2;
    }
    let mut cutoff = (nbar + 10.0 * nbar.sqrt()).ceil() as usize + 2;
    loop {
        let tail_ok = poisson_upper_tail(nbar, cutoff + 1) < COHERENT_TAIL_TOL;
        let guard_from = (cutoff + 1).saturating_sub(GUARD_LEVELS + 2);
        let guard_ok = poisson_upper_tail(nbar, guard_from) < GUARD_OCCUPANCY;
        if tail_ok && guard_ok {
            return cutoff;
        }
        cutoff += 1;
    }
}
