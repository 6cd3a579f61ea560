//! Per-block propagation at resonance.
//!
//! The rotating-wave interaction conserves the excitation number, so the
//! truncated Hilbert space splits into invariant blocks. For `N = n + 2` the
//! block is spanned by `|ee,n⟩, |eg,n+1⟩, |ge,n+1⟩, |gg,n+2⟩`; below that sit
//! the 1-dimensional `|gg,0⟩` and the 3-dimensional `{|eg,0⟩, |ge,0⟩, |gg,1⟩}`,
//! and at the top the cutoff clips the last two blocks. Every block is
//! diagonalized on its own and evolved with `exp(-i B t)`.

use nalgebra::DVector;

use super::hamiltonian::{coupling, ModelParams};
use super::state::{coherent_amplitudes, JointState, Level};
use crate::quantum::{hermitian_eigensystem, ComplexMatrix, Eigensystem};
use crate::{Error, Result, C64};

use Level::{Excited as E, Ground as G};

/// Analytic data and numerical eigensystem of the 4×4 block `n`.
///
/// `delta = (1+R²)(γ² + β²)` and `big_delta = (1-R²) β γ` give the squared
/// block frequencies `mu, nu = ½(δ ± √(δ² - 4Δ²))`; the eigenvalues are
/// `±√mu, ±√nu`.
#[derive(Debug, Clone)]
pub struct BlockSpectrum {
    pub n: usize,
    pub gamma: f64,
    pub beta: f64,
    pub delta: f64,
    pub big_delta: f64,
    pub mu: f64,
    pub nu: f64,
    pub matrix: ComplexMatrix,
    pub eigen: Eigensystem,
}

/// Block basis states for excitation number `excitation`, restricted to Fock
/// levels `0..=cutoff`, in the order `ee, eg, ge, gg`.
fn block_states(excitation: usize, cutoff: usize) -> Vec<(Level, Level, usize)> {
    let candidates = [
        (E, E, excitation as i64 - 2),
        (E, G, excitation as i64 - 1),
        (G, E, excitation as i64 - 1),
        (G, G, excitation as i64),
    ];
    candidates
        .into_iter()
        .filter(|&(_, _, n)| n >= 0 && n as usize <= cutoff)
        .map(|(a, b, n)| (a, b, n as usize))
        .collect()
}

fn block_matrix(states: &[(Level, Level, usize)], r: f64) -> ComplexMatrix {
    let d = states.len();
    ComplexMatrix::from_fn(d, d, |i, j| {
        C64::new(coupling(r, states[i], states[j]), 0.0)
    })
}

pub fn block_spectrum(n: usize, r: f64) -> Result<BlockSpectrum> {
    let gamma = ((n + 1) as f64).sqrt();
    let beta = ((n + 2) as f64).sqrt();
    let r2 = r * r;
    let delta = (1.0 + r2) * (gamma * gamma + beta * beta);
    let big_delta = (1.0 - r2) * beta * gamma;
    let disc = (delta * delta - 4.0 * big_delta * big_delta)
        .max(0.0)
        .sqrt();
    let mu = 0.5 * (delta + disc);
    // ν = Δ²/μ avoids cancellation when Δ is small
    let nu = if mu > 0.0 {
        big_delta * big_delta / mu
    } else {
        0.0
    };

    let states = block_states(n + 2, n + 2);
    let matrix = block_matrix(&states, r);
    let eigen = hermitian_eigensystem(&matrix)?;
    Ok(BlockSpectrum {
        n,
        gamma,
        beta,
        delta,
        big_delta,
        mu,
        nu,
        matrix,
        eigen,
    })
}

/// One invariant block of the truncated space.
#[derive(Debug, Clone)]
pub struct InvariantBlock {
    pub excitation: usize,
    /// Joint-state indices of the block basis.
    pub indices: Vec<usize>,
    pub eigen: Eigensystem,
}

/// Amplitudes of the 4×4 block `n` over `(|ee,n⟩, |eg,n+1⟩, |ge,n+1⟩, |gg,n+2⟩)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlockCoefficients {
    pub n: usize,
    pub a: C64,
    pub b: C64,
    pub c: C64,
    pub d: C64,
}

impl BlockCoefficients {
    pub fn norm_sqr(&self) -> f64 {
        self.a.norm_sqr() + self.b.norm_sqr() + self.c.norm_sqr() + self.d.norm_sqr()
    }
}

/// Read off the coefficients of every complete 4×4 block of `psi`.
pub fn block_coefficients(psi: &JointState) -> Vec<BlockCoefficients> {
    let cutoff = psi.cutoff();
    (0..cutoff.saturating_sub(1))
        .map(|n| BlockCoefficients {
            n,
            a: psi.amplitude(E, E, n),
            b: psi.amplitude(E, G, n + 1),
            c: psi.amplitude(G, E, n + 1),
            d: psi.amplitude(G, G, n + 2),
        })
        .collect()
}

/// Block-diagonal propagator for the resonant interaction picture.
#[derive(Debug, Clone)]
pub struct BlockPropagator {
    cutoff: usize,
    blocks: Vec<InvariantBlock>,
}

impl BlockPropagator {
    pub fn new(params: &ModelParams, cutoff: usize) -> Result<Self> {
        if !params.is_resonant() {
            return Err(Error::NotResonant);
        }
        let r = params.r;
        let mut blocks = Vec::with_capacity(cutoff + 3);
        for excitation in 0..=cutoff + 2 {
            let states = block_states(excitation, cutoff);
            let eigen = if states.len() == 4 {
                block_spectrum(excitation - 2, r)?.eigen
            } else {
                hermitian_eigensystem(&block_matrix(&states, r))?
            };
            let indices = states
                .iter()
                .map(|&(a, b, n)| JointState::index(cutoff, a, b, n))
                .collect();
            blocks.push(InvariantBlock {
                excitation,
                indices,
                eigen,
            });
        }
        Ok(Self { cutoff, blocks })
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn blocks(&self) -> &[InvariantBlock] {
        &self.blocks
    }

    pub fn prepare(&self, psi0: &JointState) -> Result<BlockEvolution<'_>> {
        if psi0.cutoff() != self.cutoff {
            return Err(Error::DimensionMismatch {
                expected: 4 * (self.cutoff + 1),
                found: psi0.dim(),
            });
        }
        let amps = psi0.amplitudes();
        let spectral = self
            .blocks
            .iter()
            .map(|block| {
                let local = DVector::from_iterator(
                    block.indices.len(),
                    block.indices.iter().map(|&i| amps[i]),
                );
                block.eigen.vectors.ad_mul(&local)
            })
            .collect();
        Ok(BlockEvolution {
            propagator: self,
            spectral,
            initial: psi0.clone(),
        })
    }
}

#[derive(Debug, Clone)]
pub struct BlockEvolution<'a> {
    propagator: &'a BlockPropagator,
    spectral: Vec<DVector<C64>>,
    initial: JointState,
}

impl BlockEvolution<'_> {
    pub fn at(&self, t: f64) -> JointState {
        if t == 0.0 {
            return self.initial.clone();
        }
        let cutoff = self.propagator.cutoff;
        let mut out = DVector::zeros(4 * (cutoff + 1));
        for (block, coeffs) in self.propagator.blocks.iter().zip(&self.spectral) {
            let vecs = &block.eigen.vectors;
            for (row, &target) in block.indices.iter().enumerate() {
                out[target] = coeffs
                    .iter()
                    .zip(&block.eigen.values)
                    .enumerate()
                    .map(|(k, (c, &e))| vecs[(row, k)] * c * C64::from_polar(1.0, -e * t))
                    .sum();
            }
        }
        JointState::from_parts(cutoff, out)
    }
}

/// Evolve `(a|ee⟩ + b|gg⟩) ⊗ |α⟩` block by block and return the state with the
/// coefficients of every complete block.
pub fn evolve_blockwise(
    a: C64,
    b: C64,
    alpha: C64,
    params: &ModelParams,
    t: f64,
    cutoff: usize,
) -> Result<(JointState, Vec<BlockCoefficients>)> {
    if !params.is_resonant() {
        return Err(Error::NotResonant);
    }
    let psi0 = super::initial_joint_state(a, b, alpha, cutoff)?;
    let prop = BlockPropagator::new(params, cutoff)?;
    let psi = prop.prepare(&psi0)?.at(t);
    let coeffs = block_coefficients(&psi);
    Ok((psi, coeffs))
}

/// Initial coefficients of block `n` for a coherent field: `(a q_n, 0, 0, b q_{n+2})`.
pub fn initial_block_coefficients(
    a: C64,
    b: C64,
    alpha: C64,
    cutoff: usize,
) -> Result<Vec<BlockCoefficients>> {
    let q = coherent_amplitudes(alpha, cutoff)?;
    let zero = C64::new(0.0, 0.0);
    Ok((0..cutoff.saturating_sub(1))
        .map(|n| BlockCoefficients {
            n,
            a: a * q[n],
            b: zero,
            c: zero,
            d: b * q[n + 2],
        })
        .collect())
}
