use nalgebra::DVector;

use super::hamiltonian::{build_hamiltonian, interaction_hamiltonian, ModelParams};
use super::state::JointState;
use crate::quantum::{hermitian_eigensystem, Eigensystem};
use crate::{Error, Result, C64};

/// Propagator `exp(-iHt)` from one diagonalization of the whole truncated
/// Hamiltonian. At resonance the interaction picture is used.
#[derive(Debug, Clone)]
pub struct FullPropagator {
    cutoff: usize,
    eigen: Eigensystem,
}

impl FullPropagator {
    pub fn new(params: &ModelParams, cutoff: usize) -> Result<Self> {
        let h = if params.is_resonant() {
            interaction_hamiltonian(params.r, cutoff)
        } else {
            build_hamiltonian(params, cutoff)
        };
        Ok(Self {
            cutoff,
            eigen: hermitian_eigensystem(&h)?,
        })
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn eigensystem(&self) -> &Eigensystem {
        &self.eigen
    }

    /// Project `psi0` onto the eigenbasis once; the result evaluates any time.
    pub fn prepare(&self, psi0: &JointState) -> Result<FullEvolution<'_>> {
        if psi0.cutoff() != self.cutoff {
            return Err(Error::DimensionMismatch {
                expected: 4 * (self.cutoff + 1),
                found: psi0.dim(),
            });
        }
        Ok(FullEvolution {
            propagator: self,
            spectral: self.eigen.vectors.ad_mul(psi0.amplitudes()),
            initial: psi0.clone(),
        })
    }
}

#[derive(Debug, Clone)]
pub struct FullEvolution<'a> {
    propagator: &'a FullPropagator,
    spectral: DVector<C64>,
    initial: JointState,
}

impl FullEvolution<'_> {
    pub fn at(&self, t: f64) -> JointState {
        if t == 0.0 {
            return self.initial.clone();
        }
        let eigen = &self.propagator.eigen;
        let phased = DVector::from_iterator(
            self.spectral.len(),
            self.spectral
                .iter()
                .zip(&eigen.values)
                .map(|(c, &e)| c * C64::from_polar(1.0, -e * t)),
        );
        JointState::from_parts(self.propagator.cutoff, &eigen.vectors * phased)
    }
}

/// One-shot `exp(-iHt) ψ0`. Prefer [`FullPropagator`] for time grids.
pub fn evolve_full(psi0: &JointState, params: &ModelParams, t: f64) -> Result<JointState> {
    let prop = FullPropagator::new(params, psi0.cutoff())?;
    let evolution = prop.prepare(psi0)?;
    Ok(evolution.at(t))
}
