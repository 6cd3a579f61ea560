use super::state::{excitation_number, JointState, Level};
use crate::quantum::ComplexMatrix;
use crate::{Error, Result, C64};

const RESONANCE_TOL: f64 = 1e-12;

/// Model parameters in units `ħ = λ1 = 1`.
///
/// `r` is the coupling ratio `λ2/λ1`; `e1`, `e2` multiply `σ_z`, `τ_z`, so a
/// qubit is resonant with the field when `2 E = ω`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    pub r: f64,
    pub e1: f64,
    pub e2: f64,
    pub omega: f64,
    resonant: bool,
}

impl ModelParams {
    pub fn new(r: f64, e1: f64, e2: f64, omega: f64) -> Result<Self> {
        if !(r.is_finite() && r >= 0.0) {
            return Err(Error::InvalidParameter(format!("coupling ratio R = {r}")));
        }
        if ![e1, e2, omega].iter().all(|x| x.is_finite()) {
            return Err(Error::InvalidParameter("non-finite energy".into()));
        }
        let resonant =
            (2.0 * e1 - omega).abs() < RESONANCE_TOL && (2.0 * e2 - omega).abs() < RESONANCE_TOL;
        Ok(Self {
            r,
            e1,
            e2,
            omega,
            resonant,
        })
    }

    /// Both qubits on resonance with a unit-frequency field.
    pub fn resonant(r: f64) -> Result<Self> {
        Self::new(r, 0.5, 0.5, 1.0)
    }

    pub fn is_resonant(&self) -> bool {
        self.resonant
    }
}

/// Rotating-wave coupling between two basis states, if any.
///
/// Qubit 1 exchanges a photon with strength `√(m+1)`, qubit 2 with `R√(m+1)`,
/// where `m` is the lower photon number of the pair.
pub(crate) fn coupling(r: f64, from: (Level, Level, usize), to: (Level, Level, usize)) -> f64 {
    let (a1, a2, n) = from;
    let (b1, b2, m) = to;
    let excited_side = |x: (Level, usize), y: (Level, usize)| {
        // x excited with photon k, y ground with photon k+1
        x.0 == Level::Excited && y.0 == Level::Ground && y.1 == x.1 + 1
    };
    let strength = |photons_low: usize| ((photons_low + 1) as f64).sqrt();
    if a2 == b2 && a1 != b1 {
        if excited_side((a1, n), (b1, m)) {
            return strength(n);
        }
        if excited_side((b1, m), (a1, n)) {
            return strength(m);
        }
    } else if a1 == b1 && a2 != b2 {
        if excited_side((a2, n), (b2, m)) {
            return r * strength(n);
        }
        if excited_side((b2, m), (a2, n)) {
            return r * strength(m);
        }
    }
    0.0
}

fn add_interaction(h: &mut ComplexMatrix, r: f64, cutoff: usize) {
    for q2 in Level::BOTH {
        for n in 0..cutoff {
            // a σ1⁺: |g q2, n+1⟩ → |e q2, n⟩
            let hi = JointState::index(cutoff, Level::Excited, q2, n);
            let lo = JointState::index(cutoff, Level::Ground, q2, n + 1);
            let g = C64::new(((n + 1) as f64).sqrt(), 0.0);
            h[(hi, lo)] += g;
            h[(lo, hi)] += g;
        }
    }
    for q1 in Level::BOTH {
        for n in 0..cutoff {
            let hi = JointState::index(cutoff, q1, Level::Excited, n);
            let lo = JointState::index(cutoff, q1, Level::Ground, n + 1);
            let g = C64::new(r * ((n + 1) as f64).sqrt(), 0.0);
            h[(hi, lo)] += g;
            h[(lo, hi)] += g;
        }
    }
}

/// Interaction-picture Hamiltonian at resonance:
/// `(a σ1⁺ + a† σ1⁻) + R (a σ2⁺ + a† σ2⁻)`.
pub fn interaction_hamiltonian(r: f64, cutoff: usize) -> ComplexMatrix {
    let dim = 4 * (cutoff + 1);
    let mut h = ComplexMatrix::zeros(dim, dim);
    add_interaction(&mut h, r, cutoff);
    h
}

/// Full lab-frame Hamiltonian
/// `ω(a†a + ½) + E1 σ_z + E2 τ_z + (a σ1⁺ + a† σ1⁻) + R (a σ2⁺ + a† σ2⁻)`.
pub fn build_hamiltonian(params: &ModelParams, cutoff: usize) -> ComplexMatrix {
    let mut h = interaction_hamiltonian(params.r, cutoff);
    for q1 in Level::BOTH {
        for q2 in Level::BOTH {
            for n in 0..=cutoff {
                let i = JointState::index(cutoff, q1, q2, n);
                let diag = params.omega * (n as f64 + 0.5)
                    + params.e1 * q1.z() as f64
                    + params.e2 * q2.z() as f64;
                h[(i, i)] += C64::new(diag, 0.0);
            }
        }
    }
    h
}

/// Diagonal matrix of `N = a†a + (σ_z + τ_z)/2 + 1`.
pub fn excitation_operator(cutoff: usize) -> ComplexMatrix {
    let dim = 4 * (cutoff + 1);
    ComplexMatrix::from_fn(dim, dim, |i, j| {
        if i == j {
            let (q1, q2, n) = JointState::unpack(cutoff, i);
            C64::new(excitation_number(q1, q2, n) as f64, 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    })
}
