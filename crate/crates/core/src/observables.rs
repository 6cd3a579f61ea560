//! Bloch decomposition of a two-qubit state and the quantities built on it.
//!
//! A two-qubit density matrix is written as
//! `ρ = ¼ (1 + s·σ ⊗ 1 + 1 ⊗ t·τ + Σ_ij C_ij σ_i ⊗ τ_j)`
//! with Bloch vectors `s`, `t` and cross dyadic `C`.

use nalgebra::{Matrix3, Matrix4, Vector3};

use crate::quantum::{partial_trace_qubit, pauli, von_neumann_entropy, Qubit, QubitPairDensity};
use crate::C64;

/// Imaginary parts of Pauli expectations larger than this indicate a broken
/// density matrix.
const IMAG_RESIDUE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochDecomposition {
    pub s: Vector3<f64>,
    pub t: Vector3<f64>,
    pub c: Matrix3<f64>,
}

fn expectation(rho: &Matrix4<C64>, op: &Matrix4<C64>) -> f64 {
    let z = (rho * op).trace();
    debug_assert!(z.im.abs() < IMAG_RESIDUE_TOL, "imaginary expectation {z}");
    z.re
}

fn local_ops() -> ([Matrix4<C64>; 3], [Matrix4<C64>; 3]) {
    let id = nalgebra::Matrix2::<C64>::identity();
    let first = [0, 1, 2].map(|i| pauli(i).kronecker(&id));
    let second = [0, 1, 2].map(|j| id.kronecker(&pauli(j)));
    (first, second)
}

/// `s_i = tr(ρ σ_i⊗1)`, `t_j = tr(ρ 1⊗τ_j)`, `C_ij = tr(ρ σ_i⊗τ_j)`.
pub fn bloch_decomposition(rho: &QubitPairDensity) -> BlochDecomposition {
    let m = rho.matrix();
    let (first, second) = local_ops();
    let s = Vector3::from_fn(|i, _| expectation(m, &first[i]));
    let t = Vector3::from_fn(|j, _| expectation(m, &second[j]));
    let c = Matrix3::from_fn(|i, j| expectation(m, &pauli(i).kronecker(&pauli(j))));
    BlochDecomposition { s, t, c }
}

impl BlochDecomposition {
    /// Rebuild the 4×4 matrix from the decomposition.
    pub fn reconstruct(&self) -> Matrix4<C64> {
        let (first, second) = local_ops();
        let mut m = Matrix4::<C64>::identity();
        for i in 0..3 {
            m += first[i] * C64::new(self.s[i], 0.0);
            m += second[i] * C64::new(self.t[i], 0.0);
            for j in 0..3 {
                m += pauli(i).kronecker(&pauli(j)) * C64::new(self.c[(i, j)], 0.0);
            }
        }
        m * C64::new(0.25, 0.0)
    }

    /// Apply local rotations: `s → O_A s`, `t → O_B t`, `C → O_A C O_Bᵀ`.
    pub fn rotated(&self, oa: &Matrix3<f64>, ob: &Matrix3<f64>) -> Self {
        Self {
            s: oa * self.s,
            t: ob * self.t,
            c: oa * self.c * ob.transpose(),
        }
    }
}

/// `E = C - s tᵀ`; vanishes on product states.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntangledDyadic(pub Matrix3<f64>);

pub fn entangled_dyadic(d: &BlochDecomposition) -> EntangledDyadic {
    EntangledDyadic(d.c - d.s * d.t.transpose())
}

/// `tr(Eᵀ E)`, unnormalized: 3 for a Bell state.
pub fn degree_of_entanglement(e: &EntangledDyadic) -> f64 {
    e.0.norm_squared()
}

/// Dense-coding capacity in bits, `log2 2 + S(ρ_B) - S(ρ_AB)` with `ρ_B` the
/// state left after tracing out the first qubit.
pub fn channel_capacity(rho: &QubitPairDensity) -> f64 {
    let rho_b = partial_trace_qubit(rho, Qubit::First);
    1.0 + von_neumann_entropy(&rho_b) - von_neumann_entropy(rho)
}
