//! Two non-identical charge qubits coupled to one cavity mode.
//!
//! The crate is split into three layers:
//!
//! * [`quantum`]: Hermitian eigensystems, reduced density matrices, partial
//!   traces and von Neumann entropy.
//! * [`dynamics`]: the rotating-wave Hamiltonian, coherent-field initial
//!   states and two independent propagators (full-space diagonalization and
//!   per-invariant-block diagonalization).
//! * [`observables`]: Bloch vectors, cross dyadic, entangled dyadic, degree of
//!   entanglement and dense-coding capacity.
//!
//! Time is measured in units of the first qubit's coupling (`λ1 = ħ = 1`).

pub mod dynamics;
pub mod error;
pub mod observables;
pub mod quantum;

pub use error::{Error, Result};
pub use num_complex::Complex64;

/// Complex scalar shorthand used throughout the crate.
pub type C64 = Complex64;
