//! Hamiltonian, initial states and the two propagators.
//!
//! [`FullPropagator`] diagonalizes the whole truncated Hamiltonian and is the
//! reference path. [`BlockPropagator`] diagonalizes each invariant block on
//! its own; the two must agree to rounding error.

pub mod blocks;
mod full;
mod hamiltonian;
mod state;

pub use blocks::{
    block_coefficients, block_spectrum, evolve_blockwise, initial_block_coefficients,
    BlockCoefficients, BlockEvolution, BlockPropagator, BlockSpectrum, InvariantBlock,
};
pub use full::{evolve_full, FullEvolution, FullPropagator};
pub use hamiltonian::{
    build_hamiltonian, excitation_operator, interaction_hamiltonian, ModelParams,
};
pub use state::{
    auto_cutoff, coherent_amplitudes, excitation_number, initial_joint_state, poisson_upper_tail,
    JointState, Level, COHERENT_TAIL_TOL, GUARD_LEVELS, GUARD_OCCUPANCY, NORM_TOL,
};
