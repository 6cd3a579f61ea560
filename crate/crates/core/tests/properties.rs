//! Randomized invariants for the linear-algebra and observable layers.
//!
//! Run standalone with `cargo test -p chargepair-core --test properties`.

mod property_checks;

use chargepair::quantum::{von_neumann_entropy, DensityOperator, SingleQubitDensity};
use nalgebra::{DMatrix, Matrix2};
use property_checks as checks;
use proptest::prelude::*;

fn check(result: checks::Check) -> Result<(), TestCaseError> {
    result.map_err(TestCaseError::fail)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn eigensystem_reconstructs(seed in any::<u64>(), n in 1usize..24) {
        check(checks::eigensystem_reconstructs(seed, n))?;
    }

    #[test]
    fn field_then_qubit_trace_matches_brute_force(seed in any::<u64>(), cutoff in 0usize..=8) {
        check(checks::partial_traces_match_brute_force(seed, cutoff))?;
    }

    #[test]
    fn entropy_unitary_invariance_and_bounds(seed in any::<u64>(), rank in 1usize..=4) {
        check(checks::entropy_unitary_invariance(seed, rank))?;
    }

    #[test]
    fn bloch_round_trip(seed in any::<u64>(), rank in 1usize..=4) {
        check(checks::bloch_round_trip(seed, rank))?;
    }

    #[test]
    fn doe_invariant_under_local_rotations(seed in any::<u64>(), rank in 1usize..=4) {
        check(checks::doe_local_rotation_invariance(seed, rank))?;
    }

    #[test]
    fn doe_vanishes_on_product_states(seed in any::<u64>()) {
        check(checks::doe_vanishes_on_products(seed))?;
    }

    #[test]
    fn capacity_bounds(seed in any::<u64>(), rank in 1usize..=4) {
        check(checks::capacity_bounds(seed, rank))?;
    }
}

#[test]
fn single_qubit_entropy_matches_closed_form() {
    // S = h((1 + |r|)/2) for Bloch radius |r|.
    let mut rng = checks::rng(7);
    for _ in 0..50 {
        let a = DMatrix::from_fn(2, 2, |_, _| checks::gaussian_complex(&mut rng));
        let m = &a * a.adjoint();
        let m = &m / m.trace();
        let rho = SingleQubitDensity::new(Matrix2::from_iterator(m.iter().copied())).unwrap();
        let [x, y, z] = rho.bloch_vector();
        let radius = (x * x + y * y + z * z).sqrt();
        let p = (1.0 + radius) / 2.0;
        let h = if p >= 1.0 {
            0.0
        } else {
            -p * p.log2() - (1.0 - p) * (1.0 - p).log2()
        };
        assert!((von_neumann_entropy(&rho) - h).abs() < 1e-10);
        assert!((rho.purity() - (1.0 + radius * radius) / 2.0).abs() < 1e-12);
    }
}
