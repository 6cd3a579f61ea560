//! Cross-checks between the full-space and blockwise propagators.

use approx::assert_abs_diff_eq;
use chargepair::dynamics::{
    auto_cutoff, block_spectrum, evolve_blockwise, evolve_full, excitation_operator,
    initial_joint_state, BlockPropagator, FullPropagator, JointState, Level, ModelParams,
};
use chargepair::quantum::{partial_trace_field, partial_trace_qubit, Qubit, QubitPairDensity};
use chargepair::C64;

fn c(x: f64) -> C64 {
    C64::new(x, 0.0)
}

fn coherent(nbar: f64) -> C64 {
    c(nbar.sqrt())
}

#[test]
fn partial_trace_of_product_state() {
    let psi = JointState::basis(3, Level::Excited, Level::Excited, 0).unwrap();
    let rho = partial_trace_field(&psi).unwrap();
    let want = QubitPairDensity::pure([c(1.0), c(0.0), c(0.0), c(0.0)]).unwrap();
    assert_eq!(rho, want);
}

#[test]
fn partial_trace_keeps_or_kills_coherence() {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let cutoff = 3;
    let idx = |a, b, n| JointState::index(cutoff, a, b, n);
    let mut amps = nalgebra::DVector::zeros(16);
    amps[idx(Level::Excited, Level::Excited, 0)] = c(h);
    amps[idx(Level::Ground, Level::Ground, 0)] = c(h);
    let rho = partial_trace_field(&JointState::new(cutoff, amps.clone()).unwrap()).unwrap();
    assert_abs_diff_eq!(
        chargepair::quantum::DensityOperator::purity(&rho),
        1.0,
        epsilon = 1e-15
    );
    assert_abs_diff_eq!(rho.matrix()[(0, 3)].re, 0.5, epsilon = 1e-15);

    amps[idx(Level::Ground, Level::Ground, 0)] = c(0.0);
    amps[idx(Level::Ground, Level::Ground, 1)] = c(h);
    let rho = partial_trace_field(&JointState::new(cutoff, amps).unwrap()).unwrap();
    assert_abs_diff_eq!(
        chargepair::quantum::DensityOperator::purity(&rho),
        0.5,
        epsilon = 1e-15
    );
    assert_eq!(rho.matrix()[(0, 3)], c(0.0));
}

#[test]
fn overlap_at_t25_weak_coupling() {
    let nbar = 20.0;
    let cutoff = auto_cutoff(nbar);
    let params = ModelParams::resonant(0.003).unwrap();
    let psi0 = initial_joint_state(c(1.0), c(0.0), coherent(nbar), cutoff).unwrap();
    let full = evolve_full(&psi0, &params, 25.0).unwrap();
    let (block, _) =
        evolve_blockwise(c(1.0), c(0.0), coherent(nbar), &params, 25.0, cutoff).unwrap();
    assert!(full.fidelity(&block) > 1.0 - 1e-9);
}

#[test]
fn reduced_states_agree_strong_coupling() {
    let nbar = 20.0;
    let cutoff = auto_cutoff(nbar);
    let params = ModelParams::resonant(0.9).unwrap();
    let psi0 = initial_joint_state(c(1.0), c(0.0), coherent(nbar), cutoff).unwrap();
    let full = FullPropagator::new(&params, cutoff).unwrap();
    let full = full.prepare(&psi0).unwrap();
    for t in [1.0, 5.0, 10.0] {
        let (block, _) =
            evolve_blockwise(c(1.0), c(0.0), coherent(nbar), &params, t, cutoff).unwrap();
        let rho_block = partial_trace_field(&block).unwrap();
        let rho_full = partial_trace_field(&full.at(t)).unwrap();
        assert!(rho_block.frobenius_distance(&rho_full) < 1e-8);
    }
}

#[test]
fn propagators_agree_on_generic_initial_states() {
    // Complex amplitudes and a complex α exercise every block, both edges and
    // the clipped top blocks.
    let cutoff = 18;
    let params = ModelParams::resonant(0.55).unwrap();
    let psi0 = initial_joint_state(
        C64::from_polar(0.6, 0.4),
        C64::from_polar(0.8, -1.2),
        C64::from_polar(1.4, 0.7),
        cutoff,
    )
    .unwrap();
    let full = FullPropagator::new(&params, cutoff).unwrap();
    let blocks = BlockPropagator::new(&params, cutoff).unwrap();
    let (f, b) = (full.prepare(&psi0).unwrap(), blocks.prepare(&psi0).unwrap());
    for t in [0.0, 0.25, 3.0, 41.7] {
        let diff = f.at(t).amplitudes() - b.at(t).amplitudes();
        assert!(diff.norm() < 1e-10, "t = {t}: {}", diff.norm());
    }
}

#[test]
fn norm_and_excitation_conserved_both_paths() {
    let nbar = 10.0;
    let cutoff = auto_cutoff(nbar);
    let params = ModelParams::resonant(0.9).unwrap();
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let psi0 = initial_joint_state(c(h), c(h), coherent(nbar), cutoff).unwrap();
    let n0 = psi0.mean_excitation();
    let n_op = excitation_operator(cutoff);
    let full = FullPropagator::new(&params, cutoff).unwrap();
    let blocks = BlockPropagator::new(&params, cutoff).unwrap();
    let (f, b) = (full.prepare(&psi0).unwrap(), blocks.prepare(&psi0).unwrap());
    for k in 0..40 {
        let t = 1.5 * k as f64;
        for psi in [f.at(t), b.at(t)] {
            assert_abs_diff_eq!(psi.norm_sqr(), 1.0, epsilon = 1e-10);
            assert_abs_diff_eq!(psi.mean_excitation(), n0, epsilon = 1e-9);
            let via_op = psi.amplitudes().dotc(&(&n_op * psi.amplitudes())).re;
            assert_abs_diff_eq!(via_op, n0, epsilon = 1e-9);
            assert!(psi.is_cutoff_sufficient());
        }
    }
}

#[test]
fn block_eigenvalues_match_analytic_frequencies() {
    for r in [0.0, 0.003, 0.5, 0.9, 1.0] {
        for n in 0..=100 {
            let s = block_spectrum(n, r).unwrap();
            let (sm, sn) = (s.mu.sqrt(), s.nu.sqrt());
            let mut want = [-sm, -sn, sn, sm];
            want.sort_by(f64::total_cmp);
            for (got, w) in s.eigen.values.iter().zip(want) {
                assert!((got - w).abs() < 1e-9, "n = {n}, R = {r}: {got} vs {w}");
            }
        }
    }
}

#[test]
fn swap_symmetry_at_equal_coupling() {
    let nbar = 10.0;
    let cutoff = auto_cutoff(nbar);
    let params = ModelParams::resonant(1.0).unwrap();
    let a = C64::from_polar(std::f64::consts::FRAC_1_SQRT_2, 0.3);
    let psi0 = initial_joint_state(a, a, coherent(nbar), cutoff).unwrap();
    let prop = BlockPropagator::new(&params, cutoff).unwrap();
    let ev = prop.prepare(&psi0).unwrap();
    for k in 0..30 {
        let rho = partial_trace_field(&ev.at(0.9 * k as f64)).unwrap();
        let first = partial_trace_qubit(&rho, Qubit::Second);
        let second = partial_trace_qubit(&rho, Qubit::First);
        assert!(first.trace_distance(&second) < 1e-9);
    }
}

#[test]
fn second_qubit_frozen_without_coupling() {
    let nbar = 20.0;
    let cutoff = auto_cutoff(nbar);
    let params = ModelParams::resonant(0.0).unwrap();
    let psi0 = initial_joint_state(c(0.6), c(0.8), coherent(nbar), cutoff).unwrap();
    let initial = partial_trace_qubit(&partial_trace_field(&psi0).unwrap(), Qubit::First);
    let full = FullPropagator::new(&params, cutoff).unwrap();
    let blocks = BlockPropagator::new(&params, cutoff).unwrap();
    let (f, b) = (full.prepare(&psi0).unwrap(), blocks.prepare(&psi0).unwrap());
    for k in 1..25 {
        let t = 2.1 * k as f64;
        for psi in [f.at(t), b.at(t)] {
            let second = partial_trace_qubit(&partial_trace_field(&psi).unwrap(), Qubit::First);
            assert!(second.trace_distance(&initial) < 1e-9);
        }
    }
}

#[test]
fn vacuum_field_single_block() {
    // |ee,0⟩ at α = 0 lives in the n = 0 block; compare with a hand-rolled
    // 4×4 matrix exponential by Taylor series.
    let r = 0.4;
    let params = ModelParams::resonant(r).unwrap();
    let t = 1.3;
    let (psi, coeffs) = evolve_blockwise(c(1.0), c(0.0), c(0.0), &params, t, 2).unwrap();
    let g = 1.0;
    let b = 2f64.sqrt();
    let m = nalgebra::Matrix4::new(
        0.0,
        r * g,
        g,
        0.0, //
        r * g,
        0.0,
        0.0,
        b, //
        g,
        0.0,
        0.0,
        r * b, //
        0.0,
        b,
        r * b,
        0.0,
    )
    .map(c);
    let step = m * C64::new(0.0, -t);
    let mut term = nalgebra::Matrix4::<C64>::identity();
    let mut sum = term;
    for k in 1..60 {
        term = term * step / c(k as f64);
        sum += term;
    }
    let col = sum.column(0);
    assert!((coeffs[0].a - col[0]).norm() < 1e-12);
    assert!((coeffs[0].b - col[1]).norm() < 1e-12);
    assert!((coeffs[0].c - col[2]).norm() < 1e-12);
    assert!((coeffs[0].d - col[3]).norm() < 1e-12);
    assert_abs_diff_eq!(psi.norm_sqr(), 1.0, epsilon = 1e-12);
}
