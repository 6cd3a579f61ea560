//! Seeded randomized invariant checks, shared by the proptest suite and the
//! acceptance harness. Each check returns `Err` with a description on failure.

#![allow(dead_code, clippy::neg_cmp_op_on_partial_ord)]

use chargepair::dynamics::{JointState, Level};
use chargepair::observables::{
    bloch_decomposition, channel_capacity, degree_of_entanglement, entangled_dyadic,
};
use chargepair::quantum::{
    hermitian_eigensystem, partial_trace_field, partial_trace_qubit, von_neumann_entropy,
    ComplexMatrix, Qubit, QubitPairDensity,
};
use chargepair::C64;
use nalgebra::{DMatrix, DVector, Matrix2, Matrix3, Matrix4};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Check = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian_complex(rng: &mut ChaCha8Rng) -> C64 {
    // Box-Muller
    let (u, v): (f64, f64) = (rng.random_range(1e-12..1.0), rng.random());
    C64::from_polar((-2.0 * u.ln()).sqrt(), std::f64::consts::TAU * v)
}

pub fn random_hermitian(rng: &mut ChaCha8Rng, n: usize) -> ComplexMatrix {
    let a = DMatrix::from_fn(n, n, |_, _| gaussian_complex(rng));
    (&a + a.adjoint()) * C64::new(0.5, 0.0)
}

pub fn random_unitary(rng: &mut ChaCha8Rng, n: usize) -> ComplexMatrix {
    DMatrix::from_fn(n, n, |_, _| gaussian_complex(rng))
        .qr()
        .q()
}

pub fn random_ket(rng: &mut ChaCha8Rng, n: usize) -> DVector<C64> {
    let v = DVector::from_fn(n, |_, _| gaussian_complex(rng));
    &v / C64::new(v.norm(), 0.0)
}

/// `A A† / tr` with `A` a 4×rank Gaussian matrix.
pub fn random_pair_density(rng: &mut ChaCha8Rng, rank: usize) -> QubitPairDensity {
    let a = DMatrix::from_fn(4, rank, |_, _| gaussian_complex(rng));
    let m = &a * a.adjoint();
    let m = &m / m.trace();
    QubitPairDensity::new(Matrix4::from_iterator(m.iter().copied())).unwrap()
}

pub fn random_rotation(rng: &mut ChaCha8Rng) -> Matrix3<f64> {
    let a = Matrix3::from_fn(|_, _| gaussian_complex(rng).re);
    let mut q = a.qr().q();
    if q.determinant() < 0.0 {
        q.column_mut(0).neg_mut();
    }
    q
}

pub fn eigensystem_reconstructs(seed: u64, n: usize) -> Check {
    let mut rng = rng(seed);
    let m = random_hermitian(&mut rng, n);
    let eig = hermitian_eigensystem(&m).map_err(|e| e.to_string())?;
    let scale = m.norm();
    let err = (eig.reconstruct() - &m).norm();
    ensure!(
        err <= 1e-9 * scale,
        "reconstruction error {err:e} (scale {scale})"
    );
    let gram = eig.vectors.adjoint() * &eig.vectors;
    let err = (gram - ComplexMatrix::identity(n, n)).norm();
    ensure!(err < 1e-10, "eigenvectors not unitary: {err:e}");
    for k in 0..n {
        let v = eig.vectors.column(k);
        let resid = (&m * v - v * C64::new(eig.values[k], 0.0)).norm();
        ensure!(resid <= 1e-9 * scale, "eigenpair {k} residual {resid:e}");
    }
    ensure!(
        eig.values.windows(2).all(|w| w[0] <= w[1]),
        "eigenvalues not ascending"
    );
    Ok(())
}

/// Field trace followed by a qubit trace equals direct index summation.
pub fn partial_traces_match_brute_force(seed: u64, cutoff: usize) -> Check {
    let mut rng = rng(seed);
    let amps = random_ket(&mut rng, 4 * (cutoff + 1));
    let psi = JointState::new(cutoff, amps.clone()).map_err(|e| e.to_string())?;
    let rho = partial_trace_field(&psi).map_err(|e| e.to_string())?;
    for (which, keep_first) in [(Qubit::Second, true), (Qubit::First, false)] {
        let reduced = partial_trace_qubit(&rho, which);
        let mut brute = Matrix2::<C64>::zeros();
        for i in Level::BOTH {
            for j in Level::BOTH {
                for other in Level::BOTH {
                    for n in 0..=cutoff {
                        let (ai, aj) = if keep_first {
                            (
                                JointState::index(cutoff, i, other, n),
                                JointState::index(cutoff, j, other, n),
                            )
                        } else {
                            (
                                JointState::index(cutoff, other, i, n),
                                JointState::index(cutoff, other, j, n),
                            )
                        };
                        brute[(i as usize, j as usize)] += amps[ai] * amps[aj].conj();
                    }
                }
            }
        }
        let err = (reduced.matrix() - brute).norm();
        ensure!(err < 1e-12, "{which:?} trace differs by {err:e}");
    }
    Ok(())
}

pub fn entropy_unitary_invariance(seed: u64, rank: usize) -> Check {
    let mut rng = rng(seed);
    let rho = random_pair_density(&mut rng, rank);
    let u = random_unitary(&mut rng, 4);
    let m = DMatrix::from_iterator(4, 4, rho.matrix().iter().copied());
    let rotated = &u * m * u.adjoint();
    let rotated = QubitPairDensity::new(Matrix4::from_iterator(rotated.iter().copied()))
        .map_err(|e| e.to_string())?;
    let s = von_neumann_entropy(&rho);
    let diff = (s - von_neumann_entropy(&rotated)).abs();
    ensure!(diff < 1e-10, "entropy changed by {diff:e} under a unitary");
    ensure!(
        (0.0..=2.0 + 1e-10).contains(&s),
        "S(rho_AB) = {s} out of range"
    );
    let sb = von_neumann_entropy(&partial_trace_qubit(&rho, Qubit::First));
    ensure!(
        (0.0..=1.0 + 1e-10).contains(&sb),
        "S(rho_B) = {sb} out of range"
    );
    Ok(())
}

pub fn bloch_round_trip(seed: u64, rank: usize) -> Check {
    let mut rng = rng(seed);
    let rho = random_pair_density(&mut rng, rank);
    let d = bloch_decomposition(&rho);
    let err = (d.reconstruct() - rho.matrix()).norm();
    ensure!(err < 1e-10, "reconstruction error {err:e}");
    ensure!(
        d.s.norm() <= 1.0 + 1e-9 && d.t.norm() <= 1.0 + 1e-9,
        "Bloch vector too long"
    );
    Ok(())
}

pub fn doe_local_rotation_invariance(seed: u64, rank: usize) -> Check {
    let mut rng = rng(seed);
    let d = bloch_decomposition(&random_pair_density(&mut rng, rank));
    let (oa, ob) = (random_rotation(&mut rng), random_rotation(&mut rng));
    let before = degree_of_entanglement(&entangled_dyadic(&d));
    let after = degree_of_entanglement(&entangled_dyadic(&d.rotated(&oa, &ob)));
    ensure!(before >= 0.0, "negative DoE {before}");
    ensure!(
        (before - after).abs() < 1e-10,
        "DoE {before} -> {after} under local rotation"
    );
    Ok(())
}

pub fn doe_vanishes_on_products(seed: u64) -> Check {
    let mut rng = rng(seed);
    let (x, y) = (random_ket(&mut rng, 2), random_ket(&mut rng, 2));
    let rho = QubitPairDensity::pure([x[0] * y[0], x[0] * y[1], x[1] * y[0], x[1] * y[1]])
        .map_err(|e| e.to_string())?;
    let doe = degree_of_entanglement(&entangled_dyadic(&bloch_decomposition(&rho)));
    ensure!(doe.abs() < 1e-10, "product state DoE {doe:e}");
    Ok(())
}

pub fn capacity_bounds(seed: u64, rank: usize) -> Check {
    let mut rng = rng(seed);
    let rho = random_pair_density(&mut rng, rank);
    let cap = channel_capacity(&rho);
    ensure!(
        (-1e-10..=2.0 + 1e-10).contains(&cap),
        "capacity {cap} out of [0, 2]"
    );
    if rank == 1 {
        let sb = von_neumann_entropy(&partial_trace_qubit(&rho, Qubit::First));
        ensure!(
            (cap - 1.0 - sb).abs() < 1e-10,
            "pure state capacity {cap} != 1 + {sb}"
        );
    }
    Ok(())
}

/// Run every check over `cases` deterministic seeds; returns the first failure.
pub fn run_all(cases: u64) -> Check {
    for seed in 0..cases {
        let n = 1 + (seed as usize % 24);
        let rank = 1 + (seed as usize % 4);
        let cutoff = seed as usize % 9;
        let tag = |e: String| format!("seed {seed}: {e}");
        eigensystem_reconstructs(seed, n).map_err(tag)?;
        partial_traces_match_brute_force(seed, cutoff).map_err(tag)?;
        entropy_unitary_invariance(seed, rank).map_err(tag)?;
        bloch_round_trip(seed, rank).map_err(tag)?;
        doe_local_rotation_invariance(seed, rank).map_err(tag)?;
        doe_vanishes_on_products(seed).map_err(tag)?;
        capacity_bounds(seed, rank).map_err(tag)?;
    }
    Ok(())
}
