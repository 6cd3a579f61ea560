//! Dense complex linear algebra for the qubit-pair problem.
//!
//! Basis order is fixed everywhere: per qubit `|e⟩` has index 0 and `|g⟩`
//! index 1, so `σ_z = diag(1, -1)`. Two-qubit index is `q1 * 2 + q2`, giving
//! `(|ee⟩, |eg⟩, |ge⟩, |gg⟩)`.

use nalgebra::{DMatrix, Matrix2, Matrix4, SymmetricEigen};

use crate::dynamics::JointState;
use crate::{Error, Result, C64};

pub type ComplexMatrix = DMatrix<C64>;

/// Symmetry tolerance accepted by [`hermitian_eigensystem`].
pub const HERMITIAN_TOL: f64 = 1e-10;
/// Eigenvalues below this weight contribute nothing to an entropy.
pub const ENTROPY_CLAMP: f64 = 1e-12;

const DENSITY_TOL: f64 = 1e-10;
const POSITIVITY_SLACK: f64 = 1e-9;

/// Eigenvalues in ascending order with the matching orthonormal eigenvectors
/// stored as columns.
#[derive(Debug, Clone)]
pub struct Eigensystem {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl Eigensystem {
    pub fn dim(&self) -> usize {
        self.values.len()
    }

    /// `V · diag(λ) · V†`
    pub fn reconstruct(&self) -> ComplexMatrix {
        let mut scaled = self.vectors.clone();
        for (k, &lambda) in self.values.iter().enumerate() {
            scaled.column_mut(k).scale_mut(lambda);
        }
        scaled * self.vectors.adjoint()
    }
}

/// Largest entrywise deviation `|M_ij - conj(M_ji)|`.
pub fn hermitian_defect(m: &ComplexMatrix) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0_f64;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

/// Diagonalize a Hermitian matrix.
///
/// Backed by nalgebra's Householder tridiagonalization + implicit QR. The
/// iteration budget scales with the dimension; exhausting it reports
/// [`Error::NoConvergence`] rather than returning a partial result.
pub fn hermitian_eigensystem(m: &ComplexMatrix) -> Result<Eigensystem> {
    if m.nrows() != m.ncols() {
        return Err(Error::DimensionMismatch {
            expected: m.nrows(),
            found: m.ncols(),
        });
    }
    let n = m.nrows();
    if n == 0 {
        return Ok(Eigensystem {
            values: Vec::new(),
            vectors: ComplexMatrix::zeros(0, 0),
        });
    }
    let scale = m.iter().fold(1.0_f64, |acc, z| acc.max(z.norm()));
    let asymmetry = hermitian_defect(m);
    if asymmetry > HERMITIAN_TOL * scale {
        return Err(Error::NotHermitian { asymmetry });
    }

    let budget = 200 * n + 1000;
    let eig = SymmetricEigen::try_new(m.clone(), f64::EPSILON, budget)
        .ok_or(Error::NoConvergence { budget })?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |i, j| eig.eigenvectors[(i, order[j])]);
    Ok(Eigensystem { values, vectors })
}

/// Pauli matrix `σ_k` for `k ∈ {0, 1, 2}` = `(x, y, z)` in the `(|e⟩, |g⟩)` basis.
pub fn pauli(k: usize) -> Matrix2<C64> {
    let o = C64::new(0.0, 0.0);
    let l = C64::new(1.0, 0.0);
    let i = C64::new(0.0, 1.0);
    match k {
        0 => Matrix2::new(o, l, l, o),
        1 => Matrix2::new(o, -i, i, o),
        2 => Matrix2::new(l, o, o, -l),
        _ => panic!("pauli index {k} out of range"),
    }
}

/// Which qubit of the pair an operation refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Qubit {
    First,
    Second,
}

/// Anything with a spectrum that can be fed to [`von_neumann_entropy`].
pub trait DensityOperator {
    fn to_dmatrix(&self) -> ComplexMatrix;

    fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eigensystem(&self.to_dmatrix())
            .expect("density matrices are Hermitian")
            .values
    }

    /// `tr(ρ²)`
    fn purity(&self) -> f64 {
        let m = self.to_dmatrix();
        m.iter().map(|z| z.norm_sqr()).sum()
    }
}

fn check_density(m: &ComplexMatrix) -> Result<()> {
    let asym = hermitian_defect(m);
    if asym > DENSITY_TOL {
        return Err(Error::InvalidDensity(format!("asymmetry {asym:.3e}")));
    }
    let tr = m.trace();
    if (tr.re - 1.0).abs() > DENSITY_TOL || tr.im.abs() > DENSITY_TOL {
        return Err(Error::InvalidDensity(format!("trace {tr}")));
    }
    let min = hermitian_eigensystem(m)?.values[0];
    if min < -POSITIVITY_SLACK {
        return Err(Error::InvalidDensity(format!(
            "negative eigenvalue {min:.3e}"
        )));
    }
    Ok(())
}

/// Reduced state `ρ_c` of the qubit pair over `(|ee⟩, |eg⟩, |ge⟩, |gg⟩)`.
#[derive(Debug, Clone, PartialEq)]
pub struct QubitPairDensity(Matrix4<C64>);

impl QubitPairDensity {
    pub fn new(m: Matrix4<C64>) -> Result<Self> {
        check_density(&DMatrix::from_iterator(4, 4, m.iter().copied()))?;
        Ok(Self(m))
    }

    /// Projector onto a (normalized) pure two-qubit state.
    pub fn pure(amplitudes: [C64; 4]) -> Result<Self> {
        let v = nalgebra::Vector4::from(amplitudes);
        Self::new(v * v.adjoint())
    }

    pub fn maximally_mixed() -> Self {
        Self(Matrix4::identity() * C64::new(0.25, 0.0))
    }

    pub fn matrix(&self) -> &Matrix4<C64> {
        &self.0
    }

    pub fn frobenius_distance(&self, other: &Self) -> f64 {
        (self.0 - other.0).norm()
    }
}

impl DensityOperator for QubitPairDensity {
    fn to_dmatrix(&self) -> ComplexMatrix {
        DMatrix::from_iterator(4, 4, self.0.iter().copied())
    }
}

/// Single-qubit state over `(|e⟩, |g⟩)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SingleQubitDensity(Matrix2<C64>);

impl SingleQubitDensity {
    pub fn new(m: Matrix2<C64>) -> Result<Self> {
        check_density(&DMatrix::from_iterator(2, 2, m.iter().copied()))?;
        Ok(Self(m))
    }

    pub fn matrix(&self) -> &Matrix2<C64> {
        &self.0
    }

    /// Half the trace norm of the difference.
    pub fn trace_distance(&self, other: &Self) -> f64 {
        let diff = DMatrix::from_iterator(2, 2, (self.0 - other.0).iter().copied());
        let eig = hermitian_eigensystem(&diff).expect("difference of Hermitian matrices");
        0.5 * eig.values.iter().map(|v| v.abs()).sum::<f64>()
    }

    /// Bloch vector `(⟨σ_x⟩, ⟨σ_y⟩, ⟨σ_z⟩)`.
    pub fn bloch_vector(&self) -> [f64; 3] {
        [0, 1, 2].map(|k| (pauli(k) * self.0).trace().re)
    }
}

impl DensityOperator for SingleQubitDensity {
    fn to_dmatrix(&self) -> ComplexMatrix {
        DMatrix::from_iterator(2, 2, self.0.iter().copied())
    }
}

/// Trace out the cavity field: `(ρ_c)_{qq'} = Σ_n ψ[q,n] conj(ψ[q',n])`.
pub fn partial_trace_field(psi: &JointState) -> Result<QubitPairDensity> {
    let levels = psi.cutoff() + 1;
    let amps = psi.amplitudes();
    if amps.len() != 4 * levels {
        return Err(Error::DimensionMismatch {
            expected: 4 * levels,
            found: amps.len(),
        });
    }
    let mut rho = Matrix4::<C64>::zeros();
    for q in 0..4 {
        let row = amps.rows(q * levels, levels);
        for qp in q..4 {
            let col = amps.rows(qp * levels, levels);
            let z: C64 = row.iter().zip(col.iter()).map(|(x, y)| x * y.conj()).sum();
            rho[(q, qp)] = z;
            rho[(qp, q)] = z.conj();
        }
    }
    QubitPairDensity::new(rho)
}

/// Trace out `which` and return the state of the remaining qubit.
pub fn partial_trace_qubit(rho: &QubitPairDensity, which: Qubit) -> SingleQubitDensity {
    let m = rho.matrix();
    let mut out = Matrix2::<C64>::zeros();
    for i in 0..2 {
        for j in 0..2 {
            out[(i, j)] = (0..2)
                .map(|k| match which {
                    Qubit::First => m[(k * 2 + i, k * 2 + j)],
                    Qubit::Second => m[(i * 2 + k, j * 2 + k)],
                })
                .sum();
        }
    }
    SingleQubitDensity(out)
}

/// Entropy in bits, `-Σ p log2 p`, skipping weights below [`ENTROPY_CLAMP`].
pub fn von_neumann_entropy<D: DensityOperator + ?Sized>(rho: &D) -> f64 {
    let s: f64 = rho
        .eigenvalues()
        .into_iter()
        .filter(|&p| p >= ENTROPY_CLAMP)
        .map(|p| -p * p.log2())
        .sum();
    s.max(0.0)
}
