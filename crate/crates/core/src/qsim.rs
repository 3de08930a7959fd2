//! Dense state-vector and density-matrix core.
//!
//! Everything here is exact linear algebra on at most a few qubits. Basis
//! ordering: qubit 0 is the most significant bit, so the ket `|q0 q1 ... q(n-1)>`
//! sits at index `sum_j q_j 2^(n-1-j)` and bit strings read left to right as
//! binary numbers.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;
pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// Tolerance used for Hermiticity checks on inputs.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Single-qubit Pauli label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn matrix(self) -> CMatrix {
        let m = match self {
            Pauli::I => [ONE, ZERO, ZERO, ONE],
            Pauli::X => [ZERO, ONE, ONE, ZERO],
            Pauli::Y => [ZERO, -I, I, ZERO],
            Pauli::Z => [ONE, ZERO, ZERO, -ONE],
        };
        CMatrix::from_row_slice(2, 2, &m)
    }

    fn flips(self) -> bool {
        matches!(self, Pauli::X | Pauli::Y)
    }

    /// Phase picked up when acting on a basis bit.
    fn phase(self, bit: bool) -> C64 {
        match (self, bit) {
            (Pauli::I, _) | (Pauli::X, _) | (Pauli::Z, false) => ONE,
            (Pauli::Z, true) => -ONE,
            (Pauli::Y, false) => I,
            (Pauli::Y, true) => -I,
        }
    }
}

/// Real-weighted tensor product of single-qubit Paulis.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliTerm {
    pub coefficient: f64,
    pub factors: Vec<Pauli>,
}

impl PauliTerm {
    pub fn new(coefficient: f64, factors: Vec<Pauli>) -> Self {
        Self {
            coefficient,
            factors,
        }
    }

    /// Builds a term on `n_qubits` from `(qubit, label)` pairs; unlisted qubits get identity.
    pub fn on(n_qubits: usize, coefficient: f64, ops: &[(usize, Pauli)]) -> Result<Self> {
        let mut factors = vec![Pauli::I; n_qubits];
        for &(q, p) in ops {
            if q >= n_qubits {
                return Err(Error::Dimension {
                    expected: n_qubits,
                    found: q + 1,
                });
            }
            factors[q] = p;
        }
        Ok(Self::new(coefficient, factors))
    }

    pub fn n_qubits(&self) -> usize {
        self.factors.len()
    }

    fn flip_mask(&self) -> usize {
        let n = self.n_qubits();
        self.factors
            .iter()
            .enumerate()
            .filter(|(_, p)| p.flips())
            .fold(0, |m, (q, _)| m | 1 << (n - 1 - q))
    }

    /// Phase of the string acting on basis index `col` (coefficient excluded).
    fn column_phase(&self, col: usize) -> C64 {
        let n = self.n_qubits();
        self.factors
            .iter()
            .enumerate()
            .fold(ONE, |acc, (q, p)| acc * p.phase(col >> (n - 1 - q) & 1 == 1))
    }

    /// Dense `2^n x 2^n` matrix with qubit 0 leftmost in the Kronecker product.
    pub fn materialize(&self, n_qubits: usize) -> Result<CMatrix> {
        if self.factors.len() != n_qubits {
            return Err(Error::Dimension {
                expected: n_qubits,
                found: self.factors.len(),
            });
        }
        let dim = 1usize << n_qubits;
        let mask = self.flip_mask();
        let mut m = CMatrix::zeros(dim, dim);
        for col in 0..dim {
            m[(col ^ mask, col)] = self.column_phase(col) * self.coefficient;
        }
        Ok(m)
    }

    /// `out += coefficient * P * input`, without materializing.
    pub fn apply_add(&self, input: &[C64], out: &mut [C64]) -> Result<()> {
        let dim = 1usize << self.n_qubits();
        if input.len() != dim || out.len() != dim {
            return Err(Error::Dimension {
                expected: dim,
                found: input.len().max(out.len()),
            });
        }
        let mask = self.flip_mask();
        for (col, &a) in input.iter().enumerate() {
            out[col ^ mask] += self.column_phase(col) * self.coefficient * a;
        }
        Ok(())
    }

    /// In-place `exp(-i theta P)` for the bare string (coefficient ignored; P^2 = 1).
    pub fn apply_exp(&self, theta: f64, amps: &mut [C64]) -> Result<()> {
        let dim = 1usize << self.n_qubits();
        if amps.len() != dim {
            return Err(Error::Dimension {
                expected: dim,
                found: amps.len(),
            });
        }
        let mask = self.flip_mask();
        let (c, s) = (theta.cos(), theta.sin());
        let src = amps.to_vec();
        for (col, &a) in src.iter().enumerate() {
            amps[col ^ mask] = c * src[col ^ mask] - I * s * self.column_phase(col) * a;
        }
        Ok(())
    }
}

/// Sum of Pauli terms on a fixed register.
#[derive(Debug, Clone, PartialEq)]
pub struct HamiltonianSum {
    pub n_qubits: usize,
    pub terms: Vec<PauliTerm>,
}

impl HamiltonianSum {
    pub fn new(n_qubits: usize) -> Self {
        Self {
            n_qubits,
            terms: Vec::new(),
        }
    }

    pub fn push(&mut self, term: PauliTerm) -> Result<()> {
        if term.n_qubits() != self.n_qubits {
            return Err(Error::Dimension {
                expected: self.n_qubits,
                found: term.n_qubits(),
            });
        }
        self.terms.push(term);
        Ok(())
    }

    pub fn materialize(&self) -> Result<CMatrix> {
        let dim = 1usize << self.n_qubits;
        let mut m = CMatrix::zeros(dim, dim);
        for t in &self.terms {
            m += t.materialize(self.n_qubits)?;
        }
        Ok(m)
    }
}

/// Anything that can be turned into a dense operator on a known register.
pub trait Operator {
    fn n_qubits(&self) -> usize;
    fn to_matrix(&self) -> Result<CMatrix>;
}

impl Operator for PauliTerm {
    fn n_qubits(&self) -> usize {
        self.factors.len()
    }
    fn to_matrix(&self) -> Result<CMatrix> {
        self.materialize(self.factors.len())
    }
}

impl Operator for HamiltonianSum {
    fn n_qubits(&self) -> usize {
        self.n_qubits
    }
    fn to_matrix(&self) -> Result<CMatrix> {
        self.materialize()
    }
}

/// Normalized pure state on `n_qubits`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumState {
    n_qubits: usize,
    amplitudes: CVector,
}

impl QuantumState {
    pub fn basis(n_qubits: usize, index: usize) -> Result<Self> {
        let dim = 1usize << n_qubits;
        if index >= dim {
            return Err(Error::LevelOutOfRange { index, dim });
        }
        let mut amplitudes = CVector::zeros(dim);
        amplitudes[index] = ONE;
        Ok(Self {
            n_qubits,
            amplitudes,
        })
    }

    /// Basis state from a bit string such as `"0101"` (qubit 0 first).
    pub fn from_bits(bits: &str) -> Result<Self> {
        let index = bits_to_index(bits)?;
        Self::basis(bits.len(), index)
    }

    /// Wraps the given amplitudes after renormalizing them.
    pub fn from_amplitudes(n_qubits: usize, amplitudes: CVector) -> Result<Self> {
        let dim = 1usize << n_qubits;
        if amplitudes.len() != dim {
            return Err(Error::Dimension {
                expected: dim,
                found: amplitudes.len(),
            });
        }
        let norm = amplitudes.norm();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::Precondition("state has zero or non-finite norm".into()));
        }
        Ok(Self {
            n_qubits,
            amplitudes: amplitudes / C64::from(norm),
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &CVector {
        &self.amplitudes
    }

    pub fn amplitude(&self, bits: &str) -> Result<C64> {
        if bits.len() != self.n_qubits {
            return Err(Error::Dimension {
                expected: self.n_qubits,
                found: bits.len(),
            });
        }
        Ok(self.amplitudes[bits_to_index(bits)?])
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.norm()
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &QuantumState) -> Result<C64> {
        self.check_dim(other.dim())?;
        Ok(self.amplitudes.dotc(&other.amplitudes))
    }

    pub fn apply(&self, unitary: &CMatrix) -> Result<QuantumState> {
        self.check_dim(unitary.ncols())?;
        Ok(QuantumState {
            n_qubits: self.n_qubits,
            amplitudes: unitary * &self.amplitudes,
        })
    }

    /// `|self> (x) |other>` with `self` on the leading qubits.
    pub fn tensor(&self, other: &QuantumState) -> QuantumState {
        QuantumState {
            n_qubits: self.n_qubits + other.n_qubits,
            amplitudes: self.amplitudes.kronecker(&other.amplitudes),
        }
    }

    /// Multiplies by a global phase so the largest-magnitude amplitude (lowest
    /// index among near-ties) is real and positive.
    pub fn fix_global_phase(&mut self) {
        let max = self.amplitudes.iter().map(|a| a.norm()).fold(0.0, f64::max);
        if let Some(pivot) = self.amplitudes.iter().find(|a| a.norm() >= max - 1e-9) {
            let phase = pivot.conj() / pivot.norm();
            self.amplitudes *= phase;
        }
    }

    pub(crate) fn from_raw(n_qubits: usize, amplitudes: CVector) -> Self {
        Self {
            n_qubits,
            amplitudes,
        }
    }

    pub(crate) fn as_mut_slice(&mut self) -> &mut [C64] {
        self.amplitudes.as_mut_slice()
    }

    fn check_dim(&self, dim: usize) -> Result<()> {
        if dim != self.dim() {
            return Err(Error::Dimension {
                expected: self.dim(),
                found: dim,
            });
        }
        Ok(())
    }
}

/// Parses a bit string (qubit 0 first) into a basis index.
pub fn bits_to_index(bits: &str) -> Result<usize> {
    bits.chars().try_fold(0usize, |acc, c| match c {
        '0' => Ok(acc << 1),
        '1' => Ok(acc << 1 | 1),
        _ => Err(Error::Precondition(format!("invalid bit string `{bits}`"))),
    })
}

/// Bit string of `index` on `n` qubits.
pub fn index_to_bits(index: usize, n: usize) -> String {
    (0..n)
        .map(|q| if index >> (n - 1 - q) & 1 == 1 { '1' } else { '0' })
        .collect()
}

/// Hermitian (possibly traceless) density or deviation matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator {
    n_qubits: usize,
    matrix: CMatrix,
}

impl DensityOperator {
    pub fn new(n_qubits: usize, matrix: CMatrix) -> Result<Self> {
        let dim = 1usize << n_qubits;
        if matrix.nrows() != dim || matrix.ncols() != dim {
            return Err(Error::Dimension {
                expected: dim,
                found: matrix.nrows(),
            });
        }
        let dev = hermitian_deviation(&matrix);
        if dev > HERMITIAN_TOL {
            return Err(Error::NotHermitian(dev));
        }
        Ok(Self { n_qubits, matrix })
    }

    pub fn from_diagonal(n_qubits: usize, diagonal: &[f64]) -> Result<Self> {
        let dim = 1usize << n_qubits;
        if diagonal.len() != dim {
            return Err(Error::Dimension {
                expected: dim,
                found: diagonal.len(),
            });
        }
        let d = CVector::from_iterator(dim, diagonal.iter().map(|&x| C64::from(x)));
        Ok(Self {
            n_qubits,
            matrix: CMatrix::from_diagonal(&d),
        })
    }

    pub fn pure(state: &QuantumState) -> Self {
        let a = state.amplitudes();
        Self {
            n_qubits: state.n_qubits(),
            matrix: a * a.adjoint(),
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn trace(&self) -> C64 {
        self.matrix.trace()
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.dim()).map(|i| self.matrix[(i, i)].re).collect()
    }

    pub fn population(&self, bits: &str) -> Result<f64> {
        let i = bits_to_index(bits)?;
        if bits.len() != self.n_qubits {
            return Err(Error::Dimension {
                expected: self.n_qubits,
                found: bits.len(),
            });
        }
        Ok(self.matrix[(i, i)].re)
    }

    pub fn max_off_diagonal(&self) -> f64 {
        let n = self.dim();
        let mut m: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    m = m.max(self.matrix[(i, j)].norm());
                }
            }
        }
        m
    }

    pub fn is_diagonal(&self, tol: f64) -> bool {
        self.max_off_diagonal() <= tol
    }

    /// `U rho U^dagger`.
    pub fn conjugate(&self, unitary: &CMatrix) -> Result<DensityOperator> {
        if unitary.nrows() != self.dim() || unitary.ncols() != self.dim() {
            return Err(Error::Dimension {
                expected: self.dim(),
                found: unitary.nrows(),
            });
        }
        let mut m = unitary * &self.matrix * unitary.adjoint();
        symmetrize(&mut m);
        Ok(Self {
            n_qubits: self.n_qubits,
            matrix: m,
        })
    }

    /// Sorted eigenvalues.
    pub fn eigenvalues(&self) -> Vec<f64> {
        eigh(&self.matrix).values
    }

    pub(crate) fn matrix_mut(&mut self) -> &mut CMatrix {
        &mut self.matrix
    }

    pub fn expectation<O: Operator>(&self, op: &O) -> Result<C64> {
        let m = op.to_matrix()?;
        if m.nrows() != self.dim() {
            return Err(Error::Dimension {
                expected: self.dim(),
                found: m.nrows(),
            });
        }
        Ok((&self.matrix * m).trace())
    }
}

fn symmetrize(m: &mut CMatrix) {
    let h = (&*m + m.adjoint()) * C64::from(0.5);
    *m = h;
}

/// `max |M - M^dagger|` entrywise.
pub fn hermitian_deviation(m: &CMatrix) -> f64 {
    (m - m.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// `max |M^dagger M - 1|` entrywise.
pub fn unitarity_deviation(m: &CMatrix) -> f64 {
    let id = CMatrix::identity(m.nrows(), m.ncols());
    (m.adjoint() * m - id)
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
}

pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// `<psi| O |psi>`.
pub fn expectation<O: Operator>(state: &QuantumState, op: &O) -> Result<C64> {
    if op.n_qubits() != state.n_qubits() {
        return Err(Error::Dimension {
            expected: state.n_qubits(),
            found: op.n_qubits(),
        });
    }
    let m = op.to_matrix()?;
    Ok(state.amplitudes().dotc(&(m * state.amplitudes())))
}

/// Eigendecomposition of a Hermitian matrix with ascending eigenvalues.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    /// Column `k` is the eigenvector for `values[k]`.
    pub vectors: CMatrix,
}

impl HermitianEigen {
    /// `exp(-i H t) |psi>` via the spectral decomposition.
    pub fn evolve(&self, t: f64, amps: &[C64]) -> CVector {
        let v = CVector::from_column_slice(amps);
        let mut coeffs = self.vectors.ad_mul(&v);
        for (c, &e) in coeffs.iter_mut().zip(&self.values) {
            *c *= C64::from_polar(1.0, -e * t);
        }
        &self.vectors * coeffs
    }

    /// `exp(-i H t)` as a dense matrix.
    pub fn propagator(&self, t: f64) -> CMatrix {
        let phases = CVector::from_iterator(
            self.values.len(),
            self.values.iter().map(|&e| C64::from_polar(1.0, -e * t)),
        );
        &self.vectors * CMatrix::from_diagonal(&phases) * self.vectors.adjoint()
    }
}

/// Hermitian eigensolver; the input is symmetrized first.
pub fn eigh(m: &CMatrix) -> HermitianEigen {
    let mut h = m.clone();
    symmetrize(&mut h);
    let eig = SymmetricEigen::new(h);
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = CMatrix::from_columns(
        &order
            .iter()
            .map(|&k| eig.eigenvectors.column(k).into_owned())
            .collect::<Vec<_>>(),
    );
    HermitianEigen { values, vectors }
}

/// Checked eigendecomposition of a Hamiltonian.
pub fn diagonalize(h: &HamiltonianSum) -> Result<HermitianEigen> {
    let m = h.materialize()?;
    let dev = hermitian_deviation(&m);
    if dev > HERMITIAN_TOL {
        return Err(Error::NotHermitian(dev));
    }
    Ok(eigh(&m))
}

/// `exp(-i H t) |psi>` by exact diagonalization.
pub fn evolve_exact(h: &HamiltonianSum, t: f64, state: &QuantumState) -> Result<QuantumState> {
    if h.n_qubits != state.n_qubits() {
        return Err(Error::Dimension {
            expected: state.n_qubits(),
            found: h.n_qubits,
        });
    }
    let eig = diagonalize(h)?;
    let out = eig.evolve(t, state.amplitudes().as_slice());
    Ok(QuantumState::from_raw(state.n_qubits(), out))
}

/// Rotation axis of a two-level (line-selective) rotation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RotationAxis {
    /// Real block `[[cos, -sin], [sin, cos]]` of half-angle.
    Y,
    /// Block `[[cos, -i sin], [-i sin, cos]]` of half-angle.
    X,
}

/// Identity on `dim` levels except a rotation by `theta` in the `{i, j}` block.
///
/// Acting on a diagonal density matrix, it moves `sin^2(theta/2)` of the
/// population of `j` into `i` and vice versa.
pub fn two_level_rotation(
    dim: usize,
    i: usize,
    j: usize,
    theta: f64,
    axis: RotationAxis,
) -> Result<CMatrix> {
    if i == j {
        return Err(Error::DegenerateTarget(i));
    }
    for index in [i, j] {
        if index >= dim {
            return Err(Error::LevelOutOfRange { index, dim });
        }
    }
    let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    let mut m = CMatrix::identity(dim, dim);
    m[(i, i)] = C64::from(c);
    m[(j, j)] = C64::from(c);
    match axis {
        RotationAxis::Y => {
            m[(i, j)] = C64::from(-s);
            m[(j, i)] = C64::from(s);
        }
        RotationAxis::X => {
            m[(i, j)] = -I * s;
            m[(j, i)] = -I * s;
        }
    }
    Ok(m)
}

/// Kronecker product of single-qubit matrices, qubit 0 first.
pub fn kron_all(factors: &[CMatrix]) -> CMatrix {
    factors
        .iter()
        .skip(1)
        .fold(factors[0].clone(), |acc, f| acc.kronecker(f))
}
