//! Two-site Anderson impurity model in fermionic and spin form, plus the
//! Bethe-lattice pieces of the self-consistency condition.

use crate::error::{Error, Result};
use crate::qsim::{CMatrix, HamiltonianSum, Pauli, PauliTerm, C64, I, ONE};

/// Number of qubits of the impurity + one-bath-site model.
pub const N_QUBITS: usize = 4;

/// Mode indices in Jordan-Wigner order.
pub const IMP_DOWN: usize = 0;
pub const BATH_DOWN: usize = 1;
pub const IMP_UP: usize = 2;
pub const BATH_UP: usize = 3;

/// Physical parameters `{U, mu, eps, V}` in units of `t*`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SiamParams {
    pub u: f64,
    pub mu: f64,
    pub eps: f64,
    pub v: f64,
}

impl SiamParams {
    /// Half-filled, particle-hole symmetric point: `mu = U/2`, `eps = 0`.
    pub fn half_filled(u: f64, v: f64) -> Self {
        Self {
            u,
            mu: u / 2.0,
            eps: 0.0,
            v,
        }
    }

    pub fn with_v(self, v: f64) -> Self {
        Self { v, ..self }
    }

    pub fn is_half_filled(&self) -> bool {
        (self.mu - self.u / 2.0).abs() <= 1e-12 && self.eps == 0.0
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.u >= 0.0 && self.u.is_finite()) {
            return Err(Error::Precondition(format!("U must be >= 0, got {}", self.u)));
        }
        if !(self.mu.is_finite() && self.eps.is_finite() && self.v.is_finite()) {
            return Err(Error::Precondition("non-finite model parameter".into()));
        }
        Ok(())
    }
}

/// `(U/4) Z1Z3 + (V/2)(X1X2 + Y1Y2 + X3X4 + Y3Y4)`, term order fixed.
pub fn build_spin_hamiltonian(params: &SiamParams) -> Result<HamiltonianSum> {
    params.validate()?;
    if !params.is_half_filled() {
        return Err(Error::Unsupported(format!(
            "spin Hamiltonian requires mu = U/2 and eps = 0 (got mu = {}, eps = {})",
            params.mu, params.eps
        )));
    }
    Ok(spin_hamiltonian_unchecked(params.u, params.v))
}

/// Same operator without the half-filling check.
pub(crate) fn spin_hamiltonian_unchecked(u: f64, v: f64) -> HamiltonianSum {
    let term = |c: f64, ops: &[(usize, Pauli)]| PauliTerm::on(N_QUBITS, c, ops).expect("fixed layout");
    HamiltonianSum {
        n_qubits: N_QUBITS,
        terms: vec![
            term(u / 4.0, &[(0, Pauli::Z), (2, Pauli::Z)]),
            term(v / 2.0, &[(0, Pauli::X), (1, Pauli::X)]),
            term(v / 2.0, &[(0, Pauli::Y), (1, Pauli::Y)]),
            term(v / 2.0, &[(2, Pauli::X), (3, Pauli::X)]),
            term(v / 2.0, &[(2, Pauli::Y), (3, Pauli::Y)]),
        ],
    }
}

/// Jordan-Wigner images of the four fermion modes.
#[derive(Debug, Clone)]
pub struct FermionOps {
    /// `c_a` for modes in order (1 down, 2 down, 1 up, 2 up).
    pub annihilation: Vec<CMatrix>,
    pub creation: Vec<CMatrix>,
    /// `c + c^dagger` of the impurity down mode.
    pub q1: CMatrix,
    /// `i (c - c^dagger)` of the impurity down mode.
    pub q2: CMatrix,
}

impl FermionOps {
    pub fn number(&self, mode: usize) -> CMatrix {
        &self.creation[mode] * &self.annihilation[mode]
    }
}

fn single(p: Pauli, q: usize) -> CMatrix {
    PauliTerm::on(N_QUBITS, 1.0, &[(q, p)])
        .and_then(|t| t.materialize(N_QUBITS))
        .expect("fixed layout")
}

fn jw_annihilation(mode: usize) -> CMatrix {
    // occupied = |1>, so c = |0><1| = (X + iY)/2 behind a Z string
    let mut ops: Vec<(usize, Pauli)> = (0..mode).map(|q| (q, Pauli::Z)).collect();
    ops.push((mode, Pauli::X));
    let x = PauliTerm::on(N_QUBITS, 0.5, &ops).unwrap().materialize(N_QUBITS).unwrap();
    ops.pop();
    ops.push((mode, Pauli::Y));
    let y = PauliTerm::on(N_QUBITS, 0.5, &ops).unwrap().materialize(N_QUBITS).unwrap();
    x + y * I
}

/// Fermion operators and the fermionic Hamiltonian
/// `U n1u n1d - mu (n1u + n1d) + eps (n2u + n2d) + V sum_s (c1s^+ c2s + h.c.)`.
pub fn jordan_wigner(params: &SiamParams) -> Result<(FermionOps, CMatrix)> {
    params.validate()?;
    let annihilation: Vec<CMatrix> = (0..N_QUBITS).map(jw_annihilation).collect();
    let creation: Vec<CMatrix> = annihilation.iter().map(|c| c.adjoint()).collect();
    let c = &annihilation[IMP_DOWN];
    let cd = &creation[IMP_DOWN];
    let q1 = c + cd;
    let q2 = (c - cd) * I;
    let ops = FermionOps {
        annihilation,
        creation,
        q1,
        q2,
    };

    let n = |m: usize| ops.number(m);
    let mut h = (n(IMP_UP) * n(IMP_DOWN)) * C64::from(params.u);
    h -= (n(IMP_UP) + n(IMP_DOWN)) * C64::from(params.mu);
    h += (n(BATH_UP) + n(BATH_DOWN)) * C64::from(params.eps);
    for (imp, bath) in [(IMP_DOWN, BATH_DOWN), (IMP_UP, BATH_UP)] {
        let hop = &ops.creation[imp] * &ops.annihilation[bath];
        h += (&hop + hop.adjoint()) * C64::from(params.v);
    }
    Ok((ops, h))
}

/// `sigma_x` and `-sigma_y` on the impurity down qubit, i.e. the expected `q1`, `q2`.
pub fn quadrature_reference() -> (CMatrix, CMatrix) {
    (single(Pauli::X, 0), single(Pauli::Y, 0) * -ONE)
}

/// Infinite-coordination Bethe lattice with hopping scale `t*`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BetheLattice {
    pub t_star: f64,
}

impl Default for BetheLattice {
    fn default() -> Self {
        Self { t_star: 1.0 }
    }
}

/// Semicircular density of states `sqrt(4t*^2 - x^2) / (2 pi t*^2)`.
pub fn bethe_dos(x: f64, lattice: &BetheLattice) -> f64 {
    let t = lattice.t_star;
    let r = 4.0 * t * t - x * x;
    if r <= 0.0 {
        0.0
    } else {
        r.sqrt() / (2.0 * std::f64::consts::PI * t * t)
    }
}

/// `G0^-1(i w_n) = i w_n + mu - V^2 / (i w_n - eps)` on the given positive frequencies.
pub fn bare_g0_inv(omegas: &[f64], params: &SiamParams) -> Result<Vec<C64>> {
    omegas
        .iter()
        .map(|&w| {
            let z = C64::new(-params.eps, w);
            if z.norm() == 0.0 {
                return Err(Error::Pole(w));
            }
            Ok(C64::new(params.mu, w) - params.v * params.v / z)
        })
        .collect()
}

/// Bethe-lattice Weiss field `i w_n + mu - G(i w_n)`.
pub fn weiss_inv(g: &[C64], omegas: &[f64], mu: f64) -> Result<Vec<C64>> {
    if g.len() != omegas.len() {
        return Err(Error::LengthMismatch {
            left: g.len(),
            right: omegas.len(),
        });
    }
    Ok(g.iter()
        .zip(omegas)
        .map(|(&gn, &w)| C64::new(mu, w) - gn)
        .collect())
}

/// `Sigma = G0^-1 - G^-1`.
pub fn self_energy(g0_inv: &[C64], g_inv: &[C64]) -> Result<Vec<C64>> {
    if g0_inv.len() != g_inv.len() {
        return Err(Error::LengthMismatch {
            left: g0_inv.len(),
            right: g_inv.len(),
        });
    }
    Ok(g0_inv.iter().zip(g_inv).map(|(a, b)| a - b).collect())
}
