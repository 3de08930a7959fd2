//! Ground states, time evolution and the ancilla scattering circuit.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::{build_spin_hamiltonian, spin_hamiltonian_unchecked, SiamParams, N_QUBITS};
use crate::qsim::{
    eigh, kron_all, two_level_rotation, CMatrix, CVector, HermitianEigen, HamiltonianSum, Pauli,
    PauliTerm, QuantumState, RotationAxis, C64, ONE, ZERO,
};

/// Minimum spectral gap accepted above the ground level.
pub const GAP_TOL: f64 = 1e-9;

const DIM: usize = 1 << N_QUBITS;

/// Lowest eigenpair with the largest amplitude made real and positive.
pub fn ground_state_ed(h: &HamiltonianSum) -> Result<(f64, QuantumState)> {
    let eig = crate::qsim::diagonalize(h)?;
    ground_from_eigen(h.n_qubits, &eig)
}

fn ground_from_eigen(n_qubits: usize, eig: &HermitianEigen) -> Result<(f64, QuantumState)> {
    let gap = eig.values.get(1).map_or(f64::INFINITY, |e1| e1 - eig.values[0]);
    if gap <= GAP_TOL {
        return Err(Error::DegenerateGround { gap });
    }
    let mut state = QuantumState::from_amplitudes(n_qubits, eig.vectors.column(0).into_owned())?;
    state.fix_global_phase();
    Ok((eig.values[0], state))
}

/// `(|0101> - |0110> - |1001> + |1010>) / 2`, the `U = 0` ground state.
pub fn prepare_psi0() -> QuantumState {
    let mut amps = CVector::zeros(DIM);
    for (bits, sign) in [("0101", 0.5), ("0110", -0.5), ("1001", -0.5), ("1010", 0.5)] {
        amps[crate::qsim::bits_to_index(bits).unwrap()] = C64::from(sign);
    }
    QuantumState::from_amplitudes(N_QUBITS, amps).unwrap()
}

fn on_qubit(gate: &CMatrix, qubit: usize) -> CMatrix {
    let factors: Vec<CMatrix> = (0..N_QUBITS)
        .map(|q| if q == qubit { gate.clone() } else { Pauli::I.matrix() })
        .collect();
    kron_all(&factors)
}

fn cnot(control: usize, target: usize) -> CMatrix {
    let mut m = CMatrix::zeros(DIM, DIM);
    for col in 0..DIM {
        let row = if col >> (N_QUBITS - 1 - control) & 1 == 1 {
            col ^ 1 << (N_QUBITS - 1 - target)
        } else {
            col
        };
        m[(row, col)] = ONE;
    }
    m
}

/// The three gate layers taking `|0000>` to the `U = 0` ground state:
/// `exp(+i Y pi/4)` on qubits 1 and 3, CNOTs 1->2 and 3->4, then `X` on qubits 2 and 4.
pub fn psi0_gates() -> [CMatrix; 3] {
    // exp(+i Y pi/4) is the real two-level rotation by -pi/2
    let ry = two_level_rotation(2, 0, 1, -std::f64::consts::FRAC_PI_2, RotationAxis::Y).unwrap();
    let u1 = on_qubit(&ry, 0) * on_qubit(&ry, 2);
    let u2 = cnot(0, 1) * cnot(2, 3);
    let x = Pauli::X.matrix();
    let u3 = on_qubit(&x, 1) * on_qubit(&x, 3);
    [u1, u2, u3]
}

/// Builds the `U = 0` ground state by running [`psi0_gates`] on `|0000>`.
pub fn prepare_psi0_gates() -> QuantumState {
    psi0_gates()
        .iter()
        .fold(QuantumState::basis(N_QUBITS, 0).unwrap(), |s, g| s.apply(g).unwrap())
}

/// Linear ramp of the interaction term over `steps` slices of `total_time`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AspSchedule {
    pub total_time: f64,
    pub steps: usize,
}

impl Default for AspSchedule {
    fn default() -> Self {
        Self {
            total_time: 4.0,
            steps: 50,
        }
    }
}

impl AspSchedule {
    pub fn dt(&self) -> f64 {
        self.total_time / self.steps as f64
    }

    pub fn validate(&self) -> Result<()> {
        if self.steps == 0 || !(self.total_time > 0.0 && self.total_time.is_finite()) {
            return Err(Error::Precondition(format!(
                "ASP schedule needs T > 0 and M >= 1 (got T = {}, M = {})",
                self.total_time, self.steps
            )));
        }
        Ok(())
    }

    /// Ramp parameter `s_m = m / M` for `m = 1..=M`.
    pub fn ramp(&self) -> Vec<f64> {
        (1..=self.steps).map(|m| m as f64 / self.steps as f64).collect()
    }
}

/// Applies one first-order product of the term exponentials `exp(-i c_k dt P_k)`,
/// leftmost term of the sum acting last.
fn apply_product(terms: &[PauliTerm], dt: f64, amps: &mut [C64]) {
    for term in terms.iter().rev() {
        term.apply_exp(term.coefficient * dt, amps).unwrap();
    }
}

fn apply_product_adjoint(terms: &[PauliTerm], dt: f64, amps: &mut [C64]) {
    for term in terms {
        term.apply_exp(-term.coefficient * dt, amps).unwrap();
    }
}

/// Adiabatic preparation from the `U = 0` ground state.
///
/// Returns the final state and `|<gs(s_m)|psi_m>|^2` after each step.
pub fn asp_evolve(params: &SiamParams, schedule: &AspSchedule) -> Result<(QuantumState, Vec<f64>)> {
    schedule.validate()?;
    build_spin_hamiltonian(params)?;
    if params.v <= 0.0 {
        return Err(Error::Precondition(format!("ASP needs V > 0, got {}", params.v)));
    }
    let mut state = prepare_psi0();
    let mut fidelity = Vec::with_capacity(schedule.steps);
    for s in schedule.ramp() {
        let h = spin_hamiltonian_unchecked(s * params.u, params.v);
        apply_product(&h.terms, schedule.dt(), state.as_mut_slice());
        let (_, gs) = ground_state_ed(&h)?;
        fidelity.push(gs.inner(&state)?.norm_sqr());
    }
    Ok((state, fidelity))
}

/// How `exp(-iHt)` is realized.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvolutionMode {
    Exact,
    /// First-order product formula with this many segments.
    Trotter(usize),
}

/// `[exp(-i Z1Z3 th1) exp(-i X1X2 th2) exp(-i Y1Y2 th2) exp(-i X3X4 th2) exp(-i Y3Y4 th2)]^n`
/// with `th1 = U t / 4n`, `th2 = V t / 2n`.
pub fn trotter_evolve(
    params: &SiamParams,
    t: f64,
    n: usize,
    state: &QuantumState,
) -> Result<QuantumState> {
    if n < 1 {
        return Err(Error::Precondition("Trotter segment count must be >= 1".into()));
    }
    let h = build_spin_hamiltonian(params)?;
    if state.n_qubits() != N_QUBITS {
        return Err(Error::Dimension {
            expected: N_QUBITS,
            found: state.n_qubits(),
        });
    }
    let mut out = state.clone();
    let dt = t / n as f64;
    for _ in 0..n {
        apply_product(&h.terms, dt, out.as_mut_slice());
    }
    Ok(out)
}

/// `exp(-iHt)` in either mode, prepared once per Hamiltonian.
#[derive(Debug, Clone)]
pub enum Propagator {
    Exact(HermitianEigen),
    Trotter { n: usize, terms: Vec<PauliTerm> },
}

impl Propagator {
    pub fn new(params: &SiamParams, mode: EvolutionMode) -> Result<Self> {
        let h = build_spin_hamiltonian(params)?;
        match mode {
            EvolutionMode::Exact => Ok(Propagator::Exact(crate::qsim::diagonalize(&h)?)),
            EvolutionMode::Trotter(0) => {
                Err(Error::Precondition("Trotter segment count must be >= 1".into()))
            }
            EvolutionMode::Trotter(n) => Ok(Propagator::Trotter { n, terms: h.terms }),
        }
    }

    /// In place `exp(-iHt)`.
    pub fn forward(&self, t: f64, amps: &mut [C64]) {
        match self {
            Propagator::Exact(eig) => {
                let out = eig.evolve(t, amps);
                amps.copy_from_slice(out.as_slice());
            }
            Propagator::Trotter { n, terms } => {
                let dt = t / *n as f64;
                for _ in 0..*n {
                    apply_product(terms, dt, amps);
                }
            }
        }
    }

    /// In place adjoint of [`Propagator::forward`].
    pub fn backward(&self, t: f64, amps: &mut [C64]) {
        match self {
            Propagator::Exact(_) => self.forward(-t, amps),
            Propagator::Trotter { n, terms } => {
                let dt = t / *n as f64;
                for _ in 0..*n {
                    apply_product_adjoint(terms, dt, amps);
                }
            }
        }
    }
}

/// The two measured correlators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Correlator {
    /// `<Psi| e^{iHt} X1 e^{-iHt} X1 |Psi>`
    O1,
    /// `<Psi| e^{iHt} X1 e^{-iHt} (-Y1) |Psi>`
    O2,
}

impl Correlator {
    /// Operator applied first (before the forward evolution).
    fn first_operator(self) -> PauliTerm {
        match self {
            Correlator::O1 => PauliTerm::on(N_QUBITS, 1.0, &[(0, Pauli::X)]).unwrap(),
            Correlator::O2 => PauliTerm::on(N_QUBITS, -1.0, &[(0, Pauli::Y)]).unwrap(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelatorRequest {
    pub which: Correlator,
    pub t: f64,
    pub mode: EvolutionMode,
    pub params: SiamParams,
}

fn check_ground(ground: &QuantumState) -> Result<()> {
    if ground.dim() != DIM {
        return Err(Error::Dimension {
            expected: DIM,
            found: ground.dim(),
        });
    }
    Ok(())
}

fn apply_term(term: &PauliTerm, amps: &mut [C64]) {
    let mut out = vec![ZERO; amps.len()];
    term.apply_add(amps, &mut out).unwrap();
    amps.copy_from_slice(&out);
}

/// Ancilla-plus-system simulation of the scattering circuit for a fixed ground state.
///
/// The ancilla is prepended as the most significant qubit, so a gate controlled on
/// it acts only on the upper half of the 32 amplitudes.
#[derive(Debug, Clone)]
pub struct ScatteringCircuit {
    propagator: Propagator,
    ground: QuantumState,
}

impl ScatteringCircuit {
    pub fn new(params: &SiamParams, mode: EvolutionMode, ground: QuantumState) -> Result<Self> {
        check_ground(&ground)?;
        Ok(Self {
            propagator: Propagator::new(params, mode)?,
            ground,
        })
    }

    pub fn ground(&self) -> &QuantumState {
        &self.ground
    }

    /// Final five-qubit state `(|0>|Psi> + |1> U|Psi>)/sqrt2` after
    /// `U_C = u1^dagger u2' u1 u2`.
    pub fn final_state(&self, which: Correlator, t: f64) -> QuantumState {
        let plus = QuantumState::from_amplitudes(1, CVector::from_vec(vec![ONE, ONE])).unwrap();
        let mut state = plus.tensor(&self.ground);
        let sx = Correlator::O1.first_operator();
        {
            let target = &mut state.as_mut_slice()[DIM..];
            apply_term(&which.first_operator(), target);
            self.propagator.forward(t, target);
            apply_term(&sx, target);
            self.propagator.backward(t, target);
        }
        state
    }

    /// Ancilla transverse readout `<sigma_x> + i <sigma_y>`.
    pub fn measure(&self, which: Correlator, t: f64) -> C64 {
        let state = self.final_state(which, t);
        let x = PauliTerm::on(N_QUBITS + 1, 1.0, &[(0, Pauli::X)]).unwrap();
        let y = PauliTerm::on(N_QUBITS + 1, 1.0, &[(0, Pauli::Y)]).unwrap();
        let read = |p: &PauliTerm| {
            let mut out = vec![ZERO; state.dim()];
            p.apply_add(state.amplitudes().as_slice(), &mut out).unwrap();
            state
                .amplitudes()
                .iter()
                .zip(&out)
                .map(|(a, b)| a.conj() * b)
                .sum::<C64>()
                .re
        };
        C64::new(read(&x), read(&y))
    }

    /// Ancilla-free overlap `<e^{-iHt} Psi| X1 |e^{-iHt} B Psi>`.
    pub fn direct(&self, which: Correlator, t: f64) -> C64 {
        let mut bra = self.ground.amplitudes().as_slice().to_vec();
        self.propagator.forward(t, &mut bra);
        let mut ket = bra.clone();
        ket.copy_from_slice(self.ground.amplitudes().as_slice());
        apply_term(&which.first_operator(), &mut ket);
        self.propagator.forward(t, &mut ket);
        apply_term(&Correlator::O1.first_operator(), &mut ket);
        bra.iter().zip(&ket).map(|(a, b)| a.conj() * b).sum()
    }

    /// Circuit readout on every time, evaluated in parallel.
    pub fn series(&self, which: Correlator, times: &[f64]) -> Vec<C64> {
        times.par_iter().map(|&t| self.measure(which, t)).collect()
    }

    pub fn direct_series(&self, which: Correlator, times: &[f64]) -> Vec<C64> {
        times.par_iter().map(|&t| self.direct(which, t)).collect()
    }
}

/// Single correlator value through the five-qubit circuit.
pub fn scattering_correlation(req: &CorrelatorRequest, ground: &QuantumState) -> Result<C64> {
    let circuit = ScatteringCircuit::new(&req.params, req.mode, ground.clone())?;
    Ok(circuit.measure(req.which, req.t))
}

/// Same correlator as a plain four-qubit inner product.
pub fn direct_correlation(req: &CorrelatorRequest, ground: &QuantumState) -> Result<C64> {
    let circuit = ScatteringCircuit::new(&req.params, req.mode, ground.clone())?;
    Ok(circuit.direct(req.which, req.t))
}

/// Where the ground state fed to the circuit comes from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GroundSource {
    Ed,
    Asp(AspSchedule),
}

/// Ground state of the half-filled model from the chosen source.
pub fn prepare_ground(params: &SiamParams, source: GroundSource) -> Result<QuantumState> {
    match source {
        GroundSource::Ed => ground_state_ed(&build_spin_hamiltonian(params)?).map(|(_, s)| s),
        GroundSource::Asp(schedule) => asp_evolve(params, &schedule).map(|(s, _)| s),
    }
}

/// Ground energy and eigenbasis, for callers needing more than the lowest level.
pub fn spectrum(params: &SiamParams) -> Result<HermitianEigen> {
    Ok(eigh(&build_spin_hamiltonian(params)?.materialize()?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qsim::{bits_to_index, evolve_exact, expectation};
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    fn hf(u: f64, v: f64) -> SiamParams {
        SiamParams::half_filled(u, v)
    }

    #[test]
    fn ed_ground_energies() {
        let (e, s) = ground_state_ed(&build_spin_hamiltonian(&hf(0.0, 0.5)).unwrap()).unwrap();
        assert_abs_diff_eq!(e, -1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(s.inner(&prepare_psi0()).unwrap().norm(), 1.0, epsilon = 1e-10);
        let (e, _) = ground_state_ed(&build_spin_hamiltonian(&hf(1.0, 0.5)).unwrap()).unwrap();
        assert_abs_diff_eq!(e, -1.030776, epsilon = 1e-6);
    }

    #[test]
    fn ed_rejects_degenerate_ground() {
        let h = build_spin_hamiltonian(&hf(1.0, 0.0)).unwrap();
        assert!(matches!(ground_state_ed(&h), Err(Error::DegenerateGround { .. })));
    }

    #[test]
    fn ed_phase_is_fixed() {
        let (_, s) = ground_state_ed(&build_spin_hamiltonian(&hf(1.3, 0.4)).unwrap()).unwrap();
        let max = s.amplitudes().iter().map(|a| a.norm()).fold(0.0, f64::max);
        let pivot = s.amplitudes().iter().find(|a| a.norm() >= max - 1e-9).unwrap();
        assert!(pivot.im.abs() < 1e-14 && pivot.re > 0.0);
    }

    #[test]
    fn psi0_closed_form_and_gates_agree() {
        let a = prepare_psi0();
        let b = prepare_psi0_gates();
        assert!((a.amplitudes() - b.amplitudes()).norm() < 1e-12);
        assert_abs_diff_eq!(a.amplitude("0101").unwrap().re, 0.5);
        assert_abs_diff_eq!(a.amplitude("1001").unwrap().re, -0.5);
    }

    #[test]
    fn psi0_energy_is_minus_two_v() {
        let psi = prepare_psi0();
        for v in [0.25, 0.5, 1.0] {
            let h = build_spin_hamiltonian(&hf(0.0, v)).unwrap();
            assert_abs_diff_eq!(expectation(&psi, &h).unwrap().re, -2.0 * v, epsilon = 1e-12);
        }
    }

    #[test]
    fn psi0_phase_after_pi() {
        let h = build_spin_hamiltonian(&hf(0.0, 0.5)).unwrap();
        let psi = prepare_psi0();
        let out = evolve_exact(&h, PI, &psi).unwrap();
        assert!((out.amplitudes() + psi.amplitudes()).norm() < 1e-12);
    }

    #[test]
    fn asp_inert_without_interaction() {
        let (_, f) = asp_evolve(&hf(0.0, 0.5), &AspSchedule::default()).unwrap();
        assert_eq!(f.len(), 50);
        assert!(f.iter().all(|x| (x - 1.0).abs() < 1e-10));
    }

    #[test]
    fn asp_fidelity_floor_and_trend() {
        let p = hf(1.0, 0.5);
        let last = |t: f64, m: usize| {
            *asp_evolve(&p, &AspSchedule { total_time: t, steps: m })
                .unwrap()
                .1
                .last()
                .unwrap()
        };
        let f4 = last(4.0, 50);
        assert!(f4 >= 0.95);
        assert!(last(8.0, 100) > f4);
    }

    #[test]
    fn asp_rejects_bad_schedule() {
        let bad = AspSchedule {
            total_time: 4.0,
            steps: 0,
        };
        assert!(asp_evolve(&hf(1.0, 0.5), &bad).is_err());
    }

    #[test]
    fn trotter_matches_exact_without_interaction() {
        let p = hf(0.0, 0.7);
        let h = build_spin_hamiltonian(&p).unwrap();
        let psi = QuantumState::from_bits("0110").unwrap();
        for n in [1, 3] {
            for t in [0.4, 2.5] {
                let a = trotter_evolve(&p, t, n, &psi).unwrap();
                let b = evolve_exact(&h, t, &psi).unwrap();
                assert!((a.amplitudes() - b.amplitudes()).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn trotter_error_decreases() {
        let p = hf(1.0, 0.5);
        let h = build_spin_hamiltonian(&p).unwrap();
        let psi = QuantumState::from_amplitudes(
            4,
            CVector::from_iterator(16, (0..16).map(|k| C64::new(1.0 + k as f64, 0.3 * k as f64))),
        )
        .unwrap();
        let exact = evolve_exact(&h, 0.5, &psi).unwrap();
        let errs: Vec<f64> = [1, 2, 4, 8]
            .iter()
            .map(|&n| (trotter_evolve(&p, 0.5, n, &psi).unwrap().amplitudes() - exact.amplitudes()).norm())
            .collect();
        assert!(errs.windows(2).all(|w| w[1] < w[0]), "{errs:?}");
    }

    #[test]
    fn trotter_identity_and_errors() {
        let psi = prepare_psi0();
        let out = trotter_evolve(&hf(1.0, 0.5), 0.0, 3, &psi).unwrap();
        assert!((out.amplitudes() - psi.amplitudes()).norm() < 1e-15);
        assert!(trotter_evolve(&hf(1.0, 0.5), 1.0, 0, &psi).is_err());
    }

    #[test]
    fn propagator_trotter_matches_trotter_evolve() {
        let p = hf(1.2, 0.4);
        let prop = Propagator::new(&p, EvolutionMode::Trotter(3)).unwrap();
        let psi = QuantumState::from_bits("1001").unwrap();
        let mut amps = psi.amplitudes().as_slice().to_vec();
        prop.forward(1.3, &mut amps);
        let want = trotter_evolve(&p, 1.3, 3, &psi).unwrap();
        for (a, b) in amps.iter().zip(want.amplitudes().iter()) {
            assert!((a - b).norm() < 1e-14);
        }
        prop.backward(1.3, &mut amps);
        for (a, b) in amps.iter().zip(psi.amplitudes().iter()) {
            assert!((a - b).norm() < 1e-13);
        }
    }

    #[test]
    fn scattering_examples() {
        let p = hf(0.0, 0.5);
        let g = prepare_psi0();
        let req = |which, t| CorrelatorRequest {
            which,
            t,
            mode: EvolutionMode::Exact,
            params: p,
        };
        let c0 = scattering_correlation(&req(Correlator::O1, 0.0), &g).unwrap();
        assert!((c0 - ONE).norm() < 1e-12);
        let cpi = scattering_correlation(&req(Correlator::O1, PI), &g).unwrap();
        assert!((cpi - C64::new(0.0, -1.0)).norm() < 1e-10);
        for t in [0.3, 2.0, 7.5] {
            assert!(scattering_correlation(&req(Correlator::O2, t), &g).unwrap().norm() < 1e-10);
        }
    }

    #[test]
    fn scattering_matches_direct() {
        let p = hf(1.4, 0.3);
        let (_, g) = ground_state_ed(&build_spin_hamiltonian(&p).unwrap()).unwrap();
        for mode in [EvolutionMode::Exact, EvolutionMode::Trotter(2)] {
            let c = ScatteringCircuit::new(&p, mode, g.clone()).unwrap();
            for which in [Correlator::O1, Correlator::O2] {
                for t in [0.0, 1.1, 6.0] {
                    assert!((c.measure(which, t) - c.direct(which, t)).norm() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn scattering_rejects_wrong_dimension() {
        let req = CorrelatorRequest {
            which: Correlator::O1,
            t: 0.0,
            mode: EvolutionMode::Exact,
            params: hf(1.0, 0.5),
        };
        let small = QuantumState::basis(3, 0).unwrap();
        assert!(matches!(
            scattering_correlation(&req, &small),
            Err(Error::Dimension { .. })
        ));
    }

    #[test]
    fn basis_index_sanity() {
        assert_eq!(bits_to_index("1010").unwrap(), 10);
    }
}
