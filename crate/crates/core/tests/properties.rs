use proptest::prelude::*;
use siam_dmft::greens::lehmann_poles;
use siam_dmft::model::{build_spin_hamiltonian, jordan_wigner, SiamParams};
use siam_dmft::pps::{
    complement_pairs, gradient_dephase, run_pps_sequence, sp1_deplete, thermal_deviation, SpinLayout,
    Sp2Variant,
};
use siam_dmft::qsim::{
    eigh, expectation, hermitian_deviation, max_abs_diff, two_level_rotation, unitarity_deviation,
    CMatrix, CVector, DensityOperator, HamiltonianSum, Pauli, PauliTerm, QuantumState,
    RotationAxis, C64, ONE,
};
use siam_dmft::solver::{
    ground_state_ed, trotter_evolve, Correlator, EvolutionMode, Propagator, ScatteringCircuit,
};

fn pauli() -> impl Strategy<Value = Pauli> {
    prop_oneof![Just(Pauli::I), Just(Pauli::X), Just(Pauli::Y), Just(Pauli::Z)]
}

fn params() -> impl Strategy<Value = (f64, f64)> {
    (0.0..2.0f64, 0.05..1.0f64)
}

fn state(n: usize) -> impl Strategy<Value = QuantumState> {
    prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 1 << n)
        .prop_filter("nonzero", |v| v.iter().map(|(a, b)| a * a + b * b).sum::<f64>() > 1e-3)
        .prop_map(move |v| {
            let amps = CVector::from_iterator(v.len(), v.into_iter().map(|(a, b)| C64::new(a, b)));
            QuantumState::from_amplitudes(n, amps).unwrap()
        })
}

fn hamiltonian(n: usize) -> impl Strategy<Value = HamiltonianSum> {
    prop::collection::vec((-1.0..1.0f64, prop::collection::vec(pauli(), n)), 1..6).prop_map(
        move |terms| {
            let mut h = HamiltonianSum::new(n);
            for (c, f) in terms {
                h.push(PauliTerm::new(c, f)).unwrap();
            }
            h
        },
    )
}

fn hermitian(dim: usize) -> impl Strategy<Value = CMatrix> {
    prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), dim * dim).prop_map(move |v| {
        let m = CMatrix::from_iterator(dim, dim, v.into_iter().map(|(a, b)| C64::new(a, b)));
        (&m + m.adjoint()) * C64::from(0.5)
    })
}

fn anticommutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a * b + b * a
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn pauli_string_squares_to_scaled_identity(
        c in -3.0..3.0f64,
        factors in prop::collection::vec(pauli(), 1..6),
    ) {
        let n = factors.len();
        let m = PauliTerm::new(c, factors).materialize(n).unwrap();
        let target = CMatrix::identity(1 << n, 1 << n) * C64::from(c * c);
        prop_assert!(max_abs_diff(&(&m * &m), &target) < 1e-12);
        let nonzero = m.iter().filter(|z| z.norm() > 0.0).count();
        prop_assert_eq!(nonzero, if c == 0.0 { 0 } else { 1 << n });
    }

    #[test]
    fn evolution_composes(h in hamiltonian(3), psi in state(3), t in -3.0..3.0f64, s in -3.0..3.0f64) {
        let eig = eigh(&h.materialize().unwrap());
        let once = eig.evolve(t + s, psi.amplitudes().as_slice());
        let step = eig.evolve(s, psi.amplitudes().as_slice());
        let twice = eig.evolve(t, step.as_slice());
        prop_assert!((once - twice).camax() < 1e-10);
        let u = eig.propagator(t);
        prop_assert!(unitarity_deviation(&u) < 1e-10);
    }

    #[test]
    fn expectation_is_linear(
        a in hamiltonian(2),
        b in hamiltonian(2),
        x in -2.0..2.0f64,
        y in -2.0..2.0f64,
        psi in state(2),
    ) {
        let mut sum = HamiltonianSum::new(2);
        for t in &a.terms {
            sum.push(PauliTerm::new(x * t.coefficient, t.factors.clone())).unwrap();
        }
        for t in &b.terms {
            sum.push(PauliTerm::new(y * t.coefficient, t.factors.clone())).unwrap();
        }
        let lhs = expectation(&psi, &sum).unwrap();
        let rhs = expectation(&psi, &a).unwrap() * x + expectation(&psi, &b).unwrap() * y;
        prop_assert!((lhs - rhs).norm() < 1e-10);
        prop_assert!(lhs.im.abs() < 1e-10);
    }

    #[test]
    fn two_level_rotations_are_unitary(
        n in 1usize..6,
        i in 0usize..32,
        j in 0usize..32,
        theta in -7.0..7.0f64,
        x_axis in any::<bool>(),
    ) {
        let dim = 1 << n;
        let (i, j) = (i % dim, j % dim);
        prop_assume!(i != j);
        let axis = if x_axis { RotationAxis::X } else { RotationAxis::Y };
        let r = two_level_rotation(dim, i, j, theta, axis).unwrap();
        prop_assert!(unitarity_deviation(&r) < 1e-12);
    }

    #[test]
    fn conjugation_preserves_trace_and_spectrum(
        m in hermitian(8),
        i in 0usize..8,
        j in 0usize..8,
        theta in -7.0..7.0f64,
    ) {
        prop_assume!(i != j);
        let rho = DensityOperator::new(3, m).unwrap();
        let r = two_level_rotation(8, i, j, theta, RotationAxis::X).unwrap();
        let out = rho.conjugate(&r).unwrap();
        prop_assert!((out.trace() - rho.trace()).norm() < 1e-12);
        let (a, b) = (rho.eigenvalues(), out.eigenvalues());
        for (x, y) in a.iter().zip(&b) {
            prop_assert!((x - y).abs() < 1e-10);
        }
        prop_assert!(hermitian_deviation(out.matrix()) < 1e-12);
    }

    #[test]
    fn fermion_and_spin_spectra_coincide((u, v) in params()) {
        let p = SiamParams::half_filled(u, v);
        let (ops, hf) = jordan_wigner(&p).unwrap();
        let hs = build_spin_hamiltonian(&p).unwrap().materialize().unwrap();
        let ef = eigh(&hf).values;
        let es = eigh(&hs).values;
        for (a, b) in ef.iter().zip(&es) {
            prop_assert!((a - (b - u / 4.0)).abs() < 1e-10);
        }
        let id = CMatrix::identity(16, 16);
        for a in 0..4 {
            for b in 0..4 {
                let cc = anticommutator(&ops.annihilation[a], &ops.creation[b]);
                let expect = if a == b { id.clone() } else { CMatrix::zeros(16, 16) };
                prop_assert!(max_abs_diff(&cc, &expect) < 1e-12);
                let aa = anticommutator(&ops.annihilation[a], &ops.annihilation[b]);
                prop_assert!(aa.camax() < 1e-12);
            }
        }
    }

    #[test]
    fn greens_functions_start_at_unit_weight((u, v) in params()) {
        let p = SiamParams::half_filled(u, v);
        let (_, g) = ground_state_ed(&build_spin_hamiltonian(&p).unwrap()).unwrap();
        let circuit = ScatteringCircuit::new(&p, EvolutionMode::Exact, g).unwrap();
        let o1 = circuit.measure(Correlator::O1, 0.0);
        let o2 = circuit.measure(Correlator::O2, 0.0);
        let gp = (o1 + o2) * 0.5;
        let gh = (o1 - o2) * 0.5;
        prop_assert!((gp + gh - ONE).norm() < 1e-10);
        prop_assert!(gp.im.abs() < 1e-10 && gh.im.abs() < 1e-10);
    }

    #[test]
    fn correlator_is_hermitian_in_time((u, v) in params(), t in 0.0..10.0f64) {
        let p = SiamParams::half_filled(u, v);
        let (_, g) = ground_state_ed(&build_spin_hamiltonian(&p).unwrap()).unwrap();
        let circuit = ScatteringCircuit::new(&p, EvolutionMode::Exact, g).unwrap();
        let fwd = circuit.measure(Correlator::O1, t);
        let back = circuit.measure(Correlator::O1, -t);
        prop_assert!((back - fwd.conj()).norm() < 1e-10);
    }

    #[test]
    fn lehmann_weights_are_normalized((u, v) in params()) {
        let poles = lehmann_poles(&SiamParams::half_filled(u, v)).unwrap();
        let total: f64 = poles.iter().map(|p| p.weight).sum();
        prop_assert!((total - 1.0).abs() < 1e-10);
        for p in &poles {
            let mirror = poles.iter().any(|q| (q.position + p.position).abs() < 1e-8 && (q.weight - p.weight).abs() < 1e-8);
            prop_assert!(mirror);
        }
    }

    #[test]
    fn trotter_steps_are_unitary((u, v) in params(), t in 0.0..5.0f64, n in 1usize..9, psi in state(4)) {
        let p = SiamParams::half_filled(u, v);
        let out = trotter_evolve(&p, t, n, &psi).unwrap();
        prop_assert!((out.norm() - 1.0).abs() < 1e-12);
        let prop = Propagator::new(&p, EvolutionMode::Trotter(n)).unwrap();
        let mut amps = psi.amplitudes().as_slice().to_vec();
        prop.forward(t, &mut amps);
        prop.backward(t, &mut amps);
        let back = CVector::from_vec(amps);
        prop_assert!((back - psi.amplitudes()).camax() < 1e-12);
    }

    #[test]
    fn pps_stages_keep_zero_trace(gamma in prop::collection::vec(0.2..3.0f64, 2..6)) {
        let species: Vec<String> = (0..gamma.len()).map(|k| format!("S{k}")).collect();
        let names: Vec<&str> = species.iter().map(|s| s.as_str()).collect();
        let layout = SpinLayout::new(&names, gamma).unwrap();
        let run = run_pps_sequence(&layout, Sp2Variant::Packed).unwrap();
        for (_, rho) in run.stages() {
            prop_assert!(rho.trace().norm() < 1e-12);
        }
        let before = run.after_g1.eigenvalues();
        let after = run.after_sp2.eigenvalues();
        for (x, y) in before.iter().zip(&after) {
            prop_assert!((x - y).abs() < 1e-10);
        }
        let e0 = run.thermal.eigenvalues();
        let e1 = run.after_sp1.eigenvalues();
        for (x, y) in e0.iter().zip(&e1) {
            prop_assert!((x - y).abs() < 1e-10);
        }
    }

    #[test]
    fn odd_registers_have_no_zero_order_coherence_after_sp1(
        n in prop::sample::select(vec![3usize, 5, 7]),
        weights in prop::collection::vec(0.2..3.0f64, 7),
        homogeneous in any::<bool>(),
    ) {
        let layout = if homogeneous {
            SpinLayout::homogeneous(n)
        } else {
            let species: Vec<String> = (0..n).map(|k| format!("S{k}")).collect();
            let names: Vec<&str> = species.iter().map(|s| s.as_str()).collect();
            SpinLayout::new(&names, weights[..n].to_vec()).unwrap()
        };
        let rho = sp1_deplete(&thermal_deviation(&layout), &layout).unwrap();
        let m = rho.matrix();
        for i in 0..layout.dim() {
            for j in 0..layout.dim() {
                if i != j && layout.coherence_order(i, j).abs() < 1e-12 {
                    prop_assert!(m[(i, j)].norm() < 1e-12, "({}, {}) = {}", i, j, m[(i, j)]);
                }
            }
        }
        let filtered = gradient_dephase(&rho, &layout).unwrap();
        prop_assert!(filtered.max_off_diagonal() < 1e-12);
        prop_assert_eq!(complement_pairs(&layout).len(), layout.dim() / 2 - 1);
    }
}
