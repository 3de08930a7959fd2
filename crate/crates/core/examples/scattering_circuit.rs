//! Ancilla readout of the two correlators compared with the plain overlap.

use siam_dmft::model::{build_spin_hamiltonian, SiamParams};
use siam_dmft::solver::{ground_state_ed, Correlator, EvolutionMode, ScatteringCircuit};

fn main() -> siam_dmft::Result<()> {
    let params = SiamParams::half_filled(1.0, 0.35);
    let (e0, ground) = ground_state_ed(&build_spin_hamiltonian(&params)?)?;
    println!("U = {}, V = {}, E0 = {e0:.6}", params.u, params.v);

    for mode in [EvolutionMode::Exact, EvolutionMode::Trotter(4)] {
        let circuit = ScatteringCircuit::new(&params, mode, ground.clone())?;
        println!("\n{mode:?}");
        println!("{:>5} {:>24} {:>24} {:>9}", "t", "O1 (circuit)", "O2 (circuit)", "|diff|");
        for t in [0.0, 0.5, 1.0, 2.0, 5.0, 10.0] {
            let o1 = circuit.measure(Correlator::O1, t);
            let o2 = circuit.measure(Correlator::O2, t);
            let diff = (o1 - circuit.direct(Correlator::O1, t)).norm()
                + (o2 - circuit.direct(Correlator::O2, t)).norm();
            println!(
                "{t:>5.1} {:>11.7} {:>+11.7}i {:>11.7} {:>+11.7}i {diff:>9.1e}",
                o1.re, o1.im, o2.re, o2.im
            );
        }
    }
    Ok(())
}
