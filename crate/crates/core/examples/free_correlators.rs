//! Without interaction the measured correlator is a pure phase, O1(t) = exp(-iVt).

use num_complex::Complex64;
use siam_dmft::model::SiamParams;
use siam_dmft::solver::{prepare_psi0, prepare_psi0_gates, Correlator, EvolutionMode, ScatteringCircuit};

fn main() -> siam_dmft::Result<()> {
    let v = 0.5;
    let params = SiamParams::half_filled(0.0, v);
    let psi0 = prepare_psi0_gates();
    println!(
        "gate-built ground state vs closed form: {:.2e}",
        (psi0.amplitudes() - prepare_psi0().amplitudes()).norm()
    );
    let circuit = ScatteringCircuit::new(&params, EvolutionMode::Exact, psi0)?;
    let times: Vec<f64> = (0..=2000).map(|j| j as f64 * 0.01).collect();
    let o1 = circuit.series(Correlator::O1, &times);
    let o2 = circuit.series(Correlator::O2, &times);
    let err1 = times
        .iter()
        .zip(&o1)
        .map(|(&t, z)| (z - Complex64::from_polar(1.0, -v * t)).norm())
        .fold(0.0, f64::max);
    let max2 = o2.iter().map(|z| z.norm()).fold(0.0, f64::max);
    println!("sup |O1(t) - exp(-iVt)| on [0, 20] = {err1:.2e}");
    println!("sup |O2(t)|                       = {max2:.2e}");
    Ok(())
}
