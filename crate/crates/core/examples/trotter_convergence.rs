//! Product-formula error against exact evolution as the segment count doubles.

use siam_dmft::model::{build_spin_hamiltonian, SiamParams};
use siam_dmft::qsim::evolve_exact;
use siam_dmft::solver::{ground_state_ed, prepare_psi0, trotter_evolve};

fn main() -> siam_dmft::Result<()> {
    let params = SiamParams::half_filled(1.0, 0.5);
    let h = build_spin_hamiltonian(&params)?;
    let (_, ground) = ground_state_ed(&h)?;
    let psi = prepare_psi0();
    for t in [0.5, 2.0, 5.0] {
        let exact = evolve_exact(&h, t, &psi)?;
        print!("t = {t:>4}:");
        for n in [1, 2, 4, 8, 16, 32] {
            let approx = trotter_evolve(&params, t, n, &psi)?;
            print!("  n={n:<2} {:.2e}", (approx.amplitudes() - exact.amplitudes()).norm());
        }
        println!();
    }
    let stay = trotter_evolve(&params, 3.0, 16, &ground)?;
    println!("ground-state return probability after t = 3, n = 16: {:.8}", ground.inner(&stay)?.norm_sqr());
    Ok(())
}
