//! Fermion modes as Pauli strings: anticommutators and the spin/fermion energy shift.

use siam_dmft::model::{build_spin_hamiltonian, jordan_wigner, quadrature_reference, SiamParams};
use siam_dmft::qsim::{eigh, max_abs_diff, CMatrix, C64};

fn main() -> siam_dmft::Result<()> {
    let params = SiamParams::half_filled(1.0, 0.5);
    let (ops, h_fermion) = jordan_wigner(&params)?;
    let id = CMatrix::identity(16, 16);

    let mut worst: f64 = 0.0;
    for a in 0..4 {
        for b in 0..4 {
            let ac = &ops.annihilation[a] * &ops.creation[b] + &ops.creation[b] * &ops.annihilation[a];
            let want = if a == b { id.clone() } else { CMatrix::zeros(16, 16) };
            worst = worst.max(max_abs_diff(&ac, &want));
        }
    }
    println!("max |{{c_a, c_b^+}} - delta_ab| = {worst:.2e}");

    let (x, minus_y) = quadrature_reference();
    println!("|q1 - X1| = {:.2e}", max_abs_diff(&ops.q1, &x));
    println!("|q2 + Y1| = {:.2e}", max_abs_diff(&ops.q2, &minus_y));

    let h_spin = build_spin_hamiltonian(&params)?.materialize()?;
    let shifted = &h_spin - &id * C64::from(params.u / 4.0);
    println!("|H_fermion - (H_spin - U/4)| = {:.2e}", max_abs_diff(&h_fermion, &shifted));

    let spin = eigh(&h_spin).values;
    let ferm = eigh(&h_fermion).values;
    println!("\n{:>12} {:>12}", "spin", "fermion+U/4");
    for (s, f) in spin.iter().zip(&ferm) {
        println!("{s:>12.6} {:>12.6}", f + params.u / 4.0);
    }
    Ok(())
}
