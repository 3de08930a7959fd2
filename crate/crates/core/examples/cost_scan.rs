//! Brute-force scan of the cost over V, the reference the loop should settle near.

use siam_dmft::dmft::{scan_cost, DmftConfig};

fn main() -> siam_dmft::Result<()> {
    let u: f64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(0.0);
    let scan = scan_cost(&DmftConfig::new(u), 0.01, 1.0, 0.005)?;
    for (v, f) in scan.points.iter().step_by(10) {
        println!("{v:>7.3} {f:>14.6}");
    }
    println!("U = {u}: minimum f = {:.6} at V = {:.3}", scan.f_min, scan.v_min);
    Ok(())
}
