//! Adiabatic ramp of the interaction from the U = 0 ground state.

use siam_dmft::model::SiamParams;
use siam_dmft::solver::{asp_evolve, AspSchedule};

fn main() -> siam_dmft::Result<()> {
    for u in [0.0, 1.0, 2.0] {
        let params = SiamParams::half_filled(u, 0.5);
        print!("U = {u}:");
        for (t, m) in [(2.0, 25), (4.0, 50), (8.0, 100)] {
            let (_, f) = asp_evolve(&params, &AspSchedule { total_time: t, steps: m })?;
            let min = f.iter().cloned().fold(1.0, f64::min);
            print!("  T={t}: final {:.6} (min {:.6})", f.last().unwrap(), min);
        }
        println!();
    }
    Ok(())
}
