//! One self-consistency run with the per-iteration log, e.g. `cargo run --example dmft_loop -- 1.0`.

use siam_dmft::dmft::{dmft_iterate_with, saturation_estimate, DmftConfig};

fn main() -> siam_dmft::Result<()> {
    let u: f64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(0.0);
    let cfg = DmftConfig::new(u);
    println!("U = {u}, V0 = {}, dV = {}, beta = {}, n_max = {}", cfg.v0, cfg.delta_v, cfg.matsubara.beta, cfg.matsubara.n_max);
    println!("{:>4} {:>10} {:>16}", "k", "V", "f");
    let trace = dmft_iterate_with(&cfg, |r| {
        println!("{:>4} {:>10.6} {:>16.8}", r.k, r.v, r.f);
        Ok(())
    })?;
    let sat = saturation_estimate(&trace, 5.min(trace.iterations.len()))?;
    println!(
        "converged = {}, V = {:.4} +- {:.4} (last {})",
        trace.converged, sat.mean_v, sat.std_v, sat.window
    );
    Ok(())
}
