//! Self-consistent bath coupling for U = 0, 1, 2 and the spectral peaks at convergence.

use siam_dmft::dmft::{dmft_iterate, saturation_estimate, spectral_density_at, DmftConfig};
use siam_dmft::greens::{default_omega_grid, local_maxima};

fn main() -> siam_dmft::Result<()> {
    let omegas = default_omega_grid();
    println!("{:>4} {:>10} {:>6} {:>10} {:>10}  peaks", "U", "V", "iters", "mean(V)", "std(V)");
    for u in [0.0, 1.0, 2.0] {
        let cfg = DmftConfig::new(u);
        let trace = dmft_iterate(&cfg)?;
        let v = trace.final_v().unwrap();
        let sat = saturation_estimate(&trace, 5.min(trace.iterations.len()))?;
        let a = spectral_density_at(v, &cfg, &omegas, 0.1)?;
        let peaks: Vec<String> = local_maxima(&a)
            .iter()
            .map(|&i| format!("{:+.2}", omegas[i]))
            .collect();
        println!(
            "{u:>4.1} {v:>10.5} {:>6} {:>10.5} {:>10.5}  {}{}",
            trace.iterations.len(),
            sat.mean_v,
            sat.std_v,
            peaks.join(" "),
            if trace.converged { "" } else { "  (not converged)" }
        );
    }
    Ok(())
}
