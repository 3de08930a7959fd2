//! Correlators -> real-axis and Matsubara Green's functions, checked against the pole sum.

use siam_dmft::greens::{
    default_omega_grid, green_matsubara, green_realfreq, integrate_uniform, lehmann_oracle,
    lehmann_poles, local_maxima, measure_series, spectral_density, Axis, MatsubaraGrid, TimeGrid,
};
use siam_dmft::model::SiamParams;
use siam_dmft::solver::{prepare_ground, EvolutionMode, GroundSource, ScatteringCircuit};

fn main() -> siam_dmft::Result<()> {
    let u: f64 = std::env::args().nth(1).map_or(Ok(1.0), |s| s.parse()).unwrap_or(1.0);
    let v: f64 = std::env::args().nth(2).map_or(Ok(0.125), |s| s.parse()).unwrap_or(0.125);
    let params = SiamParams::half_filled(u, v);
    let ground = prepare_ground(&params, GroundSource::Ed)?;
    let circuit = ScatteringCircuit::new(&params, EvolutionMode::Exact, ground)?;
    let series = measure_series(&circuit, TimeGrid::default())?;

    println!("U = {u}, V = {v}");
    println!("poles:");
    for p in lehmann_poles(&params)? {
        println!("  {:+.6}  weight {:.6}", p.position, p.weight);
    }

    let omegas = default_omega_grid();
    let spec = green_realfreq(&series, &omegas, 0.1)?;
    let oracle = lehmann_oracle(&params, 0.1, Axis::Real(omegas.clone()))?;
    let scale = oracle.values.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let err = spec
        .values
        .iter()
        .zip(&oracle.values)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    let a = spectral_density(&spec)?;
    let peaks: Vec<String> = local_maxima(&a).iter().map(|&i| format!("{:+.2}", omegas[i])).collect();
    println!("real axis: relative sup error {:.2e}", err / scale);
    println!("           integral of A      {:.4}", integrate_uniform(&a, 0.01));
    println!("           peaks              {}", peaks.join(" "));

    let grid = MatsubaraGrid::default();
    let gm = green_matsubara(&series, &grid, 1.0)?;
    let om = lehmann_oracle(&params, 1.0, Axis::Matsubara(grid))?;
    let err = gm
        .values
        .iter()
        .zip(&om.values)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    println!("matsubara: sup error {err:.2e}, G(i w_0) = {:.6}", gm.values[0]);
    Ok(())
}
