//! Time-domain correlators to Green's functions on the real and Matsubara axes.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::{jordan_wigner, SiamParams, IMP_DOWN};
use crate::qsim::C64;
use crate::solver::{spectrum, Correlator, ScatteringCircuit, GAP_TOL};

/// Uniform time grid `t_start, t_start + dt, ..., t_max`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    pub t_start: f64,
    pub dt: f64,
    pub t_max: f64,
}

impl Default for TimeGrid {
    fn default() -> Self {
        Self {
            t_start: 0.0,
            dt: 0.02,
            t_max: 200.0,
        }
    }
}

impl TimeGrid {
    pub fn validate(&self) -> Result<()> {
        if !(self.dt > 0.0) || !(self.t_max > self.t_start) || !self.t_max.is_finite() {
            return Err(Error::Precondition(format!(
                "time grid needs dt > 0 and t_max > t_start (got dt = {}, [{}, {}])",
                self.dt, self.t_start, self.t_max
            )));
        }
        Ok(())
    }

    /// Number of intervals; `t_max` is rounded to the nearest grid point.
    pub fn intervals(&self) -> usize {
        ((self.t_max - self.t_start) / self.dt).round() as usize
    }

    pub fn len(&self) -> usize {
        self.intervals() + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn times(&self) -> Vec<f64> {
        (0..self.len())
            .map(|j| self.t_start + j as f64 * self.dt)
            .collect()
    }

    /// Same span with half the step.
    pub fn refined(&self) -> TimeGrid {
        TimeGrid {
            dt: self.dt / 2.0,
            ..*self
        }
    }

    fn trapezoid_weight(&self, j: usize) -> f64 {
        if j == 0 || j == self.intervals() {
            0.5 * self.dt
        } else {
            self.dt
        }
    }
}

/// Particle and hole Green's functions sampled on a time grid.
#[derive(Debug, Clone, PartialEq)]
pub struct GreensSeries {
    pub grid: TimeGrid,
    pub gp: Vec<C64>,
    pub gh: Vec<C64>,
}

impl GreensSeries {
    pub fn zeros(grid: TimeGrid) -> Self {
        let n = grid.len();
        Self {
            grid,
            gp: vec![C64::from(0.0); n],
            gh: vec![C64::from(0.0); n],
        }
    }

    /// `G^p(t) + conj(G^h(t))`, the combination both transforms integrate.
    fn kernel_input(&self) -> Vec<C64> {
        self.gp
            .iter()
            .zip(&self.gh)
            .map(|(p, h)| p + h.conj())
            .collect()
    }
}

/// `G^p = (O1 + O2)/2`, `G^h = (O1 - O2)/2`.
pub fn greens_from_correlators(grid: TimeGrid, o1: &[C64], o2: &[C64]) -> Result<GreensSeries> {
    if o1.len() != o2.len() {
        return Err(Error::LengthMismatch {
            left: o1.len(),
            right: o2.len(),
        });
    }
    if o1.len() != grid.len() {
        return Err(Error::LengthMismatch {
            left: o1.len(),
            right: grid.len(),
        });
    }
    let gp = o1.iter().zip(o2).map(|(a, b)| (a + b) * 0.5).collect();
    let gh = o1.iter().zip(o2).map(|(a, b)| (a - b) * 0.5).collect();
    Ok(GreensSeries { grid, gp, gh })
}

/// Runs the scattering circuit for both correlators on every grid time.
pub fn measure_series(circuit: &ScatteringCircuit, grid: TimeGrid) -> Result<GreensSeries> {
    grid.validate()?;
    let times = grid.times();
    let o1 = circuit.series(Correlator::O1, &times);
    let o2 = circuit.series(Correlator::O2, &times);
    greens_from_correlators(grid, &o1, &o2)
}

/// Fermionic Matsubara grid `w_n = (2n+1) pi / beta`, `n = 0..n_max`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatsubaraGrid {
    pub beta: f64,
    pub n_max: usize,
}

impl Default for MatsubaraGrid {
    fn default() -> Self {
        Self {
            beta: 200.0,
            n_max: 50,
        }
    }
}

impl MatsubaraGrid {
    pub fn validate(&self) -> Result<()> {
        if !(self.beta > 0.0 && self.beta.is_finite()) || self.n_max == 0 {
            return Err(Error::Precondition(format!(
                "Matsubara grid needs beta > 0 and n_max >= 1 (got {}, {})",
                self.beta, self.n_max
            )));
        }
        Ok(())
    }

    pub fn frequencies(&self) -> Vec<f64> {
        (0..self.n_max)
            .map(|n| (2 * n + 1) as f64 * PI / self.beta)
            .collect()
    }
}

/// Frequency axis of a spectrum.
#[derive(Debug, Clone, PartialEq)]
pub enum Axis {
    Real(Vec<f64>),
    Matsubara(MatsubaraGrid),
}

impl Axis {
    pub fn len(&self) -> usize {
        match self {
            Axis::Real(w) => w.len(),
            Axis::Matsubara(g) => g.n_max,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GreensSpectrum {
    pub axis: Axis,
    pub values: Vec<C64>,
    pub eta: f64,
    /// Bound on the neglected tail of the time integral (0 for pole sums).
    pub truncation_bound: f64,
}

/// Uniform real frequency grid from `min` to `max` inclusive.
pub fn real_omega_grid(min: f64, max: f64, step: f64) -> Vec<f64> {
    let n = ((max - min) / step).round() as usize;
    (0..=n).map(|k| min + k as f64 * step).collect()
}

/// Default real axis `[-6, 6]` with spacing `0.01`.
pub fn default_omega_grid() -> Vec<f64> {
    real_omega_grid(-6.0, 6.0, 0.01)
}

fn laplace(series: &GreensSeries, z: C64, f: &[C64], times: &[f64]) -> C64 {
    // -i * sum_j w_j exp(i z t_j) f_j
    let s: C64 = times
        .iter()
        .zip(f)
        .enumerate()
        .map(|(j, (&t, &fj))| (C64::i() * z * t).exp() * fj * series.grid.trapezoid_weight(j))
        .sum();
    -C64::i() * s
}

/// `G(w) = -i int exp(i(w + i eta)t) [G^p(t) + conj G^h(t)] dt` by the trapezoid rule.
pub fn green_realfreq(series: &GreensSeries, omegas: &[f64], eta: f64) -> Result<GreensSpectrum> {
    if !(eta > 0.0) {
        return Err(Error::Broadening(eta));
    }
    let f = series.kernel_input();
    let times = series.grid.times();
    let values = omegas
        .par_iter()
        .map(|&w| laplace(series, C64::new(w, eta), &f, &times))
        .collect();
    Ok(GreensSpectrum {
        axis: Axis::Real(omegas.to_vec()),
        values,
        eta,
        truncation_bound: (-eta * series.grid.t_max).exp() / eta,
    })
}

/// `G(i w_n) = -i int exp(-(eta + w_n)t) [G^p(t) + conj G^h(t)] dt` by the trapezoid rule.
pub fn green_matsubara(
    series: &GreensSeries,
    grid: &MatsubaraGrid,
    eta: f64,
) -> Result<GreensSpectrum> {
    grid.validate()?;
    if !(eta >= 0.0) {
        return Err(Error::Broadening(eta));
    }
    let omegas = grid.frequencies();
    let decay = eta + omegas[0];
    let tail = (-decay * series.grid.t_max).exp();
    if tail > 1e-8 {
        log::warn!(
            "time grid too short for the Matsubara transform: exp(-(eta + w0) t_max) = {tail:.3e}"
        );
    }
    let f = series.kernel_input();
    let times = series.grid.times();
    let values = omegas
        .par_iter()
        .map(|&w| laplace(series, C64::new(0.0, w + eta), &f, &times))
        .collect();
    Ok(GreensSpectrum {
        axis: Axis::Matsubara(*grid),
        values,
        eta,
        truncation_bound: tail / decay,
    })
}

/// `A(w) = -Im G(w) / pi`.
pub fn spectral_density(spec: &GreensSpectrum) -> Result<Vec<f64>> {
    match spec.axis {
        Axis::Real(_) => Ok(spec.values.iter().map(|g| -g.im / PI).collect()),
        Axis::Matsubara(_) => Err(Error::AxisMismatch { expected: "real" }),
    }
}

/// A single excitation of the impurity Green's function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pole {
    pub position: f64,
    pub weight: f64,
}

/// Exact poles from the eigendecomposition: particle poles at `E_m - E_0` with
/// weight `|<m|c^+|0>|^2`, hole poles at `E_0 - E_m` with weight `|<m|c|0>|^2`.
/// Coincident poles are merged and zero weights dropped.
pub fn lehmann_poles(params: &SiamParams) -> Result<Vec<Pole>> {
    let eig = spectrum(params)?;
    let gap = eig.values[1] - eig.values[0];
    if gap <= GAP_TOL {
        return Err(Error::DegenerateGround { gap });
    }
    let (ops, _) = jordan_wigner(params)?;
    let ground = eig.vectors.column(0);
    let cd_g = &ops.creation[IMP_DOWN] * ground;
    let c_g = &ops.annihilation[IMP_DOWN] * ground;
    let mut raw = Vec::new();
    for m in 0..eig.values.len() {
        let bra = eig.vectors.column(m);
        let de = eig.values[m] - eig.values[0];
        raw.push(Pole {
            position: de,
            weight: bra.dotc(&cd_g).norm_sqr(),
        });
        raw.push(Pole {
            position: -de,
            weight: bra.dotc(&c_g).norm_sqr(),
        });
    }
    raw.sort_by(|a, b| a.position.total_cmp(&b.position));
    let mut poles: Vec<Pole> = Vec::new();
    for p in raw.into_iter().filter(|p| p.weight > 1e-14) {
        match poles.last_mut() {
            Some(last) if (last.position - p.position).abs() < 1e-9 => last.weight += p.weight,
            _ => poles.push(p),
        }
    }
    Ok(poles)
}

/// Pole sum on the requested axis, with the same broadening convention as the transforms.
pub fn lehmann_oracle(params: &SiamParams, eta: f64, axis: Axis) -> Result<GreensSpectrum> {
    let poles = lehmann_poles(params)?;
    let points: Vec<C64> = match &axis {
        Axis::Real(w) => w.iter().map(|&w| C64::new(w, eta)).collect(),
        Axis::Matsubara(g) => g
            .frequencies()
            .iter()
            .map(|&w| C64::new(0.0, w + eta))
            .collect(),
    };
    let values = points
        .iter()
        .map(|&z| poles.iter().map(|p| p.weight / (z - p.position)).sum())
        .collect();
    Ok(GreensSpectrum {
        axis,
        values,
        eta,
        truncation_bound: 0.0,
    })
}

/// Indices of strict interior local maxima.
pub fn local_maxima(values: &[f64]) -> Vec<usize> {
    (1..values.len().saturating_sub(1))
        .filter(|&i| values[i] > values[i - 1] && values[i] > values[i + 1])
        .collect()
}

/// Trapezoid integral of samples on a uniform grid.
pub fn integrate_uniform(values: &[f64], step: f64) -> f64 {
    match values.len() {
        0 | 1 => 0.0,
        n => step * (values.iter().sum::<f64>() - 0.5 * (values[0] + values[n - 1])),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::{prepare_psi0, EvolutionMode};
    use approx::assert_abs_diff_eq;

    fn free_series(grid: TimeGrid) -> GreensSeries {
        let p = SiamParams::half_filled(0.0, 0.5);
        let c = ScatteringCircuit::new(&p, EvolutionMode::Exact, prepare_psi0()).unwrap();
        measure_series(&c, grid).unwrap()
    }

    #[test]
    fn grid_defaults() {
        let g = TimeGrid::default();
        assert_eq!(g.len(), 10001);
        assert_abs_diff_eq!(*g.times().last().unwrap(), 200.0, epsilon = 1e-9);
        let m = MatsubaraGrid { beta: 50.0, n_max: 3 };
        let w = m.frequencies();
        assert_abs_diff_eq!(w[0], PI / 50.0);
        assert!(w.windows(2).all(|p| p[1] > p[0]));
    }

    #[test]
    fn correlator_split() {
        let grid = TimeGrid {
            t_start: 0.0,
            dt: 1.0,
            t_max: 1.0,
        };
        let one = C64::from(1.0);
        let s = greens_from_correlators(grid, &[one, one], &[C64::from(0.0), one]).unwrap();
        assert_eq!(s.gp[0], C64::from(0.5));
        assert_eq!(s.gh[0], C64::from(0.5));
        assert_eq!(s.gh[1], C64::from(0.0));
        assert!(greens_from_correlators(grid, &[one], &[one, one]).is_err());
    }

    #[test]
    fn free_particle_series_is_plane_wave() {
        let grid = TimeGrid {
            t_start: 0.0,
            dt: 0.1,
            t_max: 20.0,
        };
        let s = free_series(grid);
        for (t, (p, h)) in grid.times().iter().zip(s.gp.iter().zip(&s.gh)) {
            let want = C64::from_polar(0.5, -0.5 * t);
            assert!((p - want).norm() < 1e-10 && (h - want).norm() < 1e-10);
        }
    }

    #[test]
    fn realfreq_peaks_at_plus_minus_v() {
        let s = free_series(TimeGrid::default());
        let w = default_omega_grid();
        let spec = green_realfreq(&s, &w, 0.1).unwrap();
        let a = spectral_density(&spec).unwrap();
        let peaks = local_maxima(&a);
        assert_eq!(peaks.len(), 2);
        assert!((w[peaks[0]] + 0.5).abs() <= 0.01 + 1e-9);
        assert!((w[peaks[1]] - 0.5).abs() <= 0.01 + 1e-9);
        let height = 0.5 / (PI * 0.1);
        assert!((a[peaks[1]] - height).abs() / height < 0.05);
        let total = integrate_uniform(&a, 0.01);
        assert!((total - 1.0).abs() < 0.02, "{total}");
    }

    #[test]
    fn realfreq_rejects_nonpositive_eta() {
        let s = GreensSeries::zeros(TimeGrid::default());
        assert!(matches!(green_realfreq(&s, &[0.0], 0.0), Err(Error::Broadening(_))));
    }

    #[test]
    fn zero_series_transforms_to_zero() {
        let s = GreensSeries::zeros(TimeGrid::default());
        let r = green_realfreq(&s, &[0.0, 1.0], 0.1).unwrap();
        assert!(r.values.iter().all(|z| z.norm() == 0.0));
        let m = green_matsubara(&s, &MatsubaraGrid::default(), 0.01).unwrap();
        assert!(m.values.iter().all(|z| z.norm() == 0.0));
    }

    #[test]
    fn matsubara_free_analytic() {
        let s = free_series(TimeGrid::default());
        let grid = MatsubaraGrid { beta: 50.0, n_max: 200 };
        let g = green_matsubara(&s, &grid, 0.0).unwrap();
        let w = grid.frequencies();
        for n in [0, 1, 5] {
            let want = C64::new(0.0, -w[n] / (w[n] * w[n] + 0.25));
            assert!((g.values[n] - want).norm() < 1e-3, "n = {n}");
        }
        assert!(g.values.iter().all(|z| z.im < 0.0));
    }

    #[test]
    fn spectral_density_needs_real_axis() {
        let s = GreensSeries::zeros(TimeGrid::default());
        let m = green_matsubara(&s, &MatsubaraGrid::default(), 0.01).unwrap();
        assert!(matches!(spectral_density(&m), Err(Error::AxisMismatch { .. })));
    }

    #[test]
    fn free_poles() {
        let poles = lehmann_poles(&SiamParams::half_filled(0.0, 0.5)).unwrap();
        assert_eq!(poles.len(), 2);
        assert_abs_diff_eq!(poles[0].position, -0.5, epsilon = 1e-10);
        assert_abs_diff_eq!(poles[1].position, 0.5, epsilon = 1e-10);
        for p in poles {
            assert_abs_diff_eq!(p.weight, 0.5, epsilon = 1e-10);
        }
    }

    #[test]
    fn maxima_helper() {
        assert_eq!(local_maxima(&[0.0, 1.0, 0.0, 2.0, 1.0]), vec![1, 3]);
        assert!(local_maxima(&[1.0, 1.0]).is_empty());
    }
}
