//! Self-consistency loop for the bath coupling on the Bethe lattice.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::greens::{
    green_matsubara, green_realfreq, measure_series, spectral_density, GreensSeries, MatsubaraGrid,
    TimeGrid,
};
use crate::model::{bare_g0_inv, weiss_inv, SiamParams};
use crate::qsim::C64;
use crate::solver::{prepare_ground, EvolutionMode, GroundSource, ScatteringCircuit};

#[derive(Debug, Clone, PartialEq)]
pub struct DmftConfig {
    /// Model at half filling; `params.v` is ignored in favour of `v0`.
    pub params: SiamParams,
    pub v0: f64,
    pub delta_v: f64,
    /// Gradient step multiplier in `V <- V - lr * g`.
    pub learning_rate: f64,
    pub matsubara: MatsubaraGrid,
    pub eta_matsubara: f64,
    pub time_grid: TimeGrid,
    pub mode: EvolutionMode,
    pub ground: GroundSource,
    pub max_iters: usize,
    pub tol_f: f64,
    pub v_bounds: (f64, f64),
    pub max_step: f64,
}

impl DmftConfig {
    pub fn new(u: f64) -> Self {
        Self {
            params: SiamParams::half_filled(u, 0.5),
            v0: 0.5,
            delta_v: 0.05,
            learning_rate: 5e-4,
            matsubara: MatsubaraGrid::default(),
            eta_matsubara: 1.0,
            time_grid: TimeGrid::default(),
            mode: EvolutionMode::Exact,
            ground: GroundSource::Ed,
            max_iters: 100,
            tol_f: 1e-6,
            v_bounds: (0.01, 2.0),
            max_step: 0.1,
        }
    }

    pub fn with_u(&self, u: f64) -> Self {
        Self {
            params: SiamParams::half_filled(u, self.params.v),
            ..self.clone()
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.params.validate()?;
        self.matsubara.validate()?;
        self.time_grid.validate()?;
        let (lo, hi) = self.v_bounds;
        if !(lo > 0.0 && hi > lo) {
            return Err(Error::Precondition(format!("invalid V bounds [{lo}, {hi}]")));
        }
        if !(self.v0 >= lo && self.v0 <= hi) {
            return Err(Error::OutOfRange {
                key: "V0".into(),
                value: self.v0,
                min: lo,
                max: hi,
            });
        }
        if !(self.delta_v > 0.0) {
            return Err(Error::Precondition("delta_V must be positive".into()));
        }
        if !(self.learning_rate > 0.0 && self.max_step > 0.0 && self.tol_f > 0.0) {
            return Err(Error::Precondition(
                "learning rate, max step and tolerance must be positive".into(),
            ));
        }
        Ok(())
    }
}

impl Default for DmftConfig {
    fn default() -> Self {
        Self::new(1.0)
    }
}

/// `f = sum_n |i w_n + mu - G(i w_n) - G0^-1(i w_n; V)|^2`.
pub fn cost(g: &[C64], v: f64, params: &SiamParams, grid: &MatsubaraGrid) -> Result<f64> {
    let omegas = grid.frequencies();
    if g.len() != omegas.len() {
        return Err(Error::LengthMismatch {
            left: g.len(),
            right: omegas.len(),
        });
    }
    let weiss = weiss_inv(g, &omegas, params.mu)?;
    let bare = bare_g0_inv(&omegas, &params.with_v(v))?;
    Ok(weiss.iter().zip(&bare).map(|(a, b)| (a - b).norm_sqr()).sum())
}

/// Correlators measured at bath coupling `v`.
pub fn measure_at(v: f64, config: &DmftConfig) -> Result<GreensSeries> {
    if !(v > 0.0 && v.is_finite()) {
        return Err(Error::Precondition(format!("bath coupling must be positive, got {v}")));
    }
    let params = config.params.with_v(v);
    let ground = prepare_ground(&params, config.ground)?;
    let circuit = ScatteringCircuit::new(&params, config.mode, ground)?;
    measure_series(&circuit, config.time_grid)
}

/// Full pipeline cost at bath coupling `v`.
pub fn evaluate_f(v: f64, config: &DmftConfig) -> Result<f64> {
    let series = measure_at(v, config)?;
    let g = green_matsubara(&series, &config.matsubara, config.eta_matsubara)?;
    cost(&g.values, v, &config.params, &config.matsubara)
}

/// Spectral density `A(w)` at bath coupling `v`.
pub fn spectral_density_at(v: f64, config: &DmftConfig, omegas: &[f64], eta: f64) -> Result<Vec<f64>> {
    let series = measure_at(v, config)?;
    spectral_density(&green_realfreq(&series, omegas, eta)?)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IterationRecord {
    pub k: usize,
    pub v: f64,
    pub f: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct DmftTrace {
    pub iterations: Vec<IterationRecord>,
    pub converged: bool,
    pub spectra: Option<Vec<Vec<f64>>>,
}

impl DmftTrace {
    pub fn final_v(&self) -> Option<f64> {
        self.iterations.last().map(|r| r.v)
    }

    pub fn final_f(&self) -> Option<f64> {
        self.iterations.last().map(|r| r.f)
    }

    pub fn v_values(&self) -> Vec<f64> {
        self.iterations.iter().map(|r| r.v).collect()
    }
}

/// Runs the loop; see [`dmft_iterate_with`].
pub fn dmft_iterate(config: &DmftConfig) -> Result<DmftTrace> {
    dmft_iterate_with(config, |_| Ok(()))
}

/// Forward-difference gradient descent on `V`, calling `observe` after each record.
///
/// Stops when `|f_k - f_{k-1}| < tol_f` or after `max_iters` records; running out of
/// iterations is reported through `converged = false`, not an error.
pub fn dmft_iterate_with<F>(config: &DmftConfig, mut observe: F) -> Result<DmftTrace>
where
    F: FnMut(&IterationRecord) -> Result<()>,
{
    config.validate()?;
    let (lo, hi) = config.v_bounds;
    let mut trace = DmftTrace::default();
    let mut v = config.v0;
    let mut previous: Option<f64> = None;
    for k in 0..config.max_iters {
        let f = evaluate_f(v, config)?;
        let record = IterationRecord { k, v, f };
        trace.iterations.push(record);
        observe(&record)?;
        log::debug!("k = {k}, V = {v:.6}, f = {f:.9e}");
        if previous.is_some_and(|p| (f - p).abs() < config.tol_f) {
            trace.converged = true;
            break;
        }
        previous = Some(f);
        let g = (evaluate_f(v + config.delta_v, config)? - f) / config.delta_v;
        let step = (config.learning_rate * g).clamp(-config.max_step, config.max_step);
        v = (v - step).clamp(lo, hi);
    }
    Ok(trace)
}

/// Dense 1-D scan of the cost over `[lo, hi]`.
#[derive(Debug, Clone, PartialEq)]
pub struct CostScan {
    pub points: Vec<(f64, f64)>,
    pub v_min: f64,
    pub f_min: f64,
}

pub fn scan_cost(config: &DmftConfig, lo: f64, hi: f64, step: f64) -> Result<CostScan> {
    if !(step > 0.0 && hi >= lo) {
        return Err(Error::Precondition("scan needs step > 0 and hi >= lo".into()));
    }
    let n = ((hi - lo) / step + 1e-9).floor() as usize;
    let vs: Vec<f64> = (0..=n).map(|k| lo + k as f64 * step).collect();
    let fs = vs
        .par_iter()
        .map(|&v| evaluate_f(v, config))
        .collect::<Result<Vec<f64>>>()?;
    let points: Vec<(f64, f64)> = vs.into_iter().zip(fs).collect();
    let &(v_min, f_min) = points
        .iter()
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("non-empty scan");
    Ok(CostScan {
        points,
        v_min,
        f_min,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SaturationEstimate {
    pub mean_v: f64,
    pub std_v: f64,
    pub window: usize,
}

/// Mean and sample standard deviation of the last `window` values of `V`.
pub fn saturation_estimate(trace: &DmftTrace, window: usize) -> Result<SaturationEstimate> {
    let vs = trace.v_values();
    if window == 0 || window > vs.len() {
        return Err(Error::Window {
            window,
            len: vs.len(),
        });
    }
    let tail = &vs[vs.len() - window..];
    let mean = tail.iter().sum::<f64>() / window as f64;
    let std = if window > 1 {
        (tail.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (window - 1) as f64).sqrt()
    } else {
        0.0
    };
    Ok(SaturationEstimate {
        mean_v: mean,
        std_v: std,
        window,
    })
}
