//! Key-value configuration, subcommand dispatch and CSV/text output.

use std::fmt::Write as _;
use std::fs::{self, File};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rayon::prelude::*;

use crate::dmft::{dmft_iterate_with, saturation_estimate, spectral_density_at, DmftConfig, DmftTrace};
use crate::error::{Error, Result};
use crate::greens::{
    green_realfreq, measure_series, real_omega_grid, spectral_density, MatsubaraGrid, TimeGrid,
};
use crate::model::SiamParams;
use crate::pps::{run_pps_sequence, Sp2Variant, SpinLayout};
use crate::solver::{asp_evolve, prepare_ground, AspSchedule, EvolutionMode, GroundSource, ScatteringCircuit};

/// Every setting a run can take; absent keys keep their defaults.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub u: f64,
    pub u_list: Vec<f64>,
    pub v: f64,
    pub v0: f64,
    pub delta_v: f64,
    pub learning_rate: f64,
    pub max_iters: usize,
    pub tol_f: f64,
    pub v_min: f64,
    pub v_max: f64,
    pub max_step: f64,
    pub window: usize,
    pub matsubara: MatsubaraGrid,
    pub eta_matsubara: f64,
    pub time_grid: TimeGrid,
    pub omega_min: f64,
    pub omega_max: f64,
    pub omega_step: f64,
    pub eta: f64,
    pub mode: EvolutionMode,
    pub ground: GroundKind,
    pub asp: AspSchedule,
    pub out_dir: PathBuf,
    pub layouts: Vec<LayoutKind>,
    pub gamma_ratio: f64,
    pub ab_ratio: f64,
    pub sp2: Sp2Variant,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroundKind {
    Ed,
    Asp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LayoutKind {
    Fffhh,
    Aaaa,
    Abbb,
    Aabb,
}

impl Default for RunConfig {
    fn default() -> Self {
        let d = DmftConfig::new(1.0);
        Self {
            u: 1.0,
            u_list: vec![0.0, 1.0, 2.0],
            v: 0.5,
            v0: d.v0,
            delta_v: d.delta_v,
            learning_rate: d.learning_rate,
            max_iters: d.max_iters,
            tol_f: d.tol_f,
            v_min: d.v_bounds.0,
            v_max: d.v_bounds.1,
            max_step: d.max_step,
            window: 5,
            matsubara: d.matsubara,
            eta_matsubara: d.eta_matsubara,
            time_grid: d.time_grid,
            omega_min: -6.0,
            omega_max: 6.0,
            omega_step: 0.01,
            eta: 0.1,
            mode: EvolutionMode::Exact,
            ground: GroundKind::Ed,
            asp: AspSchedule::default(),
            out_dir: PathBuf::from("out"),
            layouts: vec![LayoutKind::Fffhh, LayoutKind::Aaaa, LayoutKind::Abbb, LayoutKind::Aabb],
            gamma_ratio: 0.9407,
            ab_ratio: 2.0,
            sp2: Sp2Variant::Packed,
        }
    }
}

pub const KEYS: &[&str] = &[
    "u", "u_list", "v", "v0", "delta_v", "learning_rate", "max_iters", "tol_f", "v_min", "v_max",
    "max_step", "window", "beta", "n_max", "eta_matsubara", "t_start", "dt", "t_max", "omega_min",
    "omega_max", "omega_step", "eta", "mode", "trotter_n", "ground", "asp_time", "asp_steps",
    "out_dir", "layout", "gamma_ratio", "ab_ratio", "sp2",
];

fn parse_err(key: &str, value: &str, reason: impl Into<String>) -> Error {
    Error::Parse {
        key: key.to_string(),
        value: value.to_string(),
        reason: reason.into(),
    }
}

fn num<T: FromStr>(key: &str, value: &str) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    value.parse::<T>().map_err(|e| parse_err(key, value, e.to_string()))
}

fn in_range(key: &str, value: f64, min: f64, max: f64) -> Result<()> {
    if value >= min && value <= max {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            key: key.to_string(),
            value,
            min,
            max,
        })
    }
}

/// Splits a document into `(key, value)` pairs. Entries are separated by newlines
/// or commas; a comma-separated piece without `=` continues the previous value.
fn entries(text: &str) -> Result<Vec<(String, String)>> {
    let mut out: Vec<(String, String)> = Vec::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut line_entries: Vec<(String, String)> = Vec::new();
        for piece in line.split(',') {
            match piece.split_once('=') {
                Some((k, v)) => line_entries.push((k.trim().to_string(), v.trim().to_string())),
                None => match line_entries.last_mut() {
                    Some((_, v)) => {
                        v.push(',');
                        v.push_str(piece.trim());
                    }
                    None => return Err(parse_err(piece.trim(), "", "expected `key = value`")),
                },
            }
        }
        out.extend(line_entries);
    }
    Ok(out)
}

impl RunConfig {
    /// Sets one key from its textual value.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let k = key.to_ascii_lowercase();
        let value = value.trim();
        match k.as_str() {
            "u" => self.u = num(key, value)?,
            "u_list" => {
                self.u_list = value
                    .trim_matches(|c| c == '[' || c == ']')
                    .split([',', ' ', ';'])
                    .filter(|s| !s.is_empty())
                    .map(|s| num::<f64>(key, s))
                    .collect::<Result<_>>()?
            }
            "v" => self.v = num(key, value)?,
            "v0" => self.v0 = num(key, value)?,
            "delta_v" => self.delta_v = num(key, value)?,
            "learning_rate" => self.learning_rate = num(key, value)?,
            "max_iters" => self.max_iters = num(key, value)?,
            "tol_f" => self.tol_f = num(key, value)?,
            "v_min" => self.v_min = num(key, value)?,
            "v_max" => self.v_max = num(key, value)?,
            "max_step" => self.max_step = num(key, value)?,
            "window" => self.window = num(key, value)?,
            "beta" => self.matsubara.beta = num(key, value)?,
            "n_max" => self.matsubara.n_max = num(key, value)?,
            "eta_matsubara" => self.eta_matsubara = num(key, value)?,
            "t_start" => self.time_grid.t_start = num(key, value)?,
            "dt" => self.time_grid.dt = num(key, value)?,
            "t_max" => self.time_grid.t_max = num(key, value)?,
            "omega_min" => self.omega_min = num(key, value)?,
            "omega_max" => self.omega_max = num(key, value)?,
            "omega_step" => self.omega_step = num(key, value)?,
            "eta" => self.eta = num(key, value)?,
            "mode" => {
                self.mode = match value.to_ascii_lowercase().as_str() {
                    "exact" => EvolutionMode::Exact,
                    "trotter" => match self.mode {
                        EvolutionMode::Trotter(n) => EvolutionMode::Trotter(n),
                        EvolutionMode::Exact => EvolutionMode::Trotter(1),
                    },
                    _ => return Err(parse_err(key, value, "expected `exact` or `trotter`")),
                }
            }
            "trotter_n" => {
                let n: usize = num(key, value)?;
                if n == 0 {
                    return Err(Error::OutOfRange {
                        key: key.into(),
                        value: 0.0,
                        min: 1.0,
                        max: f64::INFINITY,
                    });
                }
                self.mode = EvolutionMode::Trotter(n);
            }
            "ground" => {
                self.ground = match value.to_ascii_lowercase().as_str() {
                    "ed" => GroundKind::Ed,
                    "asp" => GroundKind::Asp,
                    _ => return Err(parse_err(key, value, "expected `ed` or `asp`")),
                }
            }
            "asp_time" => self.asp.total_time = num(key, value)?,
            "asp_steps" => self.asp.steps = num(key, value)?,
            "out_dir" => self.out_dir = PathBuf::from(value),
            "layout" => {
                self.layouts = match value.to_ascii_lowercase().as_str() {
                    "all" => vec![LayoutKind::Fffhh, LayoutKind::Aaaa, LayoutKind::Abbb, LayoutKind::Aabb],
                    "fffhh" => vec![LayoutKind::Fffhh],
                    "aaaa" => vec![LayoutKind::Aaaa],
                    "abbb" => vec![LayoutKind::Abbb],
                    "aabb" => vec![LayoutKind::Aabb],
                    _ => return Err(parse_err(key, value, "expected fffhh, aaaa, abbb, aabb or all")),
                }
            }
            "gamma_ratio" => self.gamma_ratio = num(key, value)?,
            "ab_ratio" => self.ab_ratio = num(key, value)?,
            "sp2" => {
                self.sp2 = match value.to_ascii_lowercase().as_str() {
                    "packed" => Sp2Variant::Packed,
                    "crushed" => Sp2Variant::Crushed,
                    _ => return Err(parse_err(key, value, "expected `packed` or `crushed`")),
                }
            }
            _ => return Err(Error::UnknownKey(key.to_string())),
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        in_range("U", self.u, 0.0, 20.0)?;
        for &u in &self.u_list {
            in_range("u_list", u, 0.0, 20.0)?;
        }
        in_range("v_min", self.v_min, 1e-6, self.v_max)?;
        in_range("V0", self.v0, self.v_min, self.v_max)?;
        in_range("V", self.v, 1e-6, 10.0)?;
        in_range("delta_V", self.delta_v, 1e-9, 1.0)?;
        in_range("learning_rate", self.learning_rate, 1e-12, 10.0)?;
        in_range("max_iters", self.max_iters as f64, 1.0, 1e6)?;
        in_range("tol_f", self.tol_f, 1e-300, 1e6)?;
        in_range("max_step", self.max_step, 1e-12, 10.0)?;
        in_range("window", self.window as f64, 1.0, 1e6)?;
        in_range("beta", self.matsubara.beta, 1e-6, 1e6)?;
        in_range("n_max", self.matsubara.n_max as f64, 1.0, 1e6)?;
        in_range("eta_matsubara", self.eta_matsubara, 0.0, 1e3)?;
        in_range("dt", self.time_grid.dt, 1e-9, 1e3)?;
        in_range("t_max", self.time_grid.t_max, self.time_grid.t_start + 1e-9, 1e6)?;
        in_range("omega_step", self.omega_step, 1e-9, 1e3)?;
        in_range("omega_max", self.omega_max, self.omega_min, 1e6)?;
        in_range("eta", self.eta, 1e-12, 1e3)?;
        in_range("asp_time", self.asp.total_time, 1e-12, 1e6)?;
        in_range("asp_steps", self.asp.steps as f64, 1.0, 1e7)?;
        in_range("gamma_ratio", self.gamma_ratio, 1e-12, 1e6)?;
        in_range("ab_ratio", self.ab_ratio, 1e-12, 1e6)?;
        Ok(())
    }

    pub fn ground_source(&self) -> GroundSource {
        match self.ground {
            GroundKind::Ed => GroundSource::Ed,
            GroundKind::Asp => GroundSource::Asp(self.asp),
        }
    }

    pub fn omega_grid(&self) -> Vec<f64> {
        real_omega_grid(self.omega_min, self.omega_max, self.omega_step)
    }

    pub fn dmft_config(&self, u: f64) -> DmftConfig {
        DmftConfig {
            params: SiamParams::half_filled(u, self.v0),
            v0: self.v0,
            delta_v: self.delta_v,
            learning_rate: self.learning_rate,
            matsubara: self.matsubara,
            eta_matsubara: self.eta_matsubara,
            time_grid: self.time_grid,
            mode: self.mode,
            ground: self.ground_source(),
            max_iters: self.max_iters,
            tol_f: self.tol_f,
            v_bounds: (self.v_min, self.v_max),
            max_step: self.max_step,
        }
    }
}

/// Parses a `key = value` document on top of the defaults and validates it.
pub fn parse_config(text: &str) -> Result<RunConfig> {
    parse_config_with(text, &[])
}

/// Like [`parse_config`], then applies `overrides` in order.
pub fn parse_config_with(text: &str, overrides: &[(String, String)]) -> Result<RunConfig> {
    let mut cfg = RunConfig::default();
    for (k, v) in entries(text)?.iter().chain(overrides) {
        cfg.set(k, v)?;
    }
    cfg.validate()?;
    Ok(cfg)
}

/// Splits `key=value`.
pub fn parse_override(s: &str) -> Result<(String, String)> {
    s.split_once('=')
        .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
        .ok_or_else(|| parse_err(s, "", "expected `key=value`"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subcommand {
    Dmft,
    Sweep,
    Greens,
    Asp,
    Pps,
}

impl FromStr for Subcommand {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dmft" => Ok(Subcommand::Dmft),
            "sweep" => Ok(Subcommand::Sweep),
            "greens" => Ok(Subcommand::Greens),
            "asp" => Ok(Subcommand::Asp),
            "pps" => Ok(Subcommand::Pps),
            _ => Err(Error::Unsupported(format!("unknown subcommand `{s}`"))),
        }
    }
}

/// Twelve significant digits.
pub fn fmt_f(x: f64) -> String {
    format!("{x:.11e}")
}

fn csv_line(fields: &[String]) -> String {
    let mut s = fields.join(",");
    s.push('\n');
    s
}

fn write_csv(path: &Path, header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<()> {
    let mut text = csv_line(&header.iter().map(|h| h.to_string()).collect::<Vec<_>>());
    for row in rows {
        text.push_str(&csv_line(&row));
    }
    fs::write(path, text)?;
    Ok(())
}

/// Files produced by a subcommand.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunOutput {
    pub files: Vec<PathBuf>,
}

/// Outcome of one DMFT run as written to disk.
#[derive(Debug, Clone, PartialEq)]
pub struct DmftSummary {
    pub u: f64,
    pub trace: DmftTrace,
    pub mean_v: f64,
    pub std_v: f64,
    pub window: usize,
}

fn run_dmft_into(cfg: &RunConfig, u: f64, dir: &Path) -> Result<(DmftSummary, Vec<PathBuf>)> {
    fs::create_dir_all(dir)?;
    let dcfg = cfg.dmft_config(u);
    let log_path = dir.join("iterations.csv");
    let mut log = File::create(&log_path)?;
    log.write_all(b"k,V,f\n")?;
    let trace = dmft_iterate_with(&dcfg, |r| {
        log.write_all(csv_line(&[r.k.to_string(), fmt_f(r.v), fmt_f(r.f)]).as_bytes())?;
        log.flush()?;
        Ok(())
    })?;
    let window = cfg.window.min(trace.iterations.len());
    let sat = saturation_estimate(&trace, window)?;
    let v_final = trace.final_v().expect("at least one iteration");

    let summary_path = dir.join("final_summary.txt");
    let mut text = String::new();
    writeln!(text, "U = {}", fmt_f(u)).unwrap();
    writeln!(text, "converged = {}", trace.converged).unwrap();
    writeln!(text, "iterations = {}", trace.iterations.len()).unwrap();
    writeln!(text, "V_final = {}", fmt_f(v_final)).unwrap();
    writeln!(text, "f_final = {}", fmt_f(trace.final_f().unwrap())).unwrap();
    writeln!(text, "V_mean = {}", fmt_f(sat.mean_v)).unwrap();
    writeln!(text, "V_std = {}", fmt_f(sat.std_v)).unwrap();
    writeln!(text, "window = {}", sat.window).unwrap();
    fs::write(&summary_path, text)?;

    let omegas = cfg.omega_grid();
    let a = spectral_density_at(v_final, &dcfg, &omegas, cfg.eta)?;
    let spec_path = dir.join("spectrum.csv");
    write_csv(
        &spec_path,
        &["omega", "A"],
        omegas.iter().zip(&a).map(|(w, a)| vec![fmt_f(*w), fmt_f(*a)]),
    )?;
    let summary = DmftSummary {
        u,
        trace,
        mean_v: sat.mean_v,
        std_v: sat.std_v,
        window: sat.window,
    };
    Ok((summary, vec![log_path, summary_path, spec_path]))
}

/// Runs the DMFT loop at `cfg.u` into `cfg.out_dir`.
pub fn run_dmft(cfg: &RunConfig) -> Result<(DmftSummary, RunOutput)> {
    let (s, files) = run_dmft_into(cfg, cfg.u, &cfg.out_dir)?;
    Ok((s, RunOutput { files }))
}

/// Independent DMFT runs over `cfg.u_list`, one subdirectory each.
pub fn run_sweep(cfg: &RunConfig) -> Result<(Vec<DmftSummary>, RunOutput)> {
    fs::create_dir_all(&cfg.out_dir)?;
    let results = cfg
        .u_list
        .par_iter()
        .map(|&u| run_dmft_into(cfg, u, &cfg.out_dir.join(format!("U_{u}"))))
        .collect::<Result<Vec<_>>>()?;
    let mut files: Vec<PathBuf> = results.iter().flat_map(|(_, f)| f.clone()).collect();
    let summaries: Vec<DmftSummary> = results.into_iter().map(|(s, _)| s).collect();
    let path = cfg.out_dir.join("summary.csv");
    write_csv(
        &path,
        &["U", "converged", "iterations", "V_final", "V_mean", "V_std"],
        summaries.iter().map(|s| {
            vec![
                fmt_f(s.u),
                s.trace.converged.to_string(),
                s.trace.iterations.len().to_string(),
                fmt_f(s.trace.final_v().unwrap()),
                fmt_f(s.mean_v),
                fmt_f(s.std_v),
            ]
        }),
    )?;
    files.push(path);
    Ok((summaries, RunOutput { files }))
}

/// Correlators and real-axis spectrum at fixed `(U, V)`.
pub fn run_greens(cfg: &RunConfig) -> Result<RunOutput> {
    fs::create_dir_all(&cfg.out_dir)?;
    let params = SiamParams::half_filled(cfg.u, cfg.v);
    let ground = prepare_ground(&params, cfg.ground_source())?;
    let circuit = ScatteringCircuit::new(&params, cfg.mode, ground)?;
    let series = measure_series(&circuit, cfg.time_grid)?;
    let times = cfg.time_grid.times();
    let corr_path = cfg.out_dir.join("correlators.csv");
    write_csv(
        &corr_path,
        &["t", "re_o1", "im_o1", "re_o2", "im_o2"],
        times.iter().enumerate().map(|(j, t)| {
            let o1 = series.gp[j] + series.gh[j];
            let o2 = series.gp[j] - series.gh[j];
            vec![fmt_f(*t), fmt_f(o1.re), fmt_f(o1.im), fmt_f(o2.re), fmt_f(o2.im)]
        }),
    )?;
    let omegas = cfg.omega_grid();
    let spec = green_realfreq(&series, &omegas, cfg.eta)?;
    let a = spectral_density(&spec)?;
    let spec_path = cfg.out_dir.join("spectrum.csv");
    write_csv(
        &spec_path,
        &["omega", "re_g", "im_g", "A"],
        omegas
            .iter()
            .zip(spec.values.iter().zip(&a))
            .map(|(w, (g, a))| vec![fmt_f(*w), fmt_f(g.re), fmt_f(g.im), fmt_f(*a)]),
    )?;
    Ok(RunOutput {
        files: vec![corr_path, spec_path],
    })
}

/// Adiabatic preparation fidelity along the ramp.
pub fn run_asp(cfg: &RunConfig) -> Result<RunOutput> {
    fs::create_dir_all(&cfg.out_dir)?;
    let params = SiamParams::half_filled(cfg.u, cfg.v);
    let (_, fidelity) = asp_evolve(&params, &cfg.asp)?;
    let path = cfg.out_dir.join("fidelity.csv");
    write_csv(
        &path,
        &["s", "fidelity"],
        cfg.asp
            .ramp()
            .iter()
            .zip(&fidelity)
            .map(|(s, f)| vec![fmt_f(*s), fmt_f(*f)]),
    )?;
    Ok(RunOutput { files: vec![path] })
}

fn layout_of(kind: LayoutKind, cfg: &RunConfig) -> Result<SpinLayout> {
    match kind {
        LayoutKind::Fffhh => SpinLayout::fffhh(cfg.gamma_ratio),
        LayoutKind::Aaaa => Ok(SpinLayout::aaaa()),
        LayoutKind::Abbb => SpinLayout::abbb(cfg.ab_ratio),
        LayoutKind::Aabb => SpinLayout::aabb(cfg.ab_ratio),
    }
}

/// Stage populations per layout plus a verification report.
pub fn run_pps(cfg: &RunConfig) -> Result<RunOutput> {
    fs::create_dir_all(&cfg.out_dir)?;
    let mut files = Vec::new();
    let mut report = String::from("layout,is_pps,signal,background,max_offdiag,background_spread\n");
    for &kind in &cfg.layouts {
        let layout = layout_of(kind, cfg)?;
        let run = run_pps_sequence(&layout, cfg.sp2)?;
        let stages = run.stages();
        let diags: Vec<Vec<f64>> = stages.iter().map(|(_, r)| r.diagonal()).collect();
        let mut header = vec!["index", "state"];
        header.extend(stages.iter().map(|(name, _)| *name));
        let path = cfg
            .out_dir
            .join(format!("populations_{}.csv", layout.label().to_ascii_lowercase()));
        write_csv(
            &path,
            &header,
            (0..layout.dim()).map(|i| {
                let mut row = vec![i.to_string(), crate::qsim::index_to_bits(i, layout.n_qubits())];
                row.extend(diags.iter().map(|d| fmt_f(d[i])));
                row
            }),
        )?;
        files.push(path);
        let r = run.report;
        report.push_str(&csv_line(&[
            layout.label(),
            r.is_pps.to_string(),
            fmt_f(r.signal),
            fmt_f(r.background),
            fmt_f(r.max_offdiag),
            fmt_f(r.background_spread),
        ]));
    }
    let path = cfg.out_dir.join("pps_report.csv");
    fs::write(&path, report)?;
    files.push(path);
    Ok(RunOutput { files })
}

/// Dispatches a subcommand; every error is surfaced to the caller.
pub fn run_subcommand(name: Subcommand, cfg: &RunConfig) -> Result<RunOutput> {
    match name {
        Subcommand::Dmft => run_dmft(cfg).map(|(_, o)| o),
        Subcommand::Sweep => run_sweep(cfg).map(|(_, o)| o),
        Subcommand::Greens => run_greens(cfg),
        Subcommand::Asp => run_asp(cfg),
        Subcommand::Pps => run_pps(cfg),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_document_gives_defaults() {
        let cfg = parse_config("").unwrap();
        assert_eq!(cfg, RunConfig::default());
        assert_eq!(cfg.u, 1.0);
        assert_eq!(cfg.v0, 0.5);
        assert_eq!(cfg.delta_v, 0.05);
    }

    #[test]
    fn negative_v0_cites_range() {
        let err = parse_config("V0 = -0.1").unwrap_err();
        let msg = err.to_string();
        assert!(matches!(err, Error::OutOfRange { .. }));
        assert!(msg.contains("[0.01, 2.0]"), "{msg}");
    }

    #[test]
    fn trotter_mode_on_one_line() {
        let cfg = parse_config("mode = trotter, trotter_n = 4").unwrap();
        assert_eq!(cfg.mode, EvolutionMode::Trotter(4));
        let cfg = parse_config("trotter_n = 4\nmode = trotter").unwrap();
        assert_eq!(cfg.mode, EvolutionMode::Trotter(4));
    }

    #[test]
    fn unknown_key_is_named() {
        let err = parse_config("gamma = 3").unwrap_err();
        assert!(matches!(err, Error::UnknownKey(ref k) if k == "gamma"));
    }

    #[test]
    fn lists_comments_and_overrides() {
        let cfg = parse_config_with(
            "# sweep\nu_list = 0, 0.5, 1 # inline\nbeta = 100",
            &[("beta".into(), "80".into())],
        )
        .unwrap();
        assert_eq!(cfg.u_list, vec![0.0, 0.5, 1.0]);
        assert_eq!(cfg.matsubara.beta, 80.0);
        assert!(parse_config("beta = abc").is_err());
        assert!(parse_config("nonsense").is_err());
    }

    #[test]
    fn float_format_has_twelve_digits() {
        assert_eq!(fmt_f(0.171), "1.71000000000e-1");
        assert_eq!(fmt_f(-2.0), "-2.00000000000e0");
    }

    #[test]
    fn subcommand_names() {
        for s in ["dmft", "sweep", "greens", "asp", "pps"] {
            assert!(s.parse::<Subcommand>().is_ok());
        }
        assert!("plot".parse::<Subcommand>().is_err());
    }
}
