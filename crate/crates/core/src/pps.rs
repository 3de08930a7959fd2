//! Line-selective pseudo-pure state preparation on a deviation density matrix.

use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};
use crate::qsim::{two_level_rotation, CMatrix, DensityOperator, RotationAxis, C64};

/// Tolerance below which a weighted coherence order counts as zero.
pub const ORDER_TOL: f64 = 1e-12;

/// Tolerance used by [`verify_pps`].
pub const PPS_TOL: f64 = 1e-12;

/// Spin species and relative gyromagnetic weights, qubit 0 first.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinLayout {
    pub species: Vec<String>,
    pub gamma: Vec<f64>,
}

impl SpinLayout {
    pub fn new(species: &[&str], gamma: Vec<f64>) -> Result<Self> {
        if species.len() != gamma.len() {
            return Err(Error::LengthMismatch {
                left: species.len(),
                right: gamma.len(),
            });
        }
        if gamma.len() < 2 {
            return Err(Error::Precondition("a layout needs at least two spins".into()));
        }
        if gamma.iter().any(|&g| !(g > 0.0 && g.is_finite())) {
            return Err(Error::Precondition("gyromagnetic weights must be positive".into()));
        }
        Ok(Self {
            species: species.iter().map(|s| s.to_string()).collect(),
            gamma,
        })
    }

    /// Three fluorine and two proton spins; `ratio` is `gamma_F / gamma_H`.
    pub fn fffhh(ratio: f64) -> Result<Self> {
        Self::new(&["F", "F", "F", "H", "H"], vec![ratio, ratio, ratio, 1.0, 1.0])
    }

    pub fn aaaa() -> Self {
        Self::homogeneous(4)
    }

    /// One `A` spin with weight `ratio` followed by three `B` spins.
    pub fn abbb(ratio: f64) -> Result<Self> {
        Self::new(&["A", "B", "B", "B"], vec![ratio, 1.0, 1.0, 1.0])
    }

    pub fn aabb(ratio: f64) -> Result<Self> {
        Self::new(&["A", "A", "B", "B"], vec![ratio, ratio, 1.0, 1.0])
    }

    /// `n` identical spins.
    pub fn homogeneous(n: usize) -> Self {
        Self {
            species: vec!["A".into(); n],
            gamma: vec![1.0; n],
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.gamma.len()
    }

    pub fn dim(&self) -> usize {
        1 << self.n_qubits()
    }

    pub fn label(&self) -> String {
        self.species.concat()
    }

    /// Magnetic quantum number of qubit `k` in basis state `index`: `+1/2` for bit 0.
    fn m(&self, index: usize, k: usize) -> f64 {
        if index >> (self.n_qubits() - 1 - k) & 1 == 0 {
            0.5
        } else {
            -0.5
        }
    }

    /// Weighted coherence order `p(i, j) = sum_k gamma_k (m_k(i) - m_k(j))`.
    pub fn coherence_order(&self, i: usize, j: usize) -> f64 {
        (0..self.n_qubits())
            .map(|k| self.gamma[k] * (self.m(i, k) - self.m(j, k)))
            .sum()
    }

    /// Unweighted order, i.e. the change in the number of zero bits.
    pub fn unweighted_order(&self, i: usize, j: usize) -> i64 {
        let zeros = |x: usize| self.n_qubits() as i64 - x.count_ones() as i64;
        zeros(i) - zeros(j)
    }

    fn all_ones(&self) -> usize {
        self.dim() - 1
    }
}

fn check_layout(rho: &DensityOperator, layout: &SpinLayout) -> Result<()> {
    if rho.n_qubits() != layout.n_qubits() {
        return Err(Error::Dimension {
            expected: layout.n_qubits(),
            found: rho.n_qubits(),
        });
    }
    Ok(())
}

fn require_diagonal(rho: &DensityOperator, stage: &str) -> Result<()> {
    if !rho.is_diagonal(PPS_TOL) {
        return Err(Error::Precondition(format!(
            "{stage} expects a diagonal input (max off-diagonal {:.3e})",
            rho.max_off_diagonal()
        )));
    }
    Ok(())
}

/// `sum_k gamma_k sigma_z^k`.
pub fn thermal_deviation(layout: &SpinLayout) -> DensityOperator {
    let diag: Vec<f64> = (0..layout.dim())
        .map(|s| (0..layout.n_qubits()).map(|k| 2.0 * layout.gamma[k] * layout.m(s, k)).sum())
        .collect();
    DensityOperator::from_diagonal(layout.n_qubits(), &diag).expect("layout dimension")
}

/// Bit-complement pairs `(s, !s)` with `s < !s`, excluding the all-zeros pair.
pub fn complement_pairs(layout: &SpinLayout) -> Vec<(usize, usize)> {
    let top = layout.all_ones();
    (1..layout.dim())
        .map(|s| (s, top ^ s))
        .filter(|&(s, c)| s < c)
        .collect()
}

/// The first shaped pulse as one unitary: a `pi/2` rotation on every complement pair.
pub fn sp1_unitary(layout: &SpinLayout) -> CMatrix {
    let dim = layout.dim();
    complement_pairs(layout)
        .into_iter()
        .fold(CMatrix::identity(dim, dim), |u, (s, c)| {
            two_level_rotation(dim, s, c, FRAC_PI_2, RotationAxis::Y).unwrap() * u
        })
}

/// Equalizes each complement pair to its mean population.
pub fn sp1_deplete(rho: &DensityOperator, layout: &SpinLayout) -> Result<DensityOperator> {
    check_layout(rho, layout)?;
    require_diagonal(rho, "SP1")?;
    rho.conjugate(&sp1_unitary(layout))
}

/// Ideal field-gradient pulse: removes every element of nonzero weighted order.
pub fn gradient_dephase(rho: &DensityOperator, layout: &SpinLayout) -> Result<DensityOperator> {
    check_layout(rho, layout)?;
    let mut out = rho.clone();
    let m = out.matrix_mut();
    for i in 0..layout.dim() {
        for j in 0..layout.dim() {
            if layout.coherence_order(i, j).abs() > ORDER_TOL {
                m[(i, j)] = C64::from(0.0);
            }
        }
    }
    Ok(out)
}

/// SP2 rotations in order: `(target, angle)` taking `1/k` of the current all-ones
/// population for `k = 2^n - 1` down to `2`.
pub fn sp2_rotations(layout: &SpinLayout) -> Vec<(usize, f64)> {
    let dim = layout.dim();
    (1..dim - 1)
        .zip((2..dim).rev())
        .map(|(target, k)| (target, 2.0 * (1.0 / k as f64).sqrt().asin()))
        .collect()
}

/// Spreads the all-ones population equally over every state but all-zeros.
pub fn sp2_redistribute(rho: &DensityOperator, layout: &SpinLayout) -> Result<DensityOperator> {
    check_layout(rho, layout)?;
    require_diagonal(rho, "SP2")?;
    let dim = layout.dim();
    let top = layout.all_ones();
    let u = sp2_rotations(layout)
        .into_iter()
        .fold(CMatrix::identity(dim, dim), |u, (target, theta)| {
            two_level_rotation(dim, target, top, theta, RotationAxis::Y).unwrap() * u
        });
    rho.conjugate(&u)
}

/// SP2 with a gradient pulse after every rotation instead of once at the end.
pub fn sp2_redistribute_crushed(
    rho: &DensityOperator,
    layout: &SpinLayout,
) -> Result<DensityOperator> {
    check_layout(rho, layout)?;
    require_diagonal(rho, "SP2")?;
    let dim = layout.dim();
    let top = layout.all_ones();
    sp2_rotations(layout)
        .into_iter()
        .try_fold(rho.clone(), |r, (target, theta)| {
            let u = two_level_rotation(dim, target, top, theta, RotationAxis::Y)?;
            gradient_dephase(&r.conjugate(&u)?, layout)
        })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PpsReport {
    pub is_pps: bool,
    /// Mean population of the non-signal states.
    pub background: f64,
    /// `P(all zeros) - background`.
    pub signal: f64,
    pub max_offdiag: f64,
    /// Largest minus smallest non-signal population.
    pub background_spread: f64,
}

/// Checks for `signal |0...0><0...0| + background * 1`.
pub fn verify_pps(rho: &DensityOperator) -> PpsReport {
    let diag = rho.diagonal();
    let rest = &diag[1..];
    let background = rest.iter().sum::<f64>() / rest.len() as f64;
    let hi = rest.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let lo = rest.iter().cloned().fold(f64::INFINITY, f64::min);
    let max_offdiag = rho.max_off_diagonal();
    let spread = hi - lo;
    PpsReport {
        is_pps: max_offdiag <= PPS_TOL && spread <= PPS_TOL,
        background,
        signal: diag[0] - background,
        max_offdiag,
        background_spread: spread,
    }
}

/// How the second shaped pulse is applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sp2Variant {
    /// All rotations in one pulse, one gradient afterwards.
    Packed,
    /// A gradient after every rotation.
    Crushed,
}

/// Density matrices after each stage of thermal -> SP1 -> Gz -> SP2 -> Gz.
#[derive(Debug, Clone)]
pub struct PpsRun {
    pub layout: SpinLayout,
    pub thermal: DensityOperator,
    pub after_sp1: DensityOperator,
    pub after_g1: DensityOperator,
    pub after_sp2: DensityOperator,
    pub final_state: DensityOperator,
    pub report: PpsReport,
}

impl PpsRun {
    pub fn stages(&self) -> [(&'static str, &DensityOperator); 5] {
        [
            ("thermal", &self.thermal),
            ("sp1", &self.after_sp1),
            ("gz1", &self.after_g1),
            ("sp2", &self.after_sp2),
            ("gz2", &self.final_state),
        ]
    }
}

pub fn run_pps_sequence(layout: &SpinLayout, variant: Sp2Variant) -> Result<PpsRun> {
    let thermal = thermal_deviation(layout);
    let after_sp1 = sp1_deplete(&thermal, layout)?;
    let after_g1 = gradient_dephase(&after_sp1, layout)?;
    let after_sp2 = match variant {
        Sp2Variant::Packed => sp2_redistribute(&after_g1, layout)?,
        Sp2Variant::Crushed => sp2_redistribute_crushed(&after_g1, layout)?,
    };
    let final_state = gradient_dephase(&after_sp2, layout)?;
    let report = verify_pps(&final_state);
    Ok(PpsRun {
        layout: layout.clone(),
        thermal,
        after_sp1,
        after_g1,
        after_sp2,
        final_state,
        report,
    })
}
