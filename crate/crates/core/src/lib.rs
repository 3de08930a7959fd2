//! Hybrid quantum-classical DMFT for the two-site Anderson impurity model.
//!
//! A dense state-vector simulator plays the quantum processor: it prepares the
//! impurity ground state, runs the ancilla scattering circuit for the two
//! time correlators, and hands them to a classical loop that fixes the bath
//! coupling through the Bethe-lattice self-consistency condition.
//!
//! ```
//! use siam_dmft::model::SiamParams;
//! use siam_dmft::solver::{prepare_psi0, scattering_correlation, Correlator, CorrelatorRequest, EvolutionMode};
//!
//! let req = CorrelatorRequest {
//!     which: Correlator::O1,
//!     t: std::f64::consts::PI,
//!     mode: EvolutionMode::Exact,
//!     params: SiamParams::half_filled(0.0, 0.5),
//! };
//! let o1 = scattering_correlation(&req, &prepare_psi0()).unwrap();
//! assert!((o1.im + 1.0).abs() < 1e-10);
//! ```

pub mod cli;
pub mod dmft;
pub mod error;
pub mod greens;
pub mod model;
pub mod pps;
pub mod qsim;
pub mod solver;

pub use error::{Error, Result};
