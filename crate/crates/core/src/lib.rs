//! Numerical laboratory for dissociation limits of single-density DFT models:
//! exact and grid-based solvers for a 1D contact-potential model, a radial
//! von Weizsaecker/Dirac solver for fractional electron mass, and the scan
//! machinery behind splitting curves and symmetry-breaking thresholds.
//!
//! All quantities are in Hartree atomic units.

// `!(x > 0.0)` deliberately rejects NaN along with the out-of-range values
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analytic1d;
mod config;
mod descent;
mod error;
pub mod model;
pub mod solver1d;
pub mod solver3d;

pub use config::{Init, SolverConfig};
pub use error::{CoreError, Result};
pub use model::{
    energy_1d, energy_3d, energy_gradient_1d, energy_gradient_3d, DensityField, EnergyBreakdown,
    ExchangeKind, ExchangeSpec, LineGrid, Quadrature, RadialGrid, TermFlags, Well, UEG_C_XC,
};
