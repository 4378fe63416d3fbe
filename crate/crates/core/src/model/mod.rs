//! Grids, densities, exchange functions, and the shared energy functionals.

mod density;
mod energy;
mod exchange;
mod grid;

pub use density::{DensityField, Quadrature};
pub use energy::{
    energy_1d, energy_3d, energy_gradient_1d, energy_gradient_3d, EnergyBreakdown, TermFlags, Well,
};
pub use exchange::{ExchangeKind, ExchangeSpec, UEG_C_XC};
pub use grid::{LineGrid, RadialGrid};

pub(crate) use energy::{energy_grad_1d, energy_grad_3d, snap_wells};
