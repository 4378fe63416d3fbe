use crate::descent::DescentSettings;
use crate::model::DensityField;

/// Initial density shape for the grid minimizers.
#[derive(Debug, Clone)]
pub enum Init<G> {
    /// Exponential profile per well / nucleus (the linear-limit shape).
    Exponential,
    /// Constant density over the box.
    Uniform,
    /// Caller-provided starting density.
    Provided(DensityField<G>),
}

/// Stopping and stepping parameters for the descent solvers.
#[derive(Debug, Clone)]
pub struct SolverConfig<G> {
    /// Stop when the energy decrease per accepted step falls below this.
    pub energy_tol: f64,
    /// Stop when the projected-gradient norm falls below this.
    pub grad_tol: f64,
    pub max_iter: usize,
    /// Initial line-search step; adapted as the iteration proceeds.
    pub step: f64,
    pub init: Init<G>,
}

impl<G> Default for SolverConfig<G> {
    fn default() -> Self {
        Self {
            energy_tol: 1e-14,
            grad_tol: 1e-6,
            max_iter: 50_000,
            step: 1.0,
            init: Init::Exponential,
        }
    }
}

impl<G> SolverConfig<G> {
    pub(crate) fn settings(&self) -> DescentSettings {
        DescentSettings {
            energy_tol: self.energy_tol,
            grad_tol: self.grad_tol,
            max_iter: self.max_iter,
            step: self.step,
        }
    }
}
