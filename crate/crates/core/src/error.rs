use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Error)]
pub enum CoreError {
    /// A parameter is outside the domain where the requested quantity is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// The closed-form sech ground state does not exist for these parameters
    /// (b <= 1); a grid solver must be used instead.
    #[error("closed form invalid; use grid solver (b = {b})")]
    ClosedFormInvalid { b: f64 },

    /// Degenerate boundary b = 1 of the closed form (zero-mass / linear limit);
    /// the profile parameters blow up even though the energy stays finite.
    #[error("closed form degenerate at b = 1; use atom_energy_exact or the grid solver")]
    ClosedFormDegenerate,

    /// Density values were negative or otherwise inadmissible.
    #[error("invalid density: {0}")]
    InvalidDensity(String),

    /// A well or sample point falls outside the grid span.
    #[error("position {position} outside grid span [{min}, {max}]")]
    OutsideGrid { position: f64, min: f64, max: f64 },

    /// Converged density does not vanish at the boundary: the box is too small
    /// for the requested parameters.
    #[error("grid too small: boundary density {boundary_density:.3e} exceeds {limit:.1e}")]
    GridTooSmall { boundary_density: f64, limit: f64 },

    /// Iterative minimization did not reach the gradient tolerance.
    #[error(
        "no convergence after {iterations} iterations: energy {energy}, \
         projected gradient norm {grad_norm:.3e} > tol {grad_tol:.3e}"
    )]
    NonConvergence {
        iterations: usize,
        energy: f64,
        grad_norm: f64,
        grad_tol: f64,
    },

    /// A scan sub-solve failed; carries the scan coordinate for diagnosis.
    #[error("solver failed at scan point {at}: {source}")]
    ScanPoint {
        at: f64,
        #[source]
        source: Box<CoreError>,
    },

    /// Bisection preconditions not met.
    #[error("interval does not bracket the transition: {0}")]
    NoBracket(String),
}

pub type Result<T> = std::result::Result<T, CoreError>;
