//! Closed-form ground state of the 1D contact-potential atom and the exact
//! dissociated splitting sum.
//!
//! The atom functional has the explicit minimizer rho = alpha |psi|^2 with
//! psi(x) = a sech(b|x| + x0), valid for b > 1, i.e. c_xc > 1/2 at positive
//! mass. All energies are in Hartree units.

use crate::error::{CoreError, Result};

/// Parameters of the exact sech-shaped ground state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SechSolution {
    pub alpha: f64,
    pub c_xc: f64,
    pub a: f64,
    pub b: f64,
    pub x0: f64,
}

impl SechSolution {
    /// Normalized orbital psi(x) = a sech(b|x| + x0).
    pub fn psi(&self, x: f64) -> f64 {
        self.a / (self.b * x.abs() + self.x0).cosh()
    }

    /// Ground-state density rho(x) = alpha psi(x)^2.
    pub fn density(&self, x: f64) -> f64 {
        let p = self.psi(x);
        self.alpha * p * p
    }
}

fn profile_b(alpha: f64, c_xc: f64) -> f64 {
    1.0 - alpha * (1.0 - 2.0 * c_xc) / 2.0
}

/// arctanh via the log formula, to keep results identical across platforms.
fn arctanh(t: f64) -> f64 {
    0.5 * ((1.0 + t) / (1.0 - t)).ln()
}

/// Closed-form ground-state parameters for mass `alpha` and exchange
/// strength `c_xc`. Requires b > 1, which for positive mass means c_xc > 1/2.
pub fn sech_params(alpha: f64, c_xc: f64) -> Result<SechSolution> {
    if !(alpha > 0.0) {
        return Err(CoreError::Domain(format!(
            "mass must be positive, got {alpha}"
        )));
    }
    let b = profile_b(alpha, c_xc);
    if b == 1.0 {
        return Err(CoreError::ClosedFormDegenerate);
    }
    if b < 1.0 || !b.is_finite() {
        return Err(CoreError::ClosedFormInvalid { b });
    }
    let a = (b * b / (2.0 * (b - 1.0))).sqrt();
    let x0 = arctanh(1.0 / b);
    Ok(SechSolution {
        alpha,
        c_xc,
        a,
        b,
        x0,
    })
}

/// Exact atom ground-state energy I_alpha.
///
/// Component integrals of the sech profile:
///   kinetic  = alpha (b^2 + b + 1) / 6
///   rho(0)   = alpha (b + 1) / 2
///   int rho^2 = alpha^2 (2b + 1) / 6
/// so I_alpha = kinetic - rho(0) + (1/2 - c_xc) int rho^2.
pub fn atom_energy_exact(alpha: f64, c_xc: f64) -> Result<f64> {
    if !(alpha >= 0.0) {
        return Err(CoreError::Domain(format!(
            "mass must be nonnegative, got {alpha}"
        )));
    }
    if c_xc < 0.5 {
        return Err(CoreError::Domain(format!(
            "closed form established only for c_xc >= 1/2, got {c_xc}"
        )));
    }
    if alpha == 0.0 {
        return Ok(0.0);
    }
    let b = profile_b(alpha, c_xc);
    Ok(alpha * (b * b + b + 1.0) / 6.0 - alpha * (b + 1.0) / 2.0
        + (0.5 - c_xc) * alpha * alpha * (2.0 * b + 1.0) / 6.0)
}

/// Exact dissociated splitting sum I_alpha + I_{2 - alpha}:
/// (alpha^2 (3 - 12 c^2) + 6 alpha (4 c^2 - 1) - 4 (1 + 2c + 4c^2)) / 12.
pub fn splitting_sum_exact(alpha: f64, c_xc: f64) -> Result<f64> {
    if c_xc < 0.5 {
        return Err(CoreError::Domain(format!(
            "closed form established only for c_xc >= 1/2, got {c_xc}"
        )));
    }
    let c2 = c_xc * c_xc;
    Ok(
        (alpha * alpha * (3.0 - 12.0 * c2) + 6.0 * alpha * (4.0 * c2 - 1.0)
            - 4.0 * (1.0 + 2.0 * c_xc + 4.0 * c2))
            / 12.0,
    )
}

/// Minimizer of alpha -> I_alpha + I_{2-alpha} over [0, 1]. For c_xc > 1/2
/// the sum is a downward parabola with vertex at alpha = 1, so the minimum
/// sits at the boundary alpha = 0: both electrons bind to one nucleus.
pub fn splitting_argmin_exact(c_xc: f64) -> Result<f64> {
    if c_xc <= 0.5 {
        return Err(CoreError::Domain(format!(
            "argmin formula requires c_xc > 1/2, got {c_xc}"
        )));
    }
    Ok(0.0)
}
