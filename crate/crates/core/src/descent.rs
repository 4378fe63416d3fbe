//! Projected gradient descent on the mass sphere for square-root densities.
//!
//! Minimizes a discrete energy E(phi) subject to sum_i w_i phi_i^2 = mass.
//! The search direction is the metric gradient (Euclidean gradient divided by
//! the quadrature weights) passed through an optional symmetric positive
//! definite tridiagonal preconditioner that tames the kinetic stiffness, then
//! projected onto the tangent space of the sphere. A backtracking Armijo line
//! search with renormalization after every trial keeps the iterates feasible.

use crate::error::{CoreError, Result};

/// Stopping parameters shared by the 1D and radial solvers.
#[derive(Debug, Clone, PartialEq)]
pub struct DescentSettings {
    pub energy_tol: f64,
    pub grad_tol: f64,
    pub max_iter: usize,
    pub step: f64,
}

/// Converged iterate of [`minimize_on_sphere`].
#[derive(Debug, Clone)]
pub struct DescentOutcome {
    pub phi: Vec<f64>,
    pub energy: f64,
    pub grad_norm: f64,
    pub iterations: usize,
}

/// Symmetric tridiagonal matrix, stored as diagonal and subdiagonal.
#[derive(Debug, Clone)]
pub struct Tridiagonal {
    pub diag: Vec<f64>,
    pub off: Vec<f64>,
}

impl Tridiagonal {
    /// Solve T x = b by the Thomas algorithm. T must be positive definite.
    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let n = self.diag.len();
        debug_assert_eq!(b.len(), n);
        debug_assert_eq!(self.off.len(), n - 1);
        let mut c_star = vec![0.0; n];
        let mut x = vec![0.0; n];
        c_star[0] = self.off[0] / self.diag[0];
        x[0] = b[0] / self.diag[0];
        for i in 1..n {
            let m = self.diag[i] - self.off[i - 1] * c_star[i - 1];
            if i < n - 1 {
                c_star[i] = self.off[i] / m;
            }
            x[i] = (b[i] - self.off[i - 1] * x[i - 1]) / m;
        }
        for i in (0..n - 1).rev() {
            let next = x[i + 1];
            x[i] -= c_star[i] * next;
        }
        x
    }
}

fn weighted_dot(w: &[f64], a: &[f64], b: &[f64]) -> f64 {
    w.iter()
        .zip(a.iter().zip(b))
        .map(|(w, (a, b))| w * a * b)
        .sum()
}

fn renormalize(phi: &mut [f64], w: &[f64], mass: f64) {
    let m: f64 = weighted_dot(w, phi, phi);
    if m > 0.0 {
        let s = (mass / m).sqrt();
        phi.iter_mut().for_each(|p| *p *= s);
    }
}

/// Minimize `energy_grad` over { phi : sum w phi^2 = mass }.
///
/// `energy_grad(phi, grad)` must return the energy and fill the Euclidean
/// gradient dE/dphi. `precond`, when present, is applied to the Euclidean
/// gradient to produce the search direction; it should approximate
/// (W + tau K)^{-1} with K the kinetic Hessian. Without it the metric
/// gradient g / w is used directly.
///
/// Convergence: the weighted norm of the projected metric gradient falls
/// below `grad_tol`, or the energy decrease per accepted step falls below
/// `energy_tol`. Exceeding `max_iter` is an error carrying the last iterate's
/// diagnostics.
pub fn minimize_on_sphere(
    mut phi: Vec<f64>,
    mass: f64,
    w: &[f64],
    settings: &DescentSettings,
    precond: Option<&Tridiagonal>,
    energy_grad: &mut dyn FnMut(&[f64], &mut [f64]) -> f64,
) -> Result<DescentOutcome> {
    let n = phi.len();
    assert_eq!(w.len(), n);
    if !(mass > 0.0) {
        return Err(CoreError::Domain(format!(
            "sphere radius needs positive mass, got {mass}"
        )));
    }
    renormalize(&mut phi, w, mass);

    let mut grad = vec![0.0; n];
    let mut energy = energy_grad(&phi, &mut grad);
    let mut step = settings.step;
    let mut trial = vec![0.0; n];
    let mut trial_grad = vec![0.0; n];

    for iter in 0..settings.max_iter {
        // projected metric gradient: convergence measure and fallback direction
        let mut gdir: Vec<f64> = grad.iter().zip(w).map(|(g, w)| g / w).collect();
        let c = weighted_dot(w, &gdir, &phi) / mass;
        gdir.iter_mut().zip(&phi).for_each(|(d, p)| *d -= c * p);
        let gproj_norm = weighted_dot(w, &gdir, &gdir).sqrt();
        if gproj_norm <= settings.grad_tol {
            return Ok(DescentOutcome {
                phi,
                energy,
                grad_norm: gproj_norm,
                iterations: iter,
            });
        }

        // preferred direction: preconditioned gradient, projected onto the
        // tangent space of the mass sphere in the preconditioner metric so
        // the result is still a descent direction (Cauchy-Schwarz in the
        // P inner product)
        let pdir: Option<Vec<f64>> = precond.map(|t| {
            let mut dir = t.solve(&grad);
            let normal: Vec<f64> = w.iter().zip(&phi).map(|(w, p)| w * p).collect();
            let z = t.solve(&normal);
            let c = weighted_dot(w, &dir, &phi) / weighted_dot(w, &z, &phi);
            dir.iter_mut().zip(&z).for_each(|(d, z)| *d -= c * z);
            dir
        });

        // Armijo backtracking along -dir with renormalization; the plain
        // projected gradient is the fallback when the preconditioned
        // direction stops making progress at rounding level
        let mut accepted = false;
        let mut converged = false;
        for (attempt, dir) in [pdir.as_ref(), Some(&gdir)]
            .into_iter()
            .flatten()
            .enumerate()
        {
            let slope: f64 = dir.iter().zip(&grad).map(|(d, g)| d * g).sum();
            if !(slope > 0.0) {
                continue;
            }
            let mut s = if attempt == 0 { step } else { settings.step };
            for _ in 0..60 {
                for i in 0..n {
                    trial[i] = phi[i] - s * dir[i];
                }
                renormalize(&mut trial, w, mass);
                let e_trial = energy_grad(&trial, &mut trial_grad);
                if e_trial <= energy - 1e-4 * s * slope {
                    let de = energy - e_trial;
                    std::mem::swap(&mut phi, &mut trial);
                    std::mem::swap(&mut grad, &mut trial_grad);
                    energy = e_trial;
                    step = s * 1.25;
                    accepted = true;
                    converged = de < settings.energy_tol;
                    break;
                }
                s *= 0.5;
            }
            if accepted {
                break;
            }
        }
        if converged {
            return Ok(DescentOutcome {
                phi,
                energy,
                grad_norm: gproj_norm,
                iterations: iter + 1,
            });
        }
        if !accepted {
            // line search exhausted: either converged to rounding or stuck
            if gproj_norm <= 10.0 * settings.grad_tol {
                return Ok(DescentOutcome {
                    phi,
                    energy,
                    grad_norm: gproj_norm,
                    iterations: iter,
                });
            }
            return Err(CoreError::NonConvergence {
                iterations: iter,
                energy,
                grad_norm: gproj_norm,
                grad_tol: settings.grad_tol,
            });
        }
    }

    // report the final gradient norm honestly
    let gproj_norm = {
        let gmetric: Vec<f64> = grad.iter().zip(w).map(|(g, w)| g / w).collect();
        let c = weighted_dot(w, &gmetric, &phi) / mass;
        let mut s = 0.0;
        for i in 0..n {
            let v = gmetric[i] - c * phi[i];
            s += w[i] * v * v;
        }
        s.sqrt()
    };
    if gproj_norm <= settings.grad_tol {
        return Ok(DescentOutcome {
            phi,
            energy,
            grad_norm: gproj_norm,
            iterations: settings.max_iter,
        });
    }
    Err(CoreError::NonConvergence {
        iterations: settings.max_iter,
        energy,
        grad_norm: gproj_norm,
        grad_tol: settings.grad_tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    #[allow(clippy::neg_multiply)]
    fn tridiagonal_solve_roundtrip() {
        let t = Tridiagonal {
            diag: vec![4.0, 5.0, 6.0, 5.0],
            off: vec![-1.0, -2.0, -1.0],
        };
        let x_true = [1.0, -2.0, 0.5, 3.0];
        // b = T x
        let b = [
            4.0 * 1.0 + -1.0 * -2.0,
            -1.0 * 1.0 + 5.0 * -2.0 + -2.0 * 0.5,
            -2.0 * -2.0 + 6.0 * 0.5 + -1.0 * 3.0,
            -1.0 * 0.5 + 5.0 * 3.0,
        ];
        let x = t.solve(&b);
        for (a, b) in x.iter().zip(&x_true) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn quadratic_model_problem() {
        // minimize <phi, A phi> with A = diag(1..n) on the unit sphere:
        // minimum is the first basis vector with energy 1
        let n = 20;
        let w = vec![1.0; n];
        let settings = DescentSettings {
            energy_tol: 0.0,
            grad_tol: 1e-7,
            max_iter: 10_000,
            step: 0.1,
        };
        let phi0 = vec![1.0; n];
        let out = minimize_on_sphere(phi0, 1.0, &w, &settings, None, &mut |phi, grad| {
            let mut e = 0.0;
            for i in 0..n {
                let a = (i + 1) as f64;
                e += a * phi[i] * phi[i];
                grad[i] = 2.0 * a * phi[i];
            }
            e
        })
        .unwrap();
        assert!((out.energy - 1.0).abs() < 1e-9, "energy {}", out.energy);
        assert!(out.phi[0].abs() > 0.999);
    }
}
