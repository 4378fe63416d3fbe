//! Grid-based constrained minimization of the 1D contact-potential DFT
//! functional for the atom and the two-center molecule, plus a two-particle
//! Schroedinger reference solver.

mod twobody;

pub use twobody::{two_particle_ground, TwoParticleGround};

use crate::config::{Init, SolverConfig};
use crate::descent::{minimize_on_sphere, DescentOutcome, Tridiagonal};
use crate::error::{CoreError, Result};
use crate::model::{energy_grad_1d, snap_wells, DensityField, EnergyBreakdown, LineGrid, Well};

/// Boundary density above which a converged solve is rejected as boxed in.
const BOUNDARY_LIMIT: f64 = 1e-10;

/// Converged minimizer with its diagnostics.
#[derive(Debug, Clone)]
pub struct Minimum1d {
    pub density: DensityField<LineGrid>,
    pub breakdown: EnergyBreakdown,
    pub grad_norm: f64,
    pub iterations: usize,
}

/// One converged point of a dissociation curve.
#[derive(Debug, Clone)]
pub struct DissociationPoint {
    pub r: f64,
    pub energy: f64,
    pub breakdown: EnergyBreakdown,
}

/// Dissociation curve together with its large-R asymptote.
#[derive(Debug, Clone)]
pub struct DissociationCurve {
    pub points: Vec<DissociationPoint>,
    /// min over alpha of I_alpha + I_{lambda - alpha}.
    pub asymptote: f64,
    /// |last energy - asymptote|.
    pub final_gap: f64,
}

/// Default atom grid: [-40, 40] with h = 0.01.
pub fn default_atom_grid() -> LineGrid {
    LineGrid::with_spacing(-40.0, 40.0, 0.01).expect("static grid is valid")
}

/// Default molecule grid for internuclear distance `r`: [-40, r + 40], h = 0.02.
pub fn default_molecule_grid(r: f64) -> Result<LineGrid> {
    LineGrid::with_spacing(-40.0, r + 40.0, 0.02)
}

/// (W + tau K) preconditioner with K the kinetic Hessian of the 1D functional.
fn preconditioner_1d(grid: &LineGrid, tau: f64) -> Tridiagonal {
    let n = grid.len();
    let h = grid.spacing();
    let mut diag: Vec<f64> = (0..n).map(|i| grid.weight(i)).collect();
    let mut off = vec![0.0; n - 1];
    for i in 0..n - 1 {
        diag[i] += tau / h;
        diag[i + 1] += tau / h;
        off[i] = -tau / h;
    }
    Tridiagonal { diag, off }
}

fn initial_phi(
    grid: &LineGrid,
    init: &Init<LineGrid>,
    centers: &[(f64, f64)],
    mass: f64,
) -> Result<Vec<f64>> {
    let rho = match init {
        Init::Provided(d) => d.clone(),
        Init::Uniform => {
            let n = grid.len();
            DensityField::new(grid.clone(), vec![mass / (grid.x_max() - grid.x_min()); n])?
        }
        Init::Exponential => {
            let mut vals = vec![0.0; grid.len()];
            for &(center, share) in centers {
                let part = DensityField::exponential(grid.clone(), center, share * mass)?;
                for (v, p) in vals.iter_mut().zip(part.values()) {
                    *v += p;
                }
            }
            DensityField::new(grid.clone(), vals)?
        }
    };
    Ok(rho.sqrt_values())
}

fn run_descent(
    grid: &LineGrid,
    phi0: Vec<f64>,
    mass: f64,
    wells: &[(usize, f64)],
    c_xc: f64,
    cfg: &SolverConfig<LineGrid>,
) -> Result<DescentOutcome> {
    let w = grid.weights();
    let precond = preconditioner_1d(grid, 1.0);
    minimize_on_sphere(
        phi0,
        mass,
        &w,
        &cfg.settings(),
        Some(&precond),
        &mut |phi, grad| energy_grad_1d(grid, phi, wells, c_xc, Some(grad)).total,
    )
}

fn finish(
    grid: &LineGrid,
    out: DescentOutcome,
    wells: &[(usize, f64)],
    c_xc: f64,
) -> Result<Minimum1d> {
    let n = grid.len();
    let boundary = (out.phi[0] * out.phi[0]).max(out.phi[n - 1] * out.phi[n - 1]);
    if boundary > BOUNDARY_LIMIT {
        return Err(CoreError::GridTooSmall {
            boundary_density: boundary,
            limit: BOUNDARY_LIMIT,
        });
    }
    let breakdown = energy_grad_1d(grid, &out.phi, wells, c_xc, None);
    let density = DensityField::from_sqrt(grid.clone(), &out.phi)?;
    Ok(Minimum1d {
        density,
        breakdown,
        grad_norm: out.grad_norm,
        iterations: out.iterations,
    })
}

/// Mass-`alpha` local minimizer of the single-well contact functional.
pub fn minimize_atom_1d(
    alpha: f64,
    c_xc: f64,
    cfg: &SolverConfig<LineGrid>,
    grid: &LineGrid,
) -> Result<Minimum1d> {
    if !(alpha > 0.0) {
        return Err(CoreError::Domain(format!(
            "mass must be positive, got {alpha}"
        )));
    }
    let wells = snap_wells(grid, &[Well::new(0.0, 1.0)?])?;
    let phi0 = initial_phi(grid, &cfg.init, &[(0.0, 1.0)], alpha)?;
    let out = run_descent(grid, phi0, alpha, &wells, c_xc, cfg)?;
    finish(grid, out, &wells, c_xc)
}

/// Mass-`lambda` local minimizer of the two-well functional with wells at 0
/// and `r` (snapped to grid points). Runs from left-heavy, right-heavy, and
/// symmetric starts and keeps the lowest converged energy.
pub fn minimize_molecule_1d(
    lambda: f64,
    r: f64,
    c_xc: f64,
    cfg: &SolverConfig<LineGrid>,
    grid: &LineGrid,
) -> Result<Minimum1d> {
    if !(lambda > 0.0) {
        return Err(CoreError::Domain(format!(
            "mass must be positive, got {lambda}"
        )));
    }
    if !(r >= 0.0) {
        return Err(CoreError::Domain(format!(
            "internuclear distance must be nonnegative, got {r}"
        )));
    }
    let wells = snap_wells(grid, &[Well::new(0.0, 1.0)?, Well::new(r, 1.0)?])?;

    // competing basins: all mass left, all mass right, symmetric split
    let starts: [&[(f64, f64)]; 3] = [&[(0.0, 1.0)], &[(r, 1.0)], &[(0.0, 0.5), (r, 0.5)]];
    let mut best: Option<DescentOutcome> = None;
    let mut last_err = None;
    for centers in starts {
        let phi0 = match &cfg.init {
            Init::Provided(_) | Init::Uniform => initial_phi(grid, &cfg.init, centers, lambda)?,
            Init::Exponential => initial_phi(grid, &Init::Exponential, centers, lambda)?,
        };
        match run_descent(grid, phi0, lambda, &wells, c_xc, cfg) {
            Ok(out) => {
                if best.as_ref().is_none_or(|b| out.energy < b.energy) {
                    best = Some(out);
                }
            }
            Err(e) => last_err = Some(e),
        }
        // a provided or uniform start is position independent; no multi-start
        if !matches!(cfg.init, Init::Exponential) {
            break;
        }
    }
    match best {
        Some(out) => finish(grid, out, &wells, c_xc),
        None => Err(last_err.expect("at least one start attempted")),
    }
}

/// Large-R limit min_alpha (I_alpha + I_{lambda-alpha}) of the molecule energy.
///
/// For c_xc >= 1/2 the exact atom energies are available and the minimum is
/// taken over a fine alpha ladder; below 1/2 the infimum map is convex, so the
/// symmetric split is optimal and a single grid solve suffices.
pub fn dissociation_asymptote(
    lambda: f64,
    c_xc: f64,
    cfg: &SolverConfig<LineGrid>,
    grid: &LineGrid,
) -> Result<f64> {
    if c_xc >= 0.5 {
        let steps = 400;
        let mut best = f64::INFINITY;
        for k in 0..=steps {
            let alpha = lambda / 2.0 * k as f64 / steps as f64;
            let sum = crate::analytic1d::atom_energy_exact(alpha, c_xc)?
                + crate::analytic1d::atom_energy_exact(lambda - alpha, c_xc)?;
            if sum < best {
                best = sum;
            }
        }
        Ok(best)
    } else {
        let half = minimize_atom_1d(lambda / 2.0, c_xc, cfg, grid)?;
        Ok(2.0 * half.breakdown.total)
    }
}

/// Converged molecule minimizers along an increasing ladder of internuclear
/// distances, with the gap of the last point to the exact dissociation limit.
pub fn dissociation_curve_1d(
    lambda: f64,
    c_xc: f64,
    r_values: &[f64],
    cfg: &SolverConfig<LineGrid>,
    grid: &LineGrid,
) -> Result<DissociationCurve> {
    if r_values.is_empty() {
        return Err(CoreError::Domain("no R values requested".into()));
    }
    if r_values.windows(2).any(|w| w[1] <= w[0]) {
        return Err(CoreError::Domain("R values must be increasing".into()));
    }
    let margin = -grid.x_min();
    let h = grid.spacing();
    let mut points = Vec::with_capacity(r_values.len());
    for &r in r_values {
        let mol_grid = LineGrid::with_spacing(-margin, r + margin, h)?;
        let m = minimize_molecule_1d(lambda, r, c_xc, cfg, &mol_grid).map_err(|e| {
            CoreError::ScanPoint {
                at: r,
                source: Box::new(e),
            }
        })?;
        points.push(DissociationPoint {
            r,
            energy: m.breakdown.total,
            breakdown: m.breakdown,
        });
    }
    let asymptote = dissociation_asymptote(lambda, c_xc, cfg, grid)?;
    let final_gap = (points.last().expect("nonempty").energy - asymptote).abs();
    Ok(DissociationCurve {
        points,
        asymptote,
        final_gap,
    })
}

/// Euler-Lagrange residual of the 1D functional at a given density:
/// || h phi - eps phi || / || phi || in the quadrature norm, with
/// eps = <phi, h phi> / <phi, phi> unless a multiplier guess is supplied.
pub fn euler_lagrange_residual_1d(
    density: &DensityField<LineGrid>,
    wells: &[Well],
    c_xc: f64,
    fermi_guess: Option<f64>,
) -> Result<(f64, f64)> {
    let grid = density.grid();
    let wells = snap_wells(grid, wells)?;
    let phi = density.sqrt_values();
    let n = grid.len();
    let mut grad = vec![0.0; n];
    energy_grad_1d(grid, &phi, &wells, c_xc, Some(&mut grad));
    // metric gradient is 2 h phi
    let hphi: Vec<f64> = (0..n).map(|i| 0.5 * grad[i] / grid.weight(i)).collect();
    let norm_sq: f64 = (0..n).map(|i| grid.weight(i) * phi[i] * phi[i]).sum();
    if norm_sq == 0.0 {
        return Err(CoreError::InvalidDensity("zero density".into()));
    }
    let fermi: f64 = (0..n)
        .map(|i| grid.weight(i) * phi[i] * hphi[i])
        .sum::<f64>()
        / norm_sq;
    let eps = fermi_guess.unwrap_or(fermi);
    let mut res = 0.0;
    for i in 0..n {
        let v = hphi[i] - eps * phi[i];
        res += grid.weight(i) * v * v;
    }
    Ok(((res / norm_sq).sqrt(), fermi))
}
