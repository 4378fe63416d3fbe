//! Radial TFDW/Dirac minimizer for fractional electron mass, splitting scans
//! over the mass distribution, the symmetry-breaking threshold in the
//! exchange strength, and the analytic HLS sufficiency bound.

use rayon::prelude::*;

use crate::config::{Init, SolverConfig};
use crate::descent::{minimize_on_sphere, DescentOutcome, Tridiagonal};
use crate::error::{CoreError, Result};
use crate::model::{
    energy_grad_3d, DensityField, EnergyBreakdown, ExchangeSpec, RadialGrid, TermFlags,
};

/// Spherically symmetric Hartree potential of a radial density,
/// v_H(r) = (1/r) int_0^r 4 pi s^2 rho ds + int_r^inf 4 pi s rho ds.
pub fn hartree_potential_radial(density: &DensityField<RadialGrid>) -> Vec<f64> {
    hartree_kernel(density.grid(), density.values())
}

/// Kernel form on raw values: v_i = sum_j w_j rho_j / max(r_i, r_j), computed
/// with prefix and suffix sums. The symmetry of the kernel makes the Hartree
/// energy an exact quadratic form, which the solver gradient relies on.
pub(crate) fn hartree_kernel(grid: &RadialGrid, rho: &[f64]) -> Vec<f64> {
    let n = grid.len();
    let r = grid.radii();
    let mut inner = vec![0.0; n]; // cumulative charge sum_{j<=i} w_j rho_j
    let mut acc = 0.0;
    for i in 0..n {
        acc += grid.weight(i) * rho[i];
        inner[i] = acc;
    }
    let mut outer = vec![0.0; n]; // sum_{j>i} w_j rho_j / r_j
    let mut acc = 0.0;
    for i in (0..n).rev() {
        outer[i] = acc;
        acc += grid.weight(i) * rho[i] / r[i];
    }
    (0..n).map(|i| inner[i] / r[i] + outer[i]).collect()
}

/// Converged radial minimizer with diagnostics.
#[derive(Debug, Clone)]
pub struct Minimum3d {
    pub density: DensityField<RadialGrid>,
    pub breakdown: EnergyBreakdown,
    pub grad_norm: f64,
    pub iterations: usize,
    /// Set when alpha > 2Z: existence of a minimizer is not guaranteed there,
    /// so the result is best-effort.
    pub overcharged: bool,
}

fn preconditioner_3d(grid: &RadialGrid, tau: f64) -> Tridiagonal {
    let n = grid.len();
    let r = grid.radii();
    let mut diag: Vec<f64> = (0..n).map(|i| grid.weight(i)).collect();
    let mut off = vec![0.0; n - 1];
    for i in 0..n - 1 {
        let dr = r[i + 1] - r[i];
        let rmid = 0.5 * (r[i] + r[i + 1]);
        let coef = tau * 4.0 * std::f64::consts::PI * rmid * rmid / dr;
        diag[i] += coef;
        diag[i + 1] += coef;
        off[i] = -coef;
    }
    Tridiagonal { diag, off }
}

fn radial_profile(grid: &RadialGrid, mass: f64, shape: impl Fn(f64) -> f64) -> Result<Vec<f64>> {
    let raw: Vec<f64> = grid.radii().iter().map(|&r| shape(r)).collect();
    let m = grid.integrate(&raw);
    if !(m > 0.0) {
        return Err(CoreError::InvalidDensity("degenerate start profile".into()));
    }
    Ok(raw.iter().map(|v| (v * mass / m).sqrt()).collect())
}

/// Mass-`alpha` local minimizer of the radial TFDW functional around a
/// nucleus of charge `z`. For strong exchange (c_xc > 1) the functional may
/// be nonconvex, so the solver runs from compact, diffuse, and shell-like
/// starts and keeps the lowest converged energy.
pub fn minimize_radial(
    alpha: f64,
    z: f64,
    c_xc: f64,
    cfg: &SolverConfig<RadialGrid>,
    grid: &RadialGrid,
    flags: TermFlags,
) -> Result<Minimum3d> {
    if !(alpha > 0.0) {
        return Err(CoreError::Domain(format!(
            "mass must be positive, got {alpha}"
        )));
    }
    if !(z > 0.0) {
        return Err(CoreError::Domain(format!(
            "charge must be positive, got {z}"
        )));
    }
    let xc = ExchangeSpec::dirac_3d(c_xc)?;
    let w = grid.weights().to_vec();
    let precond = preconditioner_3d(grid, 1.0);

    let mut starts: Vec<Vec<f64>> = Vec::new();
    match &cfg.init {
        Init::Provided(d) => starts.push(d.sqrt_values()),
        Init::Uniform => {
            let n = grid.len();
            starts.push(radial_profile(grid, alpha, |r| {
                if r <= grid.radius(n - 1) {
                    1.0
                } else {
                    0.0
                }
            })?);
        }
        Init::Exponential => {
            starts.push(radial_profile(grid, alpha, |r| (-2.0 * z * r).exp())?);
            if c_xc > 1.0 {
                // competing basins expected for strong exchange
                starts.push(radial_profile(grid, alpha, |r| (-z * r).exp())?);
                starts.push(radial_profile(grid, alpha, |r| {
                    r * r * (-2.0 * z * r).exp()
                })?);
            }
        }
    }

    let mut best: Option<DescentOutcome> = None;
    let mut last_err = None;
    for phi0 in starts {
        let attempt = minimize_on_sphere(
            phi0,
            alpha,
            &w,
            &cfg.settings(),
            Some(&precond),
            &mut |phi, grad| energy_grad_3d(grid, phi, z, xc.c_xc, flags, Some(grad)).total,
        );
        match attempt {
            Ok(out) => {
                if best.as_ref().is_none_or(|b| out.energy < b.energy) {
                    best = Some(out);
                }
            }
            Err(e) => last_err = Some(e),
        }
    }
    let out = match best {
        Some(out) => out,
        None => return Err(last_err.expect("at least one start attempted")),
    };
    let breakdown = energy_grad_3d(grid, &out.phi, z, xc.c_xc, flags, None);
    let density = DensityField::from_sqrt(grid.clone(), &out.phi)?;
    Ok(Minimum3d {
        density,
        breakdown,
        grad_norm: out.grad_norm,
        iterations: out.iterations,
        overcharged: alpha > 2.0 * z,
    })
}

/// One row of a splitting scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanSample {
    pub alpha: f64,
    pub i_alpha: f64,
    pub i_complement: f64,
    pub sum: f64,
}

/// Tabulated alpha -> I_alpha + I_{Lambda - alpha} over [0, Lambda/2].
#[derive(Debug, Clone)]
pub struct SplittingScan {
    pub total_mass: f64,
    pub c_xc: f64,
    pub samples: Vec<ScanSample>,
    pub argmin_alpha: f64,
    /// argmin within one alpha step of Lambda/2.
    pub symmetric: bool,
}

/// Scan the dissociated energy sum for a neutral pair of atoms of charge `n`
/// each, over mass splits alpha in [0, n] with the given step. Sub-solves
/// run in parallel; results are assembled in deterministic alpha order.
pub fn splitting_scan_3d(
    n: f64,
    c_xc: f64,
    alpha_step: f64,
    cfg: &SolverConfig<RadialGrid>,
    grid: &RadialGrid,
) -> Result<SplittingScan> {
    if !(n > 0.0) || !(alpha_step > 0.0) {
        return Err(CoreError::Domain(format!(
            "need positive electron count and step, got N = {n}, step = {alpha_step}"
        )));
    }
    let steps_f = n / alpha_step;
    let steps = steps_f.round() as usize;
    if steps == 0 || (steps_f - steps as f64).abs() > 1e-9 {
        return Err(CoreError::Domain(format!(
            "alpha step {alpha_step} does not divide N = {n} evenly"
        )));
    }
    let lambda = 2.0 * n;
    let alphas: Vec<f64> = (0..=steps).map(|k| k as f64 * alpha_step).collect();

    // unique masses to solve: every alpha and its complement
    let mut masses: Vec<f64> = Vec::new();
    for &a in &alphas {
        for m in [a, lambda - a] {
            if m > 0.0 && !masses.iter().any(|x| (x - m).abs() < 1e-12) {
                masses.push(m);
            }
        }
    }
    let energies: Vec<(f64, Result<f64>)> = masses
        .par_iter()
        .map(|&m| {
            let e =
                minimize_radial(m, n, c_xc, cfg, grid, TermFlags::ALL).map(|r| r.breakdown.total);
            (m, e)
        })
        .collect();
    let energy_of = |m: f64| -> Result<f64> {
        if m == 0.0 {
            return Ok(0.0);
        }
        match energies.iter().find(|(x, _)| (x - m).abs() < 1e-12) {
            Some((_, Ok(e))) => Ok(*e),
            Some((at, Err(e))) => Err(CoreError::ScanPoint {
                at: *at,
                source: Box::new(CoreError::Domain(e.to_string())),
            }),
            None => Err(CoreError::Domain(format!("mass {m} missing from scan"))),
        }
    };

    let mut samples = Vec::with_capacity(alphas.len());
    for &a in &alphas {
        let i_alpha = energy_of(a)?;
        let i_complement = energy_of(lambda - a)?;
        samples.push(ScanSample {
            alpha: a,
            i_alpha,
            i_complement,
            sum: i_alpha + i_complement,
        });
    }
    // smallest alpha wins ties
    let mut argmin = samples[0];
    for s in &samples[1..] {
        if s.sum < argmin.sum {
            argmin = *s;
        }
    }
    let symmetric = (argmin.alpha - n).abs() <= alpha_step + 1e-12;
    Ok(SplittingScan {
        total_mass: lambda,
        c_xc,
        samples,
        argmin_alpha: argmin.alpha,
        symmetric,
    })
}

/// Bracket on the smallest exchange strength with asymmetric splitting.
#[derive(Debug, Clone, Copy)]
pub struct ThresholdBracket {
    pub n: f64,
    pub c_low: f64,
    pub c_high: f64,
}

/// One bisection probe.
#[derive(Debug, Clone, Copy)]
pub struct ThresholdProbe {
    pub c_xc: f64,
    pub argmin_alpha: f64,
    pub symmetric: bool,
}

/// Bisect the symmetry-breaking transition in c_xc between a symmetric
/// endpoint `c_lo` and an asymmetric endpoint `c_hi`, each probe being a full
/// splitting scan, until the bracket width drops below `tol`.
pub fn symmetry_threshold(
    n: f64,
    c_lo: f64,
    c_hi: f64,
    tol: f64,
    alpha_step: f64,
    cfg: &SolverConfig<RadialGrid>,
    grid: &RadialGrid,
) -> Result<(ThresholdBracket, Vec<ThresholdProbe>)> {
    if !(c_lo < c_hi) || !(tol > 0.0) {
        return Err(CoreError::Domain(format!(
            "need c_lo < c_hi and tol > 0, got [{c_lo}, {c_hi}], tol = {tol}"
        )));
    }
    let mut probes = Vec::new();
    let mut probe = |c: f64| -> Result<bool> {
        let scan = splitting_scan_3d(n, c, alpha_step, cfg, grid)?;
        probes.push(ThresholdProbe {
            c_xc: c,
            argmin_alpha: scan.argmin_alpha,
            symmetric: scan.symmetric,
        });
        Ok(scan.symmetric)
    };
    if !probe(c_lo)? {
        return Err(CoreError::NoBracket(format!(
            "scan at c_lo = {c_lo} is already asymmetric"
        )));
    }
    if probe(c_hi)? {
        return Err(CoreError::NoBracket(format!(
            "scan at c_hi = {c_hi} is still symmetric"
        )));
    }
    let (mut lo, mut hi) = (c_lo, c_hi);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if probe(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((
        ThresholdBracket {
            n,
            c_low: lo,
            c_high: hi,
        },
        probes,
    ))
}

/// Sufficient exchange strength for symmetry breaking from the
/// Hardy-Littlewood-Sobolev bound:
/// (9/4) sqrt(pi) (Gamma(1)/Gamma(5/2)) (Gamma(3)/Gamma(3/2))^{2/3} N^{2/3}.
pub fn hls_threshold_bound(n: f64) -> Result<f64> {
    if !(n >= 0.0) {
        return Err(CoreError::Domain(format!(
            "electron count must be nonnegative, got {n}"
        )));
    }
    let sqrt_pi = std::f64::consts::PI.sqrt();
    let gamma_5_2 = 0.75 * sqrt_pi; // Gamma(5/2) = 3 sqrt(pi) / 4
    let gamma_3 = 2.0;
    let gamma_3_2 = 0.5 * sqrt_pi; // Gamma(3/2) = sqrt(pi) / 2
    let c_hls = sqrt_pi * (1.0 / gamma_5_2) * (gamma_3 / gamma_3_2).powf(2.0 / 3.0);
    Ok(2.25 * c_hls * n.powf(2.0 / 3.0))
}

/// Euler-Lagrange diagnostics at a density.
#[derive(Debug, Clone, Copy)]
pub struct ElResidual {
    /// || h phi - eps phi || / || phi || in the quadrature norm.
    pub residual_norm: f64,
    /// Rayleigh estimate <phi, h phi> / <phi, phi> of the Fermi energy.
    pub fermi_estimate: f64,
    /// Grid points with zero density, excluded from the norm.
    pub excluded_points: usize,
}

/// Assemble h phi with the Hartree potential and the exchange derivative and
/// measure how far the density is from solving the Euler-Lagrange equation.
/// `fermi_guess`, when given, replaces the Rayleigh estimate in the residual.
pub fn euler_lagrange_residual(
    density: &DensityField<RadialGrid>,
    z: f64,
    c_xc: f64,
    fermi_guess: Option<f64>,
    flags: TermFlags,
) -> Result<ElResidual> {
    let grid = density.grid();
    let n = grid.len();
    let r = grid.radii();
    let rho = density.values();
    let phi = density.sqrt_values();
    let xc = ExchangeSpec::dirac_3d(c_xc)?;

    // kinetic application K phi from the finite-volume cells
    let mut kphi = vec![0.0; n];
    for i in 0..n - 1 {
        let dr = r[i + 1] - r[i];
        let rmid = 0.5 * (r[i] + r[i + 1]);
        let coef = 4.0 * std::f64::consts::PI * rmid * rmid / dr;
        let d = phi[i + 1] - phi[i];
        kphi[i] -= coef * d;
        kphi[i + 1] += coef * d;
    }

    let v_h = if flags.hartree_on {
        hartree_kernel(grid, rho)
    } else {
        vec![0.0; n]
    };

    let mut hphi = vec![0.0; n];
    for i in 0..n {
        let mut v = -z / r[i] + v_h[i];
        if flags.exchange_on {
            v += xc.potential(rho[i]);
        }
        hphi[i] = 0.5 * kphi[i] / grid.weight(i) + v * phi[i];
    }

    let mut norm_sq = 0.0;
    let mut ray = 0.0;
    let mut excluded = 0usize;
    for i in 0..n {
        if rho[i] > 0.0 {
            norm_sq += grid.weight(i) * phi[i] * phi[i];
            ray += grid.weight(i) * phi[i] * hphi[i];
        } else {
            excluded += 1;
        }
    }
    if norm_sq == 0.0 {
        return Err(CoreError::InvalidDensity(
            "density vanishes everywhere; residual undefined".into(),
        ));
    }
    let fermi_estimate = ray / norm_sq;
    let eps = fermi_guess.unwrap_or(fermi_estimate);
    let mut res = 0.0;
    for i in 0..n {
        if rho[i] > 0.0 {
            let v = hphi[i] - eps * phi[i];
            res += grid.weight(i) * v * v;
        }
    }
    Ok(ElResidual {
        residual_norm: (res / norm_sq).sqrt(),
        fermi_estimate,
        excluded_points: excluded,
    })
}

/// Multipliers turning E[alpha |phi|^2] into alpha times a normalized-orbital
/// functional: the Hartree bilinear term picks up a factor alpha relative to
/// the linear terms and the effective exchange strength a factor alpha^{1/3}.
pub fn rescale_fractional(alpha: f64) -> Result<(f64, f64)> {
    if !(alpha > 0.0) {
        return Err(CoreError::Domain(format!(
            "mass must be positive, got {alpha}"
        )));
    }
    Ok((alpha, alpha.cbrt()))
}

/// Second-order Taylor coefficient 2 J[rho] + (4/9) E_xc[rho] of the
/// splitting sum around the symmetric point; its sign decides whether the
/// symmetric split is a local minimum or maximum.
pub fn splitting_curvature(breakdown: &EnergyBreakdown) -> f64 {
    2.0 * breakdown.hartree + (4.0 / 9.0) * breakdown.exchange
}
