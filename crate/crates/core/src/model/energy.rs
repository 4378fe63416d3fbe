use crate::error::{CoreError, Result};
use crate::model::density::DensityField;
use crate::model::exchange::{ExchangeKind, ExchangeSpec};
use crate::model::grid::{LineGrid, RadialGrid};

/// Energy components in Hartree units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyBreakdown {
    pub kinetic: f64,
    pub external: f64,
    pub hartree: f64,
    pub exchange: f64,
    pub total: f64,
}

impl EnergyBreakdown {
    pub fn new(kinetic: f64, external: f64, hartree: f64, exchange: f64) -> Self {
        Self {
            kinetic,
            external,
            hartree,
            exchange,
            total: kinetic + external + hartree + exchange,
        }
    }

    pub fn zero() -> Self {
        Self::new(0.0, 0.0, 0.0, 0.0)
    }
}

/// Attractive contact well of strength `z` at `position`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Well {
    pub position: f64,
    pub strength: f64,
}

impl Well {
    pub fn new(position: f64, strength: f64) -> Result<Self> {
        if !(strength > 0.0) {
            return Err(CoreError::Domain(format!(
                "well strength must be positive, got {strength}"
            )));
        }
        Ok(Self { position, strength })
    }
}

/// Which optional terms of the 3D functional are evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TermFlags {
    pub hartree_on: bool,
    pub exchange_on: bool,
}

impl TermFlags {
    pub const ALL: Self = Self {
        hartree_on: true,
        exchange_on: true,
    };
    pub const NONE: Self = Self {
        hartree_on: false,
        exchange_on: false,
    };
}

/// Energy of the 1D contact-potential functional
/// E[rho] = 1/2 int (sqrt(rho)')^2 - sum_k Z_k rho(x_k) + (1/2) int rho^2 - c_xc int rho^2.
pub fn energy_1d(
    density: &DensityField<LineGrid>,
    wells: &[Well],
    xc: &ExchangeSpec,
) -> Result<EnergyBreakdown> {
    if xc.kind != ExchangeKind::Contact1D {
        return Err(CoreError::Domain(
            "energy_1d requires the Contact1D exchange kind".into(),
        ));
    }
    let grid = density.grid();
    let well_idx = snap_wells(grid, wells)?;
    let phi = density.sqrt_values();
    Ok(energy_grad_1d(grid, &phi, &well_idx, xc.c_xc, None))
}

/// Energy of the radial von Weizsaecker / Dirac functional
/// E[rho] = 1/2 int |grad sqrt(rho)|^2 - Z int rho/r + J[rho] - c_xc int rho^{4/3}.
pub fn energy_3d(
    density: &DensityField<RadialGrid>,
    z: f64,
    xc: &ExchangeSpec,
    flags: TermFlags,
) -> Result<EnergyBreakdown> {
    if xc.kind != ExchangeKind::Dirac3D {
        return Err(CoreError::Domain(
            "energy_3d requires the Dirac3D exchange kind".into(),
        ));
    }
    if !(z > 0.0) {
        return Err(CoreError::Domain(format!(
            "nuclear charge must be positive, got {z}"
        )));
    }
    let phi = density.sqrt_values();
    Ok(energy_grad_3d(
        density.grid(),
        &phi,
        z,
        xc.c_xc,
        flags,
        None,
    ))
}

/// Euclidean gradient dE/dphi of the discrete 1D functional at phi = sqrt(rho),
/// exposed for finite-difference verification and diagnostics.
pub fn energy_gradient_1d(
    density: &DensityField<LineGrid>,
    wells: &[Well],
    xc: &ExchangeSpec,
) -> Result<Vec<f64>> {
    if xc.kind != ExchangeKind::Contact1D {
        return Err(CoreError::Domain(
            "energy_gradient_1d requires the Contact1D exchange kind".into(),
        ));
    }
    let grid = density.grid();
    let well_idx = snap_wells(grid, wells)?;
    let phi = density.sqrt_values();
    let mut grad = vec![0.0; grid.len()];
    energy_grad_1d(grid, &phi, &well_idx, xc.c_xc, Some(&mut grad));
    Ok(grad)
}

/// Euclidean gradient dE/dphi of the discrete radial functional at
/// phi = sqrt(rho), exposed for finite-difference verification and diagnostics.
pub fn energy_gradient_3d(
    density: &DensityField<RadialGrid>,
    z: f64,
    xc: &ExchangeSpec,
    flags: TermFlags,
) -> Result<Vec<f64>> {
    if xc.kind != ExchangeKind::Dirac3D {
        return Err(CoreError::Domain(
            "energy_gradient_3d requires the Dirac3D exchange kind".into(),
        ));
    }
    if !(z > 0.0) {
        return Err(CoreError::Domain(format!(
            "nuclear charge must be positive, got {z}"
        )));
    }
    let phi = density.sqrt_values();
    let mut grad = vec![0.0; density.grid().len()];
    energy_grad_3d(density.grid(), &phi, z, xc.c_xc, flags, Some(&mut grad));
    Ok(grad)
}

/// Resolve well positions to grid indices, deduplicating wells that snap to
/// the same point by adding their strengths.
pub(crate) fn snap_wells(grid: &LineGrid, wells: &[Well]) -> Result<Vec<(usize, f64)>> {
    let mut out: Vec<(usize, f64)> = Vec::with_capacity(wells.len());
    for w in wells {
        if !(w.strength > 0.0) {
            return Err(CoreError::Domain(format!(
                "well strength must be positive, got {}",
                w.strength
            )));
        }
        let idx = grid.nearest_index(w.position)?;
        match out.iter_mut().find(|(i, _)| *i == idx) {
            Some((_, s)) => *s += w.strength,
            None => out.push((idx, w.strength)),
        }
    }
    Ok(out)
}

/// Discrete 1D energy on the square-root field, optionally accumulating the
/// Euclidean gradient dE/dphi_i. The solver minimizes exactly this function.
pub(crate) fn energy_grad_1d(
    grid: &LineGrid,
    phi: &[f64],
    wells: &[(usize, f64)],
    c_xc: f64,
    mut grad: Option<&mut [f64]>,
) -> EnergyBreakdown {
    let n = grid.len();
    let h = grid.spacing();
    debug_assert_eq!(phi.len(), n);
    if let Some(g) = grad.as_deref_mut() {
        g.fill(0.0);
    }

    // kinetic: 1/2 sum_cells (dphi/h)^2 * h, the midpoint rule for 1/2 int (phi')^2
    let mut kinetic = 0.0;
    for i in 0..n - 1 {
        let d = phi[i + 1] - phi[i];
        kinetic += 0.5 * d * d / h;
        if let Some(g) = grad.as_deref_mut() {
            g[i] -= d / h;
            g[i + 1] += d / h;
        }
    }

    // external: point evaluation of rho at the snapped well
    let mut external = 0.0;
    for &(idx, z) in wells {
        external -= z * phi[idx] * phi[idx];
        if let Some(g) = grad.as_deref_mut() {
            g[idx] -= 2.0 * z * phi[idx];
        }
    }

    // contact Hartree and exchange are both proportional to int rho^2
    let mut rho_sq = 0.0;
    for i in 0..n {
        let w = grid.weight(i);
        let rho = phi[i] * phi[i];
        rho_sq += w * rho * rho;
        if let Some(g) = grad.as_deref_mut() {
            g[i] += 4.0 * (0.5 - c_xc) * w * rho * phi[i];
        }
    }
    let hartree = 0.5 * rho_sq;
    let exchange = -c_xc * rho_sq;

    EnergyBreakdown::new(kinetic, external, hartree, exchange)
}

/// Discrete radial energy on the square-root field, optionally accumulating
/// the Euclidean gradient dE/dphi_i.
pub(crate) fn energy_grad_3d(
    grid: &RadialGrid,
    phi: &[f64],
    z: f64,
    c_xc: f64,
    flags: TermFlags,
    mut grad: Option<&mut [f64]>,
) -> EnergyBreakdown {
    let n = grid.len();
    let r = grid.radii();
    debug_assert_eq!(phi.len(), n);
    if let Some(g) = grad.as_deref_mut() {
        g.fill(0.0);
    }

    // kinetic: finite-volume cells with midpoint surface 4 pi r_mid^2
    let mut kinetic = 0.0;
    for i in 0..n - 1 {
        let dr = r[i + 1] - r[i];
        let rmid = 0.5 * (r[i] + r[i + 1]);
        let coef = 4.0 * std::f64::consts::PI * rmid * rmid / dr;
        let d = phi[i + 1] - phi[i];
        kinetic += 0.5 * coef * d * d;
        if let Some(g) = grad.as_deref_mut() {
            g[i] -= coef * d;
            g[i + 1] += coef * d;
        }
    }

    // external: -Z int rho / r
    let mut external = 0.0;
    for i in 0..n {
        let coef = z * grid.weight(i) / r[i];
        external -= coef * phi[i] * phi[i];
        if let Some(g) = grad.as_deref_mut() {
            g[i] -= 2.0 * coef * phi[i];
        }
    }

    let mut hartree = 0.0;
    if flags.hartree_on {
        let rho: Vec<f64> = phi.iter().map(|p| p * p).collect();
        let v_h = crate::solver3d::hartree_kernel(grid, &rho);
        for i in 0..n {
            hartree += 0.5 * grid.weight(i) * rho[i] * v_h[i];
            if let Some(g) = grad.as_deref_mut() {
                // J is a symmetric quadratic form in rho, so dJ/drho_i = w_i v_i
                g[i] += 2.0 * grid.weight(i) * v_h[i] * phi[i];
            }
        }
    }

    let mut exchange = 0.0;
    if flags.exchange_on {
        for i in 0..n {
            let rho = phi[i] * phi[i];
            let w = grid.weight(i);
            exchange -= c_xc * w * rho.powf(4.0 / 3.0);
            if let Some(g) = grad.as_deref_mut() {
                g[i] -= (8.0 / 3.0) * c_xc * w * rho.cbrt() * phi[i];
            }
        }
    }

    EnergyBreakdown::new(kinetic, external, hartree, exchange)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn default_line_grid() -> LineGrid {
        LineGrid::with_spacing(-40.0, 40.0, 0.02).unwrap()
    }

    #[test]
    fn delta_well_exponential_density() {
        // rho = e^{-2|x|}, one well Z=1, c_xc = 1/2: total -1/2, kinetic 1/2,
        // external -1, hartree + exchange = 0
        let grid = default_line_grid();
        let rho: Vec<f64> = grid.points().map(|x| (-2.0 * x.abs()).exp()).collect();
        let rho = DensityField::new(grid, rho).unwrap();
        let xc = ExchangeSpec::contact_1d(0.5).unwrap();
        let b = energy_1d(&rho, &[Well::new(0.0, 1.0).unwrap()], &xc).unwrap();
        assert!((b.kinetic - 0.5).abs() < 1e-3, "kinetic {}", b.kinetic);
        assert!((b.external + 1.0).abs() < 1e-12);
        assert!((b.hartree + b.exchange).abs() < 1e-14);
        assert!((b.total + 0.5).abs() < 1e-3);
    }

    #[test]
    fn zero_density_zero_energy() {
        let grid = default_line_grid();
        let n = grid.len();
        let rho = DensityField::new(grid, vec![0.0; n]).unwrap();
        let xc = ExchangeSpec::contact_1d(1.0).unwrap();
        let b = energy_1d(&rho, &[Well::new(0.0, 1.0).unwrap()], &xc).unwrap();
        assert_eq!(b.total, 0.0);
        assert_eq!(b.kinetic, 0.0);
        assert_eq!(b.external, 0.0);
        assert_eq!(b.hartree, 0.0);
        assert_eq!(b.exchange, 0.0);
    }

    #[test]
    fn well_outside_span_is_an_error() {
        let grid = LineGrid::new(-1.0, 1.0, 11).unwrap();
        let rho = DensityField::new(grid, vec![0.1; 11]).unwrap();
        let xc = ExchangeSpec::contact_1d(1.0).unwrap();
        assert!(matches!(
            energy_1d(&rho, &[Well::new(5.0, 1.0).unwrap()], &xc),
            Err(CoreError::OutsideGrid { .. })
        ));
    }

    #[test]
    fn hydrogen_density_energy_3d() {
        // rho = e^{-2r}/pi, bare nucleus: exact ground state, total -1/2
        let grid = RadialGrid::for_charge(1.0).unwrap();
        let rho: Vec<f64> = grid
            .radii()
            .iter()
            .map(|&r| (-2.0 * r).exp() / PI)
            .collect();
        let rho = DensityField::new(grid, rho).unwrap();
        let xc = ExchangeSpec::dirac_3d(0.0).unwrap();
        let b = energy_3d(&rho, 1.0, &xc, TermFlags::NONE).unwrap();
        assert!((b.total + 0.5).abs() < 1e-4, "total {}", b.total);
        assert_eq!(b.hartree, 0.0);
        assert_eq!(b.exchange, 0.0);
    }

    #[test]
    fn hydrogen_density_with_hartree() {
        // Hartree self-energy of the 1s density is 5/16
        let grid = RadialGrid::for_charge(1.0).unwrap();
        let rho: Vec<f64> = grid
            .radii()
            .iter()
            .map(|&r| (-2.0 * r).exp() / PI)
            .collect();
        let rho = DensityField::new(grid, rho).unwrap();
        let xc = ExchangeSpec::dirac_3d(0.0).unwrap();
        let flags = TermFlags {
            hartree_on: true,
            exchange_on: false,
        };
        let b = energy_3d(&rho, 1.0, &xc, flags).unwrap();
        assert!((b.hartree - 0.3125).abs() < 1e-4, "hartree {}", b.hartree);
        assert!((b.total + 0.1875).abs() < 2e-4, "total {}", b.total);
    }

    #[test]
    fn zero_density_zero_energy_3d() {
        let grid = RadialGrid::for_charge(1.0).unwrap();
        let n = grid.len();
        let rho = DensityField::new(grid, vec![0.0; n]).unwrap();
        let xc = ExchangeSpec::dirac_3d(1.0).unwrap();
        let b = energy_3d(&rho, 1.0, &xc, TermFlags::ALL).unwrap();
        assert_eq!(b.total, 0.0);
    }

    #[test]
    fn flags_off_equals_kinetic_plus_external() {
        let grid = RadialGrid::for_charge(1.0).unwrap();
        let rho = DensityField::hydrogenic(grid, 0.7, 1.3).unwrap();
        let xc = ExchangeSpec::dirac_3d(1.0).unwrap();
        let b = energy_3d(&rho, 1.0, &xc, TermFlags::NONE).unwrap();
        assert_eq!(b.total, b.kinetic + b.external);
    }

    #[test]
    fn breakdown_total_is_component_sum() {
        let b = EnergyBreakdown::new(1.25, -3.5, 0.75, -0.25);
        assert!((b.total - (b.kinetic + b.external + b.hartree + b.exchange)).abs() == 0.0);
    }

    #[test]
    fn energy_is_deterministic() {
        let grid = default_line_grid();
        let rho = DensityField::exponential(grid, 0.0, 1.0).unwrap();
        let xc = ExchangeSpec::contact_1d(1.0).unwrap();
        let wells = [Well::new(0.0, 1.0).unwrap()];
        let a = energy_1d(&rho, &wells, &xc).unwrap();
        let b = energy_1d(&rho, &wells, &xc).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn scaling_of_components() {
        // t >= 0 scales kinetic/external linearly, hartree by t^2, Dirac
        // exchange by t^{4/3}
        let grid = RadialGrid::for_charge(1.0).unwrap();
        let rho = DensityField::hydrogenic(grid, 1.0, 1.0).unwrap();
        let xc = ExchangeSpec::dirac_3d(1.0).unwrap();
        let base = energy_3d(&rho, 1.0, &xc, TermFlags::ALL).unwrap();
        for t in [0.0, 0.3, 1.7, 4.0] {
            let scaled = rho.scaled(t).unwrap();
            let b = energy_3d(&scaled, 1.0, &xc, TermFlags::ALL).unwrap();
            let tol = 1e-12;
            assert!((b.kinetic - t * base.kinetic).abs() <= tol * (1.0 + base.kinetic.abs()));
            assert!((b.external - t * base.external).abs() <= tol * (1.0 + base.external.abs()));
            assert!((b.hartree - t * t * base.hartree).abs() <= tol * (1.0 + base.hartree.abs()));
            assert!(
                (b.exchange - t.powf(4.0 / 3.0) * base.exchange).abs()
                    <= 1e-11 * (1.0 + base.exchange.abs())
            );
        }
    }
}
