use crate::error::{CoreError, Result};
use crate::model::grid::{LineGrid, RadialGrid};

/// Common quadrature interface of the two grid types.
pub trait Quadrature {
    fn len(&self) -> usize;
    fn weight(&self, i: usize) -> f64;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn integrate(&self, values: &[f64]) -> f64 {
        assert_eq!(values.len(), self.len());
        values
            .iter()
            .enumerate()
            .map(|(i, v)| self.weight(i) * v)
            .sum()
    }
}

impl Quadrature for LineGrid {
    fn len(&self) -> usize {
        LineGrid::len(self)
    }
    fn weight(&self, i: usize) -> f64 {
        LineGrid::weight(self, i)
    }
}

impl Quadrature for RadialGrid {
    fn len(&self) -> usize {
        RadialGrid::len(self)
    }
    fn weight(&self, i: usize) -> f64 {
        RadialGrid::weight(self, i)
    }
}

/// Nonnegative density on a grid together with its quadrature mass.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityField<G> {
    grid: G,
    values: Vec<f64>,
    mass: f64,
}

impl<G: Quadrature> DensityField<G> {
    pub fn new(grid: G, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(CoreError::InvalidDensity(format!(
                "expected {} values, got {}",
                grid.len(),
                values.len()
            )));
        }
        if let Some(v) = values.iter().find(|v| !(**v >= 0.0)) {
            return Err(CoreError::InvalidDensity(format!(
                "density must be nonnegative and finite, found {v}"
            )));
        }
        let mass = grid.integrate(&values);
        Ok(Self { grid, values, mass })
    }

    /// Density from its square root field, rho_i = phi_i^2.
    pub fn from_sqrt(grid: G, phi: &[f64]) -> Result<Self> {
        let values = phi.iter().map(|p| p * p).collect();
        Self::new(grid, values)
    }

    pub fn grid(&self) -> &G {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    /// Square-root field with the convention sqrt(0) = 0.
    pub fn sqrt_values(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.sqrt()).collect()
    }

    /// Pointwise rescaling by a nonnegative factor.
    pub fn scaled(&self, t: f64) -> Result<Self>
    where
        G: Clone,
    {
        if !(t >= 0.0) {
            return Err(CoreError::InvalidDensity(format!(
                "scale factor must be nonnegative, got {t}"
            )));
        }
        Self::new(
            self.grid.clone(),
            self.values.iter().map(|v| t * v).collect(),
        )
    }
}

impl DensityField<LineGrid> {
    /// Exponential profile rho(x) = mass * e^{-2|x - center|} (the linear-limit
    /// ground-state shape), renormalized to the requested quadrature mass.
    pub fn exponential(grid: LineGrid, center: f64, mass: f64) -> Result<Self> {
        let raw: Vec<f64> = grid
            .points()
            .map(|x| (-2.0 * (x - center).abs()).exp())
            .collect();
        let raw_mass = grid.integrate(&raw);
        let scale = if raw_mass > 0.0 { mass / raw_mass } else { 0.0 };
        Self::new(grid, raw.into_iter().map(|v| scale * v).collect())
    }
}

impl DensityField<RadialGrid> {
    /// Hydrogenic profile rho(r) ~ e^{-2 z r}, normalized to `mass`.
    pub fn hydrogenic(grid: RadialGrid, z: f64, mass: f64) -> Result<Self> {
        let raw: Vec<f64> = grid.radii().iter().map(|&r| (-2.0 * z * r).exp()).collect();
        let raw_mass = grid.integrate(&raw);
        let scale = if raw_mass > 0.0 { mass / raw_mass } else { 0.0 };
        Self::new(grid, raw.into_iter().map(|v| scale * v).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mass_matches_quadrature() {
        let grid = LineGrid::new(-10.0, 10.0, 1001).unwrap();
        let rho = DensityField::exponential(grid.clone(), 0.0, 1.5).unwrap();
        let q = grid.integrate(rho.values());
        assert!((rho.mass() - q).abs() <= 1e-12 * (1.0 + rho.mass()));
        assert!((rho.mass() - 1.5).abs() < 1e-12);
    }

    #[test]
    fn rejects_negative_values() {
        let grid = LineGrid::new(0.0, 1.0, 5).unwrap();
        assert!(DensityField::new(grid, vec![1.0, -0.1, 0.0, 0.0, 0.0]).is_err());
    }

    #[test]
    fn rejects_nan() {
        let grid = LineGrid::new(0.0, 1.0, 5).unwrap();
        assert!(DensityField::new(grid, vec![1.0, f64::NAN, 0.0, 0.0, 0.0]).is_err());
    }

    #[test]
    fn sqrt_field_of_zero_is_zero() {
        let grid = LineGrid::new(0.0, 1.0, 5).unwrap();
        let rho = DensityField::new(grid, vec![0.0; 5]).unwrap();
        assert!(rho.sqrt_values().iter().all(|v| *v == 0.0));
    }

    #[test]
    fn hydrogenic_mass_normalized() {
        let grid = RadialGrid::for_charge(1.0).unwrap();
        let rho = DensityField::hydrogenic(grid, 1.0, 1.0).unwrap();
        assert!((rho.mass() - 1.0).abs() < 1e-12);
    }
}
