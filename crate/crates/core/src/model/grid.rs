use crate::error::{CoreError, Result};

/// Uniform grid on a line segment.
#[derive(Debug, Clone, PartialEq)]
pub struct LineGrid {
    x_min: f64,
    x_max: f64,
    n: usize,
    h: f64,
}

impl LineGrid {
    pub fn new(x_min: f64, x_max: f64, n: usize) -> Result<Self> {
        if n < 3 {
            return Err(CoreError::Domain(format!(
                "line grid needs n >= 3, got {n}"
            )));
        }
        if !(x_max > x_min) {
            return Err(CoreError::Domain(format!(
                "line grid needs x_max > x_min, got [{x_min}, {x_max}]"
            )));
        }
        let h = (x_max - x_min) / (n - 1) as f64;
        Ok(Self { x_min, x_max, n, h })
    }

    /// Grid covering `[x_min, x_max]` with spacing as close to `h` as possible.
    pub fn with_spacing(x_min: f64, x_max: f64, h: f64) -> Result<Self> {
        if !(h > 0.0) {
            return Err(CoreError::Domain(format!(
                "spacing must be positive, got {h}"
            )));
        }
        let n = ((x_max - x_min) / h).round() as usize + 1;
        Self::new(x_min, x_max, n.max(3))
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn spacing(&self) -> f64 {
        self.h
    }

    pub fn point(&self, i: usize) -> f64 {
        self.x_min + i as f64 * self.h
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n).map(|i| self.point(i))
    }

    /// Index of the grid point nearest to `x`.
    pub fn nearest_index(&self, x: f64) -> Result<usize> {
        if x < self.x_min - 0.5 * self.h || x > self.x_max + 0.5 * self.h {
            return Err(CoreError::OutsideGrid {
                position: x,
                min: self.x_min,
                max: self.x_max,
            });
        }
        let i = ((x - self.x_min) / self.h).round() as isize;
        Ok(i.clamp(0, self.n as isize - 1) as usize)
    }

    /// Trapezoidal quadrature weight of point `i`.
    pub fn weight(&self, i: usize) -> f64 {
        if i == 0 || i == self.n - 1 {
            0.5 * self.h
        } else {
            self.h
        }
    }

    pub fn weights(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.weight(i)).collect()
    }

    pub fn integrate(&self, values: &[f64]) -> f64 {
        assert_eq!(values.len(), self.n);
        let mut s = 0.0;
        for (i, v) in values.iter().enumerate() {
            s += self.weight(i) * v;
        }
        s
    }

    /// Grid with the same span and halved spacing (each cell split in two).
    pub fn refined(&self) -> Self {
        Self::new(self.x_min, self.x_max, 2 * self.n - 1).expect("refinement keeps validity")
    }
}

/// Logarithmically spaced radial grid with weights for spherical quadrature,
/// `sum_i w_i f(r_i) ~ int_0^inf 4 pi r^2 f(r) dr`.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialGrid {
    r: Vec<f64>,
    w: Vec<f64>,
}

impl RadialGrid {
    /// Trapezoidal rule in u = ln r: the volume element becomes 4 pi r^3 du.
    pub fn log_spaced(r_min: f64, r_max: f64, n: usize) -> Result<Self> {
        if !(r_min > 0.0) || !(r_max > r_min) || n < 3 {
            return Err(CoreError::Domain(format!(
                "radial grid needs 0 < r_min < r_max and n >= 3, got [{r_min}, {r_max}], n = {n}"
            )));
        }
        let du = (r_max / r_min).ln() / (n - 1) as f64;
        let r: Vec<f64> = (0..n).map(|i| r_min * (i as f64 * du).exp()).collect();
        let w: Vec<f64> = (0..n)
            .map(|i| {
                let trap = if i == 0 || i == n - 1 { 0.5 } else { 1.0 };
                4.0 * std::f64::consts::PI * r[i].powi(3) * du * trap
            })
            .collect();
        Ok(Self { r, w })
    }

    /// Default grid for a nucleus of charge `z`: resolves the cusp at the
    /// origin and the exponential tail.
    pub fn for_charge(z: f64) -> Result<Self> {
        Self::log_spaced(1e-5 / z, 60.0 / z, 600)
    }

    pub fn len(&self) -> usize {
        self.r.len()
    }

    pub fn is_empty(&self) -> bool {
        self.r.is_empty()
    }

    pub fn radii(&self) -> &[f64] {
        &self.r
    }

    pub fn radius(&self, i: usize) -> f64 {
        self.r[i]
    }

    pub fn weight(&self, i: usize) -> f64 {
        self.w[i]
    }

    pub fn weights(&self) -> &[f64] {
        &self.w
    }

    pub fn integrate(&self, values: &[f64]) -> f64 {
        assert_eq!(values.len(), self.r.len());
        self.w.iter().zip(values).map(|(w, v)| w * v).sum()
    }

    pub fn refined(&self) -> Self {
        let n = self.r.len();
        Self::log_spaced(self.r[0], self.r[n - 1], 2 * n - 1).expect("refinement keeps validity")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn line_grid_spacing_and_points() {
        let g = LineGrid::new(-1.0, 1.0, 5).unwrap();
        assert_eq!(g.spacing(), 0.5);
        assert_eq!(g.point(0), -1.0);
        assert_eq!(g.point(4), 1.0);
        assert_eq!(g.nearest_index(0.24).unwrap(), 2);
        assert_eq!(g.nearest_index(0.26).unwrap(), 3);
        assert!(g.nearest_index(2.0).is_err());
    }

    #[test]
    fn line_grid_rejects_degenerate() {
        assert!(LineGrid::new(0.0, 1.0, 2).is_err());
        assert!(LineGrid::new(1.0, 0.0, 5).is_err());
    }

    #[test]
    fn trapezoid_integrates_linear_exactly() {
        let g = LineGrid::new(0.0, 2.0, 21).unwrap();
        let vals: Vec<f64> = g.points().map(|x| 3.0 * x + 1.0).collect();
        let exact = 3.0 * 2.0 + 2.0; // int_0^2 (3x+1) dx = 8
        assert!((g.integrate(&vals) - exact).abs() < 1e-12);
    }

    #[test]
    fn radial_grid_normalizes_1s_density() {
        // invariant from the type contract: e^{-2r}/pi integrates to 1 within 1e-6
        let g = RadialGrid::for_charge(1.0).unwrap();
        let rho: Vec<f64> = g.radii().iter().map(|&r| (-2.0 * r).exp() / PI).collect();
        assert!((g.integrate(&rho) - 1.0).abs() < 1e-6);
    }

    #[test]
    fn radial_weights_positive_and_radii_increasing() {
        let g = RadialGrid::for_charge(2.0).unwrap();
        for i in 0..g.len() {
            assert!(g.radius(i) > 0.0);
            assert!(g.weight(i) > 0.0);
            if i > 0 {
                assert!(g.radius(i) > g.radius(i - 1));
            }
        }
    }
}
