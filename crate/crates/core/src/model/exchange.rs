use crate::error::{CoreError, Result};

/// Which local exchange function is active.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExchangeKind {
    /// 1D contact-interaction model: e_xc(rho) = -c_xc rho^2.
    Contact1D,
    /// Dirac exchange in 3D: e_xc(rho) = -c_xc rho^{4/3}.
    Dirac3D,
}

/// Exchange constant of the uniform electron gas, (3/4)(3/pi)^{1/3}.
pub const UEG_C_XC: f64 = 0.738_558_766_382_022_4;

/// Local exchange functional with a tunable strength (Hartree atomic units).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExchangeSpec {
    pub kind: ExchangeKind,
    pub c_xc: f64,
}

impl ExchangeSpec {
    pub fn new(kind: ExchangeKind, c_xc: f64) -> Result<Self> {
        if !(c_xc >= 0.0) {
            return Err(CoreError::Domain(format!(
                "exchange strength must be nonnegative, got {c_xc}"
            )));
        }
        Ok(Self { kind, c_xc })
    }

    pub fn contact_1d(c_xc: f64) -> Result<Self> {
        Self::new(ExchangeKind::Contact1D, c_xc)
    }

    pub fn dirac_3d(c_xc: f64) -> Result<Self> {
        Self::new(ExchangeKind::Dirac3D, c_xc)
    }

    /// Exchange energy per volume e_xc(rho).
    pub fn energy_density(&self, rho: f64) -> f64 {
        if rho <= 0.0 {
            return 0.0;
        }
        match self.kind {
            ExchangeKind::Contact1D => -self.c_xc * rho * rho,
            ExchangeKind::Dirac3D => -self.c_xc * rho.powf(4.0 / 3.0),
        }
    }

    /// Derivative e'_xc(rho), the exchange contribution to the effective potential.
    pub fn potential(&self, rho: f64) -> f64 {
        if rho <= 0.0 {
            return 0.0;
        }
        match self.kind {
            ExchangeKind::Contact1D => -2.0 * self.c_xc * rho,
            ExchangeKind::Dirac3D => -(4.0 / 3.0) * self.c_xc * rho.cbrt(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vanishes_at_zero_density() {
        for xc in [
            ExchangeSpec::contact_1d(1.0).unwrap(),
            ExchangeSpec::dirac_3d(UEG_C_XC).unwrap(),
        ] {
            assert_eq!(xc.energy_density(0.0), 0.0);
            assert_eq!(xc.potential(0.0), 0.0);
        }
    }

    #[test]
    fn derivative_nonpositive_on_samples() {
        let samples = [0.0, 1e-8, 1e-3, 0.1, 1.0, 7.5, 1e3];
        for xc in [
            ExchangeSpec::contact_1d(0.5).unwrap(),
            ExchangeSpec::contact_1d(2.0).unwrap(),
            ExchangeSpec::dirac_3d(0.0).unwrap(),
            ExchangeSpec::dirac_3d(5.0).unwrap(),
        ] {
            for &rho in &samples {
                assert!(xc.potential(rho) <= 0.0, "e'_xc > 0 at rho = {rho}");
            }
        }
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let xc = ExchangeSpec::dirac_3d(1.3).unwrap();
        for &rho in &[0.01, 0.5, 2.0] {
            let d = 1e-6 * rho;
            let fd = (xc.energy_density(rho + d) - xc.energy_density(rho - d)) / (2.0 * d);
            assert!((fd - xc.potential(rho)).abs() < 1e-6 * xc.potential(rho).abs());
        }
    }

    #[test]
    fn ueg_constant_value() {
        assert!((UEG_C_XC - 0.75 * (3.0 / std::f64::consts::PI).powf(1.0 / 3.0)).abs() < 1e-15);
        assert!((UEG_C_XC - 0.7386).abs() < 1e-4);
    }

    #[test]
    fn rejects_negative_strength() {
        assert!(ExchangeSpec::contact_1d(-0.1).is_err());
    }
}
