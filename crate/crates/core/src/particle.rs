use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::units;

/// Mass and magnetic moment of the neutral fermion, natural units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParticleParams<T> {
    mass: T,
    moment: T,
}

impl<T: Real> ParticleParams<T> {
    pub fn new(mass: T, moment: T) -> Result<Self> {
        if !(mass > T::zero()) || !mass.is_finite() {
            return Err(Error::InvalidParticle(format!("mass must be positive, got {mass}")));
        }
        if moment == T::zero() || !moment.is_finite() {
            return Err(Error::InvalidParticle(format!("moment must be finite and nonzero, got {moment}")));
        }
        Ok(Self { mass, moment })
    }

    /// The neutron with energies in MeV and lengths in MeV^-1
    /// (Heaviside-Lorentz, e = sqrt(4 pi alpha)).
    pub fn neutron() -> Self {
        let e = (4.0 * std::f64::consts::PI * units::FINE_STRUCTURE).sqrt();
        let nuclear_magneton = e / (2.0 * units::PROTON_MASS_MEV);
        Self {
            mass: T::lit(units::NEUTRON_MASS_MEV),
            moment: T::lit(units::NEUTRON_MOMENT_NUCLEAR_MAGNETONS * nuclear_magneton),
        }
    }

    /// Looks up a named preset.
    pub fn preset(name: &str) -> Result<Self> {
        match name.to_ascii_lowercase().as_str() {
            "neutron" => Ok(Self::neutron()),
            other => Err(Error::InvalidParticle(format!("unknown preset {other:?}"))),
        }
    }

    #[inline]
    pub fn mass(&self) -> T {
        self.mass
    }

    #[inline]
    pub fn moment(&self) -> T {
        self.moment
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_parameters() {
        assert!(ParticleParams::new(0.0, 1.0).is_err());
        assert!(ParticleParams::new(-1.0, 1.0).is_err());
        assert!(ParticleParams::new(1.0, 0.0).is_err());
        assert!(ParticleParams::new(f64::NAN, 1.0).is_err());
        assert!(ParticleParams::new(1.0, -2.0).is_ok());
    }

    #[test]
    fn neutron_preset() {
        let n = ParticleParams::<f64>::preset("Neutron").unwrap();
        assert!((n.mass() - 939.565).abs() < 1e-3);
        assert!(n.moment() < 0.0);
        assert!(ParticleParams::<f64>::preset("muon").is_err());
    }
}
