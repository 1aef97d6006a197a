use serde::Serialize;

use crate::error::{Error, Result};
use crate::particle::ParticleParams;
use crate::quantum::EnergyLevel;
use crate::scalar::Real;

/// Binding energy of one level, exact and from the nonrelativistic limit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NonrelComparison<T> {
    /// `E - m`.
    pub exact: T,
    /// `(E^2 - m^2) / (2m)`.
    pub nonrel: T,
    pub gap: T,
}

/// Compares `E - m` with `(E^2 - m^2) / 2m` for positive-energy levels.
pub fn nonrel_energy_check<T: Real>(levels: &[EnergyLevel<T>], p: &ParticleParams<T>) -> Result<Vec<NonrelComparison<T>>> {
    let m = p.mass();
    levels
        .iter()
        .map(|lv| {
            let e = lv.value;
            if e == -m {
                return Err(Error::InvalidInput("the limit does not exist at E = -m".into()));
            }
            if e < T::zero() {
                return Err(Error::InvalidInput(format!("negative-energy level {e} has no nonrelativistic limit")));
            }
            let exact = e - m;
            let nonrel = (e * e - m * m) / (T::lit(2.0) * m);
            Ok(NonrelComparison { exact, nonrel, gap: (exact - nonrel).abs() })
        })
        .collect()
}
