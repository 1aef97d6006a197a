//! CODATA 2018 constants and the two SI length estimates.
//!
//! Everything else in the crate works in natural units (hbar = c = 1).

use crate::error::{Error, Result};

/// Reduced Planck constant, J s.
pub const HBAR: f64 = 1.054_571_817e-34;
/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
/// Elementary charge, C.
pub const ELEMENTARY_CHARGE: f64 = 1.602_176_634e-19;
/// Bohr radius, m.
pub const BOHR_RADIUS: f64 = 5.291_772_109_03e-11;
/// Vacuum magnetic permeability, N/A^2.
pub const VACUUM_PERMEABILITY: f64 = 1.256_637_062_12e-6;
/// Fine-structure constant.
pub const FINE_STRUCTURE: f64 = 7.297_352_569_3e-3;
/// Neutron magnetic moment, J/T (negative: antiparallel to spin).
pub const NEUTRON_MOMENT_SI: f64 = -9.662_365_1e-27;
/// Neutron mass energy, MeV.
pub const NEUTRON_MASS_MEV: f64 = 939.565_420_52;
/// Proton mass energy, MeV.
pub const PROTON_MASS_MEV: f64 = 938.272_088_16;
/// Neutron moment in nuclear magnetons.
pub const NEUTRON_MOMENT_NUCLEAR_MAGNETONS: f64 = -1.913_042_73;

/// Electric field at the hydrogen Bohr radius, V/m.
pub const HYDROGEN_FIELD_SI: f64 = 5.15e11;

/// Charge density e / a0^3, C/m^3.
pub fn atomic_charge_density() -> f64 {
    ELEMENTARY_CHARGE / BOHR_RADIUS.powi(3)
}

/// Length scale 1/(2 |mu E0|) of the critical state in a radially constant
/// field, converted to metres: hbar c^2 / (2 |mu E0|).
pub fn estimate_bohr_radius_constant(moment_si: f64, field_si: f64) -> Result<f64> {
    check_nonzero("moment", moment_si)?;
    check_nonzero("field", field_si)?;
    Ok(HBAR * SPEED_OF_LIGHT * SPEED_OF_LIGHT / (2.0 * (moment_si * field_si).abs()))
}

/// Length scale (beta mu)^(-1/2) for a radially linear field produced by a
/// uniform charge density, in metres: (3 hbar / (4 pi mu0 rho_c |mu|))^(1/2).
pub fn estimate_bohr_radius_linear(moment_si: f64, charge_density_si: f64) -> Result<f64> {
    check_nonzero("moment", moment_si)?;
    check_nonzero("charge density", charge_density_si)?;
    let denom = 4.0 * std::f64::consts::PI * VACUUM_PERMEABILITY * (charge_density_si * moment_si).abs();
    Ok((3.0 * HBAR / denom).sqrt())
}

fn check_nonzero(what: &str, x: f64) -> Result<()> {
    if x == 0.0 || !x.is_finite() {
        return Err(Error::InvalidInput(format!("{what} must be finite and nonzero, got {x}")));
    }
    Ok(())
}
