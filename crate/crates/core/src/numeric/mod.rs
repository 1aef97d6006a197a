//! Shooting eigen-solver and integrators for general field profiles.

mod coupled;
mod nonrel;
mod normalize;
pub mod ode;
mod radial;
mod residual;
mod shooting;

pub use coupled::{coupled_residual, integrate_coupled_eb, CoupledInit, CoupledSolution};
pub use nonrel::{nonrel_energy_check, NonrelComparison};
pub use normalize::normalize;
pub use radial::{integrate_radial_pair, Direction};
pub use residual::{radial_residual, relative_radial_residual};
pub use shooting::{
    choose_geometry, mismatch, scan_states, shoot_eigenvalue, spectrum_scan, Eigenstate, Geometry, ShootingConfig,
};
