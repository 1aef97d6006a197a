//! Bound states of a neutral spin-1/2 fermion with a magnetic moment in
//! central electric fields.
//!
//! The stationary Dirac equation with Pauli coupling separates in
//! spherical coordinates into two first-order radial systems ("kinds").
//! This crate provides closed-form spectra and wavefunctions for radially
//! constant and linear fields, critical (`E = +-m`) states for general
//! profiles, and a shooting eigen-solver for arbitrary profiles.
//!
//! Everything is generic over the floating-point type; `f64` aliases are
//! exported at the crate root.
//!
//! ```
//! use dpbound::analytic::linear_field_levels;
//! use dpbound::numeric::{shoot_eigenvalue, ShootingConfig};
//! use dpbound::{FieldProfile, Kind, ParticleParams};
//!
//! let p = ParticleParams::new(1.0, 1.0).unwrap();
//! let field = FieldProfile::linear(1.0).unwrap();
//!
//! // Kind - levels are +-sqrt(m^2 + (4N + 6) beta mu).
//! let exact = linear_field_levels(&p, 1.0, Kind::Minus, 0).unwrap().levels[0].value;
//! assert_eq!(exact, 7f64.sqrt());
//!
//! let st = shoot_eigenvalue(&field, &p, Kind::Minus, 0, (2.5, 2.8), &ShootingConfig::default()).unwrap();
//! assert!((st.energy - exact).abs() < 1e-9);
//! assert_eq!(st.n_r, 0);
//! ```

pub mod analytic;
pub mod angular;
pub mod error;
pub mod field;
pub mod numeric;
pub mod particle;
pub mod quadrature;
pub mod quantum;
pub mod scalar;
pub mod solution;
pub mod spec_file;
pub mod units;
pub mod verify;

pub use error::{Error, Result};
pub use field::{FieldProfile, FieldShape, Tail};
pub use particle::ParticleParams;
pub use quantum::{Degeneracy, EnergyLevel, EnergySign, Kind, LevelLabel, QuantumNumbers, Source};
pub use scalar::Real;
pub use solution::RadialSolution;
pub use spec_file::{make_field_profile, ParticleSpec, ProfileSpec, ShapeSpec};

pub type ShootingConfigF64 = numeric::ShootingConfig<f64>;
pub type FieldProfileF64 = FieldProfile<f64>;
pub type FieldShapeF64 = FieldShape<f64>;
pub type ParticleParamsF64 = ParticleParams<f64>;
pub type RadialSolutionF64 = RadialSolution<f64>;
pub type EnergyLevelF64 = EnergyLevel<f64>;

pub type FieldProfileF32 = FieldProfile<f32>;
pub type ParticleParamsF32 = ParticleParams<f32>;
pub type RadialSolutionF32 = RadialSolution<f32>;
