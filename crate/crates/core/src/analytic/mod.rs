//! Closed-form spectra and wavefunctions for radially constant and linear
//! fields, and critical states for general profiles.
//!
//! The formulas assume a positive coupling (`mu E0 > 0`, `mu beta > 0`).
//! Negative couplings are handled through the mirror symmetry
//! `E -> -E`, which exchanges the kinds, negates the energy and swaps
//! `(u, v)`.

mod constant;
mod critical;
mod laguerre;
mod linear;

use serde::{Deserialize, Serialize};

pub use constant::{constant_field_closed_form, constant_field_levels, constant_field_levels_for, constant_field_wavefunction};
pub use critical::{critical_count_inverse_field, critical_state, CriticalOutcome};
pub use laguerre::laguerre;
pub use linear::{linear_field_closed_form, linear_field_levels, linear_field_wavefunction};

use crate::error::{Error, Result};
use crate::quantum::{EnergyLevel, Kind};
use crate::scalar::Real;
use crate::solution::{radial_grid, RadialSolution};

/// The exactly solvable field profiles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldKind {
    Constant,
    Linear,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnalyticLevelSet<T> {
    pub levels: Vec<EnergyLevel<T>>,
    pub field_kind: FieldKind,
    pub solution_kind: Kind,
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Family {
    /// Constant field, kind +, `rho = alpha r`; `principal = n_r + l + 1`.
    ConstantPlus { principal: u32 },
    /// Linear field, kind +, `rho = sqrt(beta mu) r`.
    LinearPlus,
    /// Linear field, kind -.
    LinearMinus,
}

/// A closed-form bound state that can be evaluated at any radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedForm<T> {
    pub kind: Kind,
    pub l: u32,
    pub n_r: u32,
    pub energy: T,
    /// Normalization constant `A`.
    pub amplitude: T,
    /// Inverse length: `alpha` for the constant field, `sqrt(beta mu)` for the linear one.
    pub scale: T,
    mass: T,
    /// `|mu E0|` or `|mu beta|`.
    coupling: T,
    family: Family,
    /// Evaluated in the mirrored frame; `(u, v)` are exchanged on output.
    mirrored: bool,
}

impl<T: Real> ClosedForm<T> {
    /// `(u, v)` at radius `r >= 0`.
    pub fn eval(&self, r: T) -> (T, T) {
        let (u, v) = self.eval_frame(r);
        if self.mirrored {
            (v, u)
        } else {
            (u, v)
        }
    }

    fn eval_frame(&self, r: T) -> (T, T) {
        let l = self.l;
        let n = self.n_r;
        let lt = T::from_u32(l).expect("u32 representable");
        let half = T::lit(0.5);
        let a = self.amplitude;
        let m = self.mass;
        let e = if self.mirrored { -self.energy } else { self.energy };
        let rho = self.scale * r;
        match self.family {
            Family::ConstantPlus { principal } => {
                let g = self.coupling;
                let big_n = T::from_u32(principal).expect("u32 representable");
                let env = (-rho * half).exp();
                let u = a * rho.powi(l as i32) * env * laguerre(n, T::lit(2.0) * lt + T::one(), rho);
                let v = if n == 0 {
                    T::zero()
                } else {
                    a * g / (big_n * (e + m))
                        * rho.powi(l as i32 + 1)
                        * env
                        * laguerre(n - 1, T::lit(2.0) * lt + T::lit(3.0), rho)
                };
                (u, v)
            }
            Family::LinearPlus => {
                let x = rho * rho;
                let env = (-x * half).exp();
                let u = a * rho.powi(l as i32) * env * laguerre(n, lt + half, x);
                let v = if n == 0 {
                    T::zero()
                } else {
                    a * T::lit(2.0) * self.scale / (e + m)
                        * rho.powi(l as i32 + 1)
                        * env
                        * laguerre(n - 1, lt + T::lit(1.5), x)
                };
                (u, v)
            }
            Family::LinearMinus => {
                let x = rho * rho;
                let env = (-x * half).exp();
                let u = -a * T::lit(2.0) * self.scale / (e - m)
                    * rho.powi(l as i32 + 1)
                    * env
                    * laguerre(n, lt + T::lit(1.5), x);
                let v = a * rho.powi(l as i32) * env * laguerre(n, lt + half, x);
                (u, v)
            }
        }
    }

    /// Largest radius of interest: the envelope has fallen below `1e-12`
    /// of its peak.
    pub fn extent(&self) -> T {
        let cut = T::lit(1e-12).ln().abs();
        let n = T::from_u32(self.n_r).expect("u32 representable");
        let lt = T::from_u32(self.l).expect("u32 representable");
        let two = T::lit(2.0);
        let rho_max = match self.family {
            Family::ConstantPlus { .. } => {
                // rho^k e^{-rho/2}
                let k = lt + n + T::one();
                let peak = two * k;
                let mut rho = peak + two * cut;
                for _ in 0..50 {
                    rho = peak + two * (cut + k * (rho / peak).ln());
                }
                rho
            }
            Family::LinearPlus | Family::LinearMinus => {
                // rho^k e^{-rho^2/2}
                let k = lt + two * n + T::one();
                let peak = k.sqrt();
                let mut rho2 = k + two * cut;
                for _ in 0..50 {
                    rho2 = k + two * (cut + k * (rho2.sqrt() / peak).ln());
                }
                rho2.sqrt()
            }
        };
        rho_max / self.scale
    }

    /// Default sampling grid: geometric from `1e-6 / scale`, uniform past
    /// `0.5 / scale`, out to [`ClosedForm::extent`].
    pub fn default_grid(&self) -> Vec<T> {
        let s = self.scale;
        radial_grid(T::lit(1e-6) / s, T::lit(0.5) / s, self.extent(), T::lit(1.01))
    }

    /// Samples the state on `grid`.
    pub fn sample(&self, grid: Vec<T>) -> Result<RadialSolution<T>> {
        let (u, v): (Vec<T>, Vec<T>) = grid.iter().map(|r| self.eval(*r)).unzip();
        let mut sol = RadialSolution::new(grid, u, v, self.energy, self.kind, self.l)?;
        sol.normalized = true;
        sol.norm_constant = Some(self.amplitude);
        Ok(sol)
    }

    pub fn sample_default(&self) -> Result<RadialSolution<T>> {
        self.sample(self.default_grid())
    }
}

/// Sign of the coupling `mu * field parameter`, rejecting zero.
pub(crate) fn coupling_sign<T: Real>(coupling: T) -> Result<bool> {
    if coupling == T::zero() || !coupling.is_finite() {
        return Err(Error::InvalidProfile("field parameter must be finite and nonzero".into()));
    }
    Ok(coupling > T::zero())
}

/// `sqrt(x / y)` where both have the same sign.
pub(crate) fn ratio_sqrt<T: Real>(x: T, y: T) -> T {
    let r = x / y;
    assert!(r > T::zero(), "normalization ratio must be positive");
    r.sqrt()
}
