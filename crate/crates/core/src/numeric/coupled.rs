//! The four-component radial system with both electric and magnetic fields.

use super::ode::integrate;
use super::radial::coefficients;
use super::shooting::{choose_geometry, ShootingConfig};
use crate::error::{Error, Result};
use crate::field::FieldProfile;
use crate::particle::ParticleParams;
use crate::quadrature::differentiate_samples;
use crate::quantum::Kind;
use crate::scalar::Real;

/// Leading small-`r` coefficients: `u+ ~ c1 r^l`, `v+ ~ c2 r^(l+1)`,
/// `u- ~ c3 r^(l+1)`, `v- ~ c4 r^l`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoupledInit<T> {
    pub c1: T,
    pub c2: T,
    pub c3: T,
    pub c4: T,
}

impl<T: Real> CoupledInit<T> {
    /// Coefficients consistent with the series, given the two free ones.
    pub fn regular(energy: T, mass: T, l: u32, c1: T, c4: T) -> Self {
        let k = T::from_u32(2 * l + 3).expect("u32 representable");
        Self { c1, c2: (energy - mass) * c1 / k, c3: -(energy + mass) * c4 / k, c4 }
    }

    fn check(&self, energy: T, mass: T, l: u32) -> Result<()> {
        let want = Self::regular(energy, mass, l, self.c1, self.c4);
        let tol = T::lit(1e-8);
        let close = |a: T, b: T| (a - b).abs() <= tol * a.abs().max(b.abs()).max(T::one());
        if !close(self.c2, want.c2) || !close(self.c3, want.c3) {
            return Err(Error::InconsistentInit(format!(
                "need c2 = (E - m) c1 / (2l + 3) = {} and c3 = -(E + m) c4 / (2l + 3) = {}",
                want.c2, want.c3
            )));
        }
        if self.c1 == T::zero() && self.c4 == T::zero() {
            return Err(Error::InconsistentInit("c1 and c4 both vanish".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoupledSolution<T> {
    pub grid: Vec<T>,
    pub u_plus: Vec<T>,
    pub v_plus: Vec<T>,
    pub u_minus: Vec<T>,
    pub v_minus: Vec<T>,
    pub energy: T,
    pub l: u32,
}

/// Right-hand side of the coupled system for `y = (u+, v+, u-, v-)`.
#[inline]
fn rhs<T: Real>(me: T, mb: T, energy: T, mass: T, l: u32, r: T, y: &[T; 4]) -> [T; 4] {
    let (a, b, c, d) = coefficients(Kind::Plus, l, me, energy, mass, r);
    let (a2, b2, c2, d2) = coefficients(Kind::Minus, l, me, energy, mass, r);
    [
        a * y[0] + b * y[1] + mb * y[3],
        c * y[0] + d * y[1] + mb * y[2],
        a2 * y[2] + b2 * y[3] + mb * y[1],
        c2 * y[2] + d2 * y[3] + mb * y[0],
    ]
}

/// Integrates the coupled system outward at fixed `energy`. The magnetic
/// field is taken from `profile` (zero when absent).
///
/// The grid is the kind-+ solution grid of `cfg` when `c1 != 0`, and the
/// kind - grid otherwise, so that the decoupled limits share nodes with
/// [`super::integrate_radial_pair`].
pub fn integrate_coupled_eb<T: Real>(
    profile: &FieldProfile<T>,
    p: &ParticleParams<T>,
    energy: T,
    l: u32,
    init: CoupledInit<T>,
    cfg: &ShootingConfig<T>,
) -> Result<CoupledSolution<T>> {
    let m = p.mass();
    let mu = p.moment();
    init.check(energy, m, l)?;
    let kind = if init.c1 != T::zero() { Kind::Plus } else { Kind::Minus };
    let geom = choose_geometry(profile, p, kind, l, energy, cfg)?;
    let grid = geom.grid(profile, p, cfg);

    let r0 = grid[0];
    let me0 = mu * profile.field_at(r0)?;
    let mb0 = mu * profile.magnetic_at(r0)?;
    // First-order corrections of the dominant components, matching the
    // decoupled starts when B = 0.
    let y0 = [
        init.c1 * (T::one() - me0 * r0) + mb0 * init.c4 * r0,
        init.c2 * r0,
        init.c3 * r0,
        init.c4 * (T::one() + me0 * r0) + mb0 * init.c1 * r0,
    ];
    let f = |r: T, y: &[T; 4]| {
        let me = mu * profile.electric().value(r);
        let mb = match profile.magnetic() {
            Some(b) => mu * b.value(r),
            None => T::zero(),
        };
        rhs(me, mb, energy, m, l, r, y)
    };
    let states = integrate(f, y0, &grid, &cfg.ode_options())?;
    let pick = |i: usize| states.iter().map(|y| y[i]).collect::<Vec<T>>();
    Ok(CoupledSolution { u_plus: pick(0), v_plus: pick(1), u_minus: pick(2), v_minus: pick(3), grid, energy, l })
}

/// Pointwise sup of the four equation residuals, derivatives by
/// five-point finite differences, relative to the size of the balanced
/// terms `max|y| * max(1, |A(r)|)`.
pub fn coupled_residual<T: Real>(profile: &FieldProfile<T>, p: &ParticleParams<T>, sol: &CoupledSolution<T>) -> Result<Vec<T>> {
    let cols = [&sol.u_plus, &sol.v_plus, &sol.u_minus, &sol.v_minus];
    let ders: Vec<Vec<T>> = cols.iter().map(|c| differentiate_samples(&sol.grid, c)).collect();
    let mu = p.moment();
    let peak = cols.iter().flat_map(|c| c.iter()).fold(T::zero(), |m, x| m.max(x.abs()));
    let mut out = Vec::with_capacity(sol.grid.len());
    for i in 0..sol.grid.len() {
        let r = sol.grid[i];
        let me = mu * profile.field_at(r)?;
        let mb = mu * profile.magnetic_at(r)?;
        let y = [sol.u_plus[i], sol.v_plus[i], sol.u_minus[i], sol.v_minus[i]];
        let f = rhs(me, mb, sol.energy, p.mass(), sol.l, r, &y);
        let worst = (0..4).map(|k| (ders[k][i] - f[k]).abs()).fold(T::zero(), T::max);
        let (a, b, c, d) = coefficients(Kind::Plus, sol.l, me, sol.energy, p.mass(), r);
        let size = (a.abs() + b.abs()).max(c.abs() + d.abs()).max(mb.abs() + T::one());
        out.push(worst / (peak * size));
    }
    Ok(out)
}
