//! The first-order radial systems and their boundary data.

use super::ode::{integrate, OdeOptions};
use super::shooting::{choose_geometry, Geometry, ShootingConfig};
use crate::error::{Error, Result};
use crate::field::{FieldProfile, FieldShape};
use crate::particle::ParticleParams;
use crate::quantum::Kind;
use crate::scalar::Real;
use crate::solution::RadialSolution;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Outward,
    Inward,
}

/// `y' = A(r) y` for `y = (u, v)` at fixed energy.
#[derive(Debug, Clone, Copy)]
pub(crate) struct RadialSystem<'a, T> {
    pub shape: &'a FieldShape<T>,
    pub mu: T,
    pub mass: T,
    pub energy: T,
    pub kind: Kind,
    pub l: u32,
}

impl<'a, T: Real> RadialSystem<'a, T> {
    pub fn new(profile: &'a FieldProfile<T>, p: &ParticleParams<T>, energy: T, kind: Kind, l: u32) -> Self {
        Self { shape: profile.electric(), mu: p.moment(), mass: p.mass(), energy, kind, l }
    }

    /// Entries `(a, b, c, d)` of `A(r)`.
    #[inline]
    pub fn coeffs(&self, r: T) -> (T, T, T, T) {
        coefficients(self.kind, self.l, self.mu * self.shape.value(r), self.energy, self.mass, r)
    }

    #[inline]
    pub fn rhs(&self, r: T, y: &[T; 2]) -> [T; 2] {
        let (a, b, c, d) = self.coeffs(r);
        [a * y[0] + b * y[1], c * y[0] + d * y[1]]
    }

    /// Local wavenumber squared of the dominant component's second-order
    /// equation. Positive where the motion is classically allowed.
    pub fn k2(&self, r: T) -> T {
        let s = match self.kind {
            Kind::Plus => T::one(),
            Kind::Minus => -T::one(),
        };
        let me = self.mu * self.shape.value(r);
        let dme = self.mu * self.shape.derivative(r);
        let l = T::from_u32(self.l).expect("u32 representable");
        let two = T::lit(2.0);
        self.energy * self.energy - self.mass * self.mass + s * (dme + two * (l + T::one()) * me / r)
            - me * me
            - l * (l + T::one()) / (r * r)
    }

    /// Regular solution at `r_min`: dominant component `1 + O(r)`, partner
    /// from the next order of the series.
    pub fn outward_start(&self, r: T) -> [T; 2] {
        let me = self.mu * self.shape.value(r);
        let k = T::from_u32(2 * self.l + 3).expect("u32 representable");
        match self.kind {
            Kind::Plus => [T::one() - me * r, (self.energy - self.mass) * r / k],
            Kind::Minus => [-(self.energy + self.mass) * r / k, T::one() + me * r],
        }
    }

    /// Decaying eigenvector of `A(r_max)`, unit sup norm. Oriented with
    /// `u > 0` when `mu E(r_max) >= 0` and `v > 0` otherwise.
    pub fn inward_start(&self, r: T) -> Result<[T; 2]> {
        let (a, b, c, d) = self.coeffs(r);
        let half = T::lit(0.5);
        let disc = ((a - d) * half).powi(2) + b * c;
        if !(disc > T::zero()) {
            return Err(Error::InvalidConfig(format!(
                "no decaying solution at r_max = {r}: energy {} is not below the local threshold",
                self.energy
            )));
        }
        let lambda = (a + d) * half - disc.sqrt();
        // Both rows of (A - lambda) x = 0 give the eigenvector; use the
        // better conditioned one.
        let (u, v) = if (d - lambda).abs() >= (a - lambda).abs() { (d - lambda, -c) } else { (-b, a - lambda) };
        let norm = u.abs().max(v.abs());
        let (mut u, mut v) = (u / norm, v / norm);
        let flip = if self.mu * self.shape.value(r) >= T::zero() { u < T::zero() } else { v < T::zero() };
        if flip {
            u = -u;
            v = -v;
        }
        Ok([u, v])
    }
}

/// `A(r)` for `mu E(r) = me`.
#[inline]
pub(crate) fn coefficients<T: Real>(kind: Kind, l: u32, me: T, energy: T, mass: T, r: T) -> (T, T, T, T) {
    let l = T::from_u32(l).expect("u32 representable");
    let two = T::lit(2.0);
    match kind {
        Kind::Plus => (l / r - me, -(energy + mass), energy - mass, me - (l + two) / r),
        Kind::Minus => (-(me + (l + two) / r), -(energy + mass), energy - mass, me + l / r),
    }
}

/// Integrates the radial pair of `kind` at fixed `energy` across the whole
/// solution grid of `cfg`.
///
/// The result is unnormalized: outward runs start with dominant component
/// 1 at `r_min`, inward runs with a unit-norm decaying vector at `r_max`.
pub fn integrate_radial_pair<T: Real>(
    profile: &FieldProfile<T>,
    p: &ParticleParams<T>,
    energy: T,
    kind: Kind,
    l: u32,
    cfg: &ShootingConfig<T>,
    direction: Direction,
) -> Result<RadialSolution<T>> {
    let geom = choose_geometry(profile, p, kind, l, energy, cfg)?;
    integrate_on_grid(profile, p, energy, kind, l, cfg, &geom, direction)
}

#[allow(clippy::too_many_arguments)]
pub(crate) fn integrate_on_grid<T: Real>(
    profile: &FieldProfile<T>,
    p: &ParticleParams<T>,
    energy: T,
    kind: Kind,
    l: u32,
    cfg: &ShootingConfig<T>,
    geom: &Geometry<T>,
    direction: Direction,
) -> Result<RadialSolution<T>> {
    let sys = RadialSystem::new(profile, p, energy, kind, l);
    let grid = geom.grid(profile, p, cfg);
    let opt = cfg.ode_options();
    let states = match direction {
        Direction::Outward => integrate(|r, y| sys.rhs(r, y), sys.outward_start(grid[0]), &grid, &opt)?,
        Direction::Inward => {
            let rev: Vec<T> = grid.iter().rev().copied().collect();
            let start = sys.inward_start(rev[0])?;
            let mut s = integrate(|r, y| sys.rhs(r, y), start, &rev, &opt)?;
            s.reverse();
            s
        }
    };
    let (u, v): (Vec<T>, Vec<T>) = states.iter().map(|y| (y[0], y[1])).unzip();
    RadialSolution::new(grid, u, v, energy, kind, l)
}

/// State at `to` after integrating from `from` with initial value `y0`.
pub(crate) fn propagate<T: Real>(sys: &RadialSystem<'_, T>, y0: [T; 2], from: T, to: T, opt: &OdeOptions<T>) -> Result<[T; 2]> {
    let s = integrate(|r, y| sys.rhs(r, y), y0, &[from, to], opt)?;
    Ok(s[1])
}
