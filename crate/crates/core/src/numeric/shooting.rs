//! Eigenvalues by matching outward and inward solutions.

use rayon::prelude::*;

use super::normalize::normalize;
use super::ode::OdeOptions;
use super::radial::{propagate, RadialSystem};
use crate::error::{Error, Result};
use crate::field::FieldProfile;
use crate::particle::ParticleParams;
use crate::quantum::{Degeneracy, EnergyLevel, EnergySign, Kind, LevelLabel, Source};
use crate::scalar::Real;
use crate::solution::{radial_grid, RadialSolution};

/// Settings of the shooting solver. Unset radii are chosen per energy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShootingConfig<T> {
    pub r_min: T,
    pub r_max: Option<T>,
    pub match_point: Option<T>,
    /// Refinement stops when the bracket is narrower than this times `max(1, |E|)`.
    pub energy_tolerance: T,
    pub max_iterations: usize,
    /// Points in the uniform outer part of output grids.
    pub grid_points: usize,
    pub rel_tolerance: T,
    /// Energy mesh density of scans, per unit of mass.
    pub mesh_per_unit: T,
    /// Required `int sqrt(-k^2) dr` between match point and `r_max`.
    pub decay_exponent: T,
    /// Largest radius considered, in units of `1 / m`.
    pub search_cap: T,
}

impl<T: Real> Default for ShootingConfig<T> {
    fn default() -> Self {
        Self {
            r_min: T::lit(1e-6),
            r_max: None,
            match_point: None,
            energy_tolerance: T::lit(1e-10),
            max_iterations: 200,
            grid_points: 6000,
            rel_tolerance: T::lit(1e-10),
            mesh_per_unit: T::lit(200.0),
            decay_exponent: T::lit(30.0),
            search_cap: T::lit(1e6),
        }
    }
}

impl<T: Real> ShootingConfig<T> {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidConfig(msg.into()));
        if !(self.r_min > T::zero()) {
            return bad("r_min must be positive");
        }
        if !(self.energy_tolerance > T::zero()) || !(self.rel_tolerance > T::zero()) {
            return bad("tolerances must be positive");
        }
        if self.max_iterations == 0 || self.grid_points < 4 {
            return bad("max_iterations must be positive and grid_points at least 4");
        }
        if !(self.mesh_per_unit > T::zero()) || !(self.decay_exponent > T::zero()) {
            return bad("mesh density and decay exponent must be positive");
        }
        if let (Some(m), Some(r)) = (self.match_point, self.r_max) {
            if !(self.r_min < m && m < r) {
                return bad("need r_min < match_point < r_max");
            }
        }
        Ok(())
    }

    pub(crate) fn ode_options(&self) -> OdeOptions<T> {
        OdeOptions { rtol: self.rel_tolerance, ..OdeOptions::default() }
    }
}

/// Radii used for one shooting run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Geometry<T> {
    pub r_min: T,
    pub match_point: T,
    pub r_max: T,
}

impl<T: Real> Geometry<T> {
    /// Output grid: geometric near the origin, uniform outside, with the
    /// match point inserted as a node.
    pub fn grid(&self, profile: &FieldProfile<T>, p: &ParticleParams<T>, cfg: &ShootingConfig<T>) -> Vec<T> {
        let scale = profile.electric().length_scale(p.moment());
        let join = (T::lit(0.5) * scale).min(self.match_point).max(self.r_min * T::lit(10.0));
        let n = T::from_usize_lossy(cfg.grid_points);
        let h = (self.r_max - join) / n;
        let mut g = if h / join <= T::lit(0.05) {
            radial_grid(self.r_min, join, self.r_max, T::one() + h / join)
        } else {
            // Very long range: geometric throughout.
            let ratio = ((self.r_max / self.r_min).ln() / n).exp();
            radial_grid(self.r_min, self.r_max, self.r_max, ratio)
        };
        if let Err(i) = g.binary_search_by(|x| x.partial_cmp(&self.match_point).expect("finite grid")) {
            g.insert(i, self.match_point);
        }
        g
    }
}

/// Picks the match point (outermost classical turning point) and `r_max`
/// for a given energy, honoring any radii fixed in `cfg`.
pub fn choose_geometry<T: Real>(
    profile: &FieldProfile<T>,
    p: &ParticleParams<T>,
    kind: Kind,
    l: u32,
    energy: T,
    cfg: &ShootingConfig<T>,
) -> Result<Geometry<T>> {
    cfg.validate()?;
    let sys = RadialSystem::new(profile, p, energy, kind, l);
    let scale = profile.electric().length_scale(p.moment());
    let cap = cfg.search_cap / p.mass();
    let r_min = cfg.r_min;

    let match_point = match cfg.match_point {
        Some(m) => m,
        None => {
            let n = 4000;
            let lo = r_min * T::lit(10.0);
            let step = (cap / lo).ln() / T::from_usize_lossy(n);
            let mut turning = None;
            let mut prev = sys.k2(lo);
            for i in 1..=n {
                let r = lo * (step * T::from_usize_lossy(i)).exp();
                let k2 = sys.k2(r);
                if k2.is_nan() {
                    return Err(Error::UndefinedTail(r.to_f64_lossy()));
                }
                if prev > T::zero() && k2 <= T::zero() {
                    turning = Some(r);
                }
                prev = k2;
            }
            if prev > T::zero() {
                return Err(Error::InvalidConfig(format!(
                    "energy {energy} is in the continuum: no decaying solution below r = {cap}"
                )));
            }
            turning.unwrap_or(scale).max(lo)
        }
    };

    let r_max = match cfg.r_max {
        Some(r) => r,
        None => {
            let mut acc = T::zero();
            let mut r = match_point;
            let mut kappa = (-sys.k2(r)).max(T::zero()).sqrt();
            while acc < cfg.decay_exponent && r < cap {
                let dr = T::lit(0.01) * r.max(scale);
                let next = r + dr;
                let kn = (-sys.k2(next)).max(T::zero()).sqrt();
                if kn.is_nan() {
                    return Err(Error::UndefinedTail(next.to_f64_lossy()));
                }
                acc = acc + T::lit(0.5) * (kappa + kn) * dr;
                r = next;
                kappa = kn;
            }
            r.min(cap)
        }
    };
    let g = Geometry { r_min, match_point, r_max };
    if !(g.r_min < g.match_point && g.match_point < g.r_max) {
        return Err(Error::InvalidConfig(format!(
            "radii out of order: r_min = {}, match = {}, r_max = {}",
            g.r_min, g.match_point, g.r_max
        )));
    }
    Ok(g)
}

/// Outward and inward states at the match point.
fn match_states<T: Real>(sys: &RadialSystem<'_, T>, geom: &Geometry<T>, opt: &OdeOptions<T>) -> Result<([T; 2], [T; 2])> {
    let out = propagate(sys, sys.outward_start(geom.r_min), geom.r_min, geom.match_point, opt)?;
    let inn = propagate(sys, sys.inward_start(geom.r_max)?, geom.r_max, geom.match_point, opt)?;
    Ok((out, inn))
}

/// Normalized Wronskian `(u_o v_i - u_i v_o) / (|y_o| |y_i|)` at the match point.
fn mismatch_at<T: Real>(
    profile: &FieldProfile<T>,
    p: &ParticleParams<T>,
    kind: Kind,
    l: u32,
    energy: T,
    geom: &Geometry<T>,
    cfg: &ShootingConfig<T>,
) -> Result<T> {
    let sys = RadialSystem::new(profile, p, energy, kind, l);
    let (o, i) = match_states(&sys, geom, &cfg.ode_options())?;
    let no = o[0].hypot(o[1]);
    let ni = i[0].hypot(i[1]);
    Ok((o[0] * i[1] - i[0] * o[1]) / (no * ni))
}

/// Matching function at `energy`, with geometry chosen for that energy.
pub fn mismatch<T: Real>(
    profile: &FieldProfile<T>,
    p: &ParticleParams<T>,
    kind: Kind,
    l: u32,
    energy: T,
    cfg: &ShootingConfig<T>,
) -> Result<T> {
    let geom = choose_geometry(profile, p, kind, l, energy, cfg)?;
    mismatch_at(profile, p, kind, l, energy, &geom, cfg)
}

/// A converged bound state.
#[derive(Debug, Clone, PartialEq)]
pub struct Eigenstate<T> {
    pub energy: T,
    /// Interior nodes of the dominant component.
    pub n_r: u32,
    /// Normalized, continuous at the match point.
    pub solution: RadialSolution<T>,
    pub geometry: Geometry<T>,
}

impl<T: Real> Eigenstate<T> {
    pub fn level(&self) -> EnergyLevel<T> {
        EnergyLevel {
            value: self.energy,
            kind: self.solution.kind,
            degeneracy: Degeneracy::magnetic(self.solution.l),
            label: LevelLabel::Radial { l: self.solution.l, n_r: self.n_r },
            source: Source::Numeric,
        }
    }
}

/// Geometry held fixed while refining within `[lo, hi]`.
fn bracket_geometry<T: Real>(
    profile: &FieldProfile<T>,
    p: &ParticleParams<T>,
    kind: Kind,
    l: u32,
    lo: T,
    hi: T,
    cfg: &ShootingConfig<T>,
) -> Result<Geometry<T>> {
    let mid = (lo + hi) * T::lit(0.5);
    let mut g = choose_geometry(profile, p, kind, l, mid, cfg)?;
    for e in [lo, hi] {
        if let Ok(ge) = choose_geometry(profile, p, kind, l, e, cfg) {
            g.r_max = g.r_max.max(ge.r_max);
        }
    }
    Ok(g)
}

/// Finds an eigenvalue in `[lo, hi]`.
///
/// The bracket is split into cells at the scan mesh density and the lowest
/// cell where the matching function changes sign is refined: bisection
/// first, then safeguarded secant (Illinois) steps.
pub fn shoot_eigenvalue<T: Real>(
    profile: &FieldProfile<T>,
    p: &ParticleParams<T>,
    kind: Kind,
    l: u32,
    bracket: (T, T),
    cfg: &ShootingConfig<T>,
) -> Result<Eigenstate<T>> {
    let (lo, hi) = bracket;
    if !(lo < hi) {
        return Err(Error::InvalidInput(format!("empty energy bracket ({lo}, {hi})")));
    }
    let geom = bracket_geometry(profile, p, kind, l, lo, hi, cfg)?;
    let f = |e: T| mismatch_at(profile, p, kind, l, e, &geom, cfg);
    let cells = ((hi - lo) / p.mass() * cfg.mesh_per_unit).ceil().to_usize().unwrap_or(1).max(1);
    let at = |i: usize| lo + (hi - lo) * T::from_usize_lossy(i) / T::from_usize_lossy(cells);
    let mut a = lo;
    let mut fa = f(a)?;
    let mut found = None;
    for i in 1..=cells {
        let b = at(i);
        let fb = f(b)?;
        if fa == T::zero() || fa.signum() != fb.signum() {
            found = Some((a, b));
            break;
        }
        a = b;
        fa = fb;
    }
    let (a, b) = found.ok_or(Error::NoRoot { lo: lo.to_f64_lossy(), hi: hi.to_f64_lossy() })?;
    let energy = refine(f, a, b, cfg)?;
    let geom = bracket_geometry(profile, p, kind, l, energy, energy, cfg).unwrap_or(geom);
    eigenstate_at(profile, p, kind, l, energy, &geom, cfg)
}

/// Refines a single sign change in `[lo, hi]` with the geometry fixed.
fn refine_bracket<T: Real>(
    profile: &FieldProfile<T>,
    p: &ParticleParams<T>,
    kind: Kind,
    l: u32,
    bracket: (T, T),
    cfg: &ShootingConfig<T>,
) -> Result<Eigenstate<T>> {
    let (lo, hi) = bracket;
    let geom = bracket_geometry(profile, p, kind, l, lo, hi, cfg)?;
    let energy = refine(|e: T| mismatch_at(profile, p, kind, l, e, &geom, cfg), lo, hi, cfg)?;
    let geom = bracket_geometry(profile, p, kind, l, energy, energy, cfg).unwrap_or(geom);
    eigenstate_at(profile, p, kind, l, energy, &geom, cfg)
}

fn refine<T: Real, F: Fn(T) -> Result<T>>(f: F, lo: T, hi: T, cfg: &ShootingConfig<T>) -> Result<T> {
    let (mut a, mut b) = (lo, hi);
    let (mut fa, mut fb) = (f(a)?, f(b)?);
    if fa == T::zero() {
        return Ok(a);
    }
    if fb == T::zero() {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::NoRoot { lo: lo.to_f64_lossy(), hi: hi.to_f64_lossy() });
    }
    let tol = |x: T| cfg.energy_tolerance * x.abs().max(T::one());
    let mut side = 0i8;
    for it in 0..cfg.max_iterations {
        if (b - a).abs() <= tol(a.abs().max(b.abs())) {
            return Ok(if fa.abs() < fb.abs() { a } else { b });
        }
        let x = if it < 8 {
            (a + b) * T::lit(0.5)
        } else {
            let s = (a * fb - b * fa) / (fb - fa);
            let w = b - a;
            if s > a + w * T::lit(1e-3) && s < b - w * T::lit(1e-3) {
                s
            } else {
                (a + b) * T::lit(0.5)
            }
        };
        let fx = f(x)?;
        if fx == T::zero() {
            return Ok(x);
        }
        if fx.signum() == fa.signum() {
            a = x;
            fa = fx;
            if side == -1 {
                fb = fb * T::lit(0.5);
            }
            side = -1;
        } else {
            b = x;
            fb = fx;
            if side == 1 {
                fa = fa * T::lit(0.5);
            }
            side = 1;
        }
    }
    Err(Error::NonConvergence { iterations: cfg.max_iterations })
}

/// Joins outward and inward solutions at the match point and normalizes.
pub(crate) fn eigenstate_at<T: Real>(
    profile: &FieldProfile<T>,
    p: &ParticleParams<T>,
    kind: Kind,
    l: u32,
    energy: T,
    geom: &Geometry<T>,
    cfg: &ShootingConfig<T>,
) -> Result<Eigenstate<T>> {
    let sys = RadialSystem::new(profile, p, energy, kind, l);
    let grid = geom.grid(profile, p, cfg);
    let split = grid
        .iter()
        .position(|r| *r == geom.match_point)
        .expect("match point is a grid node");
    let opt = cfg.ode_options();
    let out = super::ode::integrate(|r, y| sys.rhs(r, y), sys.outward_start(grid[0]), &grid[..=split], &opt)?;
    let rev: Vec<T> = grid[split..].iter().rev().copied().collect();
    let mut inn = super::ode::integrate(|r, y| sys.rhs(r, y), sys.inward_start(rev[0])?, &rev, &opt)?;
    inn.reverse();
    let (o, i) = (out[split], inn[0]);
    let c = (o[0] * i[0] + o[1] * i[1]) / (i[0] * i[0] + i[1] * i[1]);
    let mut u = Vec::with_capacity(grid.len());
    let mut v = Vec::with_capacity(grid.len());
    for y in &out {
        u.push(y[0]);
        v.push(y[1]);
    }
    for y in &inn[1..] {
        u.push(c * y[0]);
        v.push(c * y[1]);
    }
    let sol = normalize(&RadialSolution::new(grid, u, v, energy, kind, l)?)?;
    let n_r = sol.node_count(T::lit(1e-8));
    Ok(Eigenstate { energy, n_r, solution: sol, geometry: *geom })
}

/// All eigenvalues of `(kind, l)` in `window`, located by sign changes of
/// the matching function on a uniform mesh and then refined.
///
/// Fails with [`Error::MeshTooCoarse`] when consecutive levels on one sign
/// branch skip a node count.
pub fn spectrum_scan<T: Real>(
    profile: &FieldProfile<T>,
    p: &ParticleParams<T>,
    kind: Kind,
    l: u32,
    window: (T, T),
    cfg: &ShootingConfig<T>,
) -> Result<Vec<EnergyLevel<T>>> {
    Ok(scan_states(profile, p, kind, l, window, cfg)?.iter().map(Eigenstate::level).collect())
}

/// As [`spectrum_scan`], keeping the converged solutions.
pub fn scan_states<T: Real>(
    profile: &FieldProfile<T>,
    p: &ParticleParams<T>,
    kind: Kind,
    l: u32,
    window: (T, T),
    cfg: &ShootingConfig<T>,
) -> Result<Vec<Eigenstate<T>>> {
    cfg.validate()?;
    let (lo, hi) = window;
    if !(lo < hi) {
        return Err(Error::InvalidInput(format!("empty energy window ({lo}, {hi})")));
    }
    let cells = ((hi - lo) / p.mass() * cfg.mesh_per_unit).ceil().to_usize().unwrap_or(1).max(1);
    let mesh: Vec<T> = (0..=cells)
        .map(|i| lo + (hi - lo) * T::from_usize_lossy(i) / T::from_usize_lossy(cells))
        .collect();
    let values: Vec<T> = mesh
        .par_iter()
        .map(|e| mismatch(profile, p, kind, l, *e, cfg))
        .collect::<Result<_>>()?;

    let mut brackets = Vec::new();
    for i in 0..cells {
        if values[i] == T::zero() {
            brackets.push((mesh[i], mesh[i]));
        } else if values[i + 1] != T::zero() && values[i].signum() != values[i + 1].signum() {
            brackets.push((mesh[i], mesh[i + 1]));
        }
    }
    if values[cells] == T::zero() {
        brackets.push((mesh[cells], mesh[cells]));
    }

    let mut states: Vec<Eigenstate<T>> = brackets
        .par_iter()
        .map(|&(a, b)| {
            if a == b {
                let geom = choose_geometry(profile, p, kind, l, a, cfg)?;
                eigenstate_at(profile, p, kind, l, a, &geom, cfg)
            } else {
                refine_bracket(profile, p, kind, l, (a, b), cfg)
            }
        })
        .collect::<Result<_>>()?;
    states.sort_by(|a, b| a.energy.partial_cmp(&b.energy).expect("finite energies"));
    check_labels(&states)?;
    Ok(states)
}

fn check_labels<T: Real>(states: &[Eigenstate<T>]) -> Result<()> {
    for sign in [EnergySign::Positive, EnergySign::Negative] {
        let mut branch: Vec<&Eigenstate<T>> = states.iter().filter(|s| EnergySign::of(s.energy) == sign).collect();
        branch.sort_by(|a, b| a.energy.abs().partial_cmp(&b.energy.abs()).expect("finite energies"));
        for w in branch.windows(2) {
            if w[1].n_r != w[0].n_r + 1 {
                return Err(Error::MeshTooCoarse {
                    energy: w[1].energy.to_f64_lossy(),
                    from: w[0].n_r,
                    to: w[1].n_r,
                });
            }
        }
    }
    Ok(())
}
