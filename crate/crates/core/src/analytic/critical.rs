use crate::error::{Error, Result};
use crate::field::{FieldProfile, FieldShape, Tail};
use crate::particle::ParticleParams;
use crate::quadrature::{integrate_adaptive, integrate_samples};
use crate::quantum::Kind;
use crate::scalar::{sign, Real};
use crate::solution::{radial_grid, RadialSolution};

/// Result of constructing the zero mode at `E = +-m`.
#[derive(Debug, Clone, PartialEq)]
pub enum CriticalOutcome<T> {
    Bound(RadialSolution<T>),
    NotNormalizable { kind: Kind, energy: T, l: u32, reason: String },
}

impl<T> CriticalOutcome<T> {
    pub fn is_bound(&self) -> bool {
        matches!(self, CriticalOutcome::Bound(_))
    }

    pub fn solution(&self) -> Option<&RadialSolution<T>> {
        match self {
            CriticalOutcome::Bound(s) => Some(s),
            CriticalOutcome::NotNormalizable { .. } => None,
        }
    }
}

/// Number of `l` values for which a field with tail `kappa / r` supports a
/// critical bound state: the count of integers `0 <= l < |mu kappa| - 3/2`.
pub fn critical_count_inverse_field<T: Real>(mu_kappa: T) -> u32 {
    let x = mu_kappa.abs() - T::lit(1.5);
    if x <= T::zero() {
        0
    } else {
        x.ceil().to_u32().unwrap_or(u32::MAX)
    }
}

/// The critical state of angular index `l`.
///
/// With `Phi(r) = int_0^r mu E` and `s` the sign of `mu E` at large `r`, the
/// state has energy `s m`, kind + for `s > 0` and kind - for `s < 0`. Its
/// dominant component is `A r^l exp(-s Phi(r))` and the minor component
/// vanishes identically.
pub fn critical_state<T: Real>(
    profile: &FieldProfile<T>,
    p: &ParticleParams<T>,
    l: u32,
) -> Result<CriticalOutcome<T>> {
    let shape = profile.electric();
    let mu = p.moment();
    let tail = shape.tail();
    let field_sign = match tail.sign() {
        None => return Err(Error::IndefiniteSign),
        Some(0) => edge_sign(shape),
        Some(s) => s,
    };
    let s = field_sign * sign(mu);
    let (kind, energy) = if s >= 0 { (Kind::Plus, p.mass()) } else { (Kind::Minus, -p.mass()) };
    let lt = T::from_u32(l).expect("u32 representable");

    let not_normalizable = |reason: String| Ok(CriticalOutcome::NotNormalizable { kind, energy, l, reason });
    let power_tail = match tail {
        Tail::Confining { .. } => None,
        Tail::InverseR { kappa } => {
            let x = (mu * kappa).abs();
            if lt >= x - T::lit(1.5) {
                return not_normalizable(format!(
                    "density ~ r^{} at large r: need l < |mu kappa| - 3/2 = {}",
                    (T::lit(2.0) * (lt + T::one() - x)).to_f64_lossy(),
                    (x - T::lit(1.5)).to_f64_lossy()
                ));
            }
            // Exponent q of the density r^2 u^2 ~ r^q.
            Some(T::lit(2.0) * (lt + T::one() - x))
        }
        Tail::FastDecay { .. } | Tail::Zero => {
            return not_normalizable("field decays faster than 1/r: the exponent stays bounded".into())
        }
        Tail::Indefinite => return Err(Error::IndefiniteSign),
    };

    let sigma = T::from_i8(s.max(-1)).expect("i8 representable");
    let scale = shape.length_scale(mu);
    let r_min = T::lit(1e-6) * scale;
    let field = |r: T| mu * shape.value(r);
    let grid = match power_tail {
        None => {
            let r_max = confining_extent(&field, sigma, lt, scale, r_min)?;
            radial_grid(r_min, T::lit(0.5) * scale, r_max, T::lit(1.01))
        }
        Some(q) => {
            let mut r_max = (T::lit(1e-14) * (-q - T::one())).powf(T::one() / (q + T::one())) * scale;
            r_max = r_max.min(T::lit(1e30) * scale).max(T::lit(100.0) * scale);
            if let FieldShape::Tabulated(t) = shape {
                r_max = r_max.max(T::lit(10.0) * t.last());
            }
            radial_grid(r_min, r_max, r_max, T::lit(1.01))
        }
    };

    let tol = T::lit(1e-13);
    let mut phi = Vec::with_capacity(grid.len());
    let mut acc = integrate_adaptive(field, T::zero(), grid[0], tol, T::zero());
    phi.push(acc);
    for w in grid.windows(2) {
        acc = acc + integrate_adaptive(field, w[0], w[1], tol, T::zero());
        phi.push(acc);
    }
    if let Some(i) = phi.iter().position(|x| !x.is_finite()) {
        return Err(Error::UndefinedTail(grid[i].to_f64_lossy()));
    }

    let log_d: Vec<T> = grid.iter().zip(&phi).map(|(r, ph)| lt * r.ln() - sigma * *ph).collect();
    let peak = log_d.iter().fold(T::neg_infinity(), |a, b| a.max(*b));
    let d: Vec<T> = log_d.iter().map(|x| (*x - peak).exp()).collect();
    let dens: Vec<T> = grid.iter().zip(&d).map(|(r, x)| *x * *x * *r * *r).collect();
    let mut integral = integrate_samples(&grid, &dens);
    if let Some(q) = power_tail {
        let n = grid.len() - 1;
        integral = integral + dens[n] * grid[n] / (-q - T::one());
    }
    let inv = T::one() / integral.sqrt();
    let dominant: Vec<T> = d.iter().map(|x| *x * inv).collect();
    let zeros = vec![T::zero(); grid.len()];
    let (u, v) = match kind {
        Kind::Plus => (dominant, zeros),
        Kind::Minus => (zeros, dominant),
    };
    let mut sol = RadialSolution::new(grid, u, v, energy, kind, l)?;
    sol.normalized = true;
    sol.norm_constant = Some((-peak).exp() * inv);
    Ok(CriticalOutcome::Bound(sol))
}

/// Sign of the last tabulated sample, for tails that vanish.
fn edge_sign<T: Real>(shape: &FieldShape<T>) -> i8 {
    match shape {
        FieldShape::Tabulated(t) => {
            let s = sign(*t.values().last().expect("table nonempty"));
            if s == 0 {
                1
            } else {
                s
            }
        }
        _ => 1,
    }
}

/// Radius past which `r^{l+1} exp(-sigma Phi)` is below `e^-30` of its peak.
fn confining_extent<T: Real, F: Fn(T) -> T + Copy>(field: &F, sigma: T, lt: T, scale: T, r_min: T) -> Result<T> {
    let tol = T::lit(1e-10);
    let mut r_prev = r_min;
    let mut phi = integrate_adaptive(*field, T::zero(), r_min, tol, T::zero());
    let mut best = T::neg_infinity();
    let mut r = T::lit(0.25) * scale;
    for _ in 0..400 {
        phi = phi + integrate_adaptive(*field, r_prev, r, tol, T::zero());
        let e = (lt + T::one()) * r.ln() - sigma * phi;
        if !e.is_finite() {
            return Err(Error::UndefinedTail(r.to_f64_lossy()));
        }
        best = best.max(e);
        if best - e > T::lit(30.0) {
            return Ok(r);
        }
        r_prev = r;
        r = r * T::lit(1.1);
    }
    Err(Error::InvalidProfile("critical state does not decay within the search range".into()))
}
