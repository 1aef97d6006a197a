use super::radial::coefficients;
use crate::error::Result;
use crate::field::FieldProfile;
use crate::particle::ParticleParams;
use crate::quadrature::differentiate_samples;
use crate::scalar::Real;
use crate::solution::RadialSolution;

/// Pointwise `max(|u' - (a u + b v)|, |v' - (c u + d v)|)` of a sampled
/// solution, with derivatives from five-point finite differences.
pub fn radial_residual<T: Real>(profile: &FieldProfile<T>, p: &ParticleParams<T>, sol: &RadialSolution<T>) -> Result<Vec<T>> {
    let du = differentiate_samples(&sol.grid, &sol.u);
    let dv = differentiate_samples(&sol.grid, &sol.v);
    let mu = p.moment();
    let mut out = Vec::with_capacity(sol.len());
    for i in 0..sol.len() {
        let r = sol.grid[i];
        let me = mu * profile.field_at(r)?;
        let (a, b, c, d) = coefficients(sol.kind, sol.l, me, sol.energy, p.mass(), r);
        let ru = du[i] - (a * sol.u[i] + b * sol.v[i]);
        let rv = dv[i] - (c * sol.u[i] + d * sol.v[i]);
        out.push(ru.abs().max(rv.abs()));
    }
    Ok(out)
}

/// [`radial_residual`] divided by the size of the balanced terms,
/// `max|y| * max(1, |A(r)|)`, so that finite-difference roundoff near the
/// origin is measured against the `1/r` terms it competes with.
pub fn relative_radial_residual<T: Real>(
    profile: &FieldProfile<T>,
    p: &ParticleParams<T>,
    sol: &RadialSolution<T>,
) -> Result<Vec<T>> {
    let raw = radial_residual(profile, p, sol)?;
    let peak = sol.max_abs();
    let mu = p.moment();
    raw.iter()
        .zip(&sol.grid)
        .map(|(x, r)| {
            let me = mu * profile.field_at(*r)?;
            let (a, b, c, d) = coefficients(sol.kind, sol.l, me, sol.energy, p.mass(), *r);
            let size = (a.abs() + b.abs()).max(c.abs() + d.abs()).max(T::one());
            Ok(*x / (peak * size))
        })
        .collect()
}
