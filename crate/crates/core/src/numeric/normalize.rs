use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::solution::RadialSolution;

/// Largest admissible `r rho(r)` at the last node, relative to the norm integral.
const TAIL_LIMIT: f64 = 1e-12;

/// Scales `sol` so that the integral of `(u^2 + v^2) r^2` is 1 and the
/// dominant component starts positive.
pub fn normalize<T: Real>(sol: &RadialSolution<T>) -> Result<RadialSolution<T>> {
    let peak = sol.max_abs();
    if sol.is_empty() || !(peak > T::zero()) {
        return Err(Error::ZeroFunction);
    }
    if !peak.is_finite() {
        return Err(Error::Overflow { r: f64::NAN });
    }
    // Work on a peak-scaled copy so the integral cannot over- or underflow.
    let mut out = sol.clone();
    out.scale(T::one() / peak);
    let integral = out.norm_integral();
    if !(integral > T::zero()) {
        return Err(Error::ZeroFunction);
    }
    let n = out.len() - 1;
    let dens = out.density();
    let tail = dens[n] * out.grid[n] / integral;
    if tail > T::lit(TAIL_LIMIT) {
        return Err(Error::NonDecayingTail { tail_fraction: tail.to_f64_lossy() });
    }
    let dom = out.dominant();
    let floor = T::lit(1e-10) * dom.iter().fold(T::zero(), |m, x| m.max(x.abs()));
    let first = dom.iter().find(|x| x.abs() > floor).copied().unwrap_or(T::one());
    let sign = if first < T::zero() { -T::one() } else { T::one() };
    out.scale(sign / integral.sqrt());
    out.normalized = true;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::Kind;
    use crate::solution::radial_grid;

    fn decaying(scale: f64) -> RadialSolution<f64> {
        let g = radial_grid(1e-6f64, 0.5, 60.0, 1.002);
        let u = g.iter().map(|r: &f64| scale * (-r).exp()).collect();
        let v = vec![0.0; g.len()];
        RadialSolution::new(g, u, v, 1.0, Kind::Plus, 0).unwrap()
    }

    #[test]
    fn exponential_gets_factor_two() {
        let n = normalize(&decaying(1.0)).unwrap();
        let k = n.u[100] / (-n.grid[100]).exp();
        assert!((k - 2.0).abs() < 1e-10, "{k}");
        assert!((n.norm_integral() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn idempotent_up_to_scale() {
        let a = normalize(&decaying(7.0)).unwrap();
        let b = normalize(&decaying(-0.3)).unwrap();
        for (x, y) in a.u.iter().zip(&b.u) {
            assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_zero_and_growing() {
        let mut z = decaying(1.0);
        z.scale(0.0);
        assert_eq!(normalize(&z), Err(Error::ZeroFunction));
        let g = radial_grid(1e-6f64, 0.5, 10.0, 1.01);
        let u = g.iter().map(|r| r.exp()).collect();
        let grow = RadialSolution::new(g.clone(), u, vec![0.0; g.len()], 1.0, Kind::Plus, 0).unwrap();
        assert!(matches!(normalize(&grow), Err(Error::NonDecayingTail { .. })));
    }
}
