//! Adaptive Dormand-Prince 5(4) integration of small fixed-size systems.

use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OdeOptions<T> {
    /// Relative tolerance, measured against the sup norm of the state.
    pub rtol: T,
    pub max_steps: usize,
}

impl<T: Real> Default for OdeOptions<T> {
    fn default() -> Self {
        Self { rtol: T::lit(1e-10), max_steps: 2_000_000 }
    }
}

const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
/// Fifth-order weights minus fourth-order weights.
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

fn sup<T: Real, const N: usize>(y: &[T; N]) -> T {
    y.iter().fold(T::zero(), |m, x| m.max(x.abs()))
}

/// Integrates `y' = f(t, y)` from `nodes[0]` through every node in order
/// and returns the state at each node. Nodes may run forwards or
/// backwards but must be strictly monotone.
pub fn integrate<T, F, const N: usize>(f: F, y0: [T; N], nodes: &[T], opt: &OdeOptions<T>) -> Result<Vec<[T; N]>>
where
    T: Real,
    F: Fn(T, &[T; N]) -> [T; N],
{
    let mut out = Vec::with_capacity(nodes.len());
    out.push(y0);
    if nodes.len() < 2 {
        return Ok(out);
    }
    let dir = if nodes[1] > nodes[0] { T::one() } else { -T::one() };
    let limit = T::max_value().sqrt();
    let floor = T::min_positive_value().sqrt();
    let c: [T; 7] = C.map(T::lit);
    let a: [[T; 6]; 7] = A.map(|row| row.map(T::lit));
    let e: [T; 7] = E.map(T::lit);

    let mut t = nodes[0];
    let mut y = y0;
    let mut k0 = f(t, &y);
    let span = (nodes[1] - nodes[0]).abs();
    let mut h = T::lit(0.01) * span.min(t.abs().max(span * T::lit(1e-3)));
    let mut steps = 0usize;

    for &target in &nodes[1..] {
        if (target - t) * dir <= T::zero() {
            return Err(Error::InvalidInput("integration nodes must be strictly monotone".into()));
        }
        while (target - t) * dir > T::zero() {
            steps += 1;
            if steps > opt.max_steps {
                return Err(Error::StepUnderflow { r: t.to_f64_lossy() });
            }
            let remaining = (target - t).abs();
            let last = h >= remaining;
            let hs = if last { remaining } else { h } * dir;

            let mut k = [[T::zero(); N]; 7];
            k[0] = k0;
            for s in 1..7 {
                let mut ys = y;
                for (i, yi) in ys.iter_mut().enumerate() {
                    let mut acc = T::zero();
                    for j in 0..s {
                        acc = acc + a[s][j] * k[j][i];
                    }
                    *yi = *yi + hs * acc;
                }
                k[s] = f(t + c[s] * hs, &ys);
            }
            // FSAL: stage 7 is evaluated at the fifth-order solution.
            let mut y_new = y;
            for (i, yi) in y_new.iter_mut().enumerate() {
                let mut acc = T::zero();
                for j in 0..6 {
                    acc = acc + a[6][j] * k[j][i];
                }
                *yi = *yi + hs * acc;
            }
            let mut err = T::zero();
            for i in 0..N {
                let mut acc = T::zero();
                for j in 0..7 {
                    acc = acc + e[j] * k[j][i];
                }
                err = err.max((hs * acc).abs());
            }
            if k.iter().flatten().any(|x| !x.is_finite()) {
                if k.iter().flatten().any(|x| x.is_nan()) {
                    return Err(Error::InvalidInput(format!("non-finite derivative near t = {t}")));
                }
                return Err(Error::Overflow { r: t.to_f64_lossy() });
            }
            let scale = opt.rtol * sup(&y).max(sup(&y_new)) + floor;
            let ratio = err / scale;
            let factor = if ratio == T::zero() {
                T::lit(5.0)
            } else {
                (T::lit(0.9) * ratio.powf(T::lit(-0.2))).max(T::lit(0.2)).min(T::lit(5.0))
            };
            if ratio <= T::one() {
                t = if last { target } else { t + hs };
                y = y_new;
                k0 = k[6];
                if sup(&y) > limit {
                    return Err(Error::Overflow { r: t.to_f64_lossy() });
                }
                // A step clipped to land on a node says little about the
                // admissible size, so only shrink on it.
                if !last {
                    h = hs.abs() * factor;
                } else if factor < T::one() {
                    h = h.min(hs.abs() * factor);
                }
            } else {
                h = hs.abs() * factor;
            }
            if h <= t.abs().max(T::one()) * T::epsilon() * T::lit(4.0) {
                return Err(Error::StepUnderflow { r: t.to_f64_lossy() });
            }
        }
        out.push(y);
    }
    Ok(out)
}
