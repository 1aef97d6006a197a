//! Gauss rules, adaptive Gauss-Kronrod, and high-order rules on sampled data.

use crate::scalar::Real;

/// Gauss-Legendre nodes and weights on [-1, 1].
pub fn gauss_legendre<T: Real>(n: usize) -> (Vec<T>, Vec<T>) {
    assert!(n > 0, "need at least one node");
    let mut nodes = vec![T::zero(); n];
    let mut weights = vec![T::zero(); n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        // Newton iteration in f64 (nodes are then rounded to T).
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = T::lit(-x);
        nodes[n - 1 - i] = T::lit(x);
        weights[i] = T::lit(w);
        weights[n - 1 - i] = T::lit(w);
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

const GK_NODES: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const GK_WEIGHTS: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const G_WEIGHTS: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn gk15<T: Real, F: Fn(T) -> T>(f: &F, a: T, b: T) -> (T, T) {
    let half = (b - a) / T::lit(2.0);
    let mid = (a + b) / T::lit(2.0);
    let fc = f(mid);
    let mut kronrod = fc * T::lit(GK_WEIGHTS[7]);
    let mut gauss = fc * T::lit(G_WEIGHTS[3]);
    for j in 0..7 {
        let dx = half * T::lit(GK_NODES[j]);
        let s = f(mid - dx) + f(mid + dx);
        kronrod = kronrod + s * T::lit(GK_WEIGHTS[j]);
        if j % 2 == 1 {
            gauss = gauss + s * T::lit(G_WEIGHTS[j / 2]);
        }
    }
    (kronrod * half, ((kronrod - gauss) * half).abs())
}

/// Globally adaptive 7/15-point Gauss-Kronrod quadrature of `f` over [a, b].
///
/// The interval with the largest error estimate is bisected until the summed
/// estimate meets `max(abs_tol, rel_tol |I|)`. Nodes are interior, so
/// integrable endpoint singularities are tolerated.
pub fn integrate_adaptive<T: Real, F: Fn(T) -> T>(f: F, a: T, b: T, rel_tol: T, abs_tol: T) -> T {
    const MAX_INTERVALS: usize = 4000;
    if a == b {
        return T::zero();
    }
    let (v, e) = gk15(&f, a, b);
    let mut parts = vec![(a, b, v, e)];
    loop {
        let total: T = parts.iter().map(|p| p.2).sum();
        let error: T = parts.iter().map(|p| p.3).sum();
        if error <= abs_tol.max(rel_tol * total.abs()) || parts.len() >= MAX_INTERVALS {
            return total;
        }
        let worst = parts
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.partial_cmp(&y.1 .3).unwrap_or(std::cmp::Ordering::Equal))
            .map(|(i, _)| i)
            .expect("nonempty");
        let (lo, hi, _, _) = parts.swap_remove(worst);
        let mid = (lo + hi) / T::lit(2.0);
        if !(mid > lo && mid < hi) {
            return total;
        }
        let (lv, le) = gk15(&f, lo, mid);
        let (rv, re) = gk15(&f, mid, hi);
        parts.push((lo, mid, lv, le));
        parts.push((mid, hi, rv, re));
    }
}

/// Window of `width` consecutive indices around interval/point `i`.
fn stencil(i: usize, width: usize, n: usize) -> usize {
    let half = (width - 1) / 2;
    i.saturating_sub(half).min(n - width)
}

/// Integral of sampled data over the full grid, by integrating the local
/// cubic through the four samples surrounding each interval.
///
/// Fourth-order accurate on smooth non-uniform grids.
pub fn integrate_samples<T: Real>(x: &[T], y: &[T]) -> T {
    assert_eq!(x.len(), y.len());
    let n = x.len();
    match n {
        0 | 1 => return T::zero(),
        2 | 3 => {
            return (1..n).map(|i| (x[i] - x[i - 1]) * (y[i] + y[i - 1]) / T::lit(2.0)).sum();
        }
        _ => {}
    }
    // Two-point Gauss rule integrates the cubic exactly.
    let g = T::lit(0.5 / 3f64.sqrt());
    let half = T::lit(0.5);
    let mut total = T::zero();
    for i in 0..n - 1 {
        let s = stencil(i, 4, n);
        let xs = &x[s..s + 4];
        let ys = &y[s..s + 4];
        let h = x[i + 1] - x[i];
        let mid = (x[i] + x[i + 1]) * half;
        let p = lagrange_eval(xs, ys, mid - g * h) + lagrange_eval(xs, ys, mid + g * h);
        total = total + p * h * half;
    }
    total
}

fn lagrange_eval<T: Real>(xs: &[T], ys: &[T], t: T) -> T {
    let mut acc = T::zero();
    for j in 0..xs.len() {
        let mut basis = T::one();
        for k in 0..xs.len() {
            if k != j {
                basis = basis * (t - xs[k]) / (xs[j] - xs[k]);
            }
        }
        acc = acc + ys[j] * basis;
    }
    acc
}

/// Derivative of sampled data at every node from the five-point Lagrange
/// interpolant (fourth order on non-uniform grids).
pub fn differentiate_samples<T: Real>(x: &[T], y: &[T]) -> Vec<T> {
    assert_eq!(x.len(), y.len());
    let n = x.len();
    assert!(n >= 5, "need at least five samples");
    (0..n)
        .map(|i| {
            let s = stencil(i, 5, n);
            let xs = &x[s..s + 5];
            let ys = &y[s..s + 5];
            let xi = x[i];
            let local = i - s;
            let mut d = T::zero();
            for j in 0..5 {
                let w = if j == local {
                    (0..5).filter(|&k| k != j).map(|k| T::one() / (xi - xs[k])).sum::<T>()
                } else {
                    let mut w = T::one() / (xs[j] - xs[local]);
                    for k in 0..5 {
                        if k != j && k != local {
                            w = w * (xi - xs[k]) / (xs[j] - xs[k]);
                        }
                    }
                    w
                };
                d = d + w * ys[j];
            }
            d
        })
        .collect()
}
