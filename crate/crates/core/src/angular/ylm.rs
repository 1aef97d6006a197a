use num_complex::Complex;

use crate::scalar::Real;

/// Orthonormal associated Legendre values sqrt((2l+1)/4pi (l-m)!/(l+m)!) P_l^m(x)
/// for l = m..=l_max at fixed m >= 0, Condon-Shortley phase included.
///
/// Upward recurrence in l; stable through l = 64 and beyond.
pub fn normalized_legendre_column<T: Real>(l_max: u32, m: u32, x: T) -> Vec<T> {
    if m > l_max {
        return Vec::new();
    }
    let one = T::one();
    let sin_theta = (one - x * x).max(T::zero()).sqrt();
    let mut pmm = T::one() / (T::lit(4.0) * T::PI()).sqrt();
    for k in 1..=m {
        let kf = T::lit(k as f64);
        pmm = -pmm * ((T::lit(2.0) * kf + one) / (T::lit(2.0) * kf)).sqrt() * sin_theta;
    }
    let mut out = Vec::with_capacity((l_max - m + 1) as usize);
    out.push(pmm);
    if l_max == m {
        return out;
    }
    let mf = T::lit(m as f64);
    let p1 = x * (T::lit(2.0) * mf + T::lit(3.0)).sqrt() * pmm;
    out.push(p1);
    let a = |l: u32| {
        let lf = T::lit(l as f64);
        ((T::lit(4.0) * lf * lf - one) / (lf * lf - mf * mf)).sqrt()
    };
    let mut prev2 = pmm;
    let mut prev1 = p1;
    for l in m + 2..=l_max {
        let next = a(l) * (x * prev1 - prev2 / a(l - 1));
        out.push(next);
        prev2 = prev1;
        prev1 = next;
    }
    out
}

/// Complex spherical harmonic Y_lm with the Condon-Shortley phase; zero when |m| > l.
pub fn spherical_harmonic<T: Real>(l: u32, m: i32, theta: T, phi: T) -> Complex<T> {
    let am = m.unsigned_abs();
    if am > l {
        return Complex::new(T::zero(), T::zero());
    }
    let p = normalized_legendre_column(l, am, theta.cos())[(l - am) as usize];
    let arg = T::lit(am as f64) * phi;
    let y = Complex::new(p * arg.cos(), p * arg.sin());
    if m >= 0 {
        y
    } else if am % 2 == 0 {
        y.conj()
    } else {
        -y.conj()
    }
}
