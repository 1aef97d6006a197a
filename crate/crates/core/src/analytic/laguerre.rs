use crate::scalar::Real;

/// Generalized Laguerre polynomial `L_n^alpha(x)`, normalized so that
/// `L_n^alpha(0) = binom(n + alpha, n)`.
///
/// Evaluated by the three-term recurrence in `n`.
pub fn laguerre<T: Real>(n: u32, alpha: T, x: T) -> T {
    let mut prev = T::one();
    if n == 0 {
        return prev;
    }
    let mut cur = T::one() + alpha - x;
    for k in 1..n {
        let k = T::from_u32(k).expect("u32 representable");
        let two = T::lit(2.0);
        let next = ((two * k + T::one() + alpha - x) * cur - (k + alpha) * prev) / (k + T::one());
        prev = cur;
        cur = next;
    }
    cur
}

/// `ln(n!)` by direct summation.
pub(crate) fn ln_factorial<T: Real>(n: u32) -> T {
    (2..=n).map(|k| T::from_u32(k).expect("u32 representable").ln()).sum()
}

/// `ln Gamma(n + 1/2)` for integer `n >= 0`.
pub(crate) fn ln_gamma_half<T: Real>(n: u32) -> T {
    let half = T::lit(0.5);
    let base = T::PI().sqrt().ln();
    base + (0..n).map(|k| (T::from_u32(k).expect("u32 representable") + half).ln()).sum::<T>()
}
