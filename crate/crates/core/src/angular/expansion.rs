//! Two-component functions on the sphere expanded in spherical harmonics,
//! with exact actions of the angular-momentum operators.

use std::collections::BTreeMap;

use num_complex::Complex;

use super::ylm::spherical_harmonic;
use super::Spinor;
use crate::scalar::Real;

type Coeffs<T> = BTreeMap<(u32, i32), Complex<T>>;

/// `sum c_lm Y_lm` in each spinor component.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SpinorExpansion<T> {
    pub upper: Coeffs<T>,
    pub lower: Coeffs<T>,
}

fn add_to<T: Real>(map: &mut Coeffs<T>, key: (u32, i32), c: Complex<T>) {
    if key.1.unsigned_abs() > key.0 {
        return;
    }
    let slot = map.entry(key).or_insert_with(|| Complex::new(T::zero(), T::zero()));
    *slot = *slot + c;
}

fn ladder_up<T: Real>(l: u32, m: i32) -> T {
    let (l, m) = (l as f64, m as f64);
    T::lit(((l - m) * (l + m + 1.0)).max(0.0).sqrt())
}

fn ladder_down<T: Real>(l: u32, m: i32) -> T {
    let (l, m) = (l as f64, m as f64);
    T::lit(((l + m) * (l - m + 1.0)).max(0.0).sqrt())
}

impl<T: Real> SpinorExpansion<T> {
    pub fn push_upper(&mut self, l: u32, m: i32, c: T) {
        add_to(&mut self.upper, (l, m), Complex::new(c, T::zero()));
    }

    pub fn push_lower(&mut self, l: u32, m: i32, c: T) {
        add_to(&mut self.lower, (l, m), Complex::new(c, T::zero()));
    }

    /// sigma . L = (L_z a + L_- b, -L_z b + L_+ a) for spinor (a, b).
    pub fn sigma_dot_l(&self) -> Self {
        let mut out = Self::default();
        for (&(l, m), &a) in &self.upper {
            add_to(&mut out.upper, (l, m), a * T::lit(m as f64));
            add_to(&mut out.lower, (l, m + 1), a * ladder_up::<T>(l, m));
        }
        for (&(l, m), &b) in &self.lower {
            add_to(&mut out.lower, (l, m), b * T::lit(-(m as f64)));
            add_to(&mut out.upper, (l, m - 1), b * ladder_down::<T>(l, m));
        }
        out
    }

    /// L^2 acting componentwise.
    pub fn l_squared(&self) -> Self {
        let f = |map: &Coeffs<T>| {
            map.iter()
                .map(|(&(l, m), &c)| ((l, m), c * T::lit((l * (l + 1)) as f64)))
                .collect()
        };
        Self { upper: f(&self.upper), lower: f(&self.lower) }
    }

    /// j_z = L_z + sigma_z / 2.
    pub fn j_z(&self) -> Self {
        let upper = self.upper.iter().map(|(&(l, m), &c)| ((l, m), c * T::lit(m as f64 + 0.5))).collect();
        let lower = self.lower.iter().map(|(&(l, m), &c)| ((l, m), c * T::lit(m as f64 - 0.5))).collect();
        Self { upper, lower }
    }

    /// j^2 = L^2 + sigma . L + 3/4.
    pub fn j_squared(&self) -> Self {
        self.l_squared().add(&self.sigma_dot_l()).add(&self.scaled(T::lit(0.75)))
    }

    pub fn scaled(&self, s: T) -> Self {
        let f = |map: &Coeffs<T>| map.iter().map(|(k, c)| (*k, *c * s)).collect();
        Self { upper: f(&self.upper), lower: f(&self.lower) }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.upper {
            add_to(&mut out.upper, *k, *c);
        }
        for (k, c) in &other.lower {
            add_to(&mut out.lower, *k, *c);
        }
        out
    }

    /// Largest coefficient difference.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        let diff = self.add(&other.scaled(-T::one()));
        diff.upper.values().chain(diff.lower.values()).fold(T::zero(), |m, c| m.max(c.norm()))
    }

    pub fn eval(&self, theta: T, phi: T) -> Spinor<T> {
        let sum = |map: &Coeffs<T>| {
            map.iter().fold(Complex::new(T::zero(), T::zero()), |acc, (&(l, m), &c)| {
                acc + c * spherical_harmonic(l, m, theta, phi)
            })
        };
        [sum(&self.upper), sum(&self.lower)]
    }
}
