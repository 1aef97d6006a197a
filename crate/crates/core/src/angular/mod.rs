//! Two-component spinor spherical harmonics `f+_lm`, `f-_lm`.

mod expansion;
mod ylm;

use num_complex::Complex;

pub use expansion::SpinorExpansion;
pub use ylm::{normalized_legendre_column, spherical_harmonic};

use crate::error::{Error, Result};
use crate::quadrature::gauss_legendre;
use crate::quantum::{check_m, Kind};
use crate::scalar::Real;

/// Upper and lower components.
pub type Spinor<T> = [Complex<T>; 2];
/// Row-major 2x2 complex matrix.
pub type Mat2<T> = [[Complex<T>; 2]; 2];

/// Highest `l` the Legendre recurrence is validated for.
pub const MAX_L: u32 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SpinorHarmonic {
    kind: Kind,
    l: u32,
    m: i32,
}

impl SpinorHarmonic {
    pub fn new(kind: Kind, l: u32, m: i32) -> Result<Self> {
        check_m(l, m)?;
        if l > MAX_L {
            return Err(Error::InvalidQuantumNumbers(format!("l = {l} exceeds {MAX_L}")));
        }
        Ok(Self { kind, l, m })
    }

    /// All `2l + 2` harmonics of one kind and `l`.
    pub fn multiplet(kind: Kind, l: u32) -> impl Iterator<Item = SpinorHarmonic> {
        (-(l as i32 + 1)..=l as i32).map(move |m| SpinorHarmonic { kind, l, m })
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn m(&self) -> i32 {
        self.m
    }

    /// Eigenvalue of sigma . L: `l` for kind +, `-(l + 2)` for kind -.
    pub fn sigma_dot_l_eigenvalue(&self) -> i64 {
        match self.kind {
            Kind::Plus => self.l as i64,
            Kind::Minus => -(self.l as i64 + 2),
        }
    }

    /// j(j+1) with j = l + 1/2.
    pub fn j_squared_eigenvalue(&self) -> f64 {
        let l = self.l as f64;
        (l + 0.5) * (l + 1.5)
    }

    pub fn j_z_eigenvalue(&self) -> f64 {
        self.m as f64 + 0.5
    }

    /// Exact expansion in Y_lm with the defining Clebsch-Gordan weights.
    pub fn expansion<T: Real>(&self) -> SpinorExpansion<T> {
        let (l, m) = (self.l as f64, self.m as f64);
        let mut e = SpinorExpansion::default();
        match self.kind {
            Kind::Plus => {
                let d = 2.0 * l + 1.0;
                e.push_upper(self.l, self.m, T::lit(((l + m + 1.0) / d).sqrt()));
                e.push_lower(self.l, self.m + 1, T::lit(((l - m) / d).sqrt()));
            }
            Kind::Minus => {
                let d = 2.0 * l + 3.0;
                e.push_upper(self.l + 1, self.m, T::lit(((l - m + 1.0) / d).sqrt()));
                e.push_lower(self.l + 1, self.m + 1, T::lit(-((l + m + 2.0) / d).sqrt()));
            }
        }
        e.upper.retain(|_, c| c.norm() > T::zero());
        e.lower.retain(|_, c| c.norm() > T::zero());
        e
    }

    /// Value at polar angle `theta` in [0, pi] and azimuth `phi`.
    pub fn eval<T: Real>(&self, theta: T, phi: T) -> Result<Spinor<T>> {
        if !(theta >= T::zero() && theta <= T::PI()) {
            return Err(Error::InvalidInput(format!("theta = {theta} outside [0, pi]")));
        }
        Ok(self.eval_unchecked(theta, phi))
    }

    /// Evaluates without validating the angles.
    pub fn eval_unchecked<T: Real>(&self, theta: T, phi: T) -> Spinor<T> {
        let (l, m) = (self.l as f64, self.m as f64);
        let y = |ll: u32, mm: i32| spherical_harmonic(ll, mm, theta, phi);
        match self.kind {
            Kind::Plus => {
                let d = 2.0 * l + 1.0;
                [
                    y(self.l, self.m) * T::lit(((l + m + 1.0) / d).sqrt()),
                    y(self.l, self.m + 1) * T::lit(((l - m) / d).sqrt()),
                ]
            }
            Kind::Minus => {
                let d = 2.0 * l + 3.0;
                [
                    y(self.l + 1, self.m) * T::lit(((l - m + 1.0) / d).sqrt()),
                    y(self.l + 1, self.m + 1) * T::lit(-((l + m + 2.0) / d).sqrt()),
                ]
            }
        }
    }
}

/// Evaluates `f+_lm` or `f-_lm`.
pub fn eval_spinor_harmonic<T: Real>(h: &SpinorHarmonic, theta: T, phi: T) -> Result<Spinor<T>> {
    h.eval(theta, phi)
}

/// sigma . e_r = sigma_x sin(theta)cos(phi) + sigma_y sin(theta)sin(phi) + sigma_z cos(theta).
pub fn pauli_dot_unit_radial<T: Real>(theta: T, phi: T) -> Mat2<T> {
    let (s, c) = theta.sin_cos();
    let zero = T::zero();
    [
        [Complex::new(c, zero), Complex::from_polar(s, -phi)],
        [Complex::from_polar(s, phi), Complex::new(-c, zero)],
    ]
}

pub fn mat_vec<T: Real>(m: &Mat2<T>, v: &Spinor<T>) -> Spinor<T> {
    [m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]]
}

/// `a^dagger b`.
pub fn inner<T: Real>(a: &Spinor<T>, b: &Spinor<T>) -> Complex<T> {
    a[0].conj() * b[0] + a[1].conj() * b[1]
}

/// Partial completeness sum over both kinds and all `l <= l_max`:
/// `sum f(a) f(b)^dagger`.
pub fn completeness_defect<T: Real>(l_max: u32, a: (T, T), b: (T, T)) -> Mat2<T> {
    let z = Complex::new(T::zero(), T::zero());
    let mut acc = [[z, z], [z, z]];
    for l in 0..=l_max {
        for kind in [Kind::Plus, Kind::Minus] {
            for h in SpinorHarmonic::multiplet(kind, l) {
                let fa = h.eval_unchecked(a.0, a.1);
                let fb = h.eval_unchecked(b.0, b.1);
                for i in 0..2 {
                    for j in 0..2 {
                        acc[i][j] = acc[i][j] + fa[i] * fb[j].conj();
                    }
                }
            }
        }
    }
    acc
}

/// Product rule on the sphere: Gauss-Legendre in cos(theta), uniform in phi.
#[derive(Debug, Clone)]
pub struct SphereQuadrature<T> {
    pub points: Vec<(T, T)>,
    pub weights: Vec<T>,
}

impl<T: Real> SphereQuadrature<T> {
    /// Exact for polynomials of degree < 2 `n_theta` in cos(theta) times
    /// e^{ik phi} with |k| < `n_phi`.
    pub fn new(n_theta: usize, n_phi: usize) -> Self {
        let (x, w) = gauss_legendre::<T>(n_theta);
        let dphi = T::lit(2.0) * T::PI() / T::from_usize_lossy(n_phi);
        let mut points = Vec::with_capacity(n_theta * n_phi);
        let mut weights = Vec::with_capacity(n_theta * n_phi);
        for (xi, wi) in x.iter().zip(&w) {
            let theta = xi.acos();
            for j in 0..n_phi {
                points.push((theta, dphi * T::from_usize_lossy(j)));
                weights.push(*wi * dphi);
            }
        }
        Self { points, weights }
    }

    pub fn integrate<F: FnMut(T, T) -> Complex<T>>(&self, mut f: F) -> Complex<T> {
        self.points
            .iter()
            .zip(&self.weights)
            .fold(Complex::new(T::zero(), T::zero()), |acc, (&(t, p), &w)| acc + f(t, p) * w)
    }
}
