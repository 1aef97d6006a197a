//! Central field profiles E(r) (and optional B(r)).

use crate::error::{Error, Result};
use crate::scalar::{sign, Real};

/// Core radius used for `InverseR` when none is given.
pub const DEFAULT_CORE_RADIUS: f64 = 1.0;

/// Tolerance on a fitted tail exponent for treating it as exactly -1.
const INVERSE_TAIL_TOLERANCE: f64 = 1e-6;

/// Radial dependence of one central field component.
#[derive(Debug, Clone, PartialEq)]
pub enum FieldShape<T> {
    /// E(r) = e0.
    Constant { e0: T },
    /// E(r) = beta r.
    Linear { beta: T },
    /// E(r) = kappa / r outside `core_radius`, continued linearly
    /// (kappa r / core^2) inside so the field stays regular at the origin.
    InverseR { kappa: T, core_radius: T },
    /// Cubic-spline interpolated samples with power-law extrapolation.
    Tabulated(Table<T>),
}

/// How the field behaves as r grows without bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Tail<T> {
    /// E ~ c r^p with p > -1: the critical-state exponent grows without bound.
    Confining { coefficient: T, power: T },
    /// E ~ kappa / r exactly.
    InverseR { kappa: T },
    /// E ~ c r^p with p < -1.
    FastDecay { coefficient: T, power: T },
    /// E vanishes identically past the table.
    Zero,
    /// Samples at the edge do not share a sign.
    Indefinite,
}

impl<T: Real> Tail<T> {
    /// Sign of E at large r, if definite.
    pub fn sign(&self) -> Option<i8> {
        match *self {
            Tail::Confining { coefficient, .. } | Tail::FastDecay { coefficient, .. } => Some(sign(coefficient)),
            Tail::InverseR { kappa } => Some(sign(kappa)),
            Tail::Zero => Some(0),
            Tail::Indefinite => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Extrapolation<T> {
    Power { coefficient: T, power: T },
    Cubic,
    Zero,
    Undefined,
}

/// Validated sample table.
#[derive(Debug, Clone, PartialEq)]
pub struct Table<T> {
    r: Vec<T>,
    e: Vec<T>,
    second: Vec<T>,
    inner: Extrapolation<T>,
    outer: Extrapolation<T>,
}

impl<T: Real> Table<T> {
    pub fn new(r: Vec<T>, e: Vec<T>) -> Result<Self> {
        if r.is_empty() || e.is_empty() {
            return Err(Error::InvalidProfile("empty table".into()));
        }
        if r.len() != e.len() {
            return Err(Error::InvalidProfile(format!(
                "table columns differ in length ({} radii, {} values)",
                r.len(),
                e.len()
            )));
        }
        if r.len() < 4 {
            return Err(Error::InvalidProfile(format!("need at least 4 samples, got {}", r.len())));
        }
        if r.iter().chain(e.iter()).any(|x| !x.is_finite()) {
            return Err(Error::InvalidProfile("non-finite table entry".into()));
        }
        if r[0] <= T::zero() {
            return Err(Error::InvalidProfile("table radii must be positive".into()));
        }
        if let Some(i) = (1..r.len()).find(|&i| r[i] <= r[i - 1]) {
            return Err(Error::NonMonotonicGrid { index: i });
        }
        let second = natural_spline_second_derivatives(&r, &e);
        let n = r.len();
        let inner = match power_fit(&r[..4], &e[..4]) {
            Some((c, p)) => {
                if p <= -T::one() + T::lit(INVERSE_TAIL_TOLERANCE) {
                    return Err(Error::InvalidProfile(format!(
                        "field too singular at the origin: r E(r) ~ r^{} is unbounded",
                        (p + T::one()).to_f64_lossy()
                    )));
                }
                Extrapolation::Power { coefficient: c, power: p }
            }
            None => Extrapolation::Cubic,
        };
        let outer = if e[n - 4..].iter().all(|x| *x == T::zero()) {
            Extrapolation::Zero
        } else {
            match power_fit(&r[n - 4..], &e[n - 4..]) {
                Some((c, p)) => Extrapolation::Power { coefficient: c, power: p },
                None => Extrapolation::Undefined,
            }
        };
        Ok(Self { r, e, second, inner, outer })
    }

    pub fn radii(&self) -> &[T] {
        &self.r
    }

    pub fn values(&self) -> &[T] {
        &self.e
    }

    pub fn first(&self) -> T {
        self.r[0]
    }

    pub fn last(&self) -> T {
        self.r[self.r.len() - 1]
    }

    fn segment(&self, r: T) -> usize {
        let n = self.r.len();
        let idx = self.r.partition_point(|x| *x <= r);
        idx.clamp(1, n - 1) - 1
    }

    fn spline(&self, r: T) -> (T, T) {
        let i = self.segment(r);
        let (x0, x1) = (self.r[i], self.r[i + 1]);
        let h = x1 - x0;
        let a = (x1 - r) / h;
        let b = (r - x0) / h;
        let six = T::lit(6.0);
        let (m0, m1) = (self.second[i], self.second[i + 1]);
        let value = a * self.e[i]
            + b * self.e[i + 1]
            + ((a * a * a - a) * m0 + (b * b * b - b) * m1) * h * h / six;
        let three = T::lit(3.0);
        let slope = (self.e[i + 1] - self.e[i]) / h
            - (three * a * a - T::one()) * h * m0 / six
            + (three * b * b - T::one()) * h * m1 / six;
        (value, slope)
    }

    fn eval(&self, r: T) -> (T, T) {
        let extrap = if r < self.first() {
            self.inner
        } else if r > self.last() {
            self.outer
        } else {
            return self.spline(r);
        };
        match extrap {
            Extrapolation::Power { coefficient, power } => {
                let value = coefficient * r.powf(power);
                (value, power * value / r)
            }
            Extrapolation::Cubic => self.spline(r),
            Extrapolation::Zero => (T::zero(), T::zero()),
            Extrapolation::Undefined => (T::nan(), T::nan()),
        }
    }

    fn defined_at(&self, r: T) -> bool {
        !(r > self.last() && self.outer == Extrapolation::Undefined)
    }

    fn tail(&self) -> Tail<T> {
        match self.outer {
            Extrapolation::Power { coefficient, power } => classify_power(coefficient, power),
            Extrapolation::Zero => Tail::Zero,
            _ => Tail::Indefinite,
        }
    }
}

fn classify_power<T: Real>(coefficient: T, power: T) -> Tail<T> {
    let minus_one = -T::one();
    if (power - minus_one).abs() < T::lit(INVERSE_TAIL_TOLERANCE) {
        Tail::InverseR { kappa: coefficient }
    } else if power > minus_one {
        Tail::Confining { coefficient, power }
    } else {
        Tail::FastDecay { coefficient, power }
    }
}

/// Least-squares fit of |E| = |c| r^p in log-log space; `None` unless every
/// sample is nonzero with a common sign.
fn power_fit<T: Real>(r: &[T], e: &[T]) -> Option<(T, T)> {
    let s = sign(e[0]);
    if s == 0 || e.iter().any(|x| sign(*x) != s) {
        return None;
    }
    let n = T::from_usize_lossy(r.len());
    let xs: Vec<T> = r.iter().map(|x| x.ln()).collect();
    let ys: Vec<T> = e.iter().map(|x| x.abs().ln()).collect();
    let mx = xs.iter().copied().sum::<T>() / n;
    let my = ys.iter().copied().sum::<T>() / n;
    let sxy: T = xs.iter().zip(&ys).map(|(x, y)| (*x - mx) * (*y - my)).sum();
    let sxx: T = xs.iter().map(|x| (*x - mx) * (*x - mx)).sum();
    let p = sxy / sxx;
    let lnc = my - p * mx;
    let c = lnc.exp();
    Some((if s > 0 { c } else { -c }, p))
}

/// Second derivatives of the natural cubic spline (Thomas algorithm).
fn natural_spline_second_derivatives<T: Real>(x: &[T], y: &[T]) -> Vec<T> {
    let n = x.len();
    let mut m = vec![T::zero(); n];
    if n < 3 {
        return m;
    }
    let two = T::lit(2.0);
    let six = T::lit(6.0);
    let mut diag = vec![T::zero(); n];
    let mut rhs = vec![T::zero(); n];
    let mut upper = vec![T::zero(); n];
    for i in 1..n - 1 {
        let h0 = x[i] - x[i - 1];
        let h1 = x[i + 1] - x[i];
        let lower = h0;
        diag[i] = two * (h0 + h1);
        upper[i] = h1;
        rhs[i] = six * ((y[i + 1] - y[i]) / h1 - (y[i] - y[i - 1]) / h0);
        if i > 1 {
            let w = lower / diag[i - 1];
            diag[i] = diag[i] - w * upper[i - 1];
            rhs[i] = rhs[i] - w * rhs[i - 1];
        }
    }
    for i in (1..n - 1).rev() {
        let next = if i + 1 < n - 1 { upper[i] * m[i + 1] } else { T::zero() };
        m[i] = (rhs[i] - next) / diag[i];
    }
    m
}

impl<T: Real> FieldShape<T> {
    /// Field strength at r > 0. NaN where undefined (see [`FieldShape::defined_at`]).
    #[inline]
    pub fn value(&self, r: T) -> T {
        match self {
            FieldShape::Constant { e0 } => *e0,
            FieldShape::Linear { beta } => *beta * r,
            FieldShape::InverseR { kappa, core_radius } => {
                if r >= *core_radius {
                    *kappa / r
                } else {
                    *kappa * r / (*core_radius * *core_radius)
                }
            }
            FieldShape::Tabulated(t) => t.eval(r).0,
        }
    }

    /// dE/dr at r > 0.
    pub fn derivative(&self, r: T) -> T {
        match self {
            FieldShape::Constant { .. } => T::zero(),
            FieldShape::Linear { beta } => *beta,
            FieldShape::InverseR { kappa, core_radius } => {
                if r >= *core_radius {
                    -*kappa / (r * r)
                } else {
                    *kappa / (*core_radius * *core_radius)
                }
            }
            FieldShape::Tabulated(t) => t.eval(r).1,
        }
    }

    pub fn defined_at(&self, r: T) -> bool {
        match self {
            FieldShape::Tabulated(t) => t.defined_at(r),
            _ => true,
        }
    }

    pub fn tail(&self) -> Tail<T> {
        match self {
            FieldShape::Constant { e0 } => {
                if *e0 == T::zero() {
                    Tail::Zero
                } else {
                    Tail::Confining { coefficient: *e0, power: T::zero() }
                }
            }
            FieldShape::Linear { beta } => {
                if *beta == T::zero() {
                    Tail::Zero
                } else {
                    Tail::Confining { coefficient: *beta, power: T::one() }
                }
            }
            FieldShape::InverseR { kappa, .. } => Tail::InverseR { kappa: *kappa },
            FieldShape::Tabulated(t) => t.tail(),
        }
    }

    /// A characteristic length of the profile for a coupling strength
    /// `|mu|`, used to seed grids.
    pub fn length_scale(&self, moment: T) -> T {
        let mu = moment.abs();
        match self {
            FieldShape::Constant { e0 } if *e0 != T::zero() => T::one() / (mu * e0.abs()),
            FieldShape::Linear { beta } if *beta != T::zero() => T::one() / (mu * beta.abs()).sqrt(),
            FieldShape::InverseR { core_radius, .. } => *core_radius,
            FieldShape::Tabulated(t) => t.last() - t.first(),
            _ => T::one(),
        }
    }

    fn validate(&self) -> Result<()> {
        let finite = |x: &T| x.is_finite();
        match self {
            FieldShape::Constant { e0 } if !finite(e0) => Err(Error::InvalidProfile("e0 must be finite".into())),
            FieldShape::Linear { beta } if !finite(beta) => Err(Error::InvalidProfile("beta must be finite".into())),
            FieldShape::InverseR { kappa, core_radius } => {
                if !finite(kappa) || *kappa == T::zero() {
                    Err(Error::InvalidProfile("kappa must be finite and nonzero".into()))
                } else if !finite(core_radius) || *core_radius <= T::zero() {
                    Err(Error::InvalidProfile("core radius must be positive".into()))
                } else {
                    Ok(())
                }
            }
            _ => Ok(()),
        }
    }
}

/// A central electric field and an optional central magnetic field.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldProfile<T> {
    electric: FieldShape<T>,
    magnetic: Option<FieldShape<T>>,
}

impl<T: Real> FieldProfile<T> {
    pub fn new(electric: FieldShape<T>, magnetic: Option<FieldShape<T>>) -> Result<Self> {
        electric.validate()?;
        if let Some(b) = &magnetic {
            b.validate()?;
        }
        Ok(Self { electric, magnetic })
    }

    pub fn constant(e0: T) -> Result<Self> {
        Self::new(FieldShape::Constant { e0 }, None)
    }

    pub fn linear(beta: T) -> Result<Self> {
        Self::new(FieldShape::Linear { beta }, None)
    }

    pub fn inverse_r(kappa: T) -> Result<Self> {
        Self::inverse_r_with_core(kappa, T::lit(DEFAULT_CORE_RADIUS))
    }

    pub fn inverse_r_with_core(kappa: T, core_radius: T) -> Result<Self> {
        Self::new(FieldShape::InverseR { kappa, core_radius }, None)
    }

    pub fn tabulated(r: Vec<T>, e: Vec<T>) -> Result<Self> {
        Self::new(FieldShape::Tabulated(Table::new(r, e)?), None)
    }

    pub fn with_magnetic(mut self, magnetic: FieldShape<T>) -> Result<Self> {
        magnetic.validate()?;
        self.magnetic = Some(magnetic);
        Ok(self)
    }

    pub fn electric(&self) -> &FieldShape<T> {
        &self.electric
    }

    pub fn magnetic(&self) -> Option<&FieldShape<T>> {
        self.magnetic.as_ref()
    }

    /// E(r), checked.
    pub fn field_at(&self, r: T) -> Result<T> {
        checked(&self.electric, r)
    }

    /// B(r), zero when no magnetic component is present.
    pub fn magnetic_at(&self, r: T) -> Result<T> {
        match &self.magnetic {
            Some(b) => checked(b, r),
            None => {
                check_radius(r)?;
                Ok(T::zero())
            }
        }
    }

    /// The same profile with E -> -E.
    pub fn reversed(&self) -> Self {
        let flip = |s: &FieldShape<T>| match s {
            FieldShape::Constant { e0 } => FieldShape::Constant { e0: -*e0 },
            FieldShape::Linear { beta } => FieldShape::Linear { beta: -*beta },
            FieldShape::InverseR { kappa, core_radius } => {
                FieldShape::InverseR { kappa: -*kappa, core_radius: *core_radius }
            }
            FieldShape::Tabulated(t) => FieldShape::Tabulated(
                Table::new(t.r.clone(), t.e.iter().map(|x| -*x).collect()).expect("negated table stays valid"),
            ),
        };
        Self { electric: flip(&self.electric), magnetic: self.magnetic.clone() }
    }
}

fn check_radius<T: Real>(r: T) -> Result<()> {
    if !(r > T::zero()) || !r.is_finite() {
        return Err(Error::NonPositiveRadius(r.to_f64_lossy()));
    }
    Ok(())
}

fn checked<T: Real>(shape: &FieldShape<T>, r: T) -> Result<T> {
    check_radius(r)?;
    if !shape.defined_at(r) {
        return Err(Error::UndefinedTail(r.to_f64_lossy()));
    }
    Ok(shape.value(r))
}
