//! Self-checks: angular identities and numeric-versus-closed-form agreement.

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::analytic::{constant_field_closed_form, linear_field_closed_form, ClosedForm};
use crate::angular::{
    completeness_defect, inner, mat_vec, pauli_dot_unit_radial, SphereQuadrature, Spinor, SpinorHarmonic,
};
use crate::angular::spherical_harmonic;
use crate::error::Result;
use crate::field::FieldProfile;
use crate::numeric::{shoot_eigenvalue, ShootingConfig};
use crate::particle::ParticleParams;
use crate::quantum::{EnergySign, Kind, QuantumNumbers};

/// Outcome of one check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub max_error: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl CheckReport {
    pub fn new(name: impl Into<String>, max_error: f64, tolerance: f64) -> Self {
        Self { name: name.into(), max_error, tolerance, passed: max_error <= tolerance }
    }
}

/// Seeded stream of random directions.
pub struct Sequence(ChaCha8Rng);

impl Sequence {
    pub fn new(seed: u64) -> Self {
        Self(ChaCha8Rng::seed_from_u64(seed))
    }

    pub fn next_unit(&mut self) -> f64 {
        self.0.random::<f64>()
    }

    /// A direction `(theta, phi)` uniform on the sphere.
    pub fn angle(&mut self) -> (f64, f64) {
        let theta = (1.0 - 2.0 * self.next_unit()).acos();
        (theta, 2.0 * std::f64::consts::PI * self.next_unit())
    }
}

fn all_harmonics(l_max: u32) -> Vec<SpinorHarmonic> {
    (0..=l_max)
        .flat_map(|l| [Kind::Plus, Kind::Minus].into_iter().flat_map(move |k| SpinorHarmonic::multiplet(k, l)))
        .collect()
}

fn spinor_diff(a: &Spinor<f64>, b: &Spinor<f64>) -> f64 {
    (a[0] - b[0]).norm().max((a[1] - b[1]).norm())
}

/// Largest deviation of the Gram matrix of all `f+-_lm`, `l <= l_max`,
/// from the identity.
pub fn orthonormality_error(l_max: u32) -> f64 {
    let hs = all_harmonics(l_max);
    let n = l_max as usize + 3;
    let quad = SphereQuadrature::<f64>::new(n, 2 * n + 2);
    let vals: Vec<Vec<Spinor<f64>>> =
        hs.iter().map(|h| quad.points.iter().map(|&(t, p)| h.eval_unchecked(t, p)).collect()).collect();
    let mut worst = 0.0f64;
    for i in 0..hs.len() {
        for j in i..hs.len() {
            let mut acc = Complex::new(0.0, 0.0);
            for (k, w) in quad.weights.iter().enumerate() {
                acc += inner(&vals[i][k], &vals[j][k]) * *w;
            }
            let want = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((acc - want).norm());
        }
    }
    worst
}

/// Largest `|sigma.e_r f+-_lm - f-+_lm|` over `samples` random directions.
pub fn radial_swap_error(l_max: u32, samples: usize, seed: u64) -> f64 {
    let mut seq = Sequence::new(seed);
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let (t, p) = seq.angle();
        let s = pauli_dot_unit_radial(t, p);
        for l in 0..=l_max {
            for h in SpinorHarmonic::multiplet(Kind::Plus, l) {
                let plus = h.eval_unchecked(t, p);
                let minus = SpinorHarmonic::new(Kind::Minus, l, h.m()).expect("same range").eval_unchecked(t, p);
                worst = worst.max(spinor_diff(&mat_vec(&s, &plus), &minus));
                worst = worst.max(spinor_diff(&mat_vec(&s, &minus), &plus));
            }
        }
    }
    worst
}

/// Largest coefficient error of `sigma.L f = lambda f` and
/// `j_z f = (m + 1/2) f` in the spherical-harmonic expansion.
pub fn eigenvalue_error(l_max: u32) -> f64 {
    let mut worst = 0.0f64;
    for h in all_harmonics(l_max) {
        let f = h.expansion::<f64>();
        let sl = f.sigma_dot_l().max_abs_diff(&f.scaled(h.sigma_dot_l_eigenvalue() as f64));
        let jz = f.j_z().max_abs_diff(&f.scaled(h.j_z_eigenvalue()));
        let j2 = f.j_squared().max_abs_diff(&f.scaled(h.j_squared_eigenvalue()));
        worst = worst.max(sl).max(jz).max(j2);
    }
    worst
}

/// Projects a random spinor field with components of degree `<= l_max`
/// through the truncated completeness kernel and returns the largest
/// pointwise deviation from the field itself.
pub fn completeness_error(l_max: u32, points: usize, seed: u64) -> f64 {
    let mut seq = Sequence::new(seed);
    let mut coeffs = Vec::new();
    for l in 0..=l_max {
        for m in -(l as i32)..=(l as i32) {
            let a = Complex::new(seq.next_unit() - 0.5, seq.next_unit() - 0.5);
            let b = Complex::new(seq.next_unit() - 0.5, seq.next_unit() - 0.5);
            coeffs.push((l, m, a, b));
        }
    }
    let field = |t: f64, p: f64| -> Spinor<f64> {
        let mut g = [Complex::new(0.0, 0.0); 2];
        for &(l, m, a, b) in &coeffs {
            let y = spherical_harmonic(l, m, t, p);
            g[0] += a * y;
            g[1] += b * y;
        }
        g
    };
    let n = l_max as usize + 3;
    let quad = SphereQuadrature::<f64>::new(n, 2 * n + 2);
    let samples: Vec<Spinor<f64>> = quad.points.iter().map(|&(t, p)| field(t, p)).collect();
    let mut worst = 0.0f64;
    for _ in 0..points {
        let a = seq.angle();
        let mut proj = [Complex::new(0.0, 0.0); 2];
        for (k, &(t, p)) in quad.points.iter().enumerate() {
            let kern = completeness_defect(l_max, a, (t, p));
            let g = mat_vec(&kern, &samples[k]);
            proj[0] += g[0] * quad.weights[k];
            proj[1] += g[1] * quad.weights[k];
        }
        worst = worst.max(spinor_diff(&proj, &field(a.0, a.1)));
    }
    worst
}

/// Angular identities for `l <= l_max`.
pub fn angular_suite(l_max: u32) -> Vec<CheckReport> {
    vec![
        CheckReport::new("orthonormality", orthonormality_error(l_max), 1e-10),
        CheckReport::new("sigma.e_r swaps kinds", radial_swap_error(l_max, 100, 7), 1e-12),
        CheckReport::new("angular momentum eigenvalues", eigenvalue_error(l_max), 1e-8),
        CheckReport::new("truncated completeness", completeness_error(l_max.min(4), 5, 11), 1e-10),
    ]
}

/// Shoots near a closed-form level and compares energy and wavefunction.
/// Returns (relative energy error, max-norm wavefunction error).
pub fn compare_with_closed_form(
    profile: &FieldProfile<f64>,
    p: &ParticleParams<f64>,
    cf: &ClosedForm<f64>,
    cfg: &ShootingConfig<f64>,
) -> Result<(f64, f64)> {
    let e = cf.energy;
    let w = 1e-3 * e.abs();
    let st = shoot_eigenvalue(profile, p, cf.kind, cf.l, (e - 0.7 * w, e + 1.3 * w), cfg)?;
    let s = &st.solution;
    let mut worst = 0.0f64;
    for i in 0..s.len() {
        let (u, v) = cf.eval(s.grid[i]);
        worst = worst.max((s.u[i] - u).abs()).max((s.v[i] - v).abs());
    }
    Ok(((st.energy - e).abs() / e.abs(), worst))
}

fn oracle_suite<F>(name: &str, cases: Vec<(Kind, u32, u32, EnergySign)>, profile: FieldProfile<f64>, make: F) -> Vec<CheckReport>
where
    F: Fn(QuantumNumbers, EnergySign) -> Result<ClosedForm<f64>>,
{
    let p = ParticleParams::new(1.0, 1.0).expect("valid");
    let cfg = ShootingConfig::default();
    let mut e_err = 0.0f64;
    let mut w_err = 0.0f64;
    for (kind, l, n_r, b) in cases {
        let outcome = make(QuantumNumbers::radial(kind, l, n_r), b)
            .and_then(|cf| compare_with_closed_form(&profile, &p, &cf, &cfg));
        match outcome {
            Ok((de, dw)) => {
                e_err = e_err.max(de);
                w_err = w_err.max(dw);
            }
            Err(_) => {
                e_err = f64::INFINITY;
                w_err = f64::INFINITY;
            }
        }
    }
    vec![
        CheckReport::new(format!("{name}: eigenvalues"), e_err, 1e-6),
        CheckReport::new(format!("{name}: wavefunctions"), w_err, 1e-6),
    ]
}

fn cases(kinds: &[Kind], l_max: u32, n_max: u32) -> Vec<(Kind, u32, u32, EnergySign)> {
    let mut out = Vec::new();
    for &k in kinds {
        for l in 0..=l_max {
            for n in 0..=n_max {
                for b in [EnergySign::Positive, EnergySign::Negative] {
                    if !(k == Kind::Plus && n == 0 && b == EnergySign::Negative) {
                        out.push((k, l, n, b));
                    }
                }
            }
        }
    }
    out
}

/// Shooting against the constant-field closed forms (`m = mu E0 = 1`).
pub fn constant_field_suite(l_max: u32, n_max: u32) -> Vec<CheckReport> {
    let p = ParticleParams::new(1.0, 1.0).expect("valid");
    let profile = FieldProfile::constant(1.0).expect("valid");
    oracle_suite("constant field", cases(&[Kind::Plus], l_max, n_max), profile, |q, b| {
        constant_field_closed_form(&p, 1.0, q, b)
    })
}

/// Shooting against the linear-field closed forms (`m = mu beta = 1`).
pub fn linear_field_suite(l_max: u32, n_max: u32) -> Vec<CheckReport> {
    let p = ParticleParams::new(1.0, 1.0).expect("valid");
    let profile = FieldProfile::linear(1.0).expect("valid");
    oracle_suite("linear field", cases(&[Kind::Plus, Kind::Minus], l_max, n_max), profile, |q, b| {
        linear_field_closed_form(&p, 1.0, q, b)
    })
}

/// Every suite at its default size.
pub fn run_all() -> Vec<CheckReport> {
    let mut out = angular_suite(6);
    out.extend(constant_field_suite(2, 2));
    out.extend(linear_field_suite(2, 2));
    out
}
