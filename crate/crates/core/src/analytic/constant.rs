use super::laguerre::ln_factorial;
use super::{coupling_sign, ratio_sqrt, AnalyticLevelSet, ClosedForm, Family, FieldKind};
use crate::error::{Error, Result};
use crate::particle::ParticleParams;
use crate::quantum::{Degeneracy, EnergyLevel, EnergySign, Kind, LevelLabel, QuantumNumbers, Source};
use crate::scalar::Real;
use crate::solution::RadialSolution;

/// Kind carrying the bound states for field `e0`, and `|mu e0|`.
fn bound_kind<T: Real>(p: &ParticleParams<T>, e0: T) -> Result<(Kind, T)> {
    let g = p.moment() * e0;
    let positive = coupling_sign(g)?;
    Ok((if positive { Kind::Plus } else { Kind::Minus }, g.abs()))
}

/// Positive-frame energy of level `n_r` on `branch` (must be `Positive` for `n_r = 0`).
fn frame_energy<T: Real>(m: T, g: T, l: u32, n_r: u32, branch: EnergySign) -> T {
    if n_r == 0 {
        return m;
    }
    let n = T::from_u32(n_r + l + 1).expect("u32 representable");
    let k = T::from_u32(l + 1).expect("u32 representable");
    branch.apply((m * m + g * g * (n * n - k * k) / (n * n)).sqrt())
}

/// Levels of the kind that binds in a constant field, for fixed `l` and
/// `0 <= n_r <= n_r_max`.
///
/// `n_r = 0` is the critical level (`+m` for `mu e0 > 0`, `-m` otherwise),
/// shared by every `l`. Each `n_r >= 1` contributes a positive and a
/// negative level.
pub fn constant_field_levels<T: Real>(
    p: &ParticleParams<T>,
    e0: T,
    l: u32,
    n_r_max: u32,
) -> Result<AnalyticLevelSet<T>> {
    let (kind, g) = bound_kind(p, e0)?;
    let flip = kind == Kind::Minus;
    let m = p.mass();
    let mut levels = vec![EnergyLevel {
        value: if flip { -m } else { m },
        kind,
        degeneracy: Degeneracy::CountablyInfinite,
        label: LevelLabel::AnyL { n_r: 0 },
        source: Source::Analytic,
    }];
    for n_r in 1..=n_r_max {
        for branch in [EnergySign::Positive, EnergySign::Negative] {
            let e = frame_energy(m, g, l, n_r, branch);
            levels.push(EnergyLevel {
                value: if flip { -e } else { e },
                kind,
                degeneracy: Degeneracy::magnetic(l),
                label: LevelLabel::Radial { l, n_r },
                source: Source::Analytic,
            });
        }
    }
    Ok(AnalyticLevelSet { levels, field_kind: FieldKind::Constant, solution_kind: kind })
}

/// As [`constant_field_levels`] for a requested kind: empty when that kind
/// has no bound states in this field.
pub fn constant_field_levels_for<T: Real>(
    p: &ParticleParams<T>,
    e0: T,
    kind: Kind,
    l: u32,
    n_r_max: u32,
) -> Result<AnalyticLevelSet<T>> {
    let mut set = constant_field_levels(p, e0, l, n_r_max)?;
    if set.solution_kind != kind {
        set.levels.clear();
        set.solution_kind = kind;
    }
    Ok(set)
}

/// Closed form of the constant-field state `q` on energy branch `branch`
/// (the sign of the returned energy).
pub fn constant_field_closed_form<T: Real>(
    p: &ParticleParams<T>,
    e0: T,
    q: QuantumNumbers,
    branch: EnergySign,
) -> Result<ClosedForm<T>> {
    let (kind, g) = bound_kind(p, e0)?;
    if q.kind != kind {
        return Err(Error::NoBoundStates { kind: q.kind });
    }
    let mirrored = kind == Kind::Minus;
    let frame_branch = if mirrored { branch.flip() } else { branch };
    let m = p.mass();
    if q.n_r == 0 && frame_branch == EnergySign::Negative {
        let e = if mirrored { m } else { -m };
        return Err(Error::Trivial { kind, energy: e.to_f64_lossy() });
    }

    let l = q.l;
    let n = q.n_r;
    let principal = n + l + 1;
    let big_n = T::from_u32(principal).expect("u32 representable");
    let k = T::from_u32(l + 1).expect("u32 representable");
    let alpha = T::lit(2.0) * k * g / big_n;
    let e = frame_energy(m, g, l, n, frame_branch);
    let amplitude = if n == 0 {
        (T::lit(2.0) * g).powf(T::lit(1.5)) * (-T::lit(0.5) * ln_factorial::<T>(2 * l + 2)).exp()
    } else {
        let log_ratio = ln_factorial::<T>(n) - ln_factorial::<T>(n + 2 * l + 1);
        g.powf(T::lit(1.5)) / (big_n * big_n)
            * (T::lit(2.0) * k * k * k).sqrt()
            * (T::lit(0.5) * log_ratio).exp()
            * ratio_sqrt(e + m, e)
    };
    Ok(ClosedForm {
        kind,
        l,
        n_r: n,
        energy: if mirrored { -e } else { e },
        amplitude,
        scale: alpha,
        mass: m,
        coupling: g,
        family: Family::ConstantPlus { principal },
        mirrored,
    })
}

/// Normalized constant-field wavefunction sampled on its default grid.
pub fn constant_field_wavefunction<T: Real>(
    p: &ParticleParams<T>,
    e0: T,
    q: QuantumNumbers,
    branch: EnergySign,
) -> Result<RadialSolution<T>> {
    constant_field_closed_form(p, e0, q, branch)?.sample_default()
}
