use super::laguerre::{ln_factorial, ln_gamma_half};
use super::{coupling_sign, ratio_sqrt, AnalyticLevelSet, ClosedForm, Family, FieldKind};
use crate::error::{Error, Result};
use crate::particle::ParticleParams;
use crate::quantum::{Degeneracy, EnergyLevel, EnergySign, Kind, LevelLabel, QuantumNumbers, Source};
use crate::scalar::Real;
use crate::solution::RadialSolution;

/// Frame kind (positive coupling) for a requested kind, `|beta mu|`, and
/// whether the mirror map is in use.
fn frame<T: Real>(p: &ParticleParams<T>, beta: T, kind: Kind) -> Result<(Kind, T, bool)> {
    let g = p.moment() * beta;
    let positive = coupling_sign(g)?;
    Ok(if positive { (kind, g.abs(), false) } else { (kind.mirror(), g.abs(), true) })
}

fn frame_energy<T: Real>(m: T, g: T, kind: Kind, l: u32, n_r: u32, branch: EnergySign) -> T {
    match kind {
        Kind::Plus if n_r == 0 => m,
        Kind::Plus => branch.apply((m * m + T::lit(4.0) * T::from_u32(n_r).expect("u32") * g).sqrt()),
        Kind::Minus => {
            let big_n = T::from_u32(n_r + l).expect("u32 representable");
            branch.apply((m * m + (T::lit(4.0) * big_n + T::lit(6.0)) * g).sqrt())
        }
    }
}

/// Linear-field levels of one kind.
///
/// With positive coupling, kind + gives `m` and `+-sqrt(m^2 + 4 n_r beta mu)`
/// for `n_r <= index_max`, each shared by every `l`. Kind - gives
/// `+-sqrt(m^2 + (4N + 6) beta mu)` for `N <= index_max` with degeneracy
/// `(N + 1)(N + 2)`. Negative coupling mirrors the two kinds.
pub fn linear_field_levels<T: Real>(
    p: &ParticleParams<T>,
    beta: T,
    kind: Kind,
    index_max: u32,
) -> Result<AnalyticLevelSet<T>> {
    let (fk, g, mirrored) = frame(p, beta, kind)?;
    let m = p.mass();
    let out = |e: T| if mirrored { -e } else { e };
    let mut levels = Vec::new();
    for idx in 0..=index_max {
        let (label, degeneracy) = match fk {
            Kind::Plus => (LevelLabel::AnyL { n_r: idx }, Degeneracy::CountablyInfinite),
            Kind::Minus => {
                let d = (idx as u64 + 1) * (idx as u64 + 2);
                (LevelLabel::Principal { n: idx }, Degeneracy::Finite(d))
            }
        };
        let branches: &[EnergySign] = if fk == Kind::Plus && idx == 0 {
            &[EnergySign::Positive]
        } else {
            &[EnergySign::Positive, EnergySign::Negative]
        };
        for &b in branches {
            // Kind - energies depend on N = n_r + l only; evaluate at l = 0.
            let e = frame_energy(m, g, fk, 0, idx, b);
            levels.push(EnergyLevel { value: out(e), kind, degeneracy, label, source: Source::Analytic });
        }
    }
    Ok(AnalyticLevelSet { levels, field_kind: FieldKind::Linear, solution_kind: kind })
}

/// Closed form of the linear-field state `q` on energy branch `branch`.
pub fn linear_field_closed_form<T: Real>(
    p: &ParticleParams<T>,
    beta: T,
    q: QuantumNumbers,
    branch: EnergySign,
) -> Result<ClosedForm<T>> {
    let (fk, g, mirrored) = frame(p, beta, q.kind)?;
    let frame_branch = if mirrored { branch.flip() } else { branch };
    let m = p.mass();
    if fk == Kind::Plus && q.n_r == 0 && frame_branch == EnergySign::Negative {
        let e = if mirrored { m } else { -m };
        return Err(Error::Trivial { kind: q.kind, energy: e.to_f64_lossy() });
    }
    let (l, n) = (q.l, q.n_r);
    let e = frame_energy(m, g, fk, l, n, frame_branch);
    let log_ratio = ln_factorial::<T>(n) - ln_gamma_half::<T>(n + l + 1);
    let base = g.powf(T::lit(0.75)) * (T::lit(0.5) * log_ratio).exp();
    let (amplitude, family) = match fk {
        Kind::Plus => (base * ratio_sqrt(e + m, e), Family::LinearPlus),
        Kind::Minus => (base * ratio_sqrt(e - m, e), Family::LinearMinus),
    };
    Ok(ClosedForm {
        kind: q.kind,
        l,
        n_r: n,
        energy: if mirrored { -e } else { e },
        amplitude,
        scale: g.sqrt(),
        mass: m,
        coupling: g,
        family,
        mirrored,
    })
}

/// Normalized linear-field wavefunction sampled on its default grid.
pub fn linear_field_wavefunction<T: Real>(
    p: &ParticleParams<T>,
    beta: T,
    q: QuantumNumbers,
    branch: EnergySign,
) -> Result<RadialSolution<T>> {
    linear_field_closed_form(p, beta, q, branch)?.sample_default()
}
