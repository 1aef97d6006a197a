//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.
//!
//! Closed forms here are written out independently of the `analytic`
//! module: Laguerre polynomials by their explicit sum, amplitudes by
//! numeric quadrature.

use std::time::Instant;

use dpbound::analytic::{
    constant_field_closed_form, constant_field_levels, critical_count_inverse_field, critical_state,
    linear_field_closed_form, linear_field_levels,
};
use dpbound::numeric::{
    integrate_coupled_eb, integrate_radial_pair, shoot_eigenvalue, spectrum_scan, CoupledInit, Direction,
    ShootingConfig,
};
use dpbound::quantum::Degeneracy;
use dpbound::{units, verify, EnergySign, FieldProfile, Kind, ParticleParams, QuantumNumbers, RadialSolution};

const POS: EnergySign = EnergySign::Positive;
const NEG: EnergySign = EnergySign::Negative;

fn unit() -> ParticleParams<f64> {
    ParticleParams::new(1.0, 1.0).unwrap()
}

/// Collects failures of one criterion.
#[derive(Default)]
struct Check {
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Check {
    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }

    fn note(&mut self, s: String) {
        self.notes.push(s);
    }
}

// ---------------------------------------------------------------- oracles

/// `L_n^a(x)` from the explicit sum.
fn laguerre_sum(n: u32, a: f64, x: f64) -> f64 {
    let mut total = 0.0;
    for k in 0..=n {
        // binomial(n + a, n - k)
        let mut c = 1.0;
        for j in 1..=(n - k) {
            c *= (a + k as f64 + j as f64) / j as f64;
        }
        let mut xk = 1.0;
        for i in 1..=k {
            xk *= x / i as f64;
        }
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        total += sign * c * xk;
    }
    total
}

/// Unnormalized `(u, v)` of the solvable states with positive coupling `g`.
#[derive(Clone, Copy)]
enum Oracle {
    Constant { g: f64, l: u32, n: u32, e: f64 },
    LinearPlus { g: f64, l: u32, n: u32, e: f64 },
    LinearMinus { g: f64, l: u32, n: u32, e: f64 },
}

impl Oracle {
    fn constant(g: f64, l: u32, n: u32, b: EnergySign) -> Self {
        let big_n = (n + l + 1) as f64;
        let k = (l + 1) as f64;
        let e = if n == 0 { 1.0 } else { sgn(b) * (1.0 + g * g * (1.0 - k * k / (big_n * big_n))).sqrt() };
        Oracle::Constant { g, l, n, e }
    }

    fn linear(kind: Kind, g: f64, l: u32, n: u32, b: EnergySign) -> Self {
        match kind {
            Kind::Plus => {
                let e = if n == 0 { 1.0 } else { sgn(b) * (1.0 + 4.0 * n as f64 * g).sqrt() };
                Oracle::LinearPlus { g, l, n, e }
            }
            Kind::Minus => {
                let e = sgn(b) * (1.0 + (4.0 * (n + l) as f64 + 6.0) * g).sqrt();
                Oracle::LinearMinus { g, l, n, e }
            }
        }
    }

    fn energy(&self) -> f64 {
        match *self {
            Oracle::Constant { e, .. } | Oracle::LinearPlus { e, .. } | Oracle::LinearMinus { e, .. } => e,
        }
    }

    fn raw(&self, r: f64) -> (f64, f64) {
        match *self {
            Oracle::Constant { g, l, n, e } => {
                let big_n = (n + l + 1) as f64;
                let rho = 2.0 * (l + 1) as f64 * g / big_n * r;
                let env = rho.powi(l as i32) * (-rho / 2.0).exp();
                let u = env * laguerre_sum(n, (2 * l + 1) as f64, rho);
                let v = if n == 0 {
                    0.0
                } else {
                    g / (big_n * (e + 1.0)) * rho * env * laguerre_sum(n - 1, (2 * l + 3) as f64, rho)
                };
                (u, v)
            }
            Oracle::LinearPlus { g, l, n, e } => {
                let rho = g.sqrt() * r;
                let env = rho.powi(l as i32) * (-rho * rho / 2.0).exp();
                let u = env * laguerre_sum(n, l as f64 + 0.5, rho * rho);
                let v = if n == 0 {
                    0.0
                } else {
                    2.0 * g.sqrt() / (e + 1.0) * rho * env * laguerre_sum(n - 1, l as f64 + 1.5, rho * rho)
                };
                (u, v)
            }
            Oracle::LinearMinus { g, l, n, e } => {
                let rho = g.sqrt() * r;
                let env = rho.powi(l as i32) * (-rho * rho / 2.0).exp();
                let u = -2.0 * g.sqrt() / (e - 1.0) * rho * env * laguerre_sum(n, l as f64 + 1.5, rho * rho);
                let v = env * laguerre_sum(n, l as f64 + 0.5, rho * rho);
                (u, v)
            }
        }
    }

    /// `1 / sqrt(int (u^2 + v^2) r^2 dr)` by composite 8-point Gauss on
    /// `[0, 200]` in panels of 0.05.
    fn amplitude(&self) -> f64 {
        const X: [f64; 4] = [0.183_434_642_495_649_8, 0.525_532_409_916_329, 0.796_666_477_413_626_7, 0.960_289_856_497_536_3];
        const W: [f64; 4] = [0.362_683_783_378_362, 0.313_706_645_877_887_3, 0.222_381_034_453_374_5, 0.101_228_536_290_376_3];
        let h = 0.05;
        let mut total = 0.0;
        for i in 0..4000 {
            let mid = (i as f64 + 0.5) * h;
            for k in 0..4 {
                for s in [-1.0, 1.0] {
                    let r = mid + s * X[k] * h / 2.0;
                    let (u, v) = self.raw(r);
                    total += W[k] * h / 2.0 * (u * u + v * v) * r * r;
                }
            }
        }
        1.0 / total.sqrt()
    }
}

fn sgn(b: EnergySign) -> f64 {
    match b {
        EnergySign::Positive => 1.0,
        EnergySign::Negative => -1.0,
    }
}

fn max_diff(sol: &RadialSolution<f64>, oracle: &Oracle, swap: bool) -> f64 {
    let a = oracle.amplitude();
    let mut worst = 0.0f64;
    for i in 0..sol.len() {
        let (mut u, mut v) = oracle.raw(sol.grid[i]);
        if swap {
            std::mem::swap(&mut u, &mut v);
        }
        worst = worst.max((sol.u[i] - a * u).abs()).max((sol.v[i] - a * v).abs());
    }
    worst
}

/// Shoots in an off-center bracket around `e`.
fn shoot(profile: &FieldProfile<f64>, kind: Kind, l: u32, e: f64) -> dpbound::Result<dpbound::numeric::Eigenstate<f64>> {
    let w = 1e-3 * e.abs();
    shoot_eigenvalue(profile, &unit(), kind, l, (e - 0.6 * w, e + 1.4 * w), &ShootingConfig::default())
}

// --------------------------------------------------------------- criteria

fn si_estimates(c: &mut Check) {
    let hbar = 1.054_571_817e-34;
    let cc = 299_792_458.0f64;
    let mu_n = 9.662_365_1e-27;
    let a0 = 5.291_772_109_03e-11f64;
    let e = 1.602_176_634e-19;
    let mu0 = 1.256_637_062_12e-6;

    let constant = units::estimate_bohr_radius_constant(units::NEUTRON_MOMENT_SI, 5.15e11).unwrap();
    let oracle = hbar * cc * cc / (2.0 * mu_n * 5.15e11);
    c.expect((constant - 9.5e-4).abs() / 9.5e-4 < 0.01, || format!("constant-field length {constant:e} m"));
    c.expect((constant - oracle).abs() / oracle < 1e-12, || format!("constant-field length {constant:e} vs {oracle:e}"));

    let rho = units::atomic_charge_density();
    let linear = units::estimate_bohr_radius_linear(units::NEUTRON_MOMENT_SI, rho).unwrap();
    let oracle = (3.0 * hbar / (4.0 * std::f64::consts::PI * mu0 * (e / a0.powi(3)) * mu_n)).sqrt();
    c.expect((linear - 4.4e-8).abs() / 4.4e-8 < 0.02, || format!("linear-field length {linear:e} m"));
    c.expect((linear - oracle).abs() / oracle < 1e-12, || format!("linear-field length {linear:e} vs {oracle:e}"));
    c.note(format!("{constant:.3e} m, {linear:.3e} m"));
}

fn constant_field_suite(c: &mut Check) {
    let profile = FieldProfile::constant(1.0).unwrap();
    let mut worst = 0.0f64;
    for l in 0..=4 {
        for n in 1..=4 {
            for b in [POS, NEG] {
                let want = Oracle::constant(1.0, l, n, b).energy();
                match shoot(&profile, Kind::Plus, l, want) {
                    Ok(st) => {
                        let rel = (st.energy - want).abs() / want.abs();
                        worst = worst.max(rel);
                        c.expect(rel < 1e-6, || format!("l={l} n_r={n} {b:?}: {} vs {want}", st.energy));
                        c.expect(st.n_r == n, || format!("l={l} n_r={n} {b:?}: node count {}", st.n_r));
                    }
                    Err(e) => c.expect(false, || format!("l={l} n_r={n} {b:?}: {e}")),
                }
            }
        }
    }
    let mut crit = 0.0f64;
    for l in 0..=4 {
        match shoot(&profile, Kind::Plus, l, 1.0) {
            Ok(st) => {
                crit = crit.max((st.energy - 1.0).abs());
                c.expect((st.energy - 1.0).abs() < 1e-8, || format!("critical level l={l}: {}", st.energy));
            }
            Err(e) => c.expect(false, || format!("critical level l={l}: {e}")),
        }
    }
    let edge = 2f64.sqrt() - 1e-3;
    let mut found = 0;
    for l in 0..=4 {
        match spectrum_scan(&profile, &unit(), Kind::Minus, l, (-edge, edge), &ShootingConfig::default()) {
            Ok(levels) => {
                found += levels.len();
                c.expect(levels.is_empty(), || format!("kind - l={l}: spurious levels {:?}", levels.iter().map(|x| x.value).collect::<Vec<_>>()));
            }
            Err(e) => c.expect(false, || format!("kind - scan l={l}: {e}")),
        }
    }
    c.note(format!("max rel err {worst:.1e}, critical err {crit:.1e}, kind - levels {found}"));
}

fn linear_field_suite(c: &mut Check) {
    let profile = FieldProfile::linear(1.0).unwrap();
    let mut spread = 0.0f64;
    let mut worst = 0.0f64;
    for n in 0..=4 {
        for b in [POS, NEG] {
            if n == 0 && b == NEG {
                continue;
            }
            let want = Oracle::linear(Kind::Plus, 1.0, 0, n, b).energy();
            let mut found = Vec::new();
            for l in [0, 4, 8] {
                match shoot(&profile, Kind::Plus, l, want) {
                    Ok(st) => {
                        let rel = (st.energy - want).abs() / want.abs();
                        worst = worst.max(rel);
                        c.expect(rel < 1e-6, || format!("kind + l={l} n_r={n} {b:?}: {} vs {want}", st.energy));
                        found.push(st.energy);
                    }
                    Err(e) => c.expect(false, || format!("kind + l={l} n_r={n} {b:?}: {e}")),
                }
            }
            for i in 0..found.len() {
                for j in i + 1..found.len() {
                    let s = (found[i] - found[j]).abs() / want.abs();
                    spread = spread.max(s);
                    c.expect(s < 2e-6, || format!("kind + n_r={n} {b:?}: spread {s:e}"));
                }
            }
        }
    }
    for big_n in 0..=5u32 {
        for l in 0..=big_n {
            for b in [POS, NEG] {
                let want = Oracle::linear(Kind::Minus, 1.0, l, big_n - l, b).energy();
                match shoot(&profile, Kind::Minus, l, want) {
                    Ok(st) => {
                        let rel = (st.energy - want).abs() / want.abs();
                        worst = worst.max(rel);
                        c.expect(rel < 1e-6, || format!("kind - N={big_n} l={l} {b:?}: {} vs {want}", st.energy));
                    }
                    Err(e) => c.expect(false, || format!("kind - N={big_n} l={l} {b:?}: {e}")),
                }
            }
        }
    }
    let levels = linear_field_levels(&unit(), 1.0, Kind::Minus, 10).unwrap().levels;
    for big_n in 0..=10u32 {
        let mut count = 0u64;
        for l in 0..=big_n {
            for m in -(l as i32) - 3..=(l as i32) + 3 {
                if QuantumNumbers::new(Kind::Minus, l, m, big_n - l).is_ok() {
                    count += 1;
                }
            }
        }
        let want = (big_n as u64 + 1) * (big_n as u64 + 2);
        c.expect(count == want, || format!("N={big_n}: enumerated {count} states"));
        let lib: Vec<_> = levels
            .iter()
            .filter(|lv| lv.label == dpbound::LevelLabel::Principal { n: big_n })
            .map(|lv| lv.degeneracy)
            .collect();
        c.expect(lib.len() == 2 && lib.iter().all(|d| *d == Degeneracy::Finite(count)), || {
            format!("N={big_n}: library degeneracies {lib:?}")
        });
    }
    c.note(format!("max rel err {worst:.1e}, l-spread {spread:.1e}"));
}

fn wavefunctions(c: &mut Check) {
    let p = unit();
    let constant = FieldProfile::constant(1.0).unwrap();
    let linear = FieldProfile::linear(1.0).unwrap();
    let mut worst = 0.0f64;
    let mut norm_err = 0.0f64;
    for l in 0..=3 {
        for n in 0..=3 {
            for b in [POS, NEG] {
                let mut cases = Vec::new();
                if !(n == 0 && b == NEG) {
                    cases.push((
                        Kind::Plus,
                        &constant,
                        Oracle::constant(1.0, l, n, b),
                        constant_field_closed_form(&p, 1.0, QuantumNumbers::radial(Kind::Plus, l, n), b),
                    ));
                    cases.push((
                        Kind::Plus,
                        &linear,
                        Oracle::linear(Kind::Plus, 1.0, l, n, b),
                        linear_field_closed_form(&p, 1.0, QuantumNumbers::radial(Kind::Plus, l, n), b),
                    ));
                }
                cases.push((
                    Kind::Minus,
                    &linear,
                    Oracle::linear(Kind::Minus, 1.0, l, n, b),
                    linear_field_closed_form(&p, 1.0, QuantumNumbers::radial(Kind::Minus, l, n), b),
                ));
                for (kind, profile, oracle, cf) in cases {
                    let tag = format!("{kind} l={l} n_r={n} {b:?} E={:.6}", oracle.energy());
                    let analytic = cf.and_then(|cf| cf.sample_default());
                    match analytic {
                        Ok(s) => {
                            let d = (s.norm_integral() - 1.0).abs();
                            norm_err = norm_err.max(d);
                            c.expect(d < 1e-8, || format!("{tag}: analytic norm off by {d:e}"));
                            let diff = max_diff(&s, &oracle, false);
                            c.expect(diff < 1e-6, || format!("{tag}: analytic vs oracle {diff:e}"));
                        }
                        Err(e) => c.expect(false, || format!("{tag}: analytic {e}")),
                    }
                    match shoot(profile, kind, l, oracle.energy()) {
                        Ok(st) => {
                            let d = (st.solution.norm_integral() - 1.0).abs();
                            norm_err = norm_err.max(d);
                            c.expect(d < 1e-8, || format!("{tag}: numeric norm off by {d:e}"));
                            let diff = max_diff(&st.solution, &oracle, false);
                            worst = worst.max(diff);
                            c.expect(diff < 1e-6, || format!("{tag}: numeric vs oracle {diff:e}"));
                        }
                        Err(e) => c.expect(false, || format!("{tag}: {e}")),
                    }
                }
            }
        }
    }
    c.note(format!("max wavefunction err {worst:.1e}, max norm err {norm_err:.1e}"));
}

fn angular(c: &mut Check) {
    let ortho = verify::orthonormality_error(6);
    let swap = verify::radial_swap_error(6, 200, 2024);
    let mut complete = 0.0f64;
    for l_max in 0..=6 {
        complete = complete.max(verify::completeness_error(l_max, 6, 100 + l_max as u64));
    }
    c.expect(ortho < 1e-10, || format!("orthonormality error {ortho:e}"));
    c.expect(swap < 1e-12, || format!("sigma.e_r swap error {swap:e}"));
    c.expect(complete < 1e-10, || format!("completeness error {complete:e}"));
    c.note(format!("orthonormality {ortho:.1e}, swap {swap:.1e}, completeness {complete:.1e}"));
}

fn critical(c: &mut Check) {
    let p = unit();
    let mut worst = 0.0f64;
    for (e0, kind) in [(1.0, Kind::Plus), (-1.0, Kind::Minus)] {
        let mirrored = kind == Kind::Minus;
        for l in 0..=4 {
            let cases = [
                (FieldProfile::constant(e0).unwrap(), Oracle::constant(1.0, l, 0, POS)),
                (FieldProfile::linear(e0).unwrap(), Oracle::linear(Kind::Plus, 1.0, l, 0, POS)),
            ];
            for (profile, oracle) in cases {
                match critical_state(&profile, &p, l) {
                    Ok(out) => match out.solution() {
                        Some(s) => {
                            c.expect(s.kind == kind && s.energy == if mirrored { -1.0 } else { 1.0 }, || {
                                format!("field {e0} l={l}: got {} at {}", s.kind, s.energy)
                            });
                            let d = max_diff(s, &oracle, mirrored);
                            worst = worst.max(d);
                            c.expect(d < 1e-8, || format!("field {e0} l={l}: critical state off by {d:e}"));
                        }
                        None => c.expect(false, || format!("field {e0} l={l}: not normalizable")),
                    },
                    Err(e) => c.expect(false, || format!("field {e0} l={l}: {e}")),
                }
            }
        }
    }
    for (mk, want) in [(1.0, 0u32), (3.0, 2), (4.5, 3)] {
        let profile = FieldProfile::inverse_r(mk).unwrap();
        let bound = (0..12).filter(|&l| critical_state(&profile, &p, l).map(|o| o.is_bound()).unwrap_or(false)).count();
        c.expect(bound as u32 == want, || format!("|mu kappa| = {mk}: {bound} normalizable l values"));
        let formula = critical_count_inverse_field(mk);
        c.expect(formula == want, || format!("|mu kappa| = {mk}: counting formula gives {formula}"));
    }
    c.note(format!("max pointwise err {worst:.1e}"));
}

fn coupled_reduction(c: &mut Check) {
    let p = unit();
    let cfg = ShootingConfig::default();
    let mut worst = 0.0f64;
    let mut leak = 0.0f64;
    // Energies inside each profile's bound-state range.
    let profiles = [
        (FieldProfile::linear(1.0).unwrap(), [0.6, 1.9, -2.4]),
        (FieldProfile::constant(1.0).unwrap(), [0.6, 1.3, -1.1]),
        (FieldProfile::inverse_r(3.0).unwrap(), [0.6, 0.9, -0.4]),
    ];
    for (profile, energies) in &profiles {
        for l in 0..=2 {
            for energy in energies.iter().copied() {
                for kind in [Kind::Plus, Kind::Minus] {
                    let tag = format!("{:?} l={l} E={energy} {kind}", profile.electric());
                    let (c1, c4) = if kind == Kind::Plus { (1.0, 0.0) } else { (0.0, 1.0) };
                    let init = CoupledInit::regular(energy, 1.0, l, c1, c4);
                    let pair = integrate_radial_pair(profile, &p, energy, kind, l, &cfg, Direction::Outward);
                    let cs = integrate_coupled_eb(profile, &p, energy, l, init, &cfg);
                    let (pair, cs) = match (pair, cs) {
                        (Ok(a), Ok(b)) => (a, b),
                        (a, b) => {
                            c.expect(false, || format!("{tag}: {:?} {:?}", a.err(), b.err()));
                            continue;
                        }
                    };
                    c.expect(cs.grid == pair.grid, || format!("{tag}: grids differ"));
                    let (same, other) = match kind {
                        Kind::Plus => ((&cs.u_plus, &cs.v_plus), (&cs.u_minus, &cs.v_minus)),
                        Kind::Minus => ((&cs.u_minus, &cs.v_minus), (&cs.u_plus, &cs.v_plus)),
                    };
                    let scale = pair.max_abs();
                    for i in 0..pair.len().min(cs.grid.len()) {
                        let d = (same.0[i] - pair.u[i]).abs().max((same.1[i] - pair.v[i]).abs()) / scale;
                        worst = worst.max(d);
                        leak = leak.max(other.0[i].abs()).max(other.1[i].abs());
                    }
                }
            }
        }
    }
    c.expect(worst < 1e-9, || format!("coupled vs decoupled {worst:e}"));
    c.expect(leak < 1e-12, || format!("complementary pair {leak:e}"));
    c.note(format!("max rel diff {worst:.1e}, complementary max {leak:.1e}"));
}

fn properties(c: &mut Check) {
    for n_r in 0..=50u64 {
        for big_n in 0..=50u64 {
            c.expect(4 * n_r != 4 * big_n + 6, || format!("n_r={n_r} collides with N={big_n}"));
        }
    }
    let plus = linear_field_levels(&unit(), 1.0, Kind::Plus, 50).unwrap().levels;
    let minus = linear_field_levels(&unit(), 1.0, Kind::Minus, 50).unwrap().levels;
    for a in &plus {
        for b in &minus {
            c.expect((a.value - b.value).abs() > 1e-9, || format!("levels {} and {} overlap", a.value, b.value));
        }
    }
    let mut checked = 0;
    for (m, mu, e0) in [(1.0f64, 1.0f64, 1.0f64), (1.0, 1.0, -1.0), (2.0, 0.5, 3.0), (1.0, -0.7, 0.4), (0.3, 1.0, 5.0)] {
        let p = ParticleParams::new(m, mu).unwrap();
        let bound = (m * m + (mu * e0) * (mu * e0)).sqrt();
        for l in 0..=10 {
            for lv in constant_field_levels(&p, e0, l, 50).unwrap().levels {
                checked += 1;
                c.expect(lv.value.abs() < bound, || format!("m={m} mu={mu} E0={e0} l={l}: |{}| >= {bound}", lv.value));
            }
        }
        let profile = FieldProfile::constant(e0).unwrap();
        let kind = if mu * e0 > 0.0 { Kind::Plus } else { Kind::Minus };
        // Levels accumulate at the bound; stop where the mesh resolves them.
        let edge = bound * 0.99;
        let cfg = ShootingConfig { mesh_per_unit: 1000.0, ..ShootingConfig::default() };
        match spectrum_scan(&profile, &p, kind, 1, (-edge, edge), &cfg) {
            Ok(levels) => {
                for lv in levels {
                    checked += 1;
                    c.expect(lv.value.abs() < bound, || format!("numeric level {} outside bound {bound}", lv.value));
                }
            }
            Err(e) => c.expect(false, || format!("scan m={m} mu={mu} E0={e0}: {e}")),
        }
    }
    c.note(format!("{checked} levels within the constant-field bound"));
}

fn main() {
    let criteria: [(&str, fn(&mut Check)); 8] = [
        ("1 SI estimates", si_estimates),
        ("2 constant-field oracle suite", constant_field_suite),
        ("3 linear-field oracle suite", linear_field_suite),
        ("4 wavefunction equivalence", wavefunctions),
        ("5 angular identities", angular),
        ("6 critical-state generality", critical),
        ("7 coupled-system reduction", coupled_reduction),
        ("8 non-overlap and constant-field bound", properties),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let t = Instant::now();
        let mut c = Check::default();
        run(&mut c);
        let secs = t.elapsed().as_secs_f64();
        let status = if c.failures.is_empty() { "PASS" } else { "FAIL" };
        println!("{status} {name} ({secs:.2} s) {}", c.notes.join("; "));
        for f in c.failures.iter().take(20) {
            println!("    {f}");
        }
        if !c.failures.is_empty() {
            failed += 1;
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
