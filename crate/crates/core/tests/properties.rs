use proptest::prelude::*;

use dpbound::analytic::{constant_field_levels, laguerre, linear_field_levels};
use dpbound::angular::{mat_vec, pauli_dot_unit_radial, SpinorHarmonic};
use dpbound::numeric::normalize;
use dpbound::solution::radial_grid;
use dpbound::{units, Degeneracy, FieldProfile, Kind, ParticleParams, ProfileSpec, RadialSolution, ShapeSpec};

/// Explicit sum and the sum of absolute terms.
fn laguerre_sum(n: u32, a: f64, x: f64) -> (f64, f64) {
    (0..=n).fold((0.0, 0.0), |(s, abs), k| {
        let c: f64 = (1..=(n - k)).map(|j| (a + (k + j) as f64) / j as f64).product();
        let xk: f64 = (1..=k).map(|i| x / i as f64).product();
        let t = if k % 2 == 0 { c * xk } else { -c * xk };
        (s + t, abs + t.abs())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn constant_field_is_constant(e0 in -10.0f64..10.0, r in 1e-6f64..1e6) {
        let f = FieldProfile::constant(e0).unwrap();
        prop_assert_eq!(f.field_at(r).unwrap(), e0);
    }

    #[test]
    fn tabulated_linear_data_is_reproduced(beta in 0.1f64..5.0, t in 0.0f64..1.0) {
        let r: Vec<f64> = (1..=60).map(|i| 0.1 * i as f64).collect();
        let e: Vec<f64> = r.iter().map(|x| beta * x).collect();
        let f = FieldProfile::tabulated(r, e).unwrap();
        let x = 0.1 + t * 5.9;
        prop_assert!((f.field_at(x).unwrap() - beta * x).abs() <= 1e-10 * beta * x.max(1.0));
    }

    #[test]
    fn reversed_profile_negates(kappa in 0.5f64..6.0, r in 0.01f64..50.0) {
        let f = FieldProfile::inverse_r(kappa).unwrap();
        prop_assert_eq!(f.reversed().field_at(r).unwrap(), -f.field_at(r).unwrap());
    }

    #[test]
    fn constant_estimate_decreases_with_field(e in 1e6f64..1e14, k in 1.01f64..100.0) {
        let mu = units::NEUTRON_MOMENT_SI;
        let a = units::estimate_bohr_radius_constant(mu, e).unwrap();
        let b = units::estimate_bohr_radius_constant(mu, k * e).unwrap();
        prop_assert!(b < a);
        prop_assert!((a / b - k).abs() < 1e-12 * k);
    }

    #[test]
    fn linear_estimate_scales_as_inverse_root(rho in 1e2f64..1e14, k in 1.01f64..100.0) {
        let mu = units::NEUTRON_MOMENT_SI;
        let a = units::estimate_bohr_radius_linear(mu, rho).unwrap();
        let b = units::estimate_bohr_radius_linear(mu, k * rho).unwrap();
        prop_assert!((a / b - k.sqrt()).abs() < 1e-12 * k);
    }

    #[test]
    fn laguerre_recurrence_matches_explicit_sum(n in 0u32..12, a in 0.0f64..8.0, x in 0.0f64..20.0) {
        let (want, scale) = laguerre_sum(n, a, x);
        prop_assert!((laguerre(n, a, x) - want).abs() <= 1e-11 * scale);
    }

    #[test]
    fn laguerre_at_zero_is_binomial(n in 0u32..15, a in 0.0f64..6.0) {
        let want: f64 = (1..=n).map(|j| (a + j as f64) / j as f64).product();
        prop_assert!((laguerre(n, a, 0.0) - want).abs() <= 1e-12 * want);
    }

    #[test]
    fn constant_levels_mirror_under_field_reversal(e0 in 0.1f64..4.0, l in 0u32..6) {
        let p = ParticleParams::new(1.0, 1.0).unwrap();
        let a = constant_field_levels(&p, e0, l, 8).unwrap();
        let b = constant_field_levels(&p, -e0, l, 8).unwrap();
        prop_assert_eq!(a.solution_kind, b.solution_kind.mirror());
        for (x, y) in a.levels.iter().zip(&b.levels) {
            prop_assert_eq!(x.value, -y.value);
            prop_assert_eq!(x.degeneracy, y.degeneracy);
        }
    }

    #[test]
    fn constant_levels_stay_below_bound(m in 0.1f64..5.0, mu in -3.0f64..3.0, e0 in 0.05f64..5.0, l in 0u32..10) {
        prop_assume!(mu.abs() > 1e-3);
        let p = ParticleParams::new(m, mu).unwrap();
        let bound = (m * m + mu * mu * e0 * e0).sqrt();
        for lv in constant_field_levels(&p, e0, l, 40).unwrap().levels {
            prop_assert!(lv.value.abs() < bound);
            prop_assert!(lv.value.abs() >= m * (1.0 - 1e-15));
        }
    }

    #[test]
    fn linear_families_never_share_a_level(beta in 0.05f64..5.0) {
        let p = ParticleParams::new(1.0, 1.0).unwrap();
        let plus = linear_field_levels(&p, beta, Kind::Plus, 50).unwrap().levels;
        let minus = linear_field_levels(&p, beta, Kind::Minus, 50).unwrap().levels;
        for a in &plus {
            for b in &minus {
                prop_assert!(a.value != b.value);
            }
        }
    }

    #[test]
    fn radial_grid_is_increasing_and_hits_ends(r_min in 1e-7f64..1e-3, join in 0.05f64..2.0, span in 1.5f64..100.0, ratio in 1.001f64..1.1) {
        let r_max = join * span;
        let g = radial_grid(r_min, join, r_max, ratio);
        prop_assert_eq!(g[0], r_min);
        prop_assert_eq!(*g.last().unwrap(), r_max);
        prop_assert!(g.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn normalize_is_idempotent(a in 0.1f64..5.0, amp in -10.0f64..10.0, l in 0u32..4) {
        prop_assume!(amp.abs() > 1e-3);
        let grid = radial_grid(1e-6, 0.5 / a, 60.0 / a, 1.01);
        let u: Vec<f64> = grid.iter().map(|r| amp * r.powi(l as i32) * (-a * r).exp()).collect();
        let v: Vec<f64> = grid.iter().map(|r| 0.3 * amp * r.powi(l as i32 + 1) * (-a * r).exp()).collect();
        let sol = RadialSolution::new(grid, u, v, 1.0, Kind::Plus, l).unwrap();
        let once = normalize(&sol).unwrap();
        let twice = normalize(&once).unwrap();
        prop_assert!((once.norm_integral() - 1.0).abs() < 1e-12);
        prop_assert!(once.u.iter().all(|x| *x >= 0.0));
        for (x, y) in once.u.iter().zip(&twice.u) {
            prop_assert!((x - y).abs() <= 1e-12 * x.abs().max(1e-300) + 1e-300);
        }
    }

    #[test]
    fn radial_projection_swaps_kinds(l in 0u32..8, m_off in 0i32..20, theta in 0.0f64..std::f64::consts::PI, phi in 0.0f64..6.3) {
        let m = -(l as i32) - 1 + m_off % (2 * l as i32 + 2);
        let plus = SpinorHarmonic::new(Kind::Plus, l, m).unwrap();
        let minus = SpinorHarmonic::new(Kind::Minus, l, m).unwrap();
        let s = pauli_dot_unit_radial(theta, phi);
        let a = mat_vec(&s, &plus.eval::<f64>(theta, phi).unwrap());
        let b = minus.eval::<f64>(theta, phi).unwrap();
        prop_assert!((a[0] - b[0]).norm() < 1e-12 && (a[1] - b[1]).norm() < 1e-12);
    }

    #[test]
    fn inline_profile_round_trips(e0 in -1e6f64..1e6, kappa in 0.1f64..10.0, core in 0.01f64..3.0) {
        let c = ProfileSpec::from_inline(&format!("constant:E0={e0:e}")).unwrap();
        prop_assert_eq!(c.electric, ShapeSpec::Constant { e0 });
        let k = ProfileSpec::from_inline(&format!("inverse_r:kappa={kappa:e},core_radius={core:e}")).unwrap();
        prop_assert_eq!(k.electric, ShapeSpec::InverseR { kappa, core_radius: Some(core) });
    }

    #[test]
    fn degeneracy_json_round_trips(n in 0u64..1_000_000) {
        for d in [Degeneracy::Finite(n), Degeneracy::CountablyInfinite] {
            let text = serde_json::to_string(&d).unwrap();
            prop_assert_eq!(serde_json::from_str::<Degeneracy>(&text).unwrap(), d);
        }
    }
}
