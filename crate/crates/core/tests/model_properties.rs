use approx::assert_relative_eq;
use num::{BigRational, ToPrimitive};
use proptest::prelude::*;

use perfwall::contributions::{
    alpha_total, peak_point, preset, rmax_of_rpeak, AlphaDecomposition, MachineModel, Preset,
};
use perfwall::model::{
    alpha_from_measurement, classic_speed, efficiency_nonparallel, relativistic_speed, saturation_limit,
    ParallelSystem, RelativisticParams, LIGHT_SPEED,
};

fn q(x: f64) -> BigRational {
    BigRational::from_float(x).unwrap()
}

/// N·P / (N·s + (1 − s)) in exact rational arithmetic.
fn payload_exact(n: f64, p: f64, s: f64) -> f64 {
    let (n, p, s) = (q(n), q(p), q(s));
    let one = BigRational::from_integer(1.into());
    let den = &n * &s + (&one - &s);
    (n * p / den).to_f64().unwrap()
}

#[test]
fn payload_examples_against_exact_oracle() {
    let cases = [
        (58_700.0, 100e9, 2.34e-8),
        (10_649_600.0, 0.1254e18 / 10_649_600.0, 3.3e-8),
        (1.0, 100e9, 0.5),
        (1e6, 100e9, 0.0),
    ];
    for (n, p, s) in cases {
        let sys = ParallelSystem::with_nonparallel(n, p, s).unwrap();
        assert_relative_eq!(sys.modern_total_perf(), payload_exact(n, p, s), max_relative = 1e-14);
    }
    let sys = ParallelSystem::with_nonparallel(58_700.0, 100e9, 2.34e-8).unwrap();
    assert_relative_eq!(sys.modern_total_perf(), 0.00586e18, max_relative = 1e-3);
}

#[test]
fn relativistic_day_against_series_oracle() {
    // at(1 − x²/2 + 3x⁴/8) with x = at/c
    let at = 86_400.0 * 9.81;
    let x = at / LIGHT_SPEED;
    let oracle = at * (1.0 - x * x / 2.0 + 3.0 * x.powi(4) / 8.0);
    let v = relativistic_speed(86_400.0, &RelativisticParams::gravity(1.0).unwrap());
    assert_relative_eq!(v, oracle, max_relative = 1e-14);
    assert_relative_eq!(v, 847_600.0, max_relative = 1e-4);
    assert!((v - 847_584.0).abs() / 847_584.0 < 1e-5);
}

#[test]
fn saturation_reached_at_large_n() {
    let sys = ParallelSystem::with_nonparallel(1e10, 100e9, 1e-8).unwrap();
    let limit = saturation_limit(100e9, 1e-8).unwrap();
    assert_relative_eq!(limit, 1e19, max_relative = 1e-15);
    assert!((sys.modern_total_perf() / limit - 1.0).abs() < 0.01);
}

#[test]
fn degenerate_decomposition_reduces_to_constant_alpha() {
    let d = AlphaDecomposition {
        alpha_sw: 3.3e-8,
        ctx_switch_clocks: 0.0,
        total_clocks: 2e13,
        loop_clocks_per_pu: 0.0,
        bio_factor: 1.0,
    };
    let m = MachineModel::default();
    for r_peak in [1e11, 1e15, 0.1254e18, 1e18] {
        let n = r_peak / m.perf_per_pu;
        let sys = ParallelSystem::with_nonparallel(n, m.perf_per_pu, 3.3e-8).unwrap();
        let point = rmax_of_rpeak(r_peak, &m, &d).unwrap();
        assert_eq!(point.r_max, sys.modern_total_perf());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn modern_matches_exact_oracle(
        n in 1.0f64..1e9,
        p in 1e6f64..1e12,
        log_s in -10.0f64..0.0,
    ) {
        let s = 10f64.powf(log_s);
        let sys = ParallelSystem::with_nonparallel(n, p, s).unwrap();
        let exact = payload_exact(n, p, s);
        prop_assert!((sys.modern_total_perf() / exact - 1.0).abs() < 1e-13);
    }

    #[test]
    fn monotone_and_bounded_at_fixed_fraction(
        n in 1.0f64..1e9,
        factor in 1.001f64..100.0,
        log_s in -9.0f64..-0.01,
    ) {
        let s = 10f64.powf(log_s);
        let a = ParallelSystem::with_nonparallel(n, 1e9, s).unwrap();
        let b = ParallelSystem::with_nonparallel(n * factor, 1e9, s).unwrap();
        let limit = saturation_limit(1e9, s).unwrap();
        prop_assert!(b.modern_total_perf() > a.modern_total_perf());
        prop_assert!(b.modern_total_perf() <= limit * (1.0 + 1e-12));
        prop_assert!(efficiency_nonparallel(n * factor, s) < efficiency_nonparallel(n, s));
    }

    #[test]
    fn inversion_recovers_nonparallel(n in 2.0f64..1e8, log_s in -9.0f64..-1.0) {
        let s = 10f64.powf(log_s);
        let e = efficiency_nonparallel(n, s);
        let back = alpha_from_measurement(n, e).unwrap();
        prop_assert!((back / s - 1.0).abs() < 1e-6, "{} vs {}", back, s);
    }

    #[test]
    fn small_arguments_agree_with_classic(frac in 1e-9f64..1e-3, density in 1.0f64..3.0) {
        let p = RelativisticParams::gravity(density).unwrap();
        let t = frac * p.limit() / p.accel();
        let rel = relativistic_speed(t, &p);
        let classic = classic_speed(t, p.accel());
        prop_assert!((classic - rel) / classic <= 1e-6);
    }

    #[test]
    fn alpha_total_is_affine(n1 in 1.0f64..1e7, n2 in 1.0f64..1e7, which in 0usize..3) {
        let d = preset(Preset::ALL[which]).decomposition;
        let diff = alpha_total(n2, &d).unwrap() - alpha_total(n1, &d).unwrap();
        let expect = d.slope() * (n2 - n1);
        // both sides carry rounding of the O(1e-6) intercept
        prop_assert!((diff - expect).abs() <= 1e-21 + 1e-12 * expect.abs());
    }

    #[test]
    fn contribution_curves_peak_once(which in 0usize..3, k in 1.05f64..20.0) {
        let bp = preset(Preset::ALL[which]);
        let peak = peak_point(&bp.machine, &bp.decomposition).unwrap();
        let at = |n: f64| rmax_of_rpeak(n * bp.machine.perf_per_pu, &bp.machine, &bp.decomposition)
            .map(|p| p.r_max);
        let top = peak.r_max_star;
        let below = peak.n_star / k;
        if below >= 1.0 {
            let lo = at(below).unwrap();
            let lo2 = at((below / 1.5).max(1.0)).unwrap();
            prop_assert!(lo < top && lo2 <= lo);
        }
        if let (Ok(hi), Ok(hi2)) = (at(peak.n_star * k), at(peak.n_star * k * 1.5)) {
            prop_assert!(hi < top && hi2 < hi);
        }
    }
}
