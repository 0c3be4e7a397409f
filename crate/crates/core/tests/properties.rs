mod support;

use lifshitz_fidelity::boundary::{
    default_fit_samples, fidelity_with, ground_state, overlap_quadrature, xi_f_analytic, xi_f_from_fit, BosonGasParams,
    GridSpec,
};
use lifshitz_fidelity::bulk::{blackening, lifshitz_exponent, series_coeffs_z4, BulkParams};
use lifshitz_fidelity::duality::{consistency_flags, verify_duality, DualityReport, MatchedParameters, SignFlag};
use lifshitz_fidelity::quadrature::QuadratureSpec;
use lifshitz_fidelity::volume::{volume_exact, volume_w_form, VolumeMode};
use proptest::prelude::*;
use support::{rel, Bulk};

fn bulk_z4() -> impl Strategy<Value = BulkParams> {
    (0.3..3.0f64, -3.0..-0.01f64, 0.1..3.0f64, 0.0..3.0f64, 0.2..3.0f64, 0.2..3.0f64)
        .prop_map(|(l, xi, q, v0, rp, g)| BulkParams::z4(l, xi, q, v0, rp, g))
}

fn raw(p: &BulkParams) -> Bulk {
    Bulk { ads_radius: p.ads_radius, xi: p.xi, charge: p.charge, potential: p.potential, z: p.z, horizon: p.horizon }
}

proptest! {
    #[test]
    fn horizon_is_a_root(p in bulk_z4(), z in 1.0..12.0f64) {
        let p = BulkParams { z, ..p };
        let b = blackening(p.horizon, &p).unwrap();
        prop_assert!(b.abs() <= 1e-12, "B(r₊) = {b:e}");
    }

    #[test]
    fn blackening_matches_direct_formula(p in bulk_z4(), z in 1.0..12.0f64, s in 1.0..50.0f64) {
        let p = BulkParams { z, ..p };
        let r = s * p.horizon;
        let direct = raw(&p).blackening(r);
        prop_assert!((blackening(r, &p).unwrap() - direct).abs() <= 1e-12 * direct.abs().max(1.0));
    }

    #[test]
    fn coefficients_differ_by_the_potential(p in bulk_z4()) {
        let c = series_coeffs_z4(&p).unwrap();
        let (b1, bm2) = raw(&p).z4_coefficients();
        prop_assert!((c.b1 - b1).abs() <= 1e-13 * b1.abs().max(1.0));
        prop_assert!((c.b_minus2 - bm2).abs() <= 1e-13 * bm2.abs().max(1.0));
        prop_assert!((c.b1 - c.b_minus2 + p.potential / 6.0).abs() <= 1e-12 * c.b1.abs().max(1.0));
    }

    #[test]
    fn truncated_integrand_plus_constant_is_the_blackening(p in bulk_z4(), w in 0.01..=1.0f64) {
        let c = series_coeffs_z4(&p).unwrap();
        let full = blackening(p.horizon / w, &p).unwrap();
        prop_assert!((c.b(w) + p.potential / 6.0 - full).abs() <= 1e-12 * full.abs().max(1.0));
    }

    #[test]
    fn exponent_four_roundtrip(l in 0.2..5.0f64, q in 0.1..10.0f64) {
        let lambda = -3.0 / (l * l);
        let z = lifshitz_exponent(q, -lambda / (2.0 * q * q), lambda).unwrap();
        prop_assert!((z - 4.0).abs() <= 1e-12);
    }

    #[test]
    fn normalization(q in 0.1..10.0f64, h in 0.1..10.0f64, beta in -5.0..5.0f64) {
        let p = BosonGasParams { charge: q, field: h, beta, ..Default::default() };
        let norm = overlap_quadrature(&p, 0.0, &GridSpec::default()).unwrap();
        prop_assert!((norm - 1.0).abs() <= 1e-10);
    }

    #[test]
    fn quadrature_overlap_matches_closed_form(
        q in 0.1..10.0f64, h in 0.1..10.0f64, beta in -5.0..5.0f64, frac in -0.5..0.5f64,
    ) {
        let p = BosonGasParams { charge: q, field: h, beta, ..Default::default() };
        let dh = frac * h;
        let (a, b) = (q * h, q * (h + dh));
        let closed = support::gaussian_overlap(a, beta / a, b, beta / b);
        let quad = overlap_quadrature(&p, dh, &GridSpec::default()).unwrap();
        prop_assert!(rel(quad, closed) <= 1e-10, "{quad} vs {closed}");
    }

    #[test]
    fn fidelity_is_a_product_over_particles(
        n in 1u32..20, q in 0.2..5.0f64, h in 0.2..5.0f64, beta in -2.0..2.0f64, frac in -0.3..0.3f64,
    ) {
        let one = BosonGasParams { charge: q, field: h, beta, ..Default::default() };
        let grid = GridSpec::default();
        let single = fidelity_with(&one, frac * h, &grid).unwrap();
        let many = fidelity_with(&BosonGasParams { particles: n, ..one }, frac * h, &grid).unwrap();
        prop_assert!(rel(many, single.powi(n as i32)) <= 1e-14);
        let x1 = xi_f_analytic(&one).unwrap();
        let xn = xi_f_analytic(&BosonGasParams { particles: n, ..one }).unwrap();
        prop_assert!(rel(xn, n as f64 * x1) <= 1e-15);
    }

    #[test]
    fn fidelity_ignores_longitudinal_momentum(
        q in 0.2..5.0f64, h in 0.2..5.0f64, beta in -2.0..2.0f64, k in -10.0..10.0f64, frac in -0.3..0.3f64,
    ) {
        let p = BosonGasParams { charge: q, field: h, beta, ..Default::default() };
        let grid = GridSpec::default();
        let f0 = fidelity_with(&p, frac * h, &grid).unwrap();
        let fk = fidelity_with(&BosonGasParams { k, ..p }, frac * h, &grid).unwrap();
        prop_assert_eq!(f0, fk);
        let energy = ground_state(&BosonGasParams { k, ..p }).unwrap().energy;
        prop_assert!(energy >= 0.5 * q * h);
    }

    #[test]
    fn duality_scales_with_horizon_squared(p in bulk_z4(), s in 0.1..10.0f64) {
        let p = BulkParams { potential: 0.0, ..p };
        let a = verify_duality(&p).unwrap();
        let b = verify_duality(&BulkParams { horizon: s * p.horizon, ..p }).unwrap();
        prop_assert!(rel(b.xi_f_bulk, s * s * a.xi_f_bulk) <= 1e-13);
        prop_assert!(rel(b.xi_f_boundary, s * s * a.xi_f_boundary) <= 1e-13);
        prop_assert!(a.relative_residual <= 1e-10 && b.relative_residual <= 1e-10);
        prop_assert!(rel(a.xi_f_bulk, support::holographic_susceptibility(p.horizon, p.xi, p.ads_radius, p.newton, p.charge)) <= 1e-13);
    }

    #[test]
    fn flags_follow_signs(n in -2.0..2.0f64, ratio in -2.0..2.0f64, xi in -2.0..2.0f64) {
        let report = DualityReport {
            matched: MatchedParameters { particles: n, beta_sq_over_q: ratio },
            xi_f_bulk: 1.0,
            xi_f_boundary: 1.0,
            relative_residual: 0.0,
            flags: Vec::new(),
            xi,
            params: BulkParams::default(),
        };
        let flags = consistency_flags(&report);
        prop_assert_eq!(flags.contains(&SignFlag::NegativeN), n < 0.0);
        prop_assert_eq!(flags.contains(&SignFlag::NegativeBetaSqOverQ), ratio < 0.0);
        prop_assert_eq!(flags.contains(&SignFlag::NegativeXi), xi < 0.0);
        prop_assert_eq!(flags, consistency_flags(&report));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn radial_and_inverse_radial_volumes_agree(p in bulk_z4(), ratio in 2.0..200.0f64) {
        let spec = QuadratureSpec::default();
        let exact = volume_exact(&p, ratio * p.horizon, &spec).unwrap();
        let w = volume_w_form(&p, 1.0 / ratio, VolumeMode::FullB, &spec).unwrap();
        prop_assert!(rel(exact.value, w.value) <= 1e-8, "{} vs {}", exact.value, w.value);
        prop_assert!(exact.value > 0.0 && exact.error_estimate >= 0.0);
    }

    #[test]
    fn fitted_susceptibility_is_linear_in_n(n in 2u32..10, q in 0.3..3.0f64, h in 0.3..3.0f64, beta in -1.5..1.5f64) {
        let one = BosonGasParams { charge: q, field: h, beta, ..Default::default() };
        let samples = default_fit_samples(h);
        let c1 = xi_f_from_fit(&one, &samples).unwrap().c_sq;
        let cn = xi_f_from_fit(&BosonGasParams { particles: n, ..one }, &samples).unwrap().c_sq;
        prop_assert!(rel(cn, n as f64 * c1) <= 1e-6);
    }
}
