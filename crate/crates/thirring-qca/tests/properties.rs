use std::f64::consts::{FRAC_PI_2, PI};

use proptest::prelude::*;
use thirring_qca::phase::{wrap_angle, I};
use thirring_qca::spectral::{band_arcs, degeneracy_partners, g_function, special_momentum, transmission, RegionLabel};
use thirring_qca::two_particle::{antisymmetry_defect, apply_u2, exchange, omega_sr, RelativeState};
use thirring_qca::walk::{apply2, dispersion, eigenvector, walk_matrix, Spinor2};
use thirring_qca::{arccos_principal, BranchSign, UnitPhase, WalkParams, C64};

fn mass() -> impl Strategy<Value = f64> {
    0.05f64..0.95
}

fn generic_p() -> impl Strategy<Value = f64> {
    (-PI + 1e-3..PI).prop_filter("away from multiples of pi/2", |&p| {
        let z = (p / FRAC_PI_2).round();
        (p - z * FRAC_PI_2).abs() > 1e-3
    })
}

fn branch() -> impl Strategy<Value = BranchSign> {
    prop_oneof![Just(BranchSign::Plus), Just(BranchSign::Minus)]
}

fn antisymmetric_state(seed: Vec<(f64, f64)>) -> RelativeState {
    let w = (seed.len() / 4 - 1) / 2;
    RelativeState::from_fn(w, |y| {
        let base = 4 * (y + w as i64) as usize;
        [0, 1, 2, 3].map(|c| C64::new(seed[base + c].0, seed[base + c].1))
    })
    .antisymmetrized()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn arccos_inverts_cosine_on_the_principal_strip(re in -10.0f64..10.0, im in -10.0f64..10.0) {
        let z = C64::new(re, im);
        let w = arccos_principal(z).unwrap();
        prop_assert!(w.re >= 0.0 && w.re <= PI);
        prop_assert!((w.cos() - z).norm() <= 1e-12 * z.norm().max(1.0));
    }

    #[test]
    fn walk_eigenvectors_hold_off_the_real_axis(mu in mass(), re in -PI..PI, im in -3.0f64..3.0, s in branch()) {
        let params = WalkParams::new(mu).unwrap();
        let p = C64::new(re, im);
        let v = eigenvector(params, s, p);
        let wv = apply2(&walk_matrix(params, p), &v);
        let lam = (-I * s.value() * dispersion(params, p)).exp();
        let r = Spinor2 { up: wv.up - lam * v.up, down: wv.down - lam * v.down };
        prop_assert!(r.norm() <= 1e-10 * lam.norm().max(1.0), "residual {}", r.norm());
    }

    #[test]
    fn step_is_unitary_and_keeps_fermionic_symmetry(
        mu in mass(),
        chi in -PI..PI,
        p in -PI..PI,
        seed in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 4 * 21),
    ) {
        let params = WalkParams::new(mu).unwrap();
        let f = antisymmetric_state(seed);
        let g = apply_u2(params, chi, p, &f).unwrap();
        prop_assert!((g.norm() - f.norm()).abs() <= 1e-12 * f.norm().max(1.0));
        prop_assert!(antisymmetry_defect(&g) <= 1e-12 * f.norm().max(1.0));
    }

    #[test]
    fn exchange_is_an_involution(a in prop::array::uniform4((-1.0f64..1.0, -1.0f64..1.0))) {
        let v = a.map(|(r, i)| C64::new(r, i));
        prop_assert_eq!(exchange(&exchange(&v)), v);
    }

    #[test]
    fn partners_share_one_quasi_energy(
        mu in mass(),
        p in -PI..PI,
        kr in -PI..PI,
        ki in -2.0f64..2.0,
        s in branch(),
        r in branch(),
    ) {
        let params = WalkParams::new(mu).unwrap();
        let k = C64::new(kr, ki);
        let reference = (-I * omega_sr(params, p, k, s, r)).exp();
        for (s2, r2, k2) in degeneracy_partners(s, r, k) {
            let other = (-I * omega_sr(params, p, k2, s2, r2)).exp();
            prop_assert!((other - reference).norm() <= 1e-12 * reference.norm().max(1.0));
        }
    }

    #[test]
    fn transmission_is_unimodular_for_real_momenta(
        mu in mass(),
        p in generic_p(),
        k in -PI..PI,
        chi in -PI..PI,
        s in branch(),
    ) {
        let params = WalkParams::new(mu).unwrap();
        if let Ok(t) = transmission(params, chi, p, C64::new(k, 0.0), s) {
            prop_assert!((t.norm() - 1.0).abs() <= 1e-9, "|T| = {}", t.norm());
        }
    }

    #[test]
    fn every_phase_lands_in_exactly_one_region(mu in mass(), p in generic_p(), phi in -PI..PI) {
        let params = WalkParams::new(mu).unwrap();
        let bands = band_arcs(params, p).unwrap();
        let phase = UnitPhase::new(phi);
        let hits = bands.locate(phase, 0.0).len() + usize::from(bands.is_excluded(phase, 0.0));
        prop_assert!(hits == 1 || bands.is_excluded(phase, 1e-12), "{hits} regions at {phi}");
    }

    #[test]
    fn g_is_monotone_and_avoids_its_exclusions(mu in mass(), p in generic_p()) {
        let params = WalkParams::new(mu).unwrap();
        for region in RegionLabel::DISCRETE {
            let start = g_function(params, p, region, 0.0).unwrap();
            let forbidden = if region.branch() == BranchSign::Plus { UnitPhase::new(0.0) } else { UnitPhase::new(PI) };
            let mut last: Option<f64> = None;
            let mut sign = 0.0;
            for j in 1..=400 {
                let k_i = -0.05 * j as f64;
                let g = g_function(params, p, region, k_i).unwrap();
                prop_assert!(g.distance(forbidden) > 1e-9);
                let offset = wrap_angle(g.angle() - start.angle());
                if let Some(prev) = last {
                    let step = offset - prev;
                    if sign == 0.0 {
                        sign = step.signum();
                    }
                    prop_assert!(step * sign > 0.0 || step.abs() < 1e-13, "{region:?} turns back at k_I = {k_i}");
                }
                last = Some(offset);
            }
        }
    }

    #[test]
    fn guard_band_catches_multiples_of_half_pi(z in -1i32..=2, eps in -0.9e-9f64..0.9e-9) {
        prop_assert!(special_momentum(z as f64 * FRAC_PI_2 + eps).is_some());
    }
}
