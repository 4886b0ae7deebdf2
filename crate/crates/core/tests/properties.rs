use proptest::prelude::*;
use trojan_core::harmonic::{scaled_field_max, Q_MIN};
use trojan_core::{
    gamma_sp, gamma_ud, kepler_frequency, particle_units, q_of_scaled_field, ratio_ud_sp,
    scaled_field_of_q, shape_set, Convention, ParticleSpec, Quantity,
};

fn window_q() -> impl Strategy<Value = f64> {
    (Q_MIN + 1e-9)..=1.0
}

fn any_particle() -> impl Strategy<Value = ParticleSpec> {
    prop_oneof![
        Just(ParticleSpec::electron()),
        Just(ParticleSpec::muon()),
        (0.5f64..5000.0, 1.0f64..4.0).prop_map(|(m, z)| {
            ParticleSpec::new("custom", m, z, trojan_core::Lifetime::Stable).unwrap()
        }),
    ]
}

proptest! {
    #[test]
    fn mode_sum_and_product(q in window_q()) {
        let s = shape_set(q).unwrap();
        let (p2, m2) = (s.omega_plus_ratio.powi(2), s.theta.powi(2));
        prop_assert!(((p2 + m2) - (2.0 - q)).abs() <= 1e-12);
        prop_assert!((p2 * m2 - (1.0 + 2.0 * q) * (1.0 - q)).abs() <= 1e-12);
        prop_assert!(s.a >= 0.0 && s.b >= 0.0 && s.alpha_tilde_sq >= 0.0);
    }

    #[test]
    fn theta_is_decreasing(q1 in window_q(), q2 in window_q()) {
        prop_assume!(q1 < q2);
        prop_assert!(shape_set(q1).unwrap().theta > shape_set(q2).unwrap().theta);
    }

    #[test]
    fn scaled_field_round_trip(frac in 0.0f64..0.999) {
        let sf = frac * scaled_field_max();
        let q = q_of_scaled_field(sf).unwrap();
        prop_assert!(q > Q_MIN && q <= 1.0);
        prop_assert!((scaled_field_of_q(q).unwrap() - sf).abs() <= 1e-12);
    }

    #[test]
    fn unit_round_trip(p in any_particle(), x in 1e-30f64..1e30) {
        let u = particle_units(&p);
        for kind in [Quantity::Length, Quantity::Time, Quantity::Frequency, Quantity::Field, Quantity::Energy] {
            let back = u.to_si(kind, u.from_si(kind, x));
            prop_assert!(((back - x) / x).abs() <= 1e-14);
        }
    }

    #[test]
    fn ratio_is_universal(q in (Q_MIN + 1e-6)..0.99999, n in 1u32..60, p in any_particle()) {
        let w = kepler_frequency(n, &p).unwrap();
        for conv in [Convention::Calibrated, Convention::AsPrinted] {
            let r = gamma_ud(q, w, &p, conv).unwrap() / gamma_sp(q, w, &p).unwrap();
            let direct = ratio_ud_sp(q, conv).unwrap();
            prop_assert!(((r - direct) / direct).abs() <= 1e-14);
        }
    }

    #[test]
    fn outside_window_is_rejected(q in prop_oneof![-10.0f64..Q_MIN, 1.0f64 + 1e-12..10.0]) {
        prop_assert!(shape_set(q).is_err());
    }
}
