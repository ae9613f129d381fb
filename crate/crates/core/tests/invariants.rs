mod common;

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;
use proptest::prelude::*;
use sagin::amud::placement::separate;
use sagin::amud::power::min_power;
use sagin::association::jain_fairness;
use sagin::channel::{los_probability, path_loss, A2GParams};
use sagin::combining::{combiner_sinr, egc_sinr, max_sinr, max_sinr_closed_form, optimal_weight, CombinerInput};
use sagin::link::{altitude_from_power, hover_power, HoverModel};
use sagin::scenario::{satellite_visibility, Area, Point2, Satellite};

use common::{check, Slot};

fn cplx() -> impl Strategy<Value = Complex64> {
    (-2.0..2.0f64, -2.0..2.0f64).prop_map(|(re, im)| Complex64::new(re, im))
}

fn combiner_input() -> impl Strategy<Value = CombinerInput> {
    prop_oneof![Just(1usize), Just(2), Just(4)].prop_flat_map(|l| {
        (
            prop::collection::vec(cplx(), l),
            prop::collection::vec(cplx(), l),
            0.01..5.0f64,
            0.01..5.0f64,
            0.01..5.0f64,
            0.01..20.0f64,
        )
            .prop_map(|(hd, hr, hbar, g, s2, p)| CombinerInput::new(hd, hr, hbar, g, s2, p).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn slot_invariants(seed in any::<u64>(), scheme in 0usize..4, excess in 0usize..=400, uavs in 1usize..=4, polar in -40.0..40.0f64) {
        let slot = Slot::new(seed, scheme, excess, uavs, polar);
        let o = slot.run();
        if let Err(msg) = check(&slot, &o) {
            prop_assert!(false, "{:?}: {}", slot, msg);
        }
    }

    #[test]
    fn combiner_weight_scale_invariant(ci in combiner_input(), w in prop::collection::vec(cplx(), 8), c in cplx()) {
        prop_assume!(c.norm() > 1e-3);
        let w = &w[..2 * ci.h_direct.len()];
        prop_assume!(w.iter().any(|x| x.norm() > 1e-3));
        let scaled: Vec<_> = w.iter().map(|x| x * c).collect();
        let (a, b) = (combiner_sinr(&ci, w).unwrap(), combiner_sinr(&ci, &scaled).unwrap());
        prop_assert!((a - b).abs() <= 1e-9 * a.abs().max(1e-12));
    }

    #[test]
    fn optimum_dominates(ci in combiner_input(), w in prop::collection::vec(cplx(), 8)) {
        let w = &w[..2 * ci.h_direct.len()];
        prop_assume!(w.iter().any(|x| x.norm() > 1e-3));
        let opt = max_sinr(&ci).unwrap();
        let at_w = combiner_sinr(&ci, &optimal_weight(&ci)).unwrap();
        prop_assert!((opt - at_w).abs() <= 1e-9 * opt);
        prop_assert!(combiner_sinr(&ci, w).unwrap() <= opt * (1.0 + 1e-9));
        prop_assert!(egc_sinr(&ci).unwrap() <= opt * (1.0 + 1e-9));
        let hs = ci.hop_sinrs().unwrap();
        prop_assert!(opt >= hs.gamma_direct * (1.0 - 1e-12));
    }

    #[test]
    fn closed_form_at_least_direct(gd in 0.0..1e4f64, gs in 0.0..1e4f64, gu in 0.0..1e4f64, v in 1e-3..1e3f64) {
        let g = max_sinr_closed_form(gd, gs, gu, v).unwrap();
        prop_assert!(g >= gd);
        prop_assert!(g <= gd + gs * (1.0 + 1e-12));
    }

    #[test]
    fn average_path_loss_is_mixture(d in 1.0..5000.0f64, theta in 1e-3..(FRAC_PI_2 - 1e-3)) {
        let p = A2GParams::urban();
        let pl = path_loss(d, theta, &p).unwrap();
        let q = los_probability(theta, &p).unwrap();
        prop_assert!((0.0..=1.0).contains(&q));
        let mix = q * pl.los + (1.0 - q) * pl.nlos;
        prop_assert!((pl.avg - mix).abs() <= 1e-9 * mix.abs());
        prop_assert!(pl.los <= pl.avg && pl.avg <= pl.nlos);
    }

    #[test]
    fn visibility_is_periodic(alt in 400e3..2000e3f64, polar in -3.0..3.0f64, t in 0.0..20_000.0f64) {
        let s = Satellite::new(alt, 10f64.to_radians(), polar, 100.0).unwrap();
        let a = s.orbital_angle(t).cos();
        prop_assume!((a - s.visibility_threshold()).abs() > 1e-9);
        prop_assert_eq!(satellite_visibility(&s, t), satellite_visibility(&s, t + s.orbital_period));
    }

    #[test]
    fn fairness_in_unit_interval(rates in prop::collection::vec(0.0..1e9f64, 1..200)) {
        prop_assume!(rates.iter().any(|r| *r > 0.0));
        let xi = jain_fairness(&rates).unwrap();
        prop_assert!(xi >= 1.0 / rates.len() as f64 - 1e-12 && xi <= 1.0 + 1e-12);
    }

    #[test]
    fn separation_reaches_minimum(pts in prop::collection::vec((0.0..1000.0f64, 0.0..1000.0f64), 1..6), sep in 10.0..150.0f64) {
        let mut pts: Vec<Point2> = pts.into_iter().map(|(x, y)| Point2::new(x, y)).collect();
        let area = Area::new(1000.0, 1000.0).unwrap();
        separate(&mut pts, sep, area).unwrap();
        for (i, a) in pts.iter().enumerate() {
            prop_assert!(area.contains(a));
            for b in &pts[i + 1..] {
                prop_assert!(a.distance(b) >= sep * (1.0 - 1e-9));
            }
        }
    }

    #[test]
    fn min_power_meets_threshold(gth in 0.1..100.0f64, n in 1e-14..1e-10f64, i in 0.0..1e-10f64, h in 1e-12..1e-6f64) {
        let p = min_power(gth, n, i, h).unwrap();
        prop_assert!(((p * h / (n + i)) - gth).abs() <= 1e-9 * gth);
    }

    #[test]
    fn hover_round_trip(h in 0.0..1000.0f64) {
        let m = HoverModel::default();
        let p = hover_power(h, &m);
        prop_assert!(p >= 55.0);
        prop_assert!((altitude_from_power(p, &m).unwrap() - h).abs() <= 1e-6);
    }
}
