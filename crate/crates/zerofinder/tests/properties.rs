//! Property-based invariants of the iteration, the sweep and the oracle plumbing.

use std::f64::consts::{FRAC_PI_2, PI};

use proptest::prelude::*;

use zerofinder::oracle::{audit_zeros, relative_error, ReferenceZeroSet};
use zerofinder::riccati::IterationOptions;
use zerofinder::{
    newton_step, solve_zero, third_order_step, Family, FamilyParams, Problem, Termination,
};

/// `h = tan(z - c)` with `r = 0`: a single zero at `c` between poles `c -+ pi/2`.
fn shifted_tangent(c: f64) -> Problem {
    Problem::new(move |z: f64| Ok((z - c).tan()), |_| 0.0, (f64::NEG_INFINITY, f64::INFINITY))
}

proptest! {
    #[test]
    fn steps_fix_zeros(z in -1e3f64..1e3, r in -0.99f64..0.99) {
        prop_assert_eq!(third_order_step(z, 0.0, r).unwrap(), z);
        prop_assert_eq!(newton_step(z, 0.0, r).unwrap(), z);
    }

    #[test]
    fn tom_step_moves_toward_zero_of_tangent(c in -50.0f64..50.0, off in -1.5f64..1.5) {
        prop_assume!(off.abs() > 1e-6);
        let z = c + off;
        let next = third_order_step(z, off.tan(), 0.0).unwrap();
        // One step never crosses the zero and always gets closer.
        prop_assert!((next - c).abs() < off.abs());
        prop_assert!((next - c) * off >= 0.0);
    }

    #[test]
    fn tom_converges_monotonically_between_poles(c in -20.0f64..20.0, frac in -0.999f64..0.999) {
        let p = shifted_tangent(c);
        let z0 = c + frac * FRAC_PI_2;
        let r = solve_zero(&p, z0, &IterationOptions::absolute(1e-13)).unwrap();
        prop_assert_eq!(r.termination, Termination::Converged);
        prop_assert!((r.z_star - c).abs() < 1e-12);
        prop_assert!(r.is_monotone_toward(c, 1e-12));
    }

    #[test]
    fn bessel_sweep_is_sorted_distinct_and_vanishing(mu in 0.6f64..30.0, width in 5.0f64..60.0) {
        let f = Family::new(FamilyParams::Bessel { mu }).unwrap();
        let lo = f.case().bound;
        let report = f.sweep(Some((lo, lo + width)), &f.default_options(), true).unwrap();
        let xs = report.x_values();
        prop_assert!(xs.windows(2).all(|w| w[1] - w[0] > 1.0), "{:?}", xs);
        prop_assert!(xs.iter().all(|&x| x >= lo && x <= lo + width));
        for z in &report.zeros {
            prop_assert!(z.converged());
            prop_assert!(f.problem().h(z.z_star).unwrap().abs() < 1e-8);
        }
    }

    #[test]
    fn hermite_zeros_are_symmetric(n in 1usize..60) {
        let f = Family::new(FamilyParams::Hermite { n }).unwrap();
        let xs = f.sweep(None, &f.default_options(), true).unwrap().x_values();
        prop_assert_eq!(xs.len(), n);
        for (a, b) in xs.iter().zip(xs.iter().rev()) {
            prop_assert_eq!(*a, -*b);
        }
    }

    #[test]
    fn acceleration_does_not_change_zeros(n in 2usize..80) {
        let f = Family::new(FamilyParams::Legendre { n }).unwrap();
        let opts = f.default_options();
        let a = f.sweep(None, &opts, true).unwrap().x_values();
        let b = f.sweep(None, &opts, false).unwrap().x_values();
        prop_assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            prop_assert!((x - y).abs() <= 4e-16 * (1.0 + x.abs()));
        }
    }

    #[test]
    fn relative_error_is_scale_free(x in 1e-3f64..1e3, eps in -1e-6f64..1e-6, scale in 1e-5f64..1e5) {
        let a = relative_error(x * (1.0 + eps), x).unwrap();
        let b = relative_error(scale * x * (1.0 + eps), scale * x).unwrap();
        prop_assert!((a - b).abs() <= 1e-12);
    }

    #[test]
    fn audit_counts_add_up(reference in prop::collection::vec(0.0f64..100.0, 0..30), drop in 0usize..5) {
        let mut reference = reference;
        reference.sort_by(f64::total_cmp);
        reference.dedup_by(|a, b| (*a - *b).abs() < 1e-3);
        let kept: Vec<f64> = reference.iter().skip(drop.min(reference.len())).cloned().collect();
        let audit = audit_zeros(&kept, &reference, 1e-8);
        prop_assert_eq!(audit.matched, kept.len());
        prop_assert_eq!(audit.missed, reference.len() - kept.len());
        prop_assert_eq!(audit.spurious, 0);
    }

    #[test]
    fn reference_tables_round_trip(zs in prop::collection::vec(-1e3f64..1e3, 1..20)) {
        let mut zs = zs;
        zs.sort_by(f64::total_cmp);
        let set = ReferenceZeroSet::new("bessel", "mu=2.5", zs.clone(), "oracle").unwrap();
        let back: ReferenceZeroSet = set.to_text().parse().unwrap();
        prop_assert_eq!(back.zeros, zs);
    }

    #[test]
    fn params_round_trip_through_text(mu in -0.99f64..50.0, alpha in 0.0f64..3.1) {
        let p = FamilyParams::Cylinder { mu, alpha };
        let text = format!("cylinder:{}", p.label());
        prop_assert_eq!(text.parse::<FamilyParams>().unwrap(), p);
    }
}

#[test]
fn tangent_zero_is_pi() {
    let p = shifted_tangent(PI);
    let r = solve_zero(&p, 3.0, &IterationOptions::absolute(1e-14)).unwrap();
    assert!((r.z_star - PI).abs() < 1e-15);
}
