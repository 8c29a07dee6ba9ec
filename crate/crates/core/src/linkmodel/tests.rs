use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::TAU;

use num_complex::Complex64;

use super::*;
use crate::config::LinkConfig;
use crate::quatgeo::{Quat, UnitQuat};
use crate::Error;

fn lk(a: &Curve, b: &Curve) -> i64 {
    gauss_linking(a, b, auto_pole(&[a, b]), 512).unwrap().value
}

fn ob(winding: i64, th_sin: f64, w: Complex64, w_amp: f64) -> OpenBookSpec {
    OpenBookSpec::new(
        winding,
        TrigSeries::new(vec![0.0], vec![th_sin]),
        TrigSeries::new(vec![w, Complex64::new(0.0, w_amp)], vec![Complex64::new(w_amp, 0.0)]),
    )
}

#[test]
fn great_circles_formula() {
    let l = builtin_great_circles();
    assert_eq!(l.x().point(0.0), Quat::new(0.0, 1.0, 0.0, 0.0));
    assert_eq!(l.y().point(0.0), Quat::new(0.0, 0.0, 1.0, 0.0));
    assert_eq!(l.z().point(0.0), Quat::new(0.0, 0.0, 0.0, 1.0));
    l.validate(&LinkConfig::default()).unwrap();
    for c in l.components() {
        for i in 0..100 {
            assert!((c.point(0.0628 * i as f64).norm() - 1.0).abs() < 1e-15);
        }
    }
}

#[test]
fn unlink_is_well_separated() {
    let l = builtin_unlink();
    l.validate(&LinkConfig::default()).unwrap();
    assert!(l.min_separation(256).0 > 0.5);
}

#[test]
fn hopf_calibration() {
    // The binding and the great circle through i and j link once positively.
    let circle = Curve::Trig(TrigCurve::new(
        vec![Quat::default(), Quat::new(0.0, 1.0, 0.0, 0.0)],
        vec![Quat::new(0.0, 0.0, 1.0, 0.0)],
    ));
    assert_eq!(lk(&binding_curve(), &circle), 1);
    assert_eq!(lk(&circle, &binding_curve()), 1);
}

#[test]
fn borromean_components_are_hopf_linked_great_circles() {
    // Each component is linear in (cos, sin) with no constant term, hence a
    // great circle, and disjoint great circles always link once.
    let l = builtin_great_circles();
    for (a, b) in [(0, 1), (1, 2), (0, 2)] {
        assert_eq!(lk(l.component(a), l.component(b)), -1);
    }
}

#[test]
fn borromean_rings() {
    let l = builtin_borromean();
    l.validate(&LinkConfig::default()).unwrap();
    for c in l.components() {
        for i in 0..1000 {
            assert!((c.point(0.00628 * i as f64).norm() - 1.0).abs() < 1e-12);
        }
    }
    // (1, 0, 0) lifts to i.
    assert!((l.x().point(0.0) - Quat::new(0.0, 1.0, 0.0, 0.0)).norm() < 1e-12);
    assert!(l.min_separation(256).0 > 0.5);
    for (a, b) in [(0, 1), (1, 2), (0, 2)] {
        assert_eq!(lk(l.component(a), l.component(b)), 0);
    }
}

#[test]
fn split_curves_unlinked() {
    let l = builtin_unlink();
    assert_eq!(lk(l.x(), l.y()), 0);
    assert_eq!(lk(l.z(), l.y()), 0);
}

#[test]
fn winding_is_linking_with_binding() {
    for w in [-2, 1, 3] {
        let x = Curve::OpenBook(ob(w, 0.3, Complex64::new(0.2, 1.1), 0.2));
        assert_eq!(lk(&x, &binding_curve()), w);
        assert_eq!(PageAngle::new(&x).unwrap().winding(), w);
    }
}

#[test]
fn gauss_symmetric_and_pole_independent() {
    for (p, q, r) in [(1, 1, 0), (2, 1, 1), (1, 3, -2)] {
        let l = builtin_lpqr(p, q, r).unwrap();
        for (a, b) in [(0, 1), (1, 2), (0, 2)] {
            let (ca, cb) = (l.component(a), l.component(b));
            let v1 = gauss_linking(ca, cb, auto_pole(&[ca, cb]), 512).unwrap().value;
            let v2 = gauss_linking(cb, ca, auto_pole(&[ca, cb]), 512).unwrap().value;
            let other = UnitQuat::normalize(Quat::new(-0.6, 0.2, -0.5, 0.4)).unwrap();
            let v3 = gauss_linking(ca, cb, other, 1024).unwrap().value;
            assert_eq!(v1, v2);
            assert_eq!(v1, v3);
        }
    }
}

#[test]
fn lpqr_linking_numbers() {
    for (p, q, r) in [(5, 3, -2), (1, 1, 0), (2, 2, 2), (1, 2, 1)] {
        let l = builtin_lpqr(p, q, r).unwrap();
        assert_eq!(lk(l.y(), l.z()), p, "{p} {q} {r}");
        assert_eq!(lk(l.x(), l.z()), q, "{p} {q} {r}");
        assert_eq!(lk(l.x(), l.y()), r, "{p} {q} {r}");
        let rep = genericity_check(&l, &LinkConfig::default()).unwrap();
        assert!(rep.critical.is_empty());
        assert_eq!(rep.windings, [q, p]);
    }
    assert!(builtin_lpqr(0, 1, 1).is_err());
}

#[test]
fn clasp_and_generic_borromean_linking() {
    let l = builtin_clasp();
    assert_eq!([lk(l.y(), l.z()), lk(l.x(), l.z()), lk(l.x(), l.y()).abs()], [0, 0, 1]);
    let l = builtin_generic_borromean();
    assert_eq!([lk(l.y(), l.z()), lk(l.x(), l.z()), lk(l.x(), l.y())], [0, 0, 0]);
}

#[test]
fn critical_point_census() {
    let cfg = LinkConfig::default();
    let hump = ob(1, 1.5, Complex64::new(0.0, 1.0), 0.2);
    let flat = ob(2, 0.0, Complex64::new(1.5, 1.5), 0.2);
    let rep = genericity_check(&build_open_book_link(hump, flat).unwrap(), &cfg).unwrap();
    assert_eq!(rep.critical.len(), 2);
    assert!(rep.critical.iter().all(|c| c.component == 0));
    let kinds: Vec<_> = rep.critical.iter().map(|c| c.kind).collect();
    assert!(kinds.contains(&CriticalKind::Min) && kinds.contains(&CriticalKind::Max));
    let rep = genericity_check(&builtin_generic_borromean(), &cfg).unwrap();
    assert_eq!(rep.critical.len(), 4);
    assert_eq!(genericity_check(&builtin_borromean(), &cfg), Err(Error::NotOpenBook));
}

#[test]
fn shared_critical_value_rejected() {
    let a = ob(0, 0.3, Complex64::new(-1.0, 1.0), 0.2);
    let b = ob(0, 0.3, Complex64::new(1.0, 1.0), 0.2);
    let r = build_open_book_link(a, b);
    assert!(matches!(r, Err(Error::SharedCriticalValue { .. })), "{r:?}");
}

#[test]
fn validation_reports_violations() {
    let b = builtin_borromean();
    let off = Curve::Trig(TrigCurve::new(vec![Quat::default(), Quat::new(0.0, 1.1, 0.0, 0.0)], vec![Quat::new(0.0, 0.0, 1.0, 0.0)]));
    let r = Link3::new(off, b.y().clone(), b.z().clone());
    assert!(matches!(r, Err(Error::OffSphere { component: 0, .. })));
    let r = Link3::new(b.x().clone(), b.x().clone(), b.z().clone());
    assert!(matches!(r, Err(Error::ComponentsTooClose { pair: (0, 1), .. })));
    let low = OpenBookSpec::new(0, TrigSeries::constant(0.0), TrigSeries::new(vec![Complex64::new(0.0, 0.1), Complex64::new(0.0, 0.5)], vec![]));
    assert!(matches!(build_open_book_link(low.clone(), low), Err(Error::BadCurve(_))));
}

#[test]
fn sampled_import() {
    let b = builtin_great_circles();
    let samples: Vec<Quat> = (0..200).map(|i| b.x().point(TAU * i as f64 / 200.0)).collect();
    let c = Curve::from_samples(&samples, 8).unwrap();
    for s in [0.0, 1.0, 4.0] {
        assert!((c.point(s) - b.x().point(s)).norm() < 1e-13);
    }
    assert!(Curve::from_samples(&samples, 65).is_err());
    let bad: Vec<Quat> = samples.iter().map(|q| *q * 1.5).collect();
    assert!(Curve::from_samples(&bad, 8).is_err());
}

#[test]
fn isometries_preserve_validity() {
    let l = builtin_borromean();
    let g = UnitQuat::normalize(Quat::new(0.3, -0.2, 0.9, 0.1)).unwrap();
    let h = UnitQuat::normalize(Quat::new(-0.5, 0.5, 0.1, 0.7)).unwrap();
    let m = l.transformed(g, h);
    m.validate(&LinkConfig::default()).unwrap();
    let s = 1.234;
    assert!((m.y().point(s) - *g * l.y().point(s) * *h).norm() < 1e-14);
    let ob = builtin_clasp().transformed(g, h);
    assert!((ob.x().point(s) - *g * builtin_clasp().x().point(s) * *h).norm() < 1e-14);
}

