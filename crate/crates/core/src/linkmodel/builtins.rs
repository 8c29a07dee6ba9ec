use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};

use num_complex::Complex64;

use super::curve::{Curve, Link3, OpenBookSpec, TrigCurve};
use super::generic::genericity_check;
use super::series::TrigSeries;
use crate::config::LinkConfig;
use crate::math::{cos, exp, round, sin};
use crate::quatgeo::Quat;
use crate::{Error, Result};

const fn q(w: f64, x: f64, y: f64, z: f64) -> Quat {
    Quat::new(w, x, y, z)
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// The binding circle `u ↦ cos u + k sin u` of the standard open book.
pub fn binding_curve() -> Curve {
    Curve::Trig(TrigCurve::new(vec![Quat::default(), q(1.0, 0.0, 0.0, 0.0)], vec![q(0.0, 0.0, 0.0, 1.0)]))
}

/// Three perpendicular ellipses `(2 cos s, sin s, 0)`, `(0, 2 cos t, sin t)`,
/// `(sin u, 0, 2 cos u)`, scaled by ½ and lifted to S³ by inverse
/// stereographic projection from −1. Pairwise unlinked, `μ = −1`.
pub fn builtin_borromean() -> Link3 {
    const SAMPLES: usize = 1024;
    const HARMONICS: usize = 64;
    let lift = |f: &dyn Fn(f64, f64) -> [f64; 3]| {
        let pts: Vec<Quat> = (0..SAMPLES)
            .map(|i| {
                let s = TAU * i as f64 / SAMPLES as f64;
                let p = f(cos(s), sin(s)).map(|v| 0.5 * v);
                let r2 = p[0] * p[0] + p[1] * p[1] + p[2] * p[2];
                let d = 1.0 + r2;
                q((1.0 - r2) / d, 2.0 * p[0] / d, 2.0 * p[1] / d, 2.0 * p[2] / d)
            })
            .collect();
        Curve::Trig(TrigSeries::fit(&pts, HARMONICS))
    };
    Link3::new_unchecked(
        lift(&|c, s| [2.0 * c, s, 0.0]),
        lift(&|c, s| [0.0, 2.0 * c, s]),
        lift(&|c, s| [s, 0.0, 2.0 * c]),
    )
}

/// Three great circles
/// `x = (⅘ sin s, cos s, ⅗ sin s, 0)`, `y = (⅘ sin t, 0, cos t, ⅗ sin t)`,
/// `z = (⅘ sin u, ⅗ sin u, 0, cos u)`. Every pair links −1.
pub fn builtin_great_circles() -> Link3 {
    let comp = |a: Quat, b: Quat| Curve::Trig(TrigCurve::new(vec![Quat::default(), a], vec![b]));
    Link3::new_unchecked(
        comp(q(0.0, 1.0, 0.0, 0.0), q(0.8, 0.0, 0.6, 0.0)),
        comp(q(0.0, 0.0, 1.0, 0.0), q(0.8, 0.0, 0.0, 0.6)),
        comp(q(0.0, 0.0, 0.0, 1.0), q(0.8, 0.6, 0.0, 0.0)),
    )
}

/// Three small round circles about `1`, `i` and `j`.
pub fn builtin_unlink() -> Link3 {
    let (cr, sr) = (cos(0.3), sin(0.3));
    let circle = |p: Quat, e1: Quat, e2: Quat| Curve::Trig(TrigCurve::new(vec![p * cr, e1 * sr], vec![e2 * sr]));
    let (one, i, j, k) = (q(1.0, 0.0, 0.0, 0.0), q(0.0, 1.0, 0.0, 0.0), q(0.0, 0.0, 1.0, 0.0), q(0.0, 0.0, 0.0, 1.0));
    Link3::new_unchecked(circle(one, i, j), circle(i, j, k), circle(j, k, one))
}

/// Link with `Z` the binding and `X`, `Y` given in open-book coordinates.
pub fn build_open_book_link(x: OpenBookSpec, y: OpenBookSpec) -> Result<Link3> {
    let cfg = LinkConfig::default();
    let link = Link3::with_config(Curve::OpenBook(x), Curve::OpenBook(y), binding_curve(), &cfg)?;
    genericity_check(&link, &cfg)?;
    Ok(link)
}

/// A clasp between `X` and `Y` away from the binding: one null-homotopic
/// isogonal circle with meridional degree −1.
pub fn builtin_clasp() -> Link3 {
    let x = OpenBookSpec::new(
        0,
        TrigSeries::new(vec![0.25], vec![0.4]),
        TrigSeries::new(vec![c(0.0, 1.0), c(0.0, 0.3)], vec![]),
    );
    let y = OpenBookSpec::new(
        0,
        TrigSeries::new(vec![-0.25], vec![0.4]),
        TrigSeries::new(vec![c(0.0, 1.0), c(0.3, 0.0)], vec![]),
    );
    build_open_book_link(x, y).expect("clasp parameters are generic")
}

/// Open-book representative of a link with `p = q = r = 0` and `|μ| = 1`:
/// `X` is a small loop on pages near 0 and `Y` sweeps once around the
/// binding above `X`, comes down through it, sweeps back below and returns
/// up through it.
pub fn builtin_generic_borromean() -> Link3 {
    let x = OpenBookSpec::new(
        0,
        TrigSeries::new(vec![0.0], vec![0.4]),
        TrigSeries::new(vec![c(0.0, 1.0), c(0.0, 0.3)], vec![]),
    );
    let y = OpenBookSpec::new(
        0,
        TrigSeries::new(vec![PI, -(PI + 0.1)], vec![]),
        TrigSeries::new(vec![c(0.0, 1.0)], vec![c(0.5, 0.0)]),
    );
    build_open_book_link(x, y).expect("generic Borromean parameters are generic")
}

/// Smooth monotone step from 0 (x ≤ 0) to 1 (x ≥ 1), flat to all orders.
fn smooth_step(x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x >= 1.0 {
        return 1.0;
    }
    let f = |v: f64| exp(-1.0 / v);
    let a = f(x);
    a / (a + f(1.0 - x))
}

const LPQR_HARMONICS: usize = 256;
const LPQR_SAMPLES: usize = 8192;

/// Generic representative of `L_pqr`: `X` winds `q` times and `Y` winds `p`
/// times monotonically around the binding `Z`, and one strand of `Y` makes
/// `r` small loops around one strand of `X`.
///
/// Both `X` and `Y` are cables around fixed cores in the pages; the loops
/// happen inside a single window of `Y`'s parameter, reached through the
/// empty annulus around `X`'s cable.
pub fn builtin_lpqr(p: i64, q: i64, r: i64) -> Result<Link3> {
    if p == 0 || q == 0 {
        return Err(Error::NotGeneric("lpqr needs nonzero windings p and q".into()));
    }
    let cx = c(-0.7, 1.3);
    let cy = c(0.8, 1.3);
    let (a, b) = (0.5, 0.3);
    let x = OpenBookSpec::new(
        q,
        TrigSeries::constant(0.0),
        TrigSeries::new(vec![cx, c(a, 0.0)], vec![c(0.0, a)]),
    );
    let home = TrigSeries::new(vec![cy, c(b, 0.0)], vec![c(0.0, b)]);
    let w_y = if r == 0 {
        home
    } else {
        let rho = if q.abs() >= 2 { (0.45 * a * sin(PI / q.abs() as f64)).min(0.2) } else { 0.2 };
        let r_out = a + rho + 0.15;
        let samples: Vec<Complex64> = (0..LPQR_SAMPLES)
            .map(|i| {
                let t = TAU * i as f64 / LPQR_SAMPLES as f64;
                lpqr_excursion(t, p, q, r, cx, a, rho, r_out, &home)
            })
            .collect();
        TrigSeries::fit(&samples, LPQR_HARMONICS)
    };
    let y = OpenBookSpec::new(p, TrigSeries::constant(0.0), w_y);
    build_open_book_link(x, y)
}

#[allow(clippy::too_many_arguments)]
fn lpqr_excursion(
    t: f64,
    p: i64,
    q: i64,
    r: i64,
    cx: Complex64,
    a: f64,
    rho: f64,
    r_out: f64,
    home: &TrigSeries<Complex64>,
) -> Complex64 {
    const HALF: f64 = 1.4;
    let h = home.eval(t);
    let tau = (t - (PI - HALF)) / (2.0 * HALF);
    if !(0.0..=1.0).contains(&tau) {
        return h;
    }
    // Angle of the targeted X strand on the page θ = p t, lifted near 0.
    let alpha0 = (p as f64 * PI) / q as f64;
    let shift = TAU * round(alpha0 / TAU);
    let alpha = (p as f64 * t) / q as f64 - shift;
    let polar = |rad: f64, ang: f64| cx + Complex64::from_polar(rad, ang);
    let gate = cx + c(r_out, 0.0);
    let ph = |lo: f64, hi: f64| smooth_step((tau - lo) / (hi - lo));
    if tau < 0.12 {
        h + (gate - h) * ph(0.0, 0.12)
    } else if tau < 0.27 {
        polar(r_out, alpha * ph(0.12, 0.27))
    } else if tau < 0.35 {
        polar(r_out + (a + rho - r_out) * ph(0.27, 0.35), alpha)
    } else if tau < 0.65 {
        // Loops are measured against the direction of the X strand.
        let turn = TAU * (r * q.signum()) as f64 * ph(0.35, 0.65);
        polar(a, alpha) + Complex64::from_polar(rho, alpha + turn)
    } else if tau < 0.73 {
        polar(a + rho + (r_out - a - rho) * ph(0.65, 0.73), alpha)
    } else if tau < 0.88 {
        polar(r_out, alpha * (1.0 - ph(0.73, 0.88)))
    } else {
        gate + (h - gate) * ph(0.88, 1.0)
    }
}
