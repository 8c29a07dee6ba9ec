use alloc::vec::Vec;
use core::f64::consts::TAU;

use super::curve::{Curve, Link3, PageAngle};
use crate::config::LinkConfig;
use crate::math::{angle_delta, canonical_angle};
use crate::quatgeo::binding_point;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CriticalKind {
    Min,
    Max,
}

/// A critical point of the page angle on component `component` (0 = X, 1 = Y).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CriticalPoint {
    pub component: usize,
    pub param: f64,
    /// Page of the critical point, in `[0, 2π)`.
    pub value: f64,
    pub kind: CriticalKind,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GenericityReport {
    pub critical: Vec<CriticalPoint>,
    /// Turns of X and Y around the binding.
    pub windings: [i64; 2],
}

/// Checks that `Z` is the binding and that `ℓ` restricted to `X` and `Y` is
/// Morse with one critical point per critical page.
pub fn genericity_check(link: &Link3, cfg: &LinkConfig) -> Result<GenericityReport> {
    for i in 0..cfg.sphere_samples {
        let u = TAU * i as f64 / cfg.sphere_samples as f64;
        if (link.z().point(u) - *binding_point(u)).norm() > cfg.binding_tol {
            return Err(Error::NotOpenBook);
        }
    }
    let mut critical = Vec::new();
    let mut windings = [0; 2];
    for (comp, w) in windings.iter_mut().enumerate() {
        let pa = PageAngle::new(link.component(comp))?;
        *w = pa.winding();
        critical.extend(critical_points(&pa, comp, cfg)?);
    }
    for (i, a) in critical.iter().enumerate() {
        for b in &critical[i + 1..] {
            if angle_delta(a.value, b.value).abs() <= cfg.critical_gap {
                return Err(Error::SharedCriticalValue { value: a.value });
            }
        }
    }
    Ok(GenericityReport { critical, windings })
}

fn critical_points(pa: &PageAngle, comp: usize, cfg: &LinkConfig) -> Result<Vec<CriticalPoint>> {
    let n = cfg.sphere_samples;
    let d: Vec<f64> = (0..=n).map(|i| pa.deriv(TAU * i as f64 / n as f64)).collect();
    let mut out = Vec::new();
    for i in 0..n {
        let (a, b) = (d[i], d[i + 1]);
        if a == 0.0 || (a < 0.0) != (b < 0.0) && b != 0.0 {
            let (mut lo, mut hi) = (TAU * i as f64 / n as f64, TAU * (i + 1) as f64 / n as f64);
            let neg_lo = a < 0.0;
            for _ in 0..80 {
                let mid = 0.5 * (lo + hi);
                if (pa.deriv(mid) < 0.0) == neg_lo {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            let s = 0.5 * (lo + hi);
            let h = 1e-5;
            let curv = (pa.deriv(s + h) - pa.deriv(s - h)) / (2.0 * h);
            if !(curv.abs() > cfg.critical_curvature) {
                return Err(Error::DegenerateCritical { component: comp, param: s });
            }
            out.push(CriticalPoint {
                component: comp,
                param: s,
                value: canonical_angle(pa.value(s)),
                kind: if curv > 0.0 { CriticalKind::Min } else { CriticalKind::Max },
            });
        }
    }
    Ok(out)
}

/// Convenience: whether `c` is exactly the binding parametrisation.
pub fn is_binding(c: &Curve) -> bool {
    (0..64).all(|i| {
        let u = TAU * i as f64 / 64.0;
        (c.point(u) - *binding_point(u)).norm() < 1e-12
    })
}
