use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};

use super::curve::Curve;
use crate::math::{pairwise_sum, snap};
use crate::quatgeo::{qmul, stereo_m1_deriv, ImVec3, Quat, UnitQuat};
use crate::{Error, Result};

/// Rounded Gauss integral together with its unrounded value.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GaussLinking {
    pub value: i64,
    pub raw: f64,
}

/// Projects `a` to ℝ³ from `pole`: the stereographic image of `−a p̄`.
fn project(q: Quat, dq: Quat, pole: Quat) -> (ImVec3, ImVec3) {
    let pc = pole.conj();
    let m = -qmul(q, pc);
    let dm = -qmul(dq, pc);
    let d = 1.0 + m.w;
    (m.im().scale(1.0 / d), stereo_m1_deriv(m, dm))
}

fn samples(c: &Curve, n: usize, pole: Quat, clearance: f64) -> Result<Vec<(ImVec3, ImVec3)>> {
    (0..n)
        .map(|i| {
            let (q, dq) = c.eval(TAU * i as f64 / n as f64);
            if (q - pole).norm() < clearance {
                return Err(Error::PoleOnCurve);
            }
            Ok(project(q, dq, pole))
        })
        .collect()
}

/// Gauss linking integral of two disjoint curves, evaluated in the
/// stereographic image from `pole` with the `n × n` trapezoid rule.
pub fn gauss_linking(a: &Curve, b: &Curve, pole: UnitQuat, n: usize) -> Result<GaussLinking> {
    let raw = gauss_integral(a, b, pole, n)?;
    let (value, res) = snap(raw);
    if res > 0.05 {
        return Err(Error::NonIntegerResult { value: raw });
    }
    Ok(GaussLinking { value, raw })
}

/// The unrounded Gauss integral.
pub fn gauss_integral(a: &Curve, b: &Curve, pole: UnitQuat, n: usize) -> Result<f64> {
    let pa = samples(a, n, *pole, 1e-3)?;
    let pb = samples(b, n, *pole, 1e-3)?;
    let h = TAU / n as f64;
    let rows: Vec<f64> = pa
        .iter()
        .map(|&(x, dx)| {
            let terms: Vec<f64> = pb
                .iter()
                .map(|&(y, dy)| {
                    let d = x - y;
                    let r = d.norm();
                    dx.cross(dy).dot(d) / (r * r * r)
                })
                .collect();
            pairwise_sum(&terms)
        })
        .collect();
    Ok(pairwise_sum(&rows) * h * h / (4.0 * PI))
}

/// A projection pole far from all the given curves.
pub fn auto_pole(curves: &[&Curve]) -> UnitQuat {
    let mut cands: Vec<Quat> = Vec::new();
    for k in 0..4 {
        let mut e = [0.0; 4];
        e[k] = 1.0;
        cands.push(Quat::from_array(e));
        e[k] = -1.0;
        cands.push(Quat::from_array(e));
    }
    for m in 0..16u32 {
        let sgn = |b: u32| if m >> b & 1 == 1 { -0.5 } else { 0.5 };
        cands.push(Quat::new(sgn(0), sgn(1), sgn(2), sgn(3)));
    }
    let pts: Vec<Quat> = curves
        .iter()
        .flat_map(|c| (0..256).map(move |i| c.point(TAU * i as f64 / 256.0)))
        .collect();
    let mut best = (f64::NEG_INFINITY, cands[0]);
    for c in cands {
        let d = pts.iter().map(|p| (*p - c).norm()).fold(f64::INFINITY, f64::min);
        if d > best.0 {
            best = (d, c);
        }
    }
    UnitQuat::new(best.1).expect("candidate poles are unit")
}
