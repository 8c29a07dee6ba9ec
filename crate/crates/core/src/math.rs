//! Scalar helpers over `libm` so the crate stays `no_std`.

use core::f64::consts::{PI, TAU};

#[inline]
pub fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}
#[inline]
pub fn sin(x: f64) -> f64 {
    libm::sin(x)
}
#[inline]
pub fn cos(x: f64) -> f64 {
    libm::cos(x)
}
#[inline]
pub fn atan2(y: f64, x: f64) -> f64 {
    libm::atan2(y, x)
}
#[inline]
pub fn acos(x: f64) -> f64 {
    libm::acos(x)
}
#[inline]
pub fn floor(x: f64) -> f64 {
    libm::floor(x)
}
#[inline]
pub fn round(x: f64) -> f64 {
    libm::round(x)
}
#[inline]
pub fn exp(x: f64) -> f64 {
    libm::exp(x)
}
#[inline]
pub fn hypot(x: f64, y: f64) -> f64 {
    libm::hypot(x, y)
}

/// Representative of `a` in `[0, 2π)`.
pub fn canonical_angle(a: f64) -> f64 {
    let r = a - TAU * floor(a / TAU);
    if !(0.0..TAU).contains(&r) {
        0.0
    } else {
        r
    }
}

/// `b − a` reduced to `(−π, π]`.
pub fn angle_delta(a: f64, b: f64) -> f64 {
    let d = canonical_angle(b - a);
    if d > PI {
        d - TAU
    } else {
        d
    }
}

/// Nearest integer together with the distance to it.
pub fn snap(x: f64) -> (i64, f64) {
    let r = round(x);
    (r as i64, (x - r).abs())
}

/// Accumulates a continuous lift of a sequence of angles.
#[derive(Clone, Copy, Debug)]
pub struct Unwrapper {
    last: f64,
    total: f64,
}

impl Unwrapper {
    pub fn new(first: f64) -> Self {
        Unwrapper { last: first, total: 0.0 }
    }

    /// Feed the next angle; returns the current lifted value.
    pub fn push(&mut self, a: f64) -> f64 {
        self.total += angle_delta(self.last, a);
        self.last = a;
        self.total
    }

    /// Net change since construction.
    pub fn total(&self) -> f64 {
        self.total
    }
}

/// Pairwise (cascade) summation; order depends only on the slice.
pub fn pairwise_sum(v: &[f64]) -> f64 {
    if v.len() <= 16 {
        let mut s = 0.0;
        for x in v {
            s += x;
        }
        return s;
    }
    let m = v.len() / 2;
    pairwise_sum(&v[..m]) + pairwise_sum(&v[m..])
}

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a as i64
}

pub fn lcm(a: i64, b: i64) -> i64 {
    if a == 0 || b == 0 {
        0
    } else {
        (a / gcd(a, b) * b).abs()
    }
}
