use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::math::cos;

use super::form::{FourierForm, VOL};

/// Truncation of the fundamental solution `φ = (1/8π³) Σ_{n≠0} e^{in·x}/|n|²`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PhiKernel {
    pub m: usize,
}

impl PhiKernel {
    pub fn new(m: usize) -> Self {
        assert!(m >= 1, "truncation must be at least 1");
        PhiKernel { m }
    }

    pub fn coefficient(&self, n: [i64; 3]) -> f64 {
        let k = n[0] * n[0] + n[1] * n[1] + n[2] * n[2];
        if k == 0 {
            0.0
        } else {
            1.0 / (VOL * k as f64)
        }
    }

    pub fn as_form(&self) -> FourierForm {
        FourierForm::from_fn(0, self.m, |n| [Complex64::new(self.coefficient(n), 0.0), Complex64::default(), Complex64::default()])
    }

    /// `φ ∗ f`, computed as `8π³ φₙ fₙ` modewise.
    pub fn convolve(&self, f: &FourierForm) -> FourierForm {
        let mut out = FourierForm::zeros(f.degree(), f.m());
        for (idx, c) in f.coefficients().iter().enumerate() {
            let n = f.mode(idx);
            let w = Complex64::new(VOL * self.coefficient(n), 0.0);
            out.set(n, [c[0] * w, c[1] * w, c[2] * w]);
        }
        out
    }

    pub fn eval(&self, x: [f64; 3]) -> f64 {
        phi_eval(x, self.m)
    }
}

/// `φ(x)` summed over `0 < |n|∞ ≤ m`.
pub fn phi_eval(x: [f64; 3], m: usize) -> f64 {
    let mi = m as i64;
    let mut acc = 0.0;
    for a in -mi..=mi {
        for b in -mi..=mi {
            for c in -mi..=mi {
                let k = a * a + b * b + c * c;
                if k != 0 {
                    acc += cos(a as f64 * x[0] + b as f64 * x[1] + c as f64 * x[2]) / k as f64;
                }
            }
        }
    }
    acc / VOL
}

/// The 2-torus analogue `(1/4π²) Σ_{0<|n|∞≤m} cos(n·x)/|n|²`.
pub fn phi2d_eval(x: f64, y: f64, m: usize) -> f64 {
    let mi = m as i64;
    let mut acc = 0.0;
    for a in -mi..=mi {
        for b in -mi..=mi {
            let k = a * a + b * b;
            if k != 0 {
                acc += cos(a as f64 * x + b as f64 * y) / k as f64;
            }
        }
    }
    acc / (4.0 * PI * PI)
}

/// Samples of [`phi2d_eval`] on a `points × points` grid spanning
/// `[−3π, 3π]²`, as `(x, y, φ)` rows in x-major order.
pub fn phi_plot2d(m: usize, points: usize) -> Vec<(f64, f64, f64)> {
    assert!(points >= 2);
    let step = 6.0 * PI / (points - 1) as f64;
    let at = |i: usize| if 2 * i + 1 == points { 0.0 } else { -3.0 * PI + step * i as f64 };
    let mut out = Vec::with_capacity(points * points);
    for i in 0..points {
        for j in 0..points {
            let (x, y) = (at(i), at(j));
            out.push((x, y, phi2d_eval(x, y, m)));
        }
    }
    out
}
