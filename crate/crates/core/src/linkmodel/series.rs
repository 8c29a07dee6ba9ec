use alloc::vec::Vec;
use core::f64::consts::TAU;
use core::ops::{Add, Mul};

use num_complex::Complex64;

use crate::math::{cos, sin};
use crate::quatgeo::Quat;

/// Coefficient types a trigonometric series can carry.
pub trait Coef: Copy + Default + Add<Output = Self> + Mul<f64, Output = Self> {}
impl Coef for f64 {}
impl Coef for Complex64 {}
impl Coef for Quat {}

/// `Σₖ Aₖ cos ks + Bₖ sin ks` with `cos[k]` for `k ≥ 0` and `sin[j]` for
/// harmonic `j + 1`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct TrigSeries<T> {
    pub cos: Vec<T>,
    pub sin: Vec<T>,
}

impl<T: Coef> TrigSeries<T> {
    pub fn new(cos: Vec<T>, sin: Vec<T>) -> Self {
        TrigSeries { cos, sin }
    }

    pub fn constant(c: T) -> Self {
        TrigSeries { cos: alloc::vec![c], sin: Vec::new() }
    }

    /// Highest harmonic present.
    pub fn degree(&self) -> usize {
        self.cos.len().saturating_sub(1).max(self.sin.len())
    }

    /// Value and derivative at `s`.
    pub fn eval2(&self, s: f64) -> (T, T) {
        let (c1, s1) = (cos(s), sin(s));
        let (mut ck, mut sk) = (1.0, 0.0);
        let mut v = T::default();
        let mut d = T::default();
        let kmax = self.degree();
        for k in 0..=kmax {
            let kf = k as f64;
            if let Some(&a) = self.cos.get(k) {
                v = v + a * ck;
                d = d + a * (-kf * sk);
            }
            if k >= 1 {
                if let Some(&b) = self.sin.get(k - 1) {
                    v = v + b * sk;
                    d = d + b * (kf * ck);
                }
            }
            let nc = ck * c1 - sk * s1;
            sk = sk * c1 + ck * s1;
            ck = nc;
        }
        (v, d)
    }

    pub fn eval(&self, s: f64) -> T {
        self.eval2(s).0
    }

    pub fn deriv(&self, s: f64) -> T {
        self.eval2(s).1
    }

    /// Least-squares projection of `samples` (taken at `s = 2πi/len`) onto
    /// harmonics `0..=kmax`.
    pub fn fit(samples: &[T], kmax: usize) -> Self {
        let m = samples.len();
        assert!(m > 2 * kmax, "need more samples than twice the harmonic count");
        let mut cos_c = Vec::with_capacity(kmax + 1);
        let mut sin_c = Vec::with_capacity(kmax);
        for k in 0..=kmax {
            let (mut a, mut b) = (T::default(), T::default());
            for (i, &f) in samples.iter().enumerate() {
                let ang = TAU * ((k * i) % m) as f64 / m as f64;
                a = a + f * cos(ang);
                b = b + f * sin(ang);
            }
            let w = if k == 0 { 1.0 } else { 2.0 } / m as f64;
            cos_c.push(a * w);
            if k > 0 {
                sin_c.push(b * w);
            }
        }
        TrigSeries { cos: cos_c, sin: sin_c }
    }

    pub fn map<U: Coef>(&self, f: impl Fn(T) -> U) -> TrigSeries<U> {
        TrigSeries {
            cos: self.cos.iter().map(|&c| f(c)).collect(),
            sin: self.sin.iter().map(|&c| f(c)).collect(),
        }
    }
}
