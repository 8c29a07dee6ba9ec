use alloc::boxed::Box;
use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::TAU;

use num_complex::Complex64;

use super::series::TrigSeries;
use crate::config::{LinkConfig, BINDING_TOL};
use crate::math::{atan2, floor, hypot, round};
use crate::quatgeo::{book_point_deriv, book_point_raw, qmul, Quat, UnitQuat};
use crate::{Error, Result};

/// A closed curve in S³ whose coordinates are trigonometric polynomials.
pub type TrigCurve = TrigSeries<Quat>;

/// A curve given in open-book coordinates: page angle
/// `θ(s) = winding·s + θ̃(s)` and meridional position `w(s) ∈ ℍ`.
#[derive(Clone, Debug, PartialEq)]
pub struct OpenBookSpec {
    pub winding: i64,
    pub theta: TrigSeries<f64>,
    pub w: TrigSeries<Complex64>,
}

impl OpenBookSpec {
    pub fn new(winding: i64, theta: TrigSeries<f64>, w: TrigSeries<Complex64>) -> Self {
        OpenBookSpec { winding, theta, w }
    }

    /// Lifted page angle and its derivative.
    pub fn theta2(&self, s: f64) -> (f64, f64) {
        let (v, d) = self.theta.eval2(s);
        (self.winding as f64 * s + v, self.winding as f64 + d)
    }

    pub fn w2(&self, s: f64) -> (Complex64, Complex64) {
        self.w.eval2(s)
    }

    /// Checks that `w` stays in the upper half plane.
    pub fn validate(&self, samples: usize) -> Result<()> {
        for i in 0..samples {
            let s = TAU * i as f64 / samples as f64;
            let w = self.w.eval(s);
            if !(w.im > BINDING_TOL) || !w.re.is_finite() {
                return Err(Error::BadCurve(format!(
                    "open-book curve leaves the upper half plane at s = {s} (w = {w})"
                )));
            }
        }
        Ok(())
    }
}

/// A component of a link.
#[derive(Clone, Debug, PartialEq)]
pub enum Curve {
    Trig(TrigCurve),
    OpenBook(OpenBookSpec),
    /// `q ↦ left · q · right` applied to another curve.
    Moved { base: Box<Curve>, left: Quat, right: Quat },
}

impl Curve {
    /// Point and velocity at parameter `s`.
    pub fn eval(&self, s: f64) -> (Quat, Quat) {
        match self {
            Curve::Trig(c) => c.eval2(s),
            Curve::OpenBook(ob) => {
                let (th, dth) = ob.theta2(s);
                let (w, dw) = ob.w2(s);
                (book_point_raw(th, w), book_point_deriv(th, w, dth, dw))
            }
            Curve::Moved { base, left, right } => {
                let (p, v) = base.eval(s);
                (qmul(qmul(*left, p), *right), qmul(qmul(*left, v), *right))
            }
        }
    }

    pub fn point(&self, s: f64) -> Quat {
        self.eval(s).0
    }

    /// Image under the isometry `q ↦ l q r`.
    pub fn transformed(&self, l: UnitQuat, r: UnitQuat) -> Curve {
        match self {
            Curve::Trig(c) => Curve::Trig(c.map(|a| qmul(qmul(*l, a), *r))),
            Curve::Moved { base, left, right } => Curve::Moved {
                base: base.clone(),
                left: qmul(*l, *left),
                right: qmul(*right, *r),
            },
            other => Curve::Moved { base: Box::new(other.clone()), left: *l, right: *r },
        }
    }

    /// Trigonometric curve fitted to uniform samples, at most 64 harmonics.
    pub fn from_samples(samples: &[Quat], kmax: usize) -> Result<Curve> {
        if kmax > 64 {
            return Err(Error::BadCurve(format!("{kmax} harmonics requested, at most 64 allowed")));
        }
        if samples.len() <= 2 * kmax {
            return Err(Error::BadCurve(format!(
                "{} samples cannot determine {kmax} harmonics",
                samples.len()
            )));
        }
        let c = Curve::Trig(TrigSeries::fit(samples, kmax));
        validate_curve(&c, 0, &LinkConfig::default())?;
        Ok(c)
    }
}

/// On-sphere and immersion checks for a single component.
pub fn validate_curve(c: &Curve, index: usize, cfg: &LinkConfig) -> Result<()> {
    if let Curve::OpenBook(ob) = c {
        ob.validate(cfg.sphere_samples)?;
    }
    for i in 0..cfg.sphere_samples {
        let s = TAU * i as f64 / cfg.sphere_samples as f64;
        let (p, v) = c.eval(s);
        if !p.is_finite() || !v.is_finite() {
            return Err(Error::BadCurve(format!("component {index} is not finite at s = {s}")));
        }
        let dev = (p.norm() - 1.0).abs();
        if dev > cfg.sphere_tol {
            return Err(Error::OffSphere { component: index, param: s, deviation: dev });
        }
        if v.norm() < cfg.immersion_tol {
            return Err(Error::NotImmersed { component: index, param: s });
        }
    }
    Ok(())
}

/// An ordered, oriented three-component link `(X, Y, Z)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Link3 {
    comps: [Curve; 3],
}

impl Link3 {
    pub fn new(x: Curve, y: Curve, z: Curve) -> Result<Self> {
        Self::with_config(x, y, z, &LinkConfig::default())
    }

    pub fn with_config(x: Curve, y: Curve, z: Curve, cfg: &LinkConfig) -> Result<Self> {
        let link = Link3 { comps: [x, y, z] };
        link.validate(cfg)?;
        Ok(link)
    }

    pub(crate) fn new_unchecked(x: Curve, y: Curve, z: Curve) -> Self {
        Link3 { comps: [x, y, z] }
    }

    pub fn validate(&self, cfg: &LinkConfig) -> Result<()> {
        for (i, c) in self.comps.iter().enumerate() {
            validate_curve(c, i, cfg)?;
        }
        let (d, pair) = self.min_separation(cfg.separation_grid);
        if !(d >= cfg.separation_tol) {
            return Err(Error::ComponentsTooClose { pair, distance: d });
        }
        Ok(())
    }

    /// Smallest sampled distance between distinct components.
    pub fn min_separation(&self, n: usize) -> (f64, (usize, usize)) {
        let pts: Vec<Vec<Quat>> = self
            .comps
            .iter()
            .map(|c| (0..n).map(|i| c.point(TAU * i as f64 / n as f64)).collect())
            .collect();
        let mut best = (f64::INFINITY, (0, 1));
        for (a, b) in [(0, 1), (1, 2), (0, 2)] {
            for p in &pts[a] {
                for q in &pts[b] {
                    let d = (*p - *q).norm();
                    if d < best.0 {
                        best = (d, (a, b));
                    }
                }
            }
        }
        best
    }

    pub fn x(&self) -> &Curve {
        &self.comps[0]
    }
    pub fn y(&self) -> &Curve {
        &self.comps[1]
    }
    pub fn z(&self) -> &Curve {
        &self.comps[2]
    }

    pub fn component(&self, i: usize) -> &Curve {
        &self.comps[i]
    }

    pub fn components(&self) -> &[Curve; 3] {
        &self.comps
    }

    /// Reorders components: the new `k`-th component is the old `perm[k]`-th.
    pub fn permuted(&self, perm: [usize; 3]) -> Link3 {
        Link3 { comps: perm.map(|i| self.comps[i].clone()) }
    }

    /// Applies `q ↦ l q r` to every component.
    pub fn transformed(&self, l: UnitQuat, r: UnitQuat) -> Link3 {
        Link3 { comps: [0, 1, 2].map(|i| self.comps[i].transformed(l, r)) }
    }
}

/// The page angle `ℓ` along a curve, lifted to a continuous function on ℝ.
#[derive(Clone, Debug)]
pub struct PageAngle<'a> {
    curve: &'a Curve,
    lifted: Vec<f64>,
    winding: i64,
}

impl<'a> PageAngle<'a> {
    const SAMPLES: usize = 4096;

    pub fn new(curve: &'a Curve) -> Result<Self> {
        if let Curve::OpenBook(ob) = curve {
            return Ok(PageAngle { curve, lifted: Vec::new(), winding: ob.winding });
        }
        let n = Self::SAMPLES;
        let mut lifted = Vec::with_capacity(n + 1);
        let mut prev = 0.0;
        for i in 0..=n {
            let q = curve.point(TAU * i as f64 / n as f64);
            if hypot(q.x, q.y) <= BINDING_TOL {
                return Err(Error::OnBinding);
            }
            let a = atan2(q.y, q.x);
            let v = if i == 0 { a } else { a + TAU * round((prev - a) / TAU) };
            lifted.push(v);
            prev = v;
        }
        let winding = round((lifted[n] - lifted[0]) / TAU) as i64;
        Ok(PageAngle { curve, lifted, winding })
    }

    /// Number of turns around the binding.
    pub fn winding(&self) -> i64 {
        self.winding
    }

    /// Continuous lift of `ℓ(c(s))` for any real `s`.
    pub fn value(&self, s: f64) -> f64 {
        if let Curve::OpenBook(ob) = self.curve {
            return ob.theta2(s).0;
        }
        let k = floor(s / TAU);
        let s0 = s - TAU * k;
        let n = self.lifted.len() - 1;
        let x = s0 / TAU * n as f64;
        let i = (x as usize).min(n - 1);
        let f = x - i as f64;
        let guess = self.lifted[i] * (1.0 - f) + self.lifted[i + 1] * f;
        let q = self.curve.point(s0);
        let a = atan2(q.y, q.x);
        a + TAU * round((guess - a) / TAU) + TAU * self.winding as f64 * k
    }

    pub fn deriv(&self, s: f64) -> f64 {
        if let Curve::OpenBook(ob) = self.curve {
            return ob.theta2(s).1;
        }
        let (q, v) = self.curve.eval(s);
        (q.x * v.y - q.y * v.x) / (q.x * q.x + q.y * q.y)
    }
}
