//! Quaternions, stereographic projection, the π± projections and the
//! open-book coordinates of the 3-sphere.

use core::ops::{Add, AddAssign, Deref, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::config::{ANTIPODE_TOL, BINDING_TOL, PLANE_TOL, UNIT_TOL};
use crate::math::{acos, atan2, canonical_angle, cos, hypot, sin, sqrt};
use crate::{Error, Result};

/// A point of ℝ⁴ written `w + x i + y j + z k`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Quat {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

pub const ONE: Quat = Quat::new(1.0, 0.0, 0.0, 0.0);
pub const I: Quat = Quat::new(0.0, 1.0, 0.0, 0.0);
pub const J: Quat = Quat::new(0.0, 0.0, 1.0, 0.0);
pub const K: Quat = Quat::new(0.0, 0.0, 0.0, 1.0);

impl Quat {
    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Quat { w, x, y, z }
    }

    pub const fn from_array(a: [f64; 4]) -> Self {
        Quat::new(a[0], a[1], a[2], a[3])
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.w, self.x, self.y, self.z]
    }

    pub fn conj(self) -> Self {
        Quat::new(self.w, -self.x, -self.y, -self.z)
    }

    pub fn re(self) -> f64 {
        self.w
    }

    pub fn im(self) -> ImVec3 {
        ImVec3::new(self.x, self.y, self.z)
    }

    pub fn dot(self, o: Quat) -> f64 {
        self.w * o.w + self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        sqrt(self.norm_sq())
    }

    pub fn scale(self, s: f64) -> Self {
        Quat::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }

    pub fn is_finite(self) -> bool {
        self.w.is_finite() && self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }
}

/// Hamilton product.
pub fn qmul(a: Quat, b: Quat) -> Quat {
    Quat::new(
        a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
        a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
        a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
        a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w,
    )
}

/// `Im(a b̄)` without forming the real part.
#[inline]
pub fn im_mul_conj(a: Quat, b: Quat) -> ImVec3 {
    ImVec3::new(
        -a.w * b.x + a.x * b.w - a.y * b.z + a.z * b.y,
        -a.w * b.y + a.x * b.z + a.y * b.w - a.z * b.x,
        -a.w * b.z - a.x * b.y + a.y * b.x + a.z * b.w,
    )
}

impl Mul for Quat {
    type Output = Quat;
    fn mul(self, o: Quat) -> Quat {
        qmul(self, o)
    }
}

impl Mul<f64> for Quat {
    type Output = Quat;
    fn mul(self, s: f64) -> Quat {
        self.scale(s)
    }
}

impl Add for Quat {
    type Output = Quat;
    fn add(self, o: Quat) -> Quat {
        Quat::new(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl AddAssign for Quat {
    fn add_assign(&mut self, o: Quat) {
        *self = *self + o;
    }
}

impl Sub for Quat {
    type Output = Quat;
    fn sub(self, o: Quat) -> Quat {
        Quat::new(self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Quat {
    type Output = Quat;
    fn neg(self) -> Quat {
        Quat::new(-self.w, -self.x, -self.y, -self.z)
    }
}

/// A quaternion of norm one.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UnitQuat(Quat);

impl UnitQuat {
    pub fn new(q: Quat) -> Result<Self> {
        let n = q.norm();
        if !q.is_finite() || (n - 1.0).abs() > UNIT_TOL {
            return Err(Error::NotUnit(n));
        }
        Ok(UnitQuat(q))
    }

    /// Rescale onto the sphere.
    pub fn normalize(q: Quat) -> Result<Self> {
        let n = q.norm();
        if !(n > 0.0) || !n.is_finite() {
            return Err(Error::NotUnit(n));
        }
        Ok(UnitQuat(q.scale(1.0 / n)))
    }

    pub(crate) const fn new_unchecked(q: Quat) -> Self {
        UnitQuat(q)
    }

    pub fn one() -> Self {
        UnitQuat(ONE)
    }

    pub fn quat(self) -> Quat {
        self.0
    }

    pub fn inverse(self) -> Self {
        UnitQuat(self.0.conj())
    }
}

impl Deref for UnitQuat {
    type Target = Quat;
    fn deref(&self) -> &Quat {
        &self.0
    }
}

impl Mul for UnitQuat {
    type Output = UnitQuat;
    fn mul(self, o: UnitQuat) -> UnitQuat {
        UnitQuat(qmul(self.0, o.0))
    }
}

/// Pure imaginary quaternion, identified with ℝ³.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ImVec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl ImVec3 {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        ImVec3 { x, y, z }
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn dot(self, o: ImVec3) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn cross(self, o: ImVec3) -> ImVec3 {
        ImVec3::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    pub fn norm(self) -> f64 {
        sqrt(self.dot(self))
    }

    pub fn scale(self, s: f64) -> ImVec3 {
        ImVec3::new(self.x * s, self.y * s, self.z * s)
    }

    pub fn normalized(self) -> ImVec3 {
        self.scale(1.0 / self.norm())
    }

    pub fn as_quat(self) -> Quat {
        Quat::new(0.0, self.x, self.y, self.z)
    }
}

impl Add for ImVec3 {
    type Output = ImVec3;
    fn add(self, o: ImVec3) -> ImVec3 {
        ImVec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl AddAssign for ImVec3 {
    fn add_assign(&mut self, o: ImVec3) {
        *self = *self + o;
    }
}

impl Sub for ImVec3 {
    type Output = ImVec3;
    fn sub(self, o: ImVec3) -> ImVec3 {
        ImVec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for ImVec3 {
    type Output = ImVec3;
    fn neg(self) -> ImVec3 {
        ImVec3::new(-self.x, -self.y, -self.z)
    }
}

impl Mul<f64> for ImVec3 {
    type Output = ImVec3;
    fn mul(self, s: f64) -> ImVec3 {
        self.scale(s)
    }
}

/// Stereographic projection from −1: `Im q / (1 + Re q)`.
pub fn stereo_m1(q: UnitQuat) -> Result<ImVec3> {
    let d = 1.0 + q.w;
    if d <= ANTIPODE_TOL {
        return Err(Error::NearAntipode);
    }
    Ok(q.im().scale(1.0 / d))
}

/// Derivative of [`stereo_m1`] along a curve with velocity `dq`.
pub fn stereo_m1_deriv(q: Quat, dq: Quat) -> ImVec3 {
    let d = 1.0 + q.w;
    dq.im().scale(1.0 / d) - q.im().scale(dq.w / (d * d))
}

/// `(a, b)₊ = Im(b ā)`.
pub fn pair_plus(a: Quat, b: Quat) -> ImVec3 {
    im_mul_conj(b, a)
}

/// `(a, b)₋ = Im(ā b)`.
pub fn pair_minus(a: Quat, b: Quat) -> ImVec3 {
    qmul(a.conj(), b).im()
}

fn unit_or_degenerate(v: ImVec3) -> Result<ImVec3> {
    let n = v.norm();
    if !(n > PLANE_TOL) {
        return Err(Error::DegeneratePlane);
    }
    Ok(v.scale(1.0 / n))
}

/// π₊ of the plane spanned by `a`, `b`.
pub fn pi_plus(a: Quat, b: Quat) -> Result<ImVec3> {
    unit_or_degenerate(pair_plus(a, b))
}

/// π₋ of the plane spanned by `a`, `b`.
pub fn pi_minus(a: Quat, b: Quat) -> Result<ImVec3> {
    unit_or_degenerate(pair_minus(a, b))
}

/// Open-book coordinates of a point off the binding circle.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PageCoord {
    pub theta: f64,
    pub w: Complex64,
}

/// `ℓ(q) = arg(q₁ + q₂i)` in `[0, 2π)`, `m(q) = (q₃ + |q₁ + q₂i| i)/(1 + q₀)`.
pub fn book_coords(q: UnitQuat) -> Result<PageCoord> {
    let rho = hypot(q.x, q.y);
    if rho <= BINDING_TOL {
        return Err(Error::OnBinding);
    }
    let theta = canonical_angle(atan2(q.y, q.x));
    let w = Complex64::new(q.z, rho) / (1.0 + q.w);
    Ok(PageCoord { theta, w })
}

/// Inverse of [`book_coords`].
pub fn book_point(theta: f64, w: Complex64) -> Result<UnitQuat> {
    if !(w.im > 0.0) {
        return Err(Error::NonPositiveHeight);
    }
    Ok(UnitQuat::new_unchecked(book_point_raw(theta, w)))
}

pub(crate) fn book_point_raw(theta: f64, w: Complex64) -> Quat {
    let (a, b) = (w.re, w.im);
    let t = 2.0 / (1.0 + a * a + b * b);
    let r = b * t;
    Quat::new(t - 1.0, r * cos(theta), r * sin(theta), a * t)
}

/// Velocity of `book_point(θ(s), w(s))` given `θ' = dtheta` and `w' = dw`.
pub(crate) fn book_point_deriv(theta: f64, w: Complex64, dtheta: f64, dw: Complex64) -> Quat {
    let (a, b) = (w.re, w.im);
    let d = 1.0 + a * a + b * b;
    let t = 2.0 / d;
    let dd = 2.0 * (a * dw.re + b * dw.im);
    let dt = -2.0 * dd / (d * d);
    let r = b * t;
    let dr = dw.im * t + b * dt;
    let (c, s) = (cos(theta), sin(theta));
    Quat::new(dt, dr * c - r * s * dtheta, dr * s + r * c * dtheta, dw.re * t + a * dt)
}

/// Left translation `q ↦ g q`, an isometry of S³.
pub fn iso_act(g: UnitQuat, q: UnitQuat) -> UnitQuat {
    g * q
}

/// Great-circle distance on S³.
pub fn geodesic_distance(p: UnitQuat, q: UnitQuat) -> f64 {
    acos(p.dot(*q).clamp(-1.0, 1.0))
}

/// The binding circle `cos u + k sin u`.
pub fn binding_point(u: f64) -> UnitQuat {
    UnitQuat::new_unchecked(Quat::new(cos(u), 0.0, 0.0, sin(u)))
}
