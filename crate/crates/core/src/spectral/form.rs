use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};

use num_complex::Complex64;

use crate::charfield::{Grid3, OmegaField};
use crate::math::{cos, sin, sqrt};
use crate::{Error, Result};

/// Coefficient vector; scalar forms use only slot 0.
pub type CVec3 = [Complex64; 3];

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// `8π³`, the volume of the torus.
pub const VOL: f64 = 8.0 * PI * PI * PI;

/// A k-form on T³ as a truncated Fourier series `Σ cₙ e^{in·x}`, with
/// `|nᵢ| ≤ m`. 1-forms pair `cₙ` with `dx`, 2-forms with `⋆dx`, 3-forms
/// carry a scalar times `dV`.
#[derive(Clone, Debug, PartialEq)]
pub struct FourierForm {
    degree: u8,
    m: usize,
    coef: Vec<CVec3>,
}

fn cdot(a: &CVec3, b: &CVec3) -> Complex64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn ncross(n: [f64; 3], c: &CVec3) -> CVec3 {
    [c[2] * n[1] - c[1] * n[2], c[0] * n[2] - c[2] * n[0], c[1] * n[0] - c[0] * n[1]]
}

fn ndot(n: [f64; 3], c: &CVec3) -> Complex64 {
    c[0] * n[0] + c[1] * n[1] + c[2] * n[2]
}

fn scale(c: &CVec3, s: Complex64) -> CVec3 {
    [c[0] * s, c[1] * s, c[2] * s]
}

fn times_n(n: [f64; 3], s: Complex64) -> CVec3 {
    [s * n[0], s * n[1], s * n[2]]
}

fn n2(n: [f64; 3]) -> f64 {
    n[0] * n[0] + n[1] * n[1] + n[2] * n[2]
}

fn cnorm(c: &CVec3) -> f64 {
    sqrt(c.iter().map(|z| z.norm_sqr()).sum())
}

impl FourierForm {
    pub fn zeros(degree: u8, m: usize) -> Self {
        assert!(degree <= 3, "degree must be 0..=3");
        let l = 2 * m + 1;
        FourierForm { degree, m, coef: vec![[ZERO; 3]; l * l * l] }
    }

    /// Builds a form from `f(n)`; scalar forms read slot 0 only.
    pub fn from_fn(degree: u8, m: usize, mut f: impl FnMut([i64; 3]) -> CVec3) -> Self {
        let mut out = Self::zeros(degree, m);
        for idx in 0..out.coef.len() {
            let n = out.mode(idx);
            let mut c = f(n);
            if out.is_scalar() {
                c[1] = ZERO;
                c[2] = ZERO;
            }
            out.coef[idx] = c;
        }
        out
    }

    pub fn degree(&self) -> u8 {
        self.degree
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn side(&self) -> usize {
        2 * self.m + 1
    }

    pub fn is_scalar(&self) -> bool {
        self.degree == 0 || self.degree == 3
    }

    pub fn components(&self) -> usize {
        if self.is_scalar() {
            1
        } else {
            3
        }
    }

    /// All coefficients, lexicographic in `n`.
    pub fn coefficients(&self) -> &[CVec3] {
        &self.coef
    }

    /// Mode `n` of the `idx`-th stored coefficient.
    pub fn mode(&self, idx: usize) -> [i64; 3] {
        let l = self.side();
        let m = self.m as i64;
        [(idx / (l * l)) as i64 - m, ((idx / l) % l) as i64 - m, (idx % l) as i64 - m]
    }

    pub fn index(&self, n: [i64; 3]) -> Option<usize> {
        let m = self.m as i64;
        if n.iter().any(|v| v.abs() > m) {
            return None;
        }
        let l = self.side() as i64;
        Some((((n[0] + m) * l + n[1] + m) * l + n[2] + m) as usize)
    }

    /// Coefficient at `n`, zero outside the truncation.
    pub fn get(&self, n: [i64; 3]) -> CVec3 {
        self.index(n).map_or([ZERO; 3], |i| self.coef[i])
    }

    pub fn set(&mut self, n: [i64; 3], c: CVec3) {
        let i = self.index(n).expect("mode outside truncation");
        self.coef[i] = c;
    }

    pub fn c0(&self) -> CVec3 {
        self.get([0, 0, 0])
    }

    fn zero_idx(&self) -> usize {
        self.coef.len() / 2
    }

    fn map(&self, degree: u8, f: impl Fn([f64; 3], &CVec3) -> CVec3) -> FourierForm {
        let mut out = FourierForm { degree, m: self.m, coef: Vec::with_capacity(self.coef.len()) };
        for (idx, c) in self.coef.iter().enumerate() {
            let n = self.mode(idx).map(|v| v as f64);
            out.coef.push(f(n, c));
        }
        out
    }

    /// Largest `|c₋ₙ − conj(cₙ)|`.
    pub fn reality_defect(&self) -> f64 {
        let last = self.coef.len() - 1;
        let mut worst: f64 = 0.0;
        for (idx, c) in self.coef.iter().enumerate() {
            let d = &self.coef[last - idx];
            for k in 0..3 {
                worst = worst.max((d[k] - c[k].conj()).norm());
            }
        }
        worst
    }

    pub fn is_real(&self, tol: f64) -> bool {
        self.reality_defect() <= tol
    }

    /// Projects onto real-valued forms: `cₙ ← (cₙ + conj c₋ₙ)/2`.
    pub fn make_real(&self) -> FourierForm {
        let last = self.coef.len() - 1;
        let mut out = self.clone();
        for idx in 0..self.coef.len() {
            let (a, b) = (&self.coef[idx], &self.coef[last - idx]);
            out.coef[idx] = [0, 1, 2].map(|k| (a[k] + b[k].conj()) * 0.5);
        }
        out
    }

    /// Same form with `c₀` removed.
    pub fn without_mean(&self) -> FourierForm {
        let mut out = self.clone();
        let z = out.zero_idx();
        out.coef[z] = [ZERO; 3];
        out
    }

    pub fn add(&self, o: &FourierForm) -> FourierForm {
        assert_eq!((self.degree, self.m), (o.degree, o.m), "forms must match in degree and truncation");
        let mut out = self.clone();
        for (a, b) in out.coef.iter_mut().zip(&o.coef) {
            for k in 0..3 {
                a[k] += b[k];
            }
        }
        out
    }

    pub fn scaled(&self, s: f64) -> FourierForm {
        let mut out = self.clone();
        for c in &mut out.coef {
            *c = scale(c, Complex64::new(s, 0.0));
        }
        out
    }

    /// Largest coefficient difference.
    pub fn max_diff(&self, o: &FourierForm) -> f64 {
        assert_eq!(self.m, o.m);
        self.coef.iter().zip(&o.coef).map(|(a, b)| cnorm(&[a[0] - b[0], a[1] - b[1], a[2] - b[2]])).fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.coef.iter().map(cnorm).fold(0.0, f64::max)
    }

    /// Exterior derivative.
    pub fn d_op(&self) -> Result<FourierForm> {
        Ok(match self.degree {
            0 => self.map(1, |n, c| times_n(n, I * c[0])),
            1 => self.map(2, |n, c| scale(&ncross(n, c), I)),
            2 => self.map(3, |n, c| [I * ndot(n, c), ZERO, ZERO]),
            k => return Err(Error::BadDegree(k)),
        })
    }

    /// Codifferential.
    pub fn delta_op(&self) -> Result<FourierForm> {
        Ok(match self.degree {
            1 => self.map(0, |n, c| [-I * ndot(n, c), ZERO, ZERO]),
            2 => self.map(1, |n, c| scale(&ncross(n, c), I)),
            3 => self.map(2, |n, c| times_n(n, -I * c[0])),
            k => return Err(Error::BadDegree(k)),
        })
    }

    /// `Δ = dδ + δd`, multiplying each mode by `|n|²`.
    pub fn laplacian_op(&self) -> FourierForm {
        self.map(self.degree, |n, c| scale(c, Complex64::new(n2(n), 0.0)))
    }

    /// Inverse of `Δ` on mean-zero forms.
    pub fn green_op(&self) -> Result<FourierForm> {
        if cnorm(&self.c0()) > 1e-12 {
            return Err(Error::NonMeanZero);
        }
        Ok(self.map(self.degree, |n, c| {
            let k = n2(n);
            if k == 0.0 {
                [ZERO; 3]
            } else {
                scale(c, Complex64::new(1.0 / k, 0.0))
            }
        }))
    }

    /// Splits into `(im d, harmonic, im δ)`.
    pub fn hodge(&self) -> Hodge {
        let harmonic = self.map(self.degree, |n, c| if n2(n) == 0.0 { *c } else { [ZERO; 3] });
        let longitudinal = |n: [f64; 3], c: &CVec3| {
            let k = n2(n);
            if k == 0.0 {
                [ZERO; 3]
            } else {
                times_n(n, ndot(n, c) / k)
            }
        };
        let transverse = |n: [f64; 3], c: &CVec3| {
            if n2(n) == 0.0 {
                [ZERO; 3]
            } else {
                let l = longitudinal(n, c);
                [c[0] - l[0], c[1] - l[1], c[2] - l[2]]
            }
        };
        let nonzero = |n: [f64; 3], c: &CVec3| if n2(n) == 0.0 { [ZERO; 3] } else { *c };
        let none = |_: [f64; 3], _: &CVec3| [ZERO; 3];
        let k = self.degree;
        let (exact, coexact) = match k {
            0 => (self.map(k, none), self.map(k, nonzero)),
            1 => (self.map(k, longitudinal), self.map(k, transverse)),
            2 => (self.map(k, transverse), self.map(k, longitudinal)),
            _ => (self.map(k, nonzero), self.map(k, none)),
        };
        Hodge { exact, harmonic, coexact }
    }

    /// `L²` inner product `8π³ Σ cₙ·conj(dₙ)`.
    pub fn inner(&self, o: &FourierForm) -> Complex64 {
        assert_eq!((self.degree, self.m), (o.degree, o.m));
        let terms: Vec<Complex64> = self.coef.iter().zip(&o.coef).map(|(a, b)| cdot(a, &b.map(|z| z.conj()))).collect();
        let re: Vec<f64> = terms.iter().map(|z| z.re).collect();
        let im: Vec<f64> = terms.iter().map(|z| z.im).collect();
        Complex64::new(crate::math::pairwise_sum(&re), crate::math::pairwise_sum(&im)) * VOL
    }

    pub fn l2_norm(&self) -> f64 {
        sqrt(self.inner(self).re.max(0.0))
    }

    /// Evaluates the series at `x`, returning the real parts.
    pub fn eval(&self, x: [f64; 3]) -> [f64; 3] {
        let mut out = [0.0; 3];
        for (idx, c) in self.coef.iter().enumerate() {
            let n = self.mode(idx);
            let ph = n[0] as f64 * x[0] + n[1] as f64 * x[1] + n[2] as f64 * x[2];
            let e = Complex64::new(cos(ph), sin(ph));
            for k in 0..3 {
                out[k] += (c[k] * e).re;
            }
        }
        out
    }
}

/// Hodge decomposition of a form.
#[derive(Clone, Debug)]
pub struct Hodge {
    pub exact: FourierForm,
    pub harmonic: FourierForm,
    pub coexact: FourierForm,
}

/// `∫ α∧ω = 8π³ Σ αₙ·ω₋ₙ` for a 1-form and a 2-form.
pub fn wedge_integral(alpha: &FourierForm, omega: &FourierForm) -> Result<Complex64> {
    if alpha.degree != 1 {
        return Err(Error::BadDegree(alpha.degree));
    }
    if omega.degree != 2 {
        return Err(Error::BadDegree(omega.degree));
    }
    assert_eq!(alpha.m, omega.m);
    let last = alpha.coef.len() - 1;
    let terms: Vec<Complex64> = (0..alpha.coef.len()).map(|i| cdot(&alpha.coef[i], &omega.coef[last - i])).collect();
    let re: Vec<f64> = terms.iter().map(|z| z.re).collect();
    let im: Vec<f64> = terms.iter().map(|z| z.im).collect();
    Ok(Complex64::new(crate::math::pairwise_sum(&re), crate::math::pairwise_sum(&im)) * VOL)
}

/// Primitive of least `L²` norm, `α = δ G ω`, coefficientwise `i n×cₙ/|n|²`.
pub fn alpha_min(omega: &FourierForm) -> Result<FourierForm> {
    if omega.degree != 2 {
        return Err(Error::BadDegree(omega.degree));
    }
    if cnorm(&omega.c0()) > 1e-10 {
        return Err(Error::NotExact);
    }
    let scale_ref = omega.max_abs();
    if scale_ref > 0.0 {
        for (idx, c) in omega.coef.iter().enumerate() {
            let n = omega.mode(idx).map(|v| v as f64);
            if ndot(n, c).norm() > 1e-6 * scale_ref {
                return Err(Error::NotExact);
            }
        }
    }
    omega.without_mean().green_op()?.delta_op()
}

fn twiddles(n: usize, sign: f64) -> Vec<Complex64> {
    (0..n)
        .map(|j| {
            let a = sign * TAU * j as f64 / n as f64;
            Complex64::new(cos(a), sin(a))
        })
        .collect()
}

fn check_alias(n: usize, m: usize) -> Result<()> {
    if n < 4 || m + 1 > n / 2 {
        return Err(Error::AliasBound { nmax: m, grid: n });
    }
    Ok(())
}

/// Truncated DFT `cₙ = N⁻³ Σ f(x) e^{−in·x}` for `|nᵢ| ≤ m`, done one axis
/// at a time.
pub fn dft3(values: &[f64], n: usize, m: usize) -> Result<Vec<Complex64>> {
    check_alias(n, m)?;
    assert_eq!(values.len(), n * n * n);
    let l = 2 * m + 1;
    let tw = twiddles(n, -1.0);
    let mi = m as i64;
    let ni = n as i64;
    let t = |freq: usize, j: usize| tw[((freq as i64 - mi) * j as i64).rem_euclid(ni) as usize];
    // along u
    let mut g1 = vec![ZERO; n * n * l];
    for ij in 0..n * n {
        let row = &values[ij * n..(ij + 1) * n];
        for a in 0..l {
            let mut acc = ZERO;
            for (k, &v) in row.iter().enumerate() {
                acc += t(a, k) * v;
            }
            g1[ij * l + a] = acc;
        }
    }
    // along t
    let mut g2 = vec![ZERO; n * l * l];
    for i in 0..n {
        for b in 0..l {
            for a in 0..l {
                let mut acc = ZERO;
                for j in 0..n {
                    acc += g1[(i * n + j) * l + a] * t(b, j);
                }
                g2[(i * l + b) * l + a] = acc;
            }
        }
    }
    // along s
    let norm = 1.0 / (n * n * n) as f64;
    let mut out = vec![ZERO; l * l * l];
    for c in 0..l {
        for ba in 0..l * l {
            let mut acc = ZERO;
            for i in 0..n {
                acc += g2[i * l * l + ba] * t(c, i);
            }
            out[c * l * l + ba] = acc * norm;
        }
    }
    Ok(out)
}

/// Inverse of [`dft3`]: the series evaluated on the `n³` grid.
pub fn idft3(coef: &[Complex64], m: usize, n: usize) -> Vec<Complex64> {
    let l = 2 * m + 1;
    assert_eq!(coef.len(), l * l * l);
    let tw = twiddles(n, 1.0);
    let mi = m as i64;
    let ni = n as i64;
    let t = |freq: usize, j: usize| tw[((freq as i64 - mi) * j as i64).rem_euclid(ni) as usize];
    let mut h1 = vec![ZERO; n * l * l];
    for i in 0..n {
        for ba in 0..l * l {
            let mut acc = ZERO;
            for c in 0..l {
                acc += coef[c * l * l + ba] * t(c, i);
            }
            h1[i * l * l + ba] = acc;
        }
    }
    let mut h2 = vec![ZERO; n * n * l];
    for i in 0..n {
        for j in 0..n {
            for a in 0..l {
                let mut acc = ZERO;
                for b in 0..l {
                    acc += h1[(i * l + b) * l + a] * t(b, j);
                }
                h2[(i * n + j) * l + a] = acc;
            }
        }
    }
    let mut out = vec![ZERO; n * n * n];
    for ij in 0..n * n {
        for k in 0..n {
            let mut acc = ZERO;
            for a in 0..l {
                acc += h2[ij * l + a] * t(a, k);
            }
            out[ij * n + k] = acc;
        }
    }
    out
}

/// Fourier coefficients of a sampled scalar (degree 0 or 3).
pub fn analyze_scalar(grid: &Grid3<f64>, degree: u8, m: usize) -> Result<FourierForm> {
    if degree != 0 && degree != 3 {
        return Err(Error::BadDegree(degree));
    }
    let c = dft3(grid.values(), grid.n(), m)?;
    let mut out = FourierForm::zeros(degree, m);
    for (slot, v) in out.coef.iter_mut().zip(c) {
        slot[0] = v;
    }
    Ok(out)
}

/// Fourier coefficients of a sampled 1- or 2-form given by its components.
pub fn analyze_vector(comps: [&Grid3<f64>; 3], degree: u8, m: usize) -> Result<FourierForm> {
    if degree != 1 && degree != 2 {
        return Err(Error::BadDegree(degree));
    }
    let mut out = FourierForm::zeros(degree, m);
    for (k, g) in comps.iter().enumerate() {
        let c = dft3(g.values(), g.n(), m)?;
        for (slot, v) in out.coef.iter_mut().zip(c) {
            slot[k] = v;
        }
    }
    Ok(out)
}

/// Fourier coefficients of `ω_L`.
pub fn analyze(field: &OmegaField, m: usize) -> Result<FourierForm> {
    analyze_vector(field.components(), 2, m)
}

/// Real parts of the form's components on the `n³` grid.
pub fn synthesize(form: &FourierForm, n: usize) -> Vec<Grid3<f64>> {
    (0..form.components())
        .map(|k| {
            let c: Vec<Complex64> = form.coef.iter().map(|v| v[k]).collect();
            let vals = idft3(&c, form.m, n).into_iter().map(|z| z.re).collect();
            Grid3::new(n, vals)
        })
        .collect()
}
