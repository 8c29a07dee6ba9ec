use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};

use crate::charfield::Grid3;
use crate::config::DEGREE_RESIDUAL;
use crate::math::{pairwise_sum, round, sin};
use crate::{Error, Result};

use super::form::{wedge_integral, FourierForm, VOL};

/// Subtorus degrees read off `c₀` of `ω_L`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Degrees {
    pub p: i64,
    pub q: i64,
    pub r: i64,
    /// `4π²·c₀` before rounding.
    pub raw: [f64; 3],
    pub residuals: [f64; 3],
}

impl Degrees {
    pub fn as_array(&self) -> [i64; 3] {
        [self.p, self.q, self.r]
    }

    pub fn all_zero(&self) -> bool {
        self.p == 0 && self.q == 0 && self.r == 0
    }
}

/// `(p, q, r) = round(4π²·c₀)`, i.e. `Lk(Y,Z)`, `Lk(Z,X)`, `Lk(X,Y)`.
pub fn degrees(omega: &FourierForm) -> Result<Degrees> {
    if omega.degree() != 2 {
        return Err(Error::BadDegree(omega.degree()));
    }
    let c0 = omega.c0();
    let raw = [0, 1, 2].map(|k| 4.0 * PI * PI * c0[k].re);
    let ints = raw.map(round);
    let residuals = [0, 1, 2].map(|k| (raw[k] - ints[k]).abs());
    if residuals.iter().any(|&r| r > DEGREE_RESIDUAL) {
        return Err(Error::NonIntegerDegree { values: raw });
    }
    Ok(Degrees { p: ints[0] as i64, q: ints[1] as i64, r: ints[2] as i64, raw, residuals })
}

fn require_unlinked(omega: &FourierForm) -> Result<()> {
    let d = degrees(omega)?;
    if !d.all_zero() {
        return Err(Error::NonzeroLinking { p: d.p, q: d.q, r: d.r });
    }
    Ok(())
}

/// `8π³ Σ_{n≠0} (aₙ × bₙ)·n/|n|²` with `cₙ = aₙ + i bₙ`, without checking
/// linking numbers. Terms are summed pairwise in lexicographic order of `n`.
pub fn mu_sum3(omega: &FourierForm) -> Result<f64> {
    if omega.degree() != 2 {
        return Err(Error::BadDegree(omega.degree()));
    }
    let mut terms = Vec::with_capacity(omega.coefficients().len());
    for (idx, c) in omega.coefficients().iter().enumerate() {
        let n = omega.mode(idx).map(|v| v as f64);
        let k = n[0] * n[0] + n[1] * n[1] + n[2] * n[2];
        if k == 0.0 {
            continue;
        }
        let a = [c[0].re, c[1].re, c[2].re];
        let b = [c[0].im, c[1].im, c[2].im];
        let axb = [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]];
        terms.push((axb[0] * n[0] + axb[1] * n[1] + axb[2] * n[2]) / k);
    }
    Ok(VOL * pairwise_sum(&terms))
}

/// Triple linking number from formula (3). Requires vanishing linking numbers.
pub fn mu_formula3(omega: &FourierForm) -> Result<f64> {
    require_unlinked(omega)?;
    mu_sum3(omega)
}

/// `½ ∫ δ(φ∗ω) ∧ ω` through the operator route; `c₀` is dropped first, so
/// the value matches [`mu_sum3`] even when `c₀` is not exactly zero. Sampled
/// forms are closed only up to aliasing, so exactness is not checked here;
/// [`alpha_min`](super::alpha_min) does that.
pub fn mu_sum1(omega: &FourierForm) -> Result<f64> {
    if omega.degree() != 2 {
        return Err(Error::BadDegree(omega.degree()));
    }
    let alpha = omega.without_mean().green_op()?.delta_op()?;
    Ok(0.5 * wedge_integral(&alpha, omega)?.re)
}

/// Triple linking number from formula (1). Requires vanishing linking numbers.
pub fn mu_formula1(omega: &FourierForm) -> Result<f64> {
    require_unlinked(omega)?;
    mu_sum1(omega)
}

/// `∇φ(z) = −(1/8π³) Σ_{0<|n|∞≤m} n sin(n·z)/|n|²` on the `n³` grid of
/// differences.
fn grad_phi_table(n: usize, m: usize) -> Vec<[f64; 3]> {
    let h = TAU / n as f64;
    let mi = m as i64;
    let mut modes = Vec::new();
    for a in -mi..=mi {
        for b in -mi..=mi {
            for c in -mi..=mi {
                if (a, b, c) != (0, 0, 0) {
                    let k = (a * a + b * b + c * c) as f64;
                    modes.push(([a as f64, b as f64, c as f64], 1.0 / k));
                }
            }
        }
    }
    let mut out = vec![[0.0; 3]; n * n * n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let z = [h * i as f64, h * j as f64, h * k as f64];
                let mut acc = [0.0; 3];
                for (nv, w) in &modes {
                    let s = sin(nv[0] * z[0] + nv[1] * z[1] + nv[2] * z[2]) * w;
                    for d in 0..3 {
                        acc[d] += nv[d] * s;
                    }
                }
                out[(i * n + j) * n + k] = acc.map(|v| -v / VOL);
            }
        }
    }
    out
}

/// Formula (2) as a double trapezoid sum over grid pairs:
/// `½ Σ_x Σ_y (v(x) × v(y))·∇_y φ(x − y) h⁶` with `∇φ` truncated at
/// `n/2 − 1`. Cost grows like `n⁶`, so `n ≤ 16`.
pub fn mu_formula2_direct(v: [&Grid3<f64>; 3]) -> Result<f64> {
    let n = v[0].n();
    assert!(v.iter().all(|g| g.n() == n), "components must share a grid");
    if n > 16 {
        return Err(Error::GridTooLarge(n));
    }
    if n < 4 {
        return Err(Error::AliasBound { nmax: 0, grid: n });
    }
    let gp = grad_phi_table(n, n / 2 - 1);
    let pts: Vec<[f64; 3]> = (0..n * n * n).map(|i| [v[0].values()[i], v[1].values()[i], v[2].values()[i]]).collect();
    let idx = |i: usize, j: usize, k: usize| (i * n + j) * n + k;
    let h = TAU / n as f64;
    let mut rows = Vec::with_capacity(pts.len());
    for xi in 0..n {
        for xj in 0..n {
            for xk in 0..n {
                let vx = pts[idx(xi, xj, xk)];
                let mut acc = Vec::with_capacity(pts.len());
                for yi in 0..n {
                    for yj in 0..n {
                        for yk in 0..n {
                            let vy = pts[idx(yi, yj, yk)];
                            // ∇_y φ(x − y) = −(∇φ)(x − y)
                            let g = gp[idx((xi + n - yi) % n, (xj + n - yj) % n, (xk + n - yk) % n)];
                            let c = [vx[1] * vy[2] - vx[2] * vy[1], vx[2] * vy[0] - vx[0] * vy[2], vx[0] * vy[1] - vx[1] * vy[0]];
                            acc.push(-(c[0] * g[0] + c[1] * g[1] + c[2] * g[2]));
                        }
                    }
                }
                rows.push(pairwise_sum(&acc));
            }
        }
    }
    let h3 = h * h * h;
    Ok(0.5 * pairwise_sum(&rows) * h3 * h3)
}
