//! The characteristic maps `g_L`, `h_L : T³ → S²` of a link and the
//! pulled-back area form `ω_L`, sampled on uniform grids.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};

use crate::config::{COINCIDENT_TOL, POLE_TOL};
use crate::linkmodel::{Curve, Link3};
use crate::math::atan2;
use crate::quatgeo::{im_mul_conj, qmul, ImVec3, Quat};
use crate::{Error, Result};

/// Samples on the uniform `n × n × n` grid over `[0, 2π)³`, indexed
/// `(i_s, i_t, i_u)` in row-major order.
#[derive(Clone, Debug, PartialEq)]
pub struct Grid3<T> {
    n: usize,
    values: Vec<T>,
}

impl<T: Copy> Grid3<T> {
    pub fn new(n: usize, values: Vec<T>) -> Self {
        assert_eq!(values.len(), n * n * n, "grid needs n³ values");
        Grid3 { n, values }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize, usize) -> T) -> Self {
        let mut values = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    values.push(f(i, j, k));
                }
            }
        }
        Grid3 { n, values }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> T {
        self.values[(i * self.n + j) * self.n + k]
    }

    /// Parameter value of index `i`.
    pub fn coord(&self, i: usize) -> f64 {
        TAU * i as f64 / self.n as f64
    }
}

/// `ω_L = a dt∧du + b du∧ds + c ds∧dt`.
///
/// The same three numbers are the components of the characteristic vector
/// field `v_L`, since `ω_L(ξ, η) = (ξ × η)·v_L`.
#[derive(Clone, Debug, PartialEq)]
pub struct OmegaField {
    pub a: Grid3<f64>,
    pub b: Grid3<f64>,
    pub c: Grid3<f64>,
}

impl OmegaField {
    pub fn n(&self) -> usize {
        self.a.n()
    }

    pub fn components(&self) -> [&Grid3<f64>; 3] {
        [&self.a, &self.b, &self.c]
    }

    /// Component means; `4π²` times these are the subtorus degrees.
    pub fn means(&self) -> [f64; 3] {
        self.components().map(|g| crate::math::pairwise_sum(g.values()) / g.values().len() as f64)
    }
}

/// `F(x, y, z) = Im(y x̄) + Im(z ȳ) + Im(x z̄)`.
pub fn f_vec(x: Quat, y: Quat, z: Quat) -> Result<ImVec3> {
    if (x - y).norm() <= COINCIDENT_TOL || (y - z).norm() <= COINCIDENT_TOL || (z - x).norm() <= COINCIDENT_TOL {
        return Err(Error::CoincidentPoints);
    }
    Ok(f_raw(x, y, z))
}

#[inline]
fn f_raw(x: Quat, y: Quat, z: Quat) -> ImVec3 {
    im_mul_conj(y, x) + im_mul_conj(z, y) + im_mul_conj(x, z)
}

/// `g_L(s, t, u) = F/‖F‖`.
pub fn g_l_eval(link: &Link3, s: f64, t: f64, u: f64) -> Result<ImVec3> {
    let f = f_vec(link.x().point(s), link.y().point(t), link.z().point(u))?;
    Ok(f.normalized())
}

/// `a_z = pr₋₁(−a z̄)`, the stereographic image of `a` with `z` sent to ∞.
pub(crate) fn from_z(a: Quat, z: Quat) -> Result<ImVec3> {
    let m = -qmul(a, z.conj());
    let d = 1.0 + m.w;
    if d <= POLE_TOL {
        return Err(Error::NearPole);
    }
    Ok(m.im().scale(1.0 / d))
}

/// `h_L(s, t, u) = (y_z − x_z)/|y_z − x_z|`.
pub fn h_l_eval(link: &Link3, s: f64, t: f64, u: f64) -> Result<ImVec3> {
    let z = link.z().point(u);
    let d = from_z(link.y().point(t), z)? - from_z(link.x().point(s), z)?;
    Ok(d.normalized())
}

/// `ω_L = (a, b, c)` at one parameter triple from the analytic partials.
pub fn omega_at(link: &Link3, s: f64, t: f64, u: f64) -> [f64; 3] {
    let (x, dx) = link.x().eval(s);
    let (y, dy) = link.y().eval(t);
    let (z, dz) = link.z().eval(u);
    let f = f_raw(x, y, z);
    let fs = im_mul_conj(y, dx) + im_mul_conj(dx, z);
    let ft = im_mul_conj(dy, x) + im_mul_conj(z, dy);
    let fu = im_mul_conj(dz, y) + im_mul_conj(x, dz);
    omega_from_partials(f, fs, ft, fu)
}

#[inline]
fn omega_from_partials(f: ImVec3, fs: ImVec3, ft: ImVec3, fu: ImVec3) -> [f64; 3] {
    let n = f.norm();
    let k = 1.0 / (4.0 * PI * n * n * n);
    [ft.cross(fu).dot(f) * k, fu.cross(fs).dot(f) * k, fs.cross(ft).dot(f) * k]
}

/// Per-pair products shared by every grid point with the same two indices.
#[derive(Clone, Copy, Default)]
struct PairTerm {
    /// `Im(b ā)` for the pair (a, b) = (x, y), (y, z) or (z, x).
    base: ImVec3,
    /// Derivative in the first curve's parameter.
    d_first: ImVec3,
    /// Derivative in the second curve's parameter.
    d_second: ImVec3,
}

/// Precomputed tables for evaluating `ω_L` on an `n³` grid, slab by slab.
pub struct OmegaKernel {
    n: usize,
    xy: Vec<PairTerm>,
    yz: Vec<PairTerm>,
    zx: Vec<PairTerm>,
}

fn samples(c: &Curve, n: usize, offset: f64) -> Vec<(Quat, Quat)> {
    (0..n).map(|i| c.eval(TAU * (i as f64 + offset) / n as f64)).collect()
}

fn pair_table(a: &[(Quat, Quat)], b: &[(Quat, Quat)]) -> Vec<PairTerm> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for &(p, dp) in a {
        for &(q, dq) in b {
            out.push(PairTerm { base: im_mul_conj(q, p), d_first: im_mul_conj(q, dp), d_second: im_mul_conj(dq, p) });
        }
    }
    out
}

impl OmegaKernel {
    pub fn new(link: &Link3, n: usize) -> Self {
        assert!(n >= 8, "grid must have at least 8 samples per axis");
        let xs = samples(link.x(), n, 0.0);
        let ys = samples(link.y(), n, 0.0);
        let zs = samples(link.z(), n, 0.0);
        OmegaKernel { n, xy: pair_table(&xs, &ys), yz: pair_table(&ys, &zs), zx: pair_table(&zs, &xs) }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Fills the `n²` values of the slab `i_s = i` into `a`, `b`, `c`.
    pub fn fill_slab(&self, i: usize, a: &mut [f64], b: &mut [f64], c: &mut [f64]) {
        let n = self.n;
        for j in 0..n {
            let xy = self.xy[i * n + j];
            for k in 0..n {
                let yz = self.yz[j * n + k];
                let zx = self.zx[k * n + i];
                let f = xy.base + yz.base + zx.base;
                let fs = xy.d_first + zx.d_second;
                let ft = xy.d_second + yz.d_first;
                let fu = yz.d_second + zx.d_first;
                let [va, vb, vc] = omega_from_partials(f, fs, ft, fu);
                let idx = j * n + k;
                a[idx] = va;
                b[idx] = vb;
                c[idx] = vc;
            }
        }
    }
}

/// `ω_L` at every point of the `n³` grid.
pub fn omega_grid(link: &Link3, n: usize) -> OmegaField {
    let ker = OmegaKernel::new(link, n);
    let m = n * n;
    let (mut a, mut b, mut c) = (vec![0.0; n * m], vec![0.0; n * m], vec![0.0; n * m]);
    for i in 0..n {
        let r = i * m..(i + 1) * m;
        ker.fill_slab(i, &mut a[r.clone()], &mut b[r.clone()], &mut c[r]);
    }
    OmegaField { a: Grid3::new(n, a), b: Grid3::new(n, b), c: Grid3::new(n, c) }
}

/// Signed area of the spherical triangle `(p, q, r)`.
fn solid_angle(p: ImVec3, q: ImVec3, r: ImVec3) -> f64 {
    let num = p.dot(q.cross(r));
    let den = 1.0 + p.dot(q) + q.dot(r) + r.dot(p);
    2.0 * atan2(num, den)
}

/// Degree of a map `T² → S²` sampled on an `n × n` grid, from the total
/// signed spherical area of its triangulated image. `f(i, j)` must be unit
/// vectors and periodic in both indices.
pub fn discrete_degree(n: usize, f: impl Fn(usize, usize) -> ImVec3) -> f64 {
    let vals: Vec<ImVec3> = (0..n * n).map(|k| f(k / n, k % n)).collect();
    let at = |i: usize, j: usize| vals[(i % n) * n + (j % n)];
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        let mut acc = Vec::with_capacity(2 * n);
        for j in 0..n {
            let (p00, p10, p11, p01) = (at(i, j), at(i + 1, j), at(i + 1, j + 1), at(i, j + 1));
            acc.push(solid_angle(p00, p10, p11));
            acc.push(solid_angle(p00, p11, p01));
        }
        rows.push(crate::math::pairwise_sum(&acc));
    }
    crate::math::pairwise_sum(&rows) / (4.0 * PI)
}

/// Which characteristic map to restrict.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CharMap {
    G,
    H,
}

/// Degrees of the chosen map on the three coordinate subtori through the
/// grid point `base`, each oriented to meet the remaining circle positively:
/// `(deg on T_tu, deg on T_us, deg on T_st)`.
///
/// `h_L` is sampled on a half-cell offset grid if the plain grid hits its pole.
pub fn subtorus_degrees(link: &Link3, which: CharMap, n: usize, base: [f64; 3]) -> Result<[f64; 3]> {
    let h = TAU / n as f64;
    let run = |off: f64| -> Result<[f64; 3]> {
        let eval = |s: f64, t: f64, u: f64| match which {
            CharMap::G => g_l_eval(link, s, t, u),
            CharMap::H => h_l_eval(link, s, t, u),
        };
        let grid = |i: usize| h * (i as f64 + off);
        let mut out = [0.0; 3];
        for (slot, axes) in [(0usize, (1usize, 2usize)), (1, (2, 0)), (2, (0, 1))] {
            let mut vals = Vec::with_capacity(n * n);
            for i in 0..n {
                for j in 0..n {
                    let mut p = base;
                    p[axes.0] = grid(i);
                    p[axes.1] = grid(j);
                    vals.push(eval(p[0], p[1], p[2])?);
                }
            }
            out[slot] = discrete_degree(n, |i, j| vals[i * n + j]);
        }
        Ok(out)
    };
    match run(0.0) {
        Err(Error::NearPole) => run(0.5),
        r => r,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linkmodel::{builtin_borromean, builtin_clasp, builtin_great_circles, builtin_lpqr, builtin_unlink, Curve};
    use crate::quatgeo::{stereo_m1, UnitQuat, I, J, ONE};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rq(rng: &mut ChaCha8Rng) -> Quat {
        let q = Quat::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        q.scale(1.0 / q.norm())
    }

    #[test]
    fn f_examples() {
        assert_eq!(f_vec(ONE, I, J).unwrap(), ImVec3::new(1.0, -1.0, 1.0));
        assert_eq!(f_vec(ONE, ONE, J), Err(Error::CoincidentPoints));
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..500 {
            let (x, y, z) = (rq(&mut rng), rq(&mut rng), rq(&mut rng));
            let f = f_vec(x, y, z).unwrap();
            assert!((f + f_vec(y, x, z).unwrap()).norm() < 1e-14);
            assert!((f - f_vec(y, z, x).unwrap()).norm() < 1e-14);
            // F = (x − z, y − z)₊ by bilinearity.
            let g = crate::quatgeo::pair_plus(x - z, y - z);
            assert!((f - g).norm() < 1e-14);
            assert!(f.norm() > 0.0);
        }
    }

    #[test]
    fn g_is_unit_and_matches_hand_evaluation() {
        let l = builtin_great_circles();
        for i in 0..32 {
            for j in 0..32 {
                for k in 0..32 {
                    let g = g_l_eval(&l, 0.196 * i as f64, 0.196 * j as f64, 0.196 * k as f64).unwrap();
                    assert!((g.norm() - 1.0).abs() < 1e-12);
                }
            }
        }
        // x(0) = i, y(0) = j, z(0) = k: F = Im(j(−i)) + Im(k(−j)) + Im(i(−k)) = k + i + j.
        let g = g_l_eval(&l, 0.0, 0.0, 0.0).unwrap();
        let e = 1.0 / 3f64.sqrt();
        assert!((g - ImVec3::new(e, e, e)).norm() < 1e-15);
    }

    #[test]
    fn transposition_relabels_grid() {
        let l = builtin_borromean();
        let m = l.permuted([1, 0, 2]);
        let (wl, wm) = (omega_grid(&l, 12), omega_grid(&m, 12));
        for i in 0..12 {
            for j in 0..12 {
                for k in 0..12 {
                    assert!((wm.a.get(i, j, k) - wl.b.get(j, i, k)).abs() < 1e-14);
                    assert!((wm.b.get(i, j, k) - wl.a.get(j, i, k)).abs() < 1e-14);
                    assert!((wm.c.get(i, j, k) - wl.c.get(j, i, k)).abs() < 1e-14);
                    let s = [0.3, 1.1, 2.0];
                    let g = g_l_eval(&l, s[0], s[1], s[2]).unwrap();
                    let gm = g_l_eval(&m, s[1], s[0], s[2]).unwrap();
                    assert!((g + gm).norm() < 1e-14);
                }
            }
        }
        let c = l.permuted([1, 2, 0]);
        let wc = omega_grid(&c, 12);
        for i in 0..12 {
            for j in 0..12 {
                for k in 0..12 {
                    // (s', t', u') = (t, u, s)
                    assert!((wc.a.get(i, j, k) - wl.b.get(k, i, j)).abs() < 1e-14);
                    assert!((wc.b.get(i, j, k) - wl.c.get(k, i, j)).abs() < 1e-14);
                    assert!((wc.c.get(i, j, k) - wl.a.get(k, i, j)).abs() < 1e-14);
                }
            }
        }
    }

    #[test]
    fn omega_matches_finite_differences() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let h = 1e-4;
        for l in [builtin_borromean(), builtin_clasp()] {
            for _ in 0..100 {
                let p = [rng.gen_range(0.0..TAU), rng.gen_range(0.0..TAU), rng.gen_range(0.0..TAU)];
                let g = |d: usize, e: f64| {
                    let mut q = p;
                    q[d] += e;
                    g_l_eval(&l, q[0], q[1], q[2]).unwrap()
                };
                let dg = |d: usize| (g(d, h) - g(d, -h)).scale(0.5 / h);
                let g0 = g(0, 0.0);
                let area = |u: ImVec3, v: ImVec3| u.cross(v).dot(g0) / (4.0 * PI);
                let fd = [area(dg(1), dg(2)), area(dg(2), dg(0)), area(dg(0), dg(1))];
                let an = omega_at(&l, p[0], p[1], p[2]);
                for c in 0..3 {
                    assert!((fd[c] - an[c]).abs() < 1e-5 * (1.0 + an[c].abs()), "{fd:?} {an:?}");
                }
            }
        }
    }

    #[test]
    fn grid_matches_pointwise() {
        let l = builtin_clasp();
        let w = omega_grid(&l, 10);
        for (i, j, k) in [(0, 0, 0), (3, 7, 1), (9, 2, 5)] {
            let v = omega_at(&l, w.a.coord(i), w.a.coord(j), w.a.coord(k));
            assert!((v[0] - w.a.get(i, j, k)).abs() < 1e-12);
            assert!((v[1] - w.b.get(i, j, k)).abs() < 1e-12);
            assert!((v[2] - w.c.get(i, j, k)).abs() < 1e-12);
        }
    }

    #[test]
    fn unlink_means_vanish() {
        let m = omega_grid(&builtin_unlink(), 48).means();
        assert!(m.iter().all(|v| v.abs() < 1e-6), "{m:?}");
    }

    #[test]
    fn total_integral_of_c_is_linking() {
        let l = builtin_lpqr(1, 2, 1).unwrap();
        let w = omega_grid(&l, 192);
        let total = w.means()[2] * 8.0 * PI * PI * PI;
        assert!((total - TAU * 1.0).abs() < 0.05, "{total}");
    }

    #[test]
    fn h_agrees_with_g_in_degree() {
        for (l, n) in [(builtin_borromean(), 64), (builtin_clasp(), 96)] {
            let base = [0.4, 1.3, 2.2];
            let g = subtorus_degrees(&l, CharMap::G, n, base).unwrap();
            let h = subtorus_degrees(&l, CharMap::H, n, base).unwrap();
            for c in 0..3 {
                assert!((g[c] - h[c]).abs() < 1e-6, "{g:?} {h:?}");
                assert!((g[c] - crate::math::round(g[c])).abs() < 1e-6);
            }
        }
    }

    #[test]
    fn h_is_gauss_map_when_z_passes_through_minus_one() {
        let l = builtin_borromean();
        let g = UnitQuat::new(-(l.z().point(0.0).conj())).unwrap();
        let one = UnitQuat::one();
        let m = l.transformed(one, g);
        assert!((m.z().point(0.0) + ONE).norm() < 1e-12);
        for (s, t) in [(0.1, 0.2), (2.0, 5.0), (4.4, 1.7)] {
            let h = h_l_eval(&m, s, t, 0.0).unwrap();
            let px = stereo_m1(UnitQuat::new(m.x().point(s)).unwrap()).unwrap();
            let py = stereo_m1(UnitQuat::new(m.y().point(t)).unwrap()).unwrap();
            assert!((h - (py - px).normalized()).norm() < 1e-12);
            assert!((h.norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn h_pole() {
        let c = Curve::Trig(crate::linkmodel::TrigCurve::constant(ONE));
        let l = Link3::new_unchecked(c.clone(), c.clone(), c);
        assert_eq!(h_l_eval(&l, 0.0, 0.0, 0.0), Err(Error::NearPole));
    }
}
