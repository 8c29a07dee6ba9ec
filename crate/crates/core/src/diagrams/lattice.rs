//! Exact segment predicates on the torus, with coordinates snapped to a
//! `2⁻³⁰` lattice so that `2π` becomes the integer period [`PERIOD`].

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::TAU;

use crate::math::round;

const SCALE: f64 = (1u64 << 30) as f64;

/// `2π` in lattice units.
pub const PERIOD: i64 = (TAU * SCALE) as i64 + 1;

pub type IPoint = [i64; 2];

pub fn snap(x: f64) -> i64 {
    round(x * SCALE) as i64
}

/// Representative in `[0, PERIOD)`.
pub fn wrap(x: i64) -> i64 {
    x.rem_euclid(PERIOD)
}

/// Segment `a → b` with `a` in the fundamental square and `b` unwrapped.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Seg {
    pub a: IPoint,
    pub b: IPoint,
}

impl Seg {
    /// The segment reduced so that `a` lies in the fundamental square.
    pub fn normalized(a: IPoint, b: IPoint) -> Seg {
        let sh = [wrap(a[0]) - a[0], wrap(a[1]) - a[1]];
        Seg { a: [a[0] + sh[0], a[1] + sh[1]], b: [b[0] + sh[0], b[1] + sh[1]] }
    }

    pub fn shifted(&self, k: i64, l: i64) -> Seg {
        let d = [k * PERIOD, l * PERIOD];
        Seg { a: [self.a[0] + d[0], self.a[1] + d[1]], b: [self.b[0] + d[0], self.b[1] + d[1]] }
    }

    pub fn dir(&self) -> IPoint {
        [self.b[0] - self.a[0], self.b[1] - self.a[1]]
    }
}

pub fn orient(a: IPoint, b: IPoint, c: IPoint) -> i32 {
    let v = (b[0] - a[0]) as i128 * (c[1] - a[1]) as i128 - (b[1] - a[1]) as i128 * (c[0] - a[0]) as i128;
    v.signum() as i32
}

pub fn det(u: IPoint, v: IPoint) -> i32 {
    ((u[0] as i128 * v[1] as i128) - (u[1] as i128 * v[0] as i128)).signum() as i32
}

fn on_segment(a: IPoint, b: IPoint, p: IPoint) -> bool {
    p[0] >= a[0].min(b[0]) && p[0] <= a[0].max(b[0]) && p[1] >= a[1].min(b[1]) && p[1] <= a[1].max(b[1])
}

/// How two plane segments meet.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Meet {
    Disjoint,
    /// Interiors cross transversally; carries `sign det(d₁, d₂)`.
    Proper(i32),
    /// Touching at an endpoint or overlapping.
    Degenerate,
}

pub fn meet(p: &Seg, q: &Seg) -> Meet {
    let o1 = orient(p.a, p.b, q.a);
    let o2 = orient(p.a, p.b, q.b);
    let o3 = orient(q.a, q.b, p.a);
    let o4 = orient(q.a, q.b, p.b);
    if o1 * o2 < 0 && o3 * o4 < 0 {
        return Meet::Proper(det(p.dir(), q.dir()));
    }
    let touch = (o1 == 0 && on_segment(p.a, p.b, q.a))
        || (o2 == 0 && on_segment(p.a, p.b, q.b))
        || (o3 == 0 && on_segment(q.a, q.b, p.a))
        || (o4 == 0 && on_segment(q.a, q.b, p.b));
    if touch {
        Meet::Degenerate
    } else {
        Meet::Disjoint
    }
}

/// All ways `p` and `q` meet on the torus (translates of `q` by the period).
pub fn torus_meets(p: &Seg, q: &Seg, mut f: impl FnMut(Meet)) {
    for k in -1..=1 {
        for l in -1..=1 {
            let m = meet(p, &q.shifted(k, l));
            if m != Meet::Disjoint {
                f(m);
            }
        }
    }
}

/// Candidate pairs of segments whose bounding boxes share a bucket.
pub struct Buckets {
    cells: Vec<Vec<usize>>,
}

impl Buckets {
    pub fn new(segs: &[Seg]) -> Self {
        let g = 64usize;
        let mut cells = vec![Vec::new(); g * g];
        let cell = PERIOD / g as i64 + 1;
        for (idx, s) in segs.iter().enumerate() {
            let (x0, x1) = (s.a[0].min(s.b[0]), s.a[0].max(s.b[0]));
            let (y0, y1) = (s.a[1].min(s.b[1]), s.a[1].max(s.b[1]));
            let (cx0, cx1) = (x0.div_euclid(cell), x1.div_euclid(cell));
            let (cy0, cy1) = (y0.div_euclid(cell), y1.div_euclid(cell));
            for cx in cx0..=cx1 {
                for cy in cy0..=cy1 {
                    let i = cx.rem_euclid(g as i64) as usize;
                    let j = cy.rem_euclid(g as i64) as usize;
                    let c = &mut cells[i * g + j];
                    if c.last() != Some(&idx) {
                        c.push(idx);
                    }
                }
            }
        }
        Buckets { cells }
    }

    /// Unordered pairs `(i, j)`, `i < j`, sharing at least one bucket.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for c in &self.cells {
            for (x, &i) in c.iter().enumerate() {
                for &j in &c[x + 1..] {
                    out.push((i.min(j), i.max(j)));
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// Euclidean distance from `p` to segment `a b` in the plane.
pub fn point_seg_dist(p: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    let d = [b[0] - a[0], b[1] - a[1]];
    let l2 = d[0] * d[0] + d[1] * d[1];
    let t = if l2 == 0.0 { 0.0 } else { (((p[0] - a[0]) * d[0] + (p[1] - a[1]) * d[1]) / l2).clamp(0.0, 1.0) };
    let q = [a[0] + t * d[0] - p[0], a[1] + t * d[1] - p[1]];
    crate::math::hypot(q[0], q[1])
}

/// Distance on the torus from `p` to a segment given with unwrapped end.
pub fn torus_point_seg_dist(p: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    let mut best = f64::INFINITY;
    for k in -1..=1 {
        for l in -1..=1 {
            let q = [p[0] + TAU * k as f64, p[1] + TAU * l as f64];
            best = best.min(point_seg_dist(q, a, b));
        }
    }
    best
}
