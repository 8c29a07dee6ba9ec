//! Crossing-free toral diagrams of framed links in T³ and their absolute
//! Pontryagin invariant `ν = n + pq + Σ dᵢ rᵢ mod 2·gcd(p, q, r)`.

mod lattice;

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};

use crate::math::{angle_delta, canonical_angle, cos, gcd, hypot, sin, sqrt};
use crate::milnorwords::ResidueClass;
use crate::{Error, Result};

use lattice::{snap, torus_meets, torus_point_seg_dist, wrap, Buckets, Meet, Seg, PERIOD};

/// Closest approach allowed between a path or marked point and the diagram.
const TOUCH_TOL: f64 = 1e-9;
/// Offset used to step off a curve at the start of a depth path.
const STEP_OFF: f64 = 1e-7;

/// Closed oriented polyline on `T² = ℝ²/(2πℤ)²`.
///
/// Vertices are stored reduced to `[0, 2π)²`. Each edge is the short way
/// round, so consecutive vertices must differ by less than `π` per axis.
#[derive(Clone, Debug, PartialEq)]
pub struct TorusPolyline {
    vertices: Vec<[f64; 2]>,
}

fn lattice_delta(a: i64, b: i64) -> i64 {
    let d = wrap(b - a);
    if d > PERIOD / 2 {
        d - PERIOD
    } else {
        d
    }
}

impl TorusPolyline {
    pub fn new(vertices: Vec<[f64; 2]>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::InvalidDiagram(format!("a curve needs at least 3 vertices, got {}", vertices.len())));
        }
        if vertices.iter().any(|v| !v[0].is_finite() || !v[1].is_finite()) {
            return Err(Error::InvalidDiagram("non-finite vertex".into()));
        }
        let vertices: Vec<[f64; 2]> = vertices.iter().map(|v| [canonical_angle(v[0]), canonical_angle(v[1])]).collect();
        let n = vertices.len();
        for i in 0..n {
            let (a, b) = (vertices[i], vertices[(i + 1) % n]);
            let d = [angle_delta(a[0], b[0]), angle_delta(a[1], b[1])];
            if d[0].abs() >= PI - 1e-9 || d[1].abs() >= PI - 1e-9 {
                return Err(Error::InvalidDiagram(format!("edge {i} spans half the torus; subdivide it")));
            }
            if hypot(d[0], d[1]) <= TOUCH_TOL {
                return Err(Error::InvalidDiagram(format!("edge {i} has zero length")));
            }
        }
        Ok(TorusPolyline { vertices })
    }

    /// Straight closed curve of class `(a, b)` through `start`.
    pub fn line(start: [f64; 2], class: (i64, i64)) -> Result<Self> {
        let (a, b) = class;
        if a == 0 && b == 0 {
            return Err(Error::InvalidDiagram("a straight curve needs a nonzero class".into()));
        }
        let k = 4 * a.unsigned_abs().max(b.unsigned_abs()) as usize + 4;
        let v = (0..k)
            .map(|i| {
                let f = i as f64 / k as f64;
                [start[0] + TAU * a as f64 * f, start[1] + TAU * b as f64 * f]
            })
            .collect();
        Self::new(v)
    }

    /// Regular `k`-gon approximating a circle.
    pub fn circle(center: [f64; 2], radius: f64, ccw: bool, k: usize) -> Result<Self> {
        if !(radius > 0.0 && radius < 1.0) {
            return Err(Error::InvalidDiagram(format!("circle radius {radius} out of range")));
        }
        let o = if ccw { 1.0 } else { -1.0 };
        let v = (0..k.max(3))
            .map(|i| {
                let a = o * TAU * i as f64 / k.max(3) as f64;
                [center[0] + radius * cos(a), center[1] + radius * sin(a)]
            })
            .collect();
        Self::new(v)
    }

    pub fn vertices(&self) -> &[[f64; 2]] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Edge displacements, each within `(−π, π)` per axis.
    pub fn deltas(&self) -> Vec<[f64; 2]> {
        let n = self.vertices.len();
        (0..n)
            .map(|i| {
                let (a, b) = (self.vertices[i], self.vertices[(i + 1) % n]);
                [angle_delta(a[0], b[0]), angle_delta(a[1], b[1])]
            })
            .collect()
    }

    fn lattice(&self) -> Vec<[i64; 2]> {
        self.vertices.iter().map(|v| [wrap(snap(v[0])), wrap(snap(v[1]))]).collect()
    }

    fn segments(&self) -> Vec<Seg> {
        let l = self.lattice();
        let n = l.len();
        (0..n)
            .map(|i| {
                let (a, b) = (l[i], l[(i + 1) % n]);
                let d = [lattice_delta(a[0], b[0]), lattice_delta(a[1], b[1])];
                Seg { a, b: [a[0] + d[0], a[1] + d[1]] }
            })
            .collect()
    }

    /// Homology class `(a, b)`: net turns in `s` and in `t`.
    pub fn class(&self) -> (i64, i64) {
        let mut sum = [0i64; 2];
        for s in self.segments() {
            sum[0] += s.b[0] - s.a[0];
            sum[1] += s.b[1] - s.a[1];
        }
        (sum[0] / PERIOD, sum[1] / PERIOD)
    }

    /// Vertices along a continuous lift starting at vertex 0.
    pub fn unwrapped(&self) -> Vec<[f64; 2]> {
        let mut out = Vec::with_capacity(self.vertices.len());
        let mut p = self.vertices[0];
        out.push(p);
        for d in &self.deltas()[..self.vertices.len() - 1] {
            p = [p[0] + d[0], p[1] + d[1]];
            out.push(p);
        }
        out
    }

    /// Shoelace area of the lift; positive for counterclockwise null-homotopic curves.
    pub fn signed_area(&self) -> f64 {
        let u = self.unwrapped();
        let n = u.len();
        let mut a = 0.0;
        for i in 0..n {
            let (p, q) = (u[i], u[(i + 1) % n]);
            a += p[0] * q[1] - q[0] * p[1];
        }
        0.5 * a
    }

    pub fn translated(&self, ds: f64, dt: f64) -> TorusPolyline {
        TorusPolyline { vertices: self.vertices.iter().map(|v| [canonical_angle(v[0] + ds), canonical_angle(v[1] + dt)]).collect() }
    }

    pub fn reversed(&self) -> TorusPolyline {
        let mut v = self.vertices.clone();
        v.reverse();
        TorusPolyline { vertices: v }
    }

    /// Edge `i` as `(start, unwrapped end)`.
    pub fn edge(&self, i: usize) -> ([f64; 2], [f64; 2]) {
        let a = self.vertices[i];
        let b = self.vertices[(i + 1) % self.vertices.len()];
        (a, [a[0] + angle_delta(a[0], b[0]), a[1] + angle_delta(a[1], b[1])])
    }

    /// Distance on the torus from `p` to the curve.
    pub fn distance_to(&self, p: [f64; 2]) -> f64 {
        let p = [canonical_angle(p[0]), canonical_angle(p[1])];
        (0..self.len()).map(|i| {
            let (a, b) = self.edge(i);
            torus_point_seg_dist(p, a, b)
        }).fold(f64::INFINITY, f64::min)
    }

    /// Whether `p` is enclosed by this null-homotopic curve.
    fn encloses(&self, p: [f64; 2]) -> bool {
        let u = self.unwrapped();
        let n = u.len();
        let c = u.iter().fold([0.0, 0.0], |acc, v| [acc[0] + v[0] / n as f64, acc[1] + v[1] / n as f64]);
        let q = [c[0] + angle_delta(c[0], p[0]), c[1] + angle_delta(c[1], p[1])];
        let mut wind = 0.0;
        for i in 0..n {
            let (a, b) = (u[i], u[(i + 1) % n]);
            let (x0, y0, x1, y1) = (a[0] - q[0], a[1] - q[1], b[0] - q[0], b[1] - q[1]);
            wind += crate::math::atan2(x0 * y1 - y0 * x1, x0 * x1 + y0 * y1);
        }
        wind.abs() > PI
    }
}

/// Shape of a diagram component.
#[derive(Clone, Debug, PartialEq)]
pub enum Geometry {
    Curve(TorusPolyline),
    /// Isolated marked point: a vertical circle oriented up (`+1`) or down.
    Point { at: [f64; 2], sign: i8 },
}

/// One component with its framing and vertical winding number. For a
/// curve the internal marked points are summarized by their sign total.
#[derive(Clone, Debug, PartialEq)]
pub struct DiagramComponent {
    pub geometry: Geometry,
    pub framing: i64,
    pub vertical_winding: i64,
}

impl DiagramComponent {
    pub fn curve(poly: TorusPolyline, framing: i64, vertical_winding: i64) -> Self {
        DiagramComponent { geometry: Geometry::Curve(poly), framing, vertical_winding }
    }

    pub fn point(at: [f64; 2], sign: i8, framing: i64) -> Self {
        DiagramComponent {
            geometry: Geometry::Point { at: [canonical_angle(at[0]), canonical_angle(at[1])], sign },
            framing,
            vertical_winding: sign as i64,
        }
    }

    pub fn is_point(&self) -> bool {
        matches!(self.geometry, Geometry::Point { .. })
    }

    fn distance_to(&self, p: [f64; 2]) -> f64 {
        match &self.geometry {
            Geometry::Curve(c) => c.distance_to(p),
            Geometry::Point { at, .. } => {
                let d = [angle_delta(at[0], p[0]), angle_delta(at[1], p[1])];
                hypot(d[0], d[1])
            }
        }
    }

    fn translated(&self, ds: f64, dt: f64) -> Self {
        let geometry = match &self.geometry {
            Geometry::Curve(c) => Geometry::Curve(c.translated(ds, dt)),
            Geometry::Point { at, sign } => Geometry::Point { at: [canonical_angle(at[0] + ds), canonical_angle(at[1] + dt)], sign: *sign },
        };
        DiagramComponent { geometry, ..self.clone() }
    }
}

/// A crossing-free toral diagram.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct ToralDiagram {
    components: Vec<DiagramComponent>,
}

/// Everything that goes into [`ToralDiagram::nu`].
#[derive(Clone, Debug, PartialEq)]
pub struct NuReport {
    pub p: i64,
    pub q: i64,
    pub r: i64,
    pub total_framing: i64,
    pub basepoint: [f64; 2],
    pub depths: Vec<i64>,
    pub value: ResidueClass,
}

struct Tagged {
    comp: usize,
    idx: usize,
    seg: Seg,
}

impl ToralDiagram {
    pub fn new(components: Vec<DiagramComponent>) -> Result<Self> {
        let d = ToralDiagram { components };
        d.validate()?;
        Ok(d)
    }

    /// Skips validation, e.g. to read winding numbers off a diagram with
    /// crossings. [`nu`](Self::nu) still validates.
    pub fn new_unchecked(components: Vec<DiagramComponent>) -> Self {
        ToralDiagram { components }
    }

    pub fn empty() -> Self {
        ToralDiagram::default()
    }

    pub fn components(&self) -> &[DiagramComponent] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    fn tagged_segments(&self) -> Vec<Tagged> {
        let mut out = Vec::new();
        for (comp, c) in self.components.iter().enumerate() {
            if let Geometry::Curve(poly) = &c.geometry {
                for (idx, seg) in poly.segments().into_iter().enumerate() {
                    out.push(Tagged { comp, idx, seg });
                }
            }
        }
        out
    }

    /// Checks marked-point data, embeddedness and disjointness.
    pub fn validate(&self) -> Result<()> {
        for (i, c) in self.components.iter().enumerate() {
            if let Geometry::Point { sign, .. } = c.geometry {
                if sign != 1 && sign != -1 {
                    return Err(Error::InvalidDiagram(format!("component {i}: marked point sign must be +1 or -1")));
                }
                if c.vertical_winding != sign as i64 {
                    return Err(Error::InvalidDiagram(format!("component {i}: isolated point must have vertical winding equal to its sign")));
                }
            }
        }
        let segs = self.tagged_segments();
        let lens: Vec<usize> = self
            .components
            .iter()
            .map(|c| match &c.geometry {
                Geometry::Curve(p) => p.len(),
                _ => 0,
            })
            .collect();
        // Adjacent edges may only share their common vertex.
        for (k, t) in segs.iter().enumerate() {
            let n = lens[t.comp];
            let next = if t.idx + 1 == n { k + 1 - n } else { k + 1 };
            let (u, v) = (t.seg.dir(), segs[next].seg.dir());
            if lattice::det(u, v) == 0 && (u[0] as i128 * v[0] as i128 + u[1] as i128 * v[1] as i128) < 0 {
                return Err(Error::InvalidDiagram(format!("component {} doubles back at vertex {}", t.comp, (t.idx + 1) % n)));
            }
        }
        let buckets = Buckets::new(&segs.iter().map(|t| t.seg).collect::<Vec<_>>());
        for (a, b) in buckets.pairs() {
            let (sa, sb) = (&segs[a], &segs[b]);
            if sa.comp == sb.comp {
                let n = lens[sa.comp];
                let diff = (sa.idx as i64 - sb.idx as i64).rem_euclid(n as i64);
                if diff == 1 || diff == n as i64 - 1 {
                    continue;
                }
            }
            let mut hit = false;
            torus_meets(&sa.seg, &sb.seg, |_| hit = true);
            if hit {
                return Err(Error::InvalidDiagram(if sa.comp == sb.comp {
                    format!("component {} intersects itself", sa.comp)
                } else {
                    format!("components {} and {} cross", sa.comp, sb.comp)
                }));
            }
        }
        for (i, c) in self.components.iter().enumerate() {
            if let Geometry::Point { at, .. } = c.geometry {
                for (j, o) in self.components.iter().enumerate() {
                    if j != i && o.distance_to(at) <= TOUCH_TOL {
                        return Err(Error::InvalidDiagram(format!("marked point {i} lies on component {j}")));
                    }
                }
            }
        }
        Ok(())
    }

    /// Smallest distance between two distinct components.
    pub fn min_separation(&self) -> f64 {
        let mut best = f64::INFINITY;
        let n = self.components.len();
        for i in 0..n {
            for j in i + 1..n {
                let pts_i = sample_points(&self.components[i]);
                for p in pts_i {
                    best = best.min(self.components[j].distance_to(p));
                }
                let pts_j = sample_points(&self.components[j]);
                for p in pts_j {
                    best = best.min(self.components[i].distance_to(p));
                }
            }
        }
        best
    }

    /// `(p, q, r)`: summed curve classes and summed vertical windings.
    pub fn winding_numbers(&self) -> (i64, i64, i64) {
        let (mut p, mut q, mut r) = (0, 0, 0);
        for c in &self.components {
            if let Geometry::Curve(poly) = &c.geometry {
                let (a, b) = poly.class();
                p += a;
                q += b;
            }
            r += c.vertical_winding;
        }
        (p, q, r)
    }

    pub fn total_framing(&self) -> i64 {
        self.components.iter().map(|c| c.framing).sum()
    }

    /// `2·gcd(p, q, r)`, the modulus of `ν`.
    pub fn nu_modulus(&self) -> i64 {
        let (p, q, r) = self.winding_numbers();
        2 * gcd(gcd(p, q), r)
    }

    fn count_crossings(&self, path: &[[f64; 2]]) -> Result<i64> {
        let segs = self.tagged_segments();
        let mut total = 0i64;
        for w in path.windows(2) {
            let (a, b) = (w[0], w[1]);
            let span = (b[0] - a[0]).abs().max((b[1] - a[1]).abs());
            let pieces = (span / 1.5) as usize + 1;
            for k in 0..pieces {
                let f0 = k as f64 / pieces as f64;
                let f1 = (k + 1) as f64 / pieces as f64;
                let p0 = [a[0] + (b[0] - a[0]) * f0, a[1] + (b[1] - a[1]) * f0];
                let p1 = [a[0] + (b[0] - a[0]) * f1, a[1] + (b[1] - a[1]) * f1];
                let piece = Seg::normalized([snap(p0[0]), snap(p0[1])], [snap(p1[0]), snap(p1[1])]);
                for t in &segs {
                    let mut bad = false;
                    torus_meets(&piece, &t.seg, |m| match m {
                        Meet::Proper(s) => total += s as i64,
                        _ => bad = true,
                    });
                    if bad {
                        return Err(Error::NonGenericPath);
                    }
                }
            }
        }
        Ok(total)
    }

    /// Depth of component `i` along `path`, which starts on the component
    /// and ends at the basepoint (coordinates may be unwrapped).
    ///
    /// Returned as an integer; it is meaningful modulo `2·gcd(p, q)`.
    pub fn depth(&self, i: usize, path: &[[f64; 2]]) -> Result<i64> {
        let comp = self.components.get(i).ok_or_else(|| Error::InvalidDiagram(format!("no component {i}")))?;
        if path.len() < 2 {
            return Err(Error::InvalidDiagram("a path needs at least two points".into()));
        }
        let end = path[path.len() - 1];
        if self.components.iter().any(|c| c.distance_to(end) <= TOUCH_TOL) {
            return Err(Error::NonGenericPath);
        }
        let first_leg = path
            .windows(2)
            .map(|w| [w[1][0] - w[0][0], w[1][1] - w[0][1]])
            .find(|d| hypot(d[0], d[1]) > 1e-6)
            .ok_or(Error::NonGenericPath)?;
        match &comp.geometry {
            Geometry::Point { at, .. } => {
                let d = [angle_delta(at[0], path[0][0]), angle_delta(at[1], path[0][1])];
                if hypot(d[0], d[1]) > 1e-6 {
                    return Err(Error::InvalidDiagram(format!("path does not start at marked point {i}")));
                }
                Ok(2 * self.count_crossings(path)?)
            }
            Geometry::Curve(poly) => {
                let start = [canonical_angle(path[0][0]), canonical_angle(path[0][1])];
                let (mut best, mut edge) = (f64::INFINITY, 0);
                for e in 0..poly.len() {
                    let (a, b) = poly.edge(e);
                    let dist = torus_point_seg_dist(start, a, b);
                    if dist < best {
                        best = dist;
                        edge = e;
                    }
                }
                if best > 1e-6 {
                    return Err(Error::InvalidDiagram(format!("path does not start on component {i}")));
                }
                let (a, b) = poly.edge(edge);
                let tangent = [b[0] - a[0], b[1] - a[1]];
                let (lt, lg) = (hypot(tangent[0], tangent[1]), hypot(first_leg[0], first_leg[1]));
                let cross = (first_leg[0] * tangent[1] - first_leg[1] * tangent[0]) / (lt * lg);
                if cross.abs() < 1e-6 {
                    return Err(Error::NonGenericPath);
                }
                let half = if cross > 0.0 { 1 } else { -1 };
                let step = [path[0][0] + STEP_OFF * first_leg[0] / lg, path[0][1] + STEP_OFF * first_leg[1] / lg];
                let mut rest = vec![step];
                rest.extend_from_slice(&path[1..]);
                Ok(half + 2 * self.count_crossings(&rest)?)
            }
        }
    }

    /// Point of the `256²` cell-centre grid farthest from the diagram;
    /// ties go to the first cell in `(s, t)` order.
    pub fn auto_basepoint(&self) -> [f64; 2] {
        const G: usize = 256;
        let h = TAU / G as f64;
        let mut occ = vec![false; G * G];
        let mark = |occ: &mut Vec<bool>, p: [f64; 2]| {
            let i = (canonical_angle(p[0]) / h) as usize % G;
            let j = (canonical_angle(p[1]) / h) as usize % G;
            occ[i * G + j] = true;
        };
        for c in &self.components {
            match &c.geometry {
                Geometry::Point { at, .. } => mark(&mut occ, *at),
                Geometry::Curve(poly) => {
                    for e in 0..poly.len() {
                        let (a, b) = poly.edge(e);
                        let len = hypot(b[0] - a[0], b[1] - a[1]);
                        let k = (4.0 * len / h) as usize + 1;
                        for m in 0..=k {
                            let f = m as f64 / k as f64;
                            mark(&mut occ, [a[0] + f * (b[0] - a[0]), a[1] + f * (b[1] - a[1])]);
                        }
                    }
                }
            }
        }
        let dist = periodic_edt(&occ, G);
        let mut best = (f64::NEG_INFINITY, 0);
        for (k, &d) in dist.iter().enumerate() {
            if d > best.0 {
                best = (d, k);
            }
        }
        [(best.1 / G) as f64 * h + 0.5 * h, (best.1 % G) as f64 * h + 0.5 * h]
    }

    fn l_paths(from: [f64; 2], to: [f64; 2]) -> [Vec<[f64; 2]>; 2] {
        let ds = angle_delta(from[0], to[0]);
        let dt = angle_delta(from[1], to[1]);
        let end = [from[0] + ds, from[1] + dt];
        let clean = |v: Vec<[f64; 2]>| {
            let mut out: Vec<[f64; 2]> = Vec::new();
            for p in v {
                if out.last().is_none_or(|q: &[f64; 2]| hypot(p[0] - q[0], p[1] - q[1]) > 1e-12) {
                    out.push(p);
                }
            }
            out
        };
        [clean(vec![from, [end[0], from[1]], end]), clean(vec![from, [from[0], end[1]], end])]
    }

    /// Depth of component `i` along an automatically chosen rectilinear path.
    pub fn auto_depth(&self, i: usize, basepoint: [f64; 2]) -> Result<i64> {
        let comp = &self.components[i];
        let starts: Vec<[f64; 2]> = match &comp.geometry {
            Geometry::Point { at, .. } => {
                let clear = self.components.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, c)| c.distance_to(*at)).fold(1.0f64, f64::min);
                let r = (0.5 * clear).min(1e-3);
                let mut v = vec![*at];
                for k in 1..16 {
                    let a = 2.399963 * k as f64;
                    v.push([at[0] + r * cos(a), at[1] + r * sin(a)]);
                }
                v
            }
            Geometry::Curve(poly) => {
                let mut v = Vec::new();
                for f in [0.5, 0.37, 0.63] {
                    for e in 0..poly.len() {
                        let (a, b) = poly.edge(e);
                        v.push([a[0] + f * (b[0] - a[0]), a[1] + f * (b[1] - a[1])]);
                    }
                }
                v
            }
        };
        for (k, s) in starts.iter().enumerate() {
            for path in Self::l_paths(*s, basepoint) {
                let path = if comp.is_point() && k > 0 {
                    let at = starts[0];
                    let mut p = vec![at];
                    p.extend(path);
                    p
                } else {
                    path
                };
                if path.len() < 2 {
                    continue;
                }
                match self.depth(i, &path) {
                    Err(Error::NonGenericPath) => continue,
                    r => return r,
                }
            }
        }
        Err(Error::NonGenericPath)
    }

    /// `ν = n + pq + Σ dᵢ rᵢ` modulo `2·gcd(p, q, r)`, with depths taken along
    /// L-shaped paths to `basepoint` (or to [`auto_basepoint`](Self::auto_basepoint)).
    pub fn nu(&self, basepoint: Option<[f64; 2]>) -> Result<NuReport> {
        self.validate()?;
        let (p, q, r) = self.winding_numbers();
        let n = self.total_framing();
        let bp = basepoint.unwrap_or_else(|| self.auto_basepoint());
        let mut depths = Vec::with_capacity(self.components.len());
        for i in 0..self.components.len() {
            depths.push(self.auto_depth(i, bp)?);
        }
        let sum: i64 = depths.iter().zip(&self.components).map(|(d, c)| d * c.vertical_winding).sum();
        let value = ResidueClass::new(n + p * q + sum, 2 * gcd(gcd(p, q), r));
        Ok(NuReport { p, q, r, total_framing: n, basepoint: bp, depths, value })
    }

    /// `ν` from explicitly given paths, one per component.
    pub fn nu_with_paths(&self, paths: &[Vec<[f64; 2]>]) -> Result<NuReport> {
        self.validate()?;
        if paths.len() != self.components.len() {
            return Err(Error::InvalidDiagram("need one path per component".into()));
        }
        let (p, q, r) = self.winding_numbers();
        let n = self.total_framing();
        let mut depths = Vec::with_capacity(paths.len());
        let mut bp = None;
        for (i, path) in paths.iter().enumerate() {
            let end = *path.last().ok_or(Error::NonGenericPath)?;
            let end = [canonical_angle(end[0]), canonical_angle(end[1])];
            if let Some(b) = bp {
                let b: [f64; 2] = b;
                if hypot(angle_delta(b[0], end[0]), angle_delta(b[1], end[1])) > 1e-9 {
                    return Err(Error::InvalidDiagram("paths must share the basepoint".into()));
                }
            }
            bp = Some(end);
            depths.push(self.depth(i, path)?);
        }
        let sum: i64 = depths.iter().zip(&self.components).map(|(d, c)| d * c.vertical_winding).sum();
        let value = ResidueClass::new(n + p * q + sum, 2 * gcd(gcd(p, q), r));
        Ok(NuReport { p, q, r, total_framing: n, basepoint: bp.unwrap_or([0.0, 0.0]), depths, value })
    }

    /// Replaces isolated point `i` by a small circle with one internal marked
    /// point, counterclockwise for `direction > 0`. The framing becomes
    /// `n − sign·o` with `o = ±1` the circle's turning, which keeps `ν`.
    pub fn convert_isolated(&self, i: usize, direction: i8) -> Result<ToralDiagram> {
        let comp = self.components.get(i).ok_or(Error::NotIsolated(i))?;
        let Geometry::Point { at, sign } = comp.geometry else {
            return Err(Error::NotIsolated(i));
        };
        let clear = self.components.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, c)| c.distance_to(at)).fold(f64::INFINITY, f64::min);
        let radius = (clear / 3.0).min(0.05);
        if radius < 1e-6 {
            return Err(Error::InvalidDiagram(format!("no room to open marked point {i}")));
        }
        let ccw = direction > 0;
        let o = if ccw { 1 } else { -1 };
        let circle = TorusPolyline::circle(at, radius, ccw, 24)?;
        let mut comps = self.components.clone();
        comps[i] = DiagramComponent::curve(circle, comp.framing - sign as i64 * o, sign as i64);
        ToralDiagram::new(comps)
    }

    /// Inverse of [`convert_isolated`](Self::convert_isolated): shrinks an
    /// empty null-homotopic curve with vertical winding `±1` to a marked point.
    pub fn collapse_circle(&self, i: usize) -> Result<ToralDiagram> {
        let comp = self.components.get(i).ok_or_else(|| Error::InvalidDiagram(format!("no component {i}")))?;
        let Geometry::Curve(poly) = &comp.geometry else {
            return Err(Error::InvalidDiagram(format!("component {i} is already a point")));
        };
        if poly.class() != (0, 0) || comp.vertical_winding.abs() != 1 {
            return Err(Error::InvalidDiagram(format!("component {i} is not a trivial circle with one marked point")));
        }
        for (j, c) in self.components.iter().enumerate() {
            if j == i {
                continue;
            }
            let probe = match &c.geometry {
                Geometry::Point { at, .. } => *at,
                Geometry::Curve(p) => p.vertices()[0],
            };
            if poly.encloses(probe) {
                return Err(Error::InvalidDiagram(format!("component {i} encloses component {j}")));
            }
        }
        let o = if poly.signed_area() > 0.0 { 1 } else { -1 };
        let u = poly.unwrapped();
        let m = u.len() as f64;
        let c = u.iter().fold([0.0, 0.0], |acc, v| [acc[0] + v[0] / m, acc[1] + v[1] / m]);
        let sign = comp.vertical_winding;
        let mut comps = self.components.clone();
        comps[i] = DiagramComponent::point(c, sign as i8, comp.framing + sign * o);
        ToralDiagram::new(comps)
    }

    pub fn translated(&self, ds: f64, dt: f64) -> ToralDiagram {
        ToralDiagram { components: self.components.iter().map(|c| c.translated(ds, dt)).collect() }
    }

    /// Disjoint union.
    pub fn union(&self, other: &ToralDiagram) -> Result<ToralDiagram> {
        let mut comps = self.components.clone();
        comps.extend(other.components.iter().cloned());
        ToralDiagram::new(comps)
    }

    /// Diagram of the `(p, q)` torus link: `gcd(p, q)` parallel straight
    /// curves, all of the framing on the first one, which also carries the
    /// vertical winding `r`. For `p = q = 0` a small circle stands in for it.
    pub fn torus_link(p: i64, q: i64, r: i64, framing: i64) -> Result<ToralDiagram> {
        if p == 0 && q == 0 {
            let c = TorusPolyline::circle([PI, PI], 0.3, true, 32)?;
            return ToralDiagram::new(vec![DiagramComponent::curve(c, framing, r)]);
        }
        let g = gcd(p, q);
        let (a, b) = (p / g, q / g);
        let mut comps = Vec::with_capacity(g as usize);
        for k in 0..g {
            let start = if b != 0 {
                [TAU * (k as f64 + 0.5) / (g * b.abs()) as f64, 0.0]
            } else {
                [0.0, TAU * (k as f64 + 0.5) / (g * a.abs()) as f64]
            };
            let poly = TorusPolyline::line(start, (a, b))?;
            let (n, rr) = if k == 0 { (framing, r) } else { (0, 0) };
            comps.push(DiagramComponent::curve(poly, n, rr));
        }
        ToralDiagram::new(comps)
    }
}

fn sample_points(c: &DiagramComponent) -> Vec<[f64; 2]> {
    match &c.geometry {
        Geometry::Point { at, .. } => vec![*at],
        Geometry::Curve(poly) => {
            let mut v = Vec::new();
            for e in 0..poly.len() {
                let (a, b) = poly.edge(e);
                for k in 0..8 {
                    let f = k as f64 / 8.0;
                    v.push([a[0] + f * (b[0] - a[0]), a[1] + f * (b[1] - a[1])]);
                }
            }
            v
        }
    }
}

/// Exact squared Euclidean distance transform of a periodic 1-D profile.
#[allow(clippy::needless_range_loop)]
fn edt_1d(f: &[f64]) -> Vec<f64> {
    let n = f.len();
    let m = 3 * n;
    let g: Vec<f64> = (0..m).map(|i| f[i % n]).collect();
    let mut v = vec![0usize; m];
    let mut z = vec![0.0f64; m + 1];
    let big = 1e20;
    let Some(first) = (0..m).find(|&i| g[i] < big) else {
        return vec![big; n];
    };
    let meet = |q: usize, p: usize| ((g[q] + (q * q) as f64) - (g[p] + (p * p) as f64)) / (2.0 * (q as f64 - p as f64));
    let mut k = 0usize;
    v[0] = first;
    z[0] = f64::NEG_INFINITY;
    z[1] = f64::INFINITY;
    for q in first + 1..m {
        if g[q] >= big {
            continue;
        }
        let mut s = meet(q, v[k]);
        while s <= z[k] {
            k -= 1;
            s = meet(q, v[k]);
        }
        k += 1;
        v[k] = q;
        z[k] = s;
        z[k + 1] = f64::INFINITY;
    }
    let mut out = vec![0.0; n];
    let mut j = 0usize;
    for q in 0..m {
        while z[j + 1] < q as f64 {
            j += 1;
        }
        if (n..2 * n).contains(&q) {
            let d = q as f64 - v[j] as f64;
            out[q - n] = d * d + g[v[j]];
        }
    }
    out
}

/// Euclidean distance (in cells) to the nearest occupied cell of a periodic grid.
fn periodic_edt(occ: &[bool], n: usize) -> Vec<f64> {
    let big = 1e20;
    let mut d: Vec<f64> = occ.iter().map(|&o| if o { 0.0 } else { big }).collect();
    for i in 0..n {
        let row = edt_1d(&d[i * n..(i + 1) * n]);
        d[i * n..(i + 1) * n].copy_from_slice(&row);
    }
    for j in 0..n {
        let col: Vec<f64> = (0..n).map(|i| d[i * n + j]).collect();
        let col = edt_1d(&col);
        for i in 0..n {
            d[i * n + j] = col[i];
        }
    }
    d.into_iter().map(sqrt).collect()
}
