//! Toral diagrams read off a link in open-book position.
//!
//! For a generic link (`Z` the binding, page angles Morse on `X` and `Y`) the
//! isogonal set `{(s, t) : ℓ(x(s)) = ℓ(y(t))}` is a union of embedded
//! circles in T². Each carries a longitudinal degree `ℓᵢ` (turns around the
//! binding) and a meridional degree `mᵢ` (turns of `m(y) − m(x)` in the
//! half plane); with framing `−ℓᵢ − mᵢ` and vertical winding `mᵢ` they form
//! a toral diagram of the Pontryagin link of `h_L`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};

use crate::charfield::from_z;
use crate::config::{LinkConfig, TRACE_GRID, WINDING_RESIDUAL};
use crate::diagrams::{DiagramComponent, NuReport, ToralDiagram, TorusPolyline};
use crate::linkmodel::{genericity_check, Link3, PageAngle};
use crate::math::{angle_delta, atan2, canonical_angle, cos, hypot, round, sin};
use crate::quatgeo::{book_coords, Quat, UnitQuat};
use crate::{Error, Result};

const GRID_OFFSET: [f64; 2] = [0.3137, 0.5772];

/// Largest grid tried before giving up.
pub const MAX_TRACE_GRID: usize = 4096;

/// One traced icycle, oriented by the preferred orientation.
#[derive(Clone, Debug, PartialEq)]
pub struct IsogonalCurve {
    /// `(s, t)` vertices in `[0, 2π)²`.
    pub vertices: Vec<[f64; 2]>,
    /// Common page angle at each vertex.
    pub theta: Vec<f64>,
    /// Largest `|ℓ(x(s)) − ℓ(y(t))|` over the vertices.
    pub tolerance: f64,
    /// Grid the curve was traced on.
    pub grid: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BicycleData {
    pub longitudinal: i64,
    pub meridional: i64,
}

impl BicycleData {
    /// `nᵢ = −ℓᵢ − mᵢ`.
    pub fn framing(&self) -> i64 {
        -self.longitudinal - self.meridional
    }

    /// `rᵢ = mᵢ`.
    pub fn vertical_winding(&self) -> i64 {
        self.meridional
    }
}

/// Traces the isogonal curves, doubling the grid from 512 up to 4096 while
/// two curves share a cell.
pub fn trace_isogonal(link: &Link3) -> Result<Vec<IsogonalCurve>> {
    let mut n = TRACE_GRID;
    loop {
        match trace_isogonal_at(link, n) {
            Err(Error::ResolutionFailure) if n < MAX_TRACE_GRID => n *= 2,
            r => return r,
        }
    }
}

/// [`trace_isogonal`] on a single `n × n` grid.
pub fn trace_isogonal_at(link: &Link3, n: usize) -> Result<Vec<IsogonalCurve>> {
    genericity_check(link, &LinkConfig::default()).map_err(|e| match e {
        Error::NotGeneric(m) => Error::NotGeneric(m),
        e => Error::NotGeneric(format!("{e}")),
    })?;
    if n < 8 {
        return Err(Error::NotGeneric(format!("trace grid {n} too small")));
    }
    let px = PageAngle::new(link.x())?;
    let py = PageAngle::new(link.y())?;
    let h = TAU / n as f64;
    // Unequal offsets keep symmetric links from putting curves through nodes.
    let sx = |i: usize| h * (i as f64 + GRID_OFFSET[0]);
    let sy = |j: usize| h * (j as f64 + GRID_OFFSET[1]);
    let tx: Vec<f64> = (0..n).map(|i| px.value(sx(i))).collect();
    let ty: Vec<f64> = (0..n).map(|j| py.value(sy(j))).collect();
    let g = |i: usize, j: usize| angle_delta(ty[j % n], tx[i % n]);

    // Crossing on each edge: horizontal H(i, j) joins (i, j)-(i+1, j),
    // vertical V(i, j) joins (i, j)-(i, j+1). Ids 2(in + j) and 2(in + j) + 1.
    let crosses = |a: f64, b: f64| (a >= 0.0) != (b >= 0.0) && (a - b).abs() < PI;
    let mut point: Vec<Option<([f64; 2], f64)>> = vec![None; 2 * n * n];
    for i in 0..n {
        for j in 0..n {
            let a = g(i, j);
            if crosses(a, g(i + 1, j)) {
                let target = ty[j];
                let s = bisect(sx(i), sx(i + 1), a >= 0.0, |s| angle_delta(target, px.value(s)));
                let err = angle_delta(target, px.value(s)).abs();
                point[2 * (i * n + j)] = Some(([canonical_angle(s), sy(j)], err));
            }
            if crosses(a, g(i, j + 1)) {
                let target = tx[i];
                let t = bisect(sy(j), sy(j + 1), a >= 0.0, |t| angle_delta(py.value(t), target));
                let err = angle_delta(py.value(t), target).abs();
                point[2 * (i * n + j) + 1] = Some(([sx(i), canonical_angle(t)], err));
            }
        }
    }

    // Each cell joins its two crossings.
    let mut adj: Vec<[usize; 2]> = vec![[usize::MAX; 2]; 2 * n * n];
    let link_edges = |a: usize, b: usize, adj: &mut Vec<[usize; 2]>| -> Result<()> {
        for (x, y) in [(a, b), (b, a)] {
            let slot = adj[x].iter_mut().find(|v| **v == usize::MAX).ok_or(Error::ResolutionFailure)?;
            *slot = y;
        }
        Ok(())
    };
    for i in 0..n {
        for j in 0..n {
            let (i1, j1) = ((i + 1) % n, (j + 1) % n);
            let edges = [2 * (i * n + j), 2 * (i * n + j1), 2 * (i * n + j) + 1, 2 * (i1 * n + j) + 1];
            let hit: Vec<usize> = edges.into_iter().filter(|&e| point[e].is_some()).collect();
            match hit.len() {
                0 => {}
                2 => link_edges(hit[0], hit[1], &mut adj)?,
                _ => return Err(Error::ResolutionFailure),
            }
        }
    }

    let mut seen = vec![false; 2 * n * n];
    let mut curves = Vec::new();
    for start in 0..2 * n * n {
        if point[start].is_none() || seen[start] {
            continue;
        }
        let mut chain = Vec::new();
        let (mut prev, mut cur) = (usize::MAX, start);
        loop {
            if adj[cur].contains(&usize::MAX) {
                return Err(Error::ResolutionFailure);
            }
            seen[cur] = true;
            chain.push(cur);
            let next = if adj[cur][0] != prev { adj[cur][0] } else { adj[cur][1] };
            prev = cur;
            cur = next;
            if cur == start {
                break;
            }
        }
        let mut vertices: Vec<[f64; 2]> = Vec::with_capacity(chain.len());
        for &e in &chain {
            let p = point[e].unwrap().0;
            // A curve through a node crosses two edges at one point.
            if vertices.last().is_none_or(|q: &[f64; 2]| hypot(angle_delta(q[0], p[0]), angle_delta(q[1], p[1])) > 1e-12) {
                vertices.push(p);
            }
        }
        if vertices.len() > 1 && hypot(angle_delta(vertices[0][0], vertices[vertices.len() - 1][0]), angle_delta(vertices[0][1], vertices[vertices.len() - 1][1])) <= 1e-12 {
            vertices.pop();
        }
        if vertices.len() < 3 {
            return Err(Error::ResolutionFailure);
        }
        let tolerance = chain.iter().map(|&e| point[e].unwrap().1).fold(0.0, f64::max);
        orient(&mut vertices, &px, &py)?;
        let theta = vertices.iter().map(|v| canonical_angle(px.value(v[0]))).collect();
        curves.push(IsogonalCurve { vertices, theta, tolerance, grid: n });
    }

    // Reject curves that the polyline approximation made touch.
    if !curves.is_empty() {
        let comps = curves
            .iter()
            .map(|c| TorusPolyline::new(c.vertices.clone()).map(|p| DiagramComponent::curve(p, 0, 0)))
            .collect::<Result<Vec<_>>>()
            .map_err(|_| Error::ResolutionFailure)?;
        ToralDiagram::new(comps).map_err(|_| Error::ResolutionFailure)?;
    }
    Ok(curves)
}

fn bisect(mut lo: f64, mut hi: f64, lo_nonneg: bool, f: impl Fn(f64) -> f64) -> f64 {
    for _ in 0..64 {
        let mid = 0.5 * (lo + hi);
        if (f(mid) >= 0.0) == lo_nonneg {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-15 {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// Points the curve along `(ℓ_Y'(t), ℓ_X'(s))`: increasing `s` where `Y`
/// crosses the pages positively, decreasing where negatively.
fn orient(vertices: &mut [[f64; 2]], px: &PageAngle, py: &PageAngle) -> Result<()> {
    let k = vertices.len();
    let (mut fwd, mut back) = (0usize, 0usize);
    for i in 0..k {
        let (a, b) = (vertices[(i + k - 1) % k], vertices[(i + 1) % k]);
        let d = [angle_delta(a[0], b[0]), angle_delta(a[1], b[1])];
        let v = vertices[i];
        let tan = [py.deriv(v[1]), px.deriv(v[0])];
        let c = (d[0] * tan[0] + d[1] * tan[1]) / (hypot(d[0], d[1]) * hypot(tan[0], tan[1]));
        if c > 0.3 {
            fwd += 1;
        } else if c < -0.3 {
            back += 1;
        }
    }
    if fwd > 0 && back > 0 || fwd + back == 0 {
        return Err(Error::ResolutionFailure);
    }
    if back > 0 {
        vertices.reverse();
    }
    Ok(())
}

fn snap(turns: f64) -> Result<i64> {
    let k = round(turns);
    if (turns - k).abs() > WINDING_RESIDUAL {
        return Err(Error::WindingResidual { value: turns });
    }
    Ok(k as i64)
}

/// `(ℓᵢ, mᵢ)` of the bicycle over `curve`.
pub fn bicycle_degrees(link: &Link3, curve: &IsogonalCurve) -> Result<BicycleData> {
    let k = curve.vertices.len();
    let mut phase = Vec::with_capacity(k);
    for v in &curve.vertices {
        let x = book_coords(UnitQuat::normalize(link.x().point(v[0]))?)?;
        let y = book_coords(UnitQuat::normalize(link.y().point(v[1]))?)?;
        let d = y.w - x.w;
        phase.push(atan2(d.im, d.re));
    }
    let turns = |a: &[f64]| (0..k).map(|i| angle_delta(a[i], a[(i + 1) % k])).sum::<f64>() / TAU;
    Ok(BicycleData { longitudinal: snap(turns(&curve.theta))?, meridional: snap(turns(&phase))? })
}

/// Angle of `y_z − x_z` inside its page, measured from straight up, for
/// `z = cos α + k sin α`.
pub fn twist_angle(x: UnitQuat, y: UnitQuat, alpha: f64) -> Result<f64> {
    let z = Quat::new(cos(alpha), 0.0, 0.0, sin(alpha));
    let xz = from_z(*x, z)?;
    let yz = from_z(*y, z)?;
    let rho = hypot(xz.x, xz.y);
    if rho <= 1e-14 {
        return Err(Error::OnBinding);
    }
    let v = yz - xz;
    let across = (v.x * xz.x + v.y * xz.y) / rho;
    Ok(atan2(-across, v.z))
}

/// The `z = τ(x, y)` on the binding for which `y_z − x_z` points straight up.
pub fn solve_tau(x: UnitQuat, y: UnitQuat) -> Result<UnitQuat> {
    let (bx, by) = (book_coords(x)?, book_coords(y)?);
    if angle_delta(bx.theta, by.theta).abs() > 1e-8 {
        return Err(Error::NotIsogonal);
    }
    const K: usize = 64;
    let psi = |a: f64| twist_angle(x, y, a);
    let mut bracket = None;
    let mut prev = psi(0.0)?;
    for i in 1..=K {
        let a = TAU * i as f64 / K as f64;
        let cur = psi(a)?;
        if prev < 0.0 && cur >= 0.0 && cur - prev < PI {
            bracket = Some((a - TAU / K as f64, a));
            break;
        }
        prev = cur;
    }
    let (mut lo, mut hi) = bracket.ok_or(Error::NoConvergence)?;
    let mut steps = 0;
    while hi - lo > 1e-15 * TAU {
        steps += 1;
        if steps > 200 {
            return Err(Error::NoConvergence);
        }
        let mid = 0.5 * (lo + hi);
        if psi(mid)? < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let a = 0.5 * (lo + hi);
    UnitQuat::normalize(Quat::new(cos(a), 0.0, 0.0, sin(a)))
}

/// Height `u(s, t)` of the Pontryagin link over an isogonal point.
pub fn pontryagin_height(link: &Link3, s: f64, t: f64) -> Result<f64> {
    let z = solve_tau(UnitQuat::normalize(link.x().point(s))?, UnitQuat::normalize(link.y().point(t))?)?;
    Ok(canonical_angle(atan2(z.z, z.w)))
}

/// Everything the bicycle pipeline produces for one link.
#[derive(Clone, Debug)]
pub struct BicycleCensus {
    pub curves: Vec<IsogonalCurve>,
    pub degrees: Vec<BicycleData>,
    pub diagram: ToralDiagram,
}

pub fn bicycle_census(link: &Link3) -> Result<BicycleCensus> {
    let curves = trace_isogonal(link)?;
    let degrees = curves.iter().map(|c| bicycle_degrees(link, c)).collect::<Result<Vec<_>>>()?;
    let comps = curves
        .iter()
        .zip(&degrees)
        .map(|(c, d)| Ok(DiagramComponent::curve(TorusPolyline::new(c.vertices.clone())?, d.framing(), d.vertical_winding())))
        .collect::<Result<Vec<_>>>()?;
    let diagram = ToralDiagram::new(comps)?;
    Ok(BicycleCensus { curves, degrees, diagram })
}

/// The icycles with framings `−ℓᵢ − mᵢ` and vertical windings `mᵢ`.
pub fn to_diagram(link: &Link3) -> Result<ToralDiagram> {
    Ok(bicycle_census(link)?.diagram)
}

/// ν of `h_L` from the bicycle diagram, with the full report.
pub fn nu_report_via_bicycles(link: &Link3) -> Result<NuReport> {
    to_diagram(link)?.nu(None)
}

pub fn nu_via_bicycles(link: &Link3) -> Result<crate::ResidueClass> {
    Ok(nu_report_via_bicycles(link)?.value)
}
