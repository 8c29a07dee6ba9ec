//! JSON link and diagram files, CSV dumps.

use std::fs;
use std::io::Write;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use triplelink_core::diagrams::{DiagramComponent, Geometry, TorusPolyline, ToralDiagram};
use triplelink_core::linkmodel::{binding_curve, is_binding, Curve, Link3, OpenBookSpec, TrigCurve, TrigSeries};
use triplelink_core::Quat;

use crate::{Error, Result};

/// A link file: three trigonometric components, or two open-book curves
/// with the binding circle as the third component.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LinkFile {
    Components { components: Vec<ComponentFile> },
    OpenBook { open_book: OpenBookPair },
}

/// Quaternions are written `[w, x, y, z]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ComponentFile {
    Trig {
        cos: Vec<[f64; 4]>,
        #[serde(default)]
        sin: Vec<[f64; 4]>,
    },
    /// Uniform samples over one period, fitted with `harmonics` modes.
    Samples { samples: Vec<[f64; 4]>, harmonics: usize },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OpenBookPair {
    pub x: OpenBookFile,
    pub y: OpenBookFile,
}

/// `θ(s) = winding·s + perturbation(s)`; `w` coefficients are `[re, im]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OpenBookFile {
    pub winding: i64,
    #[serde(default)]
    pub theta_perturbation: SeriesFile,
    pub w_cos: Vec<[f64; 2]>,
    #[serde(default)]
    pub w_sin: Vec<[f64; 2]>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SeriesFile {
    #[serde(default)]
    pub cos: Vec<f64>,
    #[serde(default)]
    pub sin: Vec<f64>,
}

fn quat(a: [f64; 4]) -> Quat {
    Quat::new(a[0], a[1], a[2], a[3])
}

fn quat_arr(q: Quat) -> [f64; 4] {
    [q.w, q.x, q.y, q.z]
}

fn cplx(a: [f64; 2]) -> Complex64 {
    Complex64::new(a[0], a[1])
}

fn finite(v: &[f64], what: &str) -> Result<()> {
    if v.iter().all(|x| x.is_finite()) {
        Ok(())
    } else {
        Err(Error::Format(format!("{what} contains a non-finite number")))
    }
}

impl OpenBookFile {
    fn to_spec(&self, which: &str) -> Result<OpenBookSpec> {
        finite(&self.theta_perturbation.cos, which)?;
        finite(&self.theta_perturbation.sin, which)?;
        finite(&self.w_cos.concat(), which)?;
        finite(&self.w_sin.concat(), which)?;
        if self.w_cos.is_empty() {
            return Err(Error::Format(format!("{which}: w_cos needs at least the constant term")));
        }
        let mut theta_cos = self.theta_perturbation.cos.clone();
        if theta_cos.is_empty() {
            theta_cos.push(0.0);
        }
        Ok(OpenBookSpec::new(
            self.winding,
            TrigSeries::new(theta_cos, self.theta_perturbation.sin.clone()),
            TrigSeries::new(self.w_cos.iter().copied().map(cplx).collect(), self.w_sin.iter().copied().map(cplx).collect()),
        ))
    }

    fn from_spec(spec: &OpenBookSpec) -> Self {
        let c = |v: &Complex64| [v.re, v.im];
        OpenBookFile {
            winding: spec.winding,
            theta_perturbation: SeriesFile { cos: spec.theta.cos.clone(), sin: spec.theta.sin.clone() },
            w_cos: spec.w.cos.iter().map(c).collect(),
            w_sin: spec.w.sin.iter().map(c).collect(),
        }
    }
}

impl LinkFile {
    /// Builds and validates the link.
    pub fn to_link(&self) -> Result<Link3> {
        match self {
            LinkFile::Components { components } => {
                if components.len() != 3 {
                    return Err(Error::Format(format!("expected 3 components, found {}", components.len())));
                }
                let mut curves = Vec::with_capacity(3);
                for (i, c) in components.iter().enumerate() {
                    let what = format!("component {i}");
                    curves.push(match c {
                        ComponentFile::Trig { cos, sin } => {
                            finite(&cos.concat(), &what)?;
                            finite(&sin.concat(), &what)?;
                            if cos.is_empty() {
                                return Err(Error::Format(format!("{what}: cos needs at least the constant term")));
                            }
                            Curve::Trig(TrigCurve::new(cos.iter().copied().map(quat).collect(), sin.iter().copied().map(quat).collect()))
                        }
                        ComponentFile::Samples { samples, harmonics } => {
                            finite(&samples.concat(), &what)?;
                            let pts: Vec<Quat> = samples.iter().copied().map(quat).collect();
                            Curve::from_samples(&pts, *harmonics)?
                        }
                    });
                }
                let z = curves.pop().unwrap();
                let y = curves.pop().unwrap();
                let x = curves.pop().unwrap();
                Ok(Link3::new(x, y, z)?)
            }
            LinkFile::OpenBook { open_book } => {
                let x = open_book.x.to_spec("x")?;
                let y = open_book.y.to_spec("y")?;
                Ok(Link3::new(Curve::OpenBook(x), Curve::OpenBook(y), binding_curve())?)
            }
        }
    }

    /// Inverse of [`LinkFile::to_link`] for trigonometric and open-book
    /// links. Moved curves have no file form.
    pub fn from_link(link: &Link3) -> Result<Self> {
        if let (Curve::OpenBook(x), Curve::OpenBook(y)) = (link.x(), link.y()) {
            if is_binding(link.z()) {
                return Ok(LinkFile::OpenBook {
                    open_book: OpenBookPair { x: OpenBookFile::from_spec(x), y: OpenBookFile::from_spec(y) },
                });
            }
        }
        let components = link
            .components()
            .iter()
            .enumerate()
            .map(|(i, c)| match c {
                Curve::Trig(t) => Ok(ComponentFile::Trig {
                    cos: t.cos.iter().copied().map(quat_arr).collect(),
                    sin: t.sin.iter().copied().map(quat_arr).collect(),
                }),
                _ => Err(Error::Format(format!("component {i} is not a trigonometric curve"))),
            })
            .collect::<Result<_>>()?;
        Ok(LinkFile::Components { components })
    }
}

pub fn load_link(path: &Path) -> Result<Link3> {
    let text = fs::read_to_string(path)?;
    let file: LinkFile = serde_json::from_str(&text).map_err(|e| Error::Format(format!("{}: {e}", path.display())))?;
    file.to_link()
}

pub fn save_link(path: &Path, link: &Link3) -> Result<()> {
    let file = LinkFile::from_link(link)?;
    fs::write(path, serde_json::to_string_pretty(&file)?)?;
    Ok(())
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct DiagramFile {
    #[serde(default)]
    pub curves: Vec<CurveFile>,
    #[serde(default)]
    pub points: Vec<PointFile>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurveFile {
    pub vertices: Vec<[f64; 2]>,
    #[serde(default)]
    pub framing: i64,
    #[serde(default)]
    pub vertical_winding: i64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointFile {
    pub at: [f64; 2],
    pub sign: i8,
    #[serde(default)]
    pub framing: i64,
}

impl DiagramFile {
    /// Curves first, then points, in file order.
    pub fn to_diagram(&self) -> Result<ToralDiagram> {
        let mut comps = Vec::with_capacity(self.curves.len() + self.points.len());
        for (i, c) in self.curves.iter().enumerate() {
            finite(&c.vertices.concat(), &format!("curve {i}"))?;
            comps.push(DiagramComponent::curve(TorusPolyline::new(c.vertices.clone())?, c.framing, c.vertical_winding));
        }
        for (i, p) in self.points.iter().enumerate() {
            finite(&p.at, &format!("point {i}"))?;
            if p.sign != 1 && p.sign != -1 {
                return Err(Error::Format(format!("point {i}: sign must be 1 or -1, got {}", p.sign)));
            }
            comps.push(DiagramComponent::point(p.at, p.sign, p.framing));
        }
        Ok(ToralDiagram::new(comps)?)
    }

    pub fn from_diagram(d: &ToralDiagram) -> Self {
        let mut out = DiagramFile::default();
        for c in d.components() {
            match &c.geometry {
                Geometry::Curve(poly) => out.curves.push(CurveFile {
                    vertices: poly.vertices().to_vec(),
                    framing: c.framing,
                    vertical_winding: c.vertical_winding,
                }),
                Geometry::Point { at, sign } => out.points.push(PointFile { at: *at, sign: *sign, framing: c.framing }),
            }
        }
        out
    }
}

pub fn load_diagram(path: &Path) -> Result<ToralDiagram> {
    let text = fs::read_to_string(path)?;
    let file: DiagramFile = serde_json::from_str(&text).map_err(|e| Error::Format(format!("{}: {e}", path.display())))?;
    file.to_diagram()
}

pub fn save_diagram(path: &Path, d: &ToralDiagram) -> Result<()> {
    fs::write(path, serde_json::to_string_pretty(&DiagramFile::from_diagram(d))?)?;
    Ok(())
}

/// Writes `header` then `rows` as CSV, numbers in shortest round-trip form.
pub fn write_csv<W: Write>(out: W, header: &[&str], rows: impl IntoIterator<Item = Vec<f64>>) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header)?;
    for row in rows {
        w.write_record(row.iter().map(|v| v.to_string()))?;
    }
    w.flush()?;
    Ok(())
}
