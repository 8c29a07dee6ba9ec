use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

/// Failures across the crate. Numerical variants carry the offending value.
#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    NotUnit(f64),
    NearAntipode,
    DegeneratePlane,
    OnBinding,
    NonPositiveHeight,
    CoincidentPoints,
    NearPole,
    OffSphere { component: usize, param: f64, deviation: f64 },
    NotImmersed { component: usize, param: f64 },
    ComponentsTooClose { pair: (usize, usize), distance: f64 },
    BadCurve(String),
    NotOpenBook,
    DegenerateCritical { component: usize, param: f64 },
    SharedCriticalValue { value: f64 },
    PoleOnCurve,
    NonIntegerResult { value: f64 },
    AliasBound { nmax: usize, grid: usize },
    NonMeanZero,
    BadDegree(u8),
    NotExact,
    NonIntegerDegree { values: [f64; 3] },
    NonzeroLinking { p: i64, q: i64, r: i64 },
    GridTooLarge(usize),
    BadSymbol(String),
    InvalidDiagram(String),
    NonGenericPath,
    NotIsolated(usize),
    NotGeneric(String),
    ResolutionFailure,
    WindingResidual { value: f64 },
    NotIsogonal,
    NoConvergence,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Error::*;
        match self {
            NotUnit(n) => write!(f, "quaternion has norm {n}, expected 1"),
            NearAntipode => f.write_str("point too close to -1 for stereographic projection"),
            DegeneratePlane => f.write_str("quaternions do not span a plane"),
            OnBinding => f.write_str("point lies on the binding circle"),
            NonPositiveHeight => f.write_str("meridional coordinate must have positive imaginary part"),
            CoincidentPoints => f.write_str("points coincide"),
            NearPole => f.write_str("sample hits the stereographic pole"),
            OffSphere { component, param, deviation } => write!(
                f,
                "component {component} leaves the sphere at s = {param} (| |c| - 1 | = {deviation:e})"
            ),
            NotImmersed { component, param } => {
                write!(f, "component {component} has vanishing derivative at s = {param}")
            }
            ComponentsTooClose { pair, distance } => write!(
                f,
                "components {} and {} come within {distance:e}",
                pair.0, pair.1
            ),
            BadCurve(m) => write!(f, "bad curve: {m}"),
            NotOpenBook => f.write_str("third component is not the binding circle"),
            DegenerateCritical { component, param } => write!(
                f,
                "degenerate critical point of the page angle on component {component} at {param}"
            ),
            SharedCriticalValue { value } => write!(f, "two critical points share the page {value}"),
            PoleOnCurve => f.write_str("projection pole lies on a curve"),
            NonIntegerResult { value } => write!(f, "linking integral {value} is not near an integer"),
            AliasBound { nmax, grid } => write!(
                f,
                "truncation {nmax} exceeds the alias bound for grid {grid}; need nmax <= grid/2 - 1"
            ),
            NonMeanZero => f.write_str("form has a nonzero mean"),
            BadDegree(k) => write!(f, "operator not defined on {k}-forms"),
            NotExact => f.write_str("2-form is not exact"),
            NonIntegerDegree { values } => write!(
                f,
                "degrees {values:?} are not near integers; try a larger grid"
            ),
            NonzeroLinking { p, q, r } => write!(
                f,
                "pairwise linking numbers ({p}, {q}, {r}) are not all zero"
            ),
            GridTooLarge(n) => write!(f, "grid {n} too large for the direct double sum (max 16)"),
            BadSymbol(s) => write!(f, "bad word symbol {s:?}"),
            InvalidDiagram(m) => write!(f, "invalid diagram: {m}"),
            NonGenericPath => f.write_str("depth path is not transverse to the diagram"),
            NotIsolated(i) => write!(f, "component {i} is not an isolated point"),
            NotGeneric(m) => write!(f, "link is not generic: {m}"),
            ResolutionFailure => f.write_str("isogonal curves could not be separated at the finest grid"),
            WindingResidual { value } => write!(f, "winding {value} turns is not near an integer"),
            NotIsogonal => f.write_str("points are not on a common page"),
            NoConvergence => f.write_str("bisection did not converge"),
        }
    }
}

impl core::error::Error for Error {}
