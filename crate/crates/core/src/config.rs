//! Tolerances and default grid sizes.

/// Unit-norm tolerance for [`UnitQuat`](crate::UnitQuat) construction.
pub const UNIT_TOL: f64 = 1e-9;
/// `1 + Re q` below this is treated as the antipode of 1.
pub const ANTIPODE_TOL: f64 = 1e-12;
/// Distance to the binding circle below which page coordinates are refused.
pub const BINDING_TOL: f64 = 1e-10;
/// Norm below which a quaternion pair spans no plane.
pub const PLANE_TOL: f64 = 1e-12;
/// Minimum separation of the three points fed to `F`.
pub const COINCIDENT_TOL: f64 = 1e-9;
/// Stereographic pole avoidance for `h_L`.
pub const POLE_TOL: f64 = 1e-10;

/// Validation and discretisation parameters for links.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LinkConfig {
    pub sphere_tol: f64,
    pub sphere_samples: usize,
    pub immersion_tol: f64,
    pub separation_tol: f64,
    pub separation_grid: usize,
    pub binding_tol: f64,
    pub n_gauss: usize,
    pub gauss_residual: f64,
    pub pole_clearance: f64,
    pub critical_curvature: f64,
    pub critical_gap: f64,
}

impl Default for LinkConfig {
    fn default() -> Self {
        LinkConfig {
            sphere_tol: 1e-8,
            sphere_samples: 4096,
            immersion_tol: 1e-8,
            separation_tol: 1e-6,
            separation_grid: 256,
            binding_tol: 1e-8,
            n_gauss: 512,
            gauss_residual: 0.05,
            pole_clearance: 1e-3,
            critical_curvature: 1e-6,
            critical_gap: 1e-6,
        }
    }
}

/// Default Fourier truncation for a grid of `n` samples per axis.
pub fn default_nmax(n: usize) -> usize {
    (n / 2).saturating_sub(1).min(15)
}

/// Threshold on `|4π²c₀ − round|` for degree extraction.
pub const DEGREE_RESIDUAL: f64 = 0.02;
/// Threshold (in turns) for integer snapping of bicycle degrees.
pub const WINDING_RESIDUAL: f64 = 0.05;
/// Default resolution of the isogonal tracer.
pub const TRACE_GRID: usize = 512;
/// Largest resolution the tracer will retry at.
pub const TRACE_GRID_MAX: usize = 4096;
/// Bisection tolerance for isogonal vertices.
pub const TRACE_TOL: f64 = 1e-10;
