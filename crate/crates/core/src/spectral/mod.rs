//! Fourier calculus of forms on the 3-torus and the integral formulas for `μ`.

mod form;
mod mu;
mod phi;
#[cfg(test)]
mod tests;

pub use form::{alpha_min, analyze, analyze_scalar, analyze_vector, dft3, idft3, synthesize, wedge_integral, CVec3, FourierForm, Hodge, VOL};
pub use mu::{degrees, mu_formula1, mu_formula2_direct, mu_formula3, mu_sum1, mu_sum3, Degrees};
pub use phi::{phi2d_eval, phi_eval, phi_plot2d, PhiKernel};
