//! Triple linking invariants of three-component links in the 3-sphere.
//!
//! Three pipelines compute overlapping information and check one another:
//!
//! * [`spectral`] samples the characteristic 2-form on the 3-torus and
//!   evaluates Milnor's μ as a Fourier sum;
//! * [`diagrams`] evaluates the Pontryagin ν of a framed toral diagram;
//! * [`bicycles`] extracts such a diagram from a link in open-book position.
#![no_std]
// `!(x > tol)` is used on purpose so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
extern crate alloc;
#[cfg(test)]
extern crate std;

mod error;
pub mod math;

pub mod bicycles;
pub mod charfield;
pub mod config;
pub mod diagrams;
pub mod linkmodel;
pub mod milnorwords;
pub mod quatgeo;
pub mod spectral;

pub use error::{Error, Result};
pub use milnorwords::ResidueClass;
pub use quatgeo::{ImVec3, PageCoord, Quat, UnitQuat};
