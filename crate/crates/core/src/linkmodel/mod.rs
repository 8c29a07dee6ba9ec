//! Three-component links in S³: curves, built-in examples, validation,
//! genericity with respect to the standard open book, and Gauss linking.

mod builtins;
mod curve;
mod gauss;
mod generic;
mod series;

pub use builtins::{
    binding_curve, build_open_book_link, builtin_borromean, builtin_clasp, builtin_great_circles, builtin_generic_borromean,
    builtin_lpqr, builtin_unlink,
};
pub use curve::{validate_curve, Curve, Link3, OpenBookSpec, PageAngle, TrigCurve};
pub use gauss::{auto_pole, gauss_integral, gauss_linking, GaussLinking};
pub use generic::{genericity_check, is_binding, CriticalKind, CriticalPoint, GenericityReport};
pub use series::{Coef, TrigSeries};

#[cfg(test)]
mod tests;
