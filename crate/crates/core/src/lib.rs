//! Spectral computations for the Hodge Laplacian on p-forms over
//! asymptotically hyperbolic warped products `f(t) dt² + g(t) dθ²`.
//!
//! The Laplacian splits along sphere eigenforms into three families of
//! half-line Sturm–Liouville operators (two scalar, one coupled 2×2).
//! This crate builds those radial operators, discretizes them on truncated
//! exterior domains, brackets the bottom of their essential spectrum, and
//! classifies L² harmonic forms.

pub mod discretize;
pub mod eigensolve;
pub mod harmonic;
pub mod metric;
pub mod quadrature;
pub mod reduction;
pub mod report;
pub mod selftest;
pub mod spectrum;
pub mod sphere_modes;

pub use metric::{hyperbolic_profile, perturbed_profile, Profile};
pub use reduction::{Channel, ChannelTag, CrossTerm, RadialOperator};
