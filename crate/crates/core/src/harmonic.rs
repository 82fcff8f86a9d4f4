//! L² harmonic forms and the zero eigenvalue.
//!
//! Whether `ℋᵖ(M)` is trivial, one-dimensional or infinite-dimensional is
//! decided by two radial integrals: the volume `∫₀^∞ f^{1/2} g^{(N−1)/2}` for
//! `p ∈ {0, N}` and `∫₁^∞ f^{1/2} g^{−1/2}` for `p = N/2`. Every other degree
//! carries no L² harmonic forms. Divergence is read off the profile's
//! declared tail; quadrature only supplies finite parts.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::metric::{Growth, Profile, Tail};
use crate::quadrature::adaptive_simpson;

/// Absolute tolerance of the finite-segment quadrature.
pub const QUAD_TOL: f64 = 1e-10;
/// Upper limit of the finite part reported for divergent integrals.
const DIVERGENT_CUTOFF: f64 = 10.0;
const MAX_CUTOFF: f64 = 1e6;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HarmonicError {
    #[error("profile {0} declares no asymptotic tail; integral is inconclusive")]
    Inconclusive(String),
    #[error("middle integral diverges; conformal radius undefined")]
    Divergent,
    #[error("invalid argument: {0}")]
    Argument(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TailClass {
    ExponentialGrowth,
    ExponentialDecay,
    Power,
    Constant,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "verdict")]
pub enum IntegralKind {
    Convergent { value: f64 },
    Divergent,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntegralVerdict {
    pub kind: IntegralKind,
    pub lower_limit: f64,
    /// Upper end `T_q` of the quadrature segment.
    pub cutoff: f64,
    /// Quadrature over `[lower_limit, cutoff]`.
    pub finite_part: f64,
    pub tail_class: TailClass,
    /// Bound on the neglected tail beyond `cutoff` (convergent only).
    pub tail_bound: Option<f64>,
}

impl IntegralVerdict {
    pub fn is_convergent(&self) -> bool {
        matches!(self.kind, IntegralKind::Convergent { .. })
    }

    pub fn value(&self) -> Option<f64> {
        match self.kind {
            IntegralKind::Convergent { value } => Some(value),
            IntegralKind::Divergent => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    Trivial,
    OneDimensional,
    InfiniteDimensional,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HarmonicReport {
    pub n_dim: usize,
    pub degree: usize,
    pub classification: Classification,
    pub volume_integral: IntegralVerdict,
    pub middle_integral: IntegralVerdict,
    pub conformal_radius: Option<f64>,
    pub zero_in_point_spectrum: bool,
    pub zero_in_essential_spectrum: bool,
}

/// Asymptotic shape of an integrand `f^{1/2} g^{s}`: exponential rate or power.
enum Shape {
    Exponential(f64),
    Power(f64),
}

fn integrand_shape(tail: &Tail, g_power: f64) -> Shape {
    match tail.g {
        Growth::Exponential { rate } if rate != 0.0 => Shape::Exponential(rate * g_power),
        Growth::Exponential { .. } => Shape::Power(0.0),
        Growth::Power { exponent } => Shape::Power(exponent * g_power),
    }
}

fn classify_shape(shape: &Shape) -> (TailClass, bool) {
    match *shape {
        Shape::Exponential(r) if r > 0.0 => (TailClass::ExponentialGrowth, false),
        Shape::Exponential(_) => (TailClass::ExponentialDecay, true),
        Shape::Power(s) if s == 0.0 => (TailClass::Constant, false),
        Shape::Power(s) => (TailClass::Power, s < -1.0),
    }
}

fn tail_of(profile: &dyn Profile) -> Result<Tail, HarmonicError> {
    match profile.tail() {
        Some(t) if t.f_limit > 0.0 && t.f_limit.is_finite() => Ok(t),
        _ => Err(HarmonicError::Inconclusive(profile.name())),
    }
}

fn radial_integral<F: Fn(f64) -> f64>(integrand: F, lower: f64, shape: Shape) -> IntegralVerdict {
    let (tail_class, convergent) = classify_shape(&shape);
    if !convergent {
        let q = adaptive_simpson(&integrand, lower, DIVERGENT_CUTOFF, QUAD_TOL, 16);
        return IntegralVerdict {
            kind: IntegralKind::Divergent,
            lower_limit: lower,
            cutoff: DIVERGENT_CUTOFF,
            finite_part: q.value,
            tail_class,
            tail_bound: None,
        };
    }
    // ∫_T^∞ of e^{−ρt} or t^{s} extrapolated from the integrand at T.
    let tail_estimate = |t: f64| -> f64 {
        let v = integrand(t).abs();
        match shape {
            Shape::Exponential(rate) => v / rate.abs(),
            Shape::Power(s) => v * t / (-s - 1.0),
        }
    };
    let mut cutoff = (lower + 1.0).max(16.0);
    while tail_estimate(cutoff) > QUAD_TOL && cutoff < MAX_CUTOFF {
        cutoff *= 2.0;
    }
    let panels = (cutoff - lower).ceil().clamp(8.0, 4096.0) as usize;
    let q = adaptive_simpson(&integrand, lower, cutoff, QUAD_TOL, panels);
    let estimate = tail_estimate(cutoff);
    IntegralVerdict {
        kind: IntegralKind::Convergent {
            value: q.value + estimate,
        },
        lower_limit: lower,
        cutoff,
        finite_part: q.value,
        tail_class,
        tail_bound: Some(2.0 * estimate + q.error_estimate),
    }
}

/// `∫₀^∞ f^{1/2} g^{(N−1)/2}`, the volume of `M`.
pub fn volume_integral(profile: &dyn Profile, n_dim: usize) -> Result<IntegralVerdict, HarmonicError> {
    if n_dim < 2 {
        return Err(HarmonicError::Argument(format!("N = {n_dim} must be >= 2")));
    }
    let tail = tail_of(profile)?;
    let power = (n_dim as f64 - 1.0) / 2.0;
    let integrand = |t: f64| {
        let j = profile.jet(t);
        j.f.sqrt() * j.g.powf(power)
    };
    Ok(radial_integral(integrand, 0.0, integrand_shape(&tail, power)))
}

/// `∫₁^∞ f^{1/2} g^{−1/2}`.
pub fn middle_integral(profile: &dyn Profile) -> Result<IntegralVerdict, HarmonicError> {
    let tail = tail_of(profile)?;
    let integrand = |t: f64| profile.jet(t).f.sqrt() * profile.ratios(t).inv_g.sqrt();
    Ok(radial_integral(integrand, 1.0, integrand_shape(&tail, -0.5)))
}

/// `exp(∫₁^∞ g^{−1/2} f^{1/2})`.
pub fn conformal_radius(profile: &dyn Profile) -> Result<f64, HarmonicError> {
    middle_integral(profile)?
        .value()
        .map(f64::exp)
        .ok_or(HarmonicError::Divergent)
}

pub fn classify_harmonic(profile: &dyn Profile, n_dim: usize, degree: usize) -> Result<HarmonicReport, HarmonicError> {
    if degree > n_dim {
        return Err(HarmonicError::Argument(format!("degree {degree} exceeds N = {n_dim}")));
    }
    let volume = volume_integral(profile, n_dim)?;
    let middle = middle_integral(profile)?;
    let is_middle = 2 * degree == n_dim;
    let classification = if degree == 0 || degree == n_dim {
        if volume.is_convergent() {
            Classification::OneDimensional
        } else {
            Classification::Trivial
        }
    } else if is_middle && middle.is_convergent() {
        Classification::InfiniteDimensional
    } else {
        Classification::Trivial
    };
    let conformal = if is_middle { middle.value().map(f64::exp) } else { None };
    Ok(HarmonicReport {
        n_dim,
        degree,
        classification,
        volume_integral: volume,
        middle_integral: middle,
        conformal_radius: conformal,
        zero_in_point_spectrum: classification != Classification::Trivial,
        zero_in_essential_spectrum: classification == Classification::InfiniteDimensional,
    })
}
