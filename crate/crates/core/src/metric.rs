//! Warped-product metric profiles `f(t) dt² + g(t) dθ²` on `(0, ∞) × S^{N−1}`.
//!
//! Built-in profiles have hand-coded derivatives. Besides the raw jet they
//! expose the ratios `g'/g`, `g''/g` and `1/g`, which stay finite for large
//! `t` where `sinh² t` itself overflows.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MetricError {
    #[error("profile evaluated at t = {0}, expected t > 0")]
    Domain(f64),
    #[error("profile {name} is not finite at t = {t}")]
    NonFinite { name: String, t: f64 },
    #[error("invalid profile parameters: {0}")]
    Construction(String),
    #[error("invalid decay check argument: {0}")]
    InvalidArgument(String),
    #[error("unknown profile `{0}` (available: hyperbolic, perturbed)")]
    UnknownProfile(String),
}

/// Values of `f, g` and their first two derivatives at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet {
    pub f: f64,
    pub df: f64,
    pub d2f: f64,
    pub g: f64,
    pub dg: f64,
    pub d2g: f64,
}

impl Jet {
    pub fn is_finite(&self) -> bool {
        [self.f, self.df, self.d2f, self.g, self.dg, self.d2g]
            .iter()
            .all(|v| v.is_finite())
    }
}

/// Scale-free combinations of `g` used by the radial potentials.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WarpRatios {
    pub dg_over_g: f64,
    pub d2g_over_g: f64,
    pub inv_g: f64,
}

impl WarpRatios {
    pub fn from_jet(jet: &Jet) -> Self {
        WarpRatios {
            dg_over_g: jet.dg / jet.g,
            d2g_over_g: jet.d2g / jet.g,
            inv_g: 1.0 / jet.g,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "class")]
pub enum AsymptoticClass {
    ExactlyHyperbolic,
    DecayCertified { constant: f64, onset: f64 },
    Uncertified,
}

/// Leading large-`t` behaviour of `g`: `g ~ A e^{rate·t}` or `g ~ A t^{exponent}`
/// (possibly times a power of `t` in the exponential case).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Growth {
    Exponential { rate: f64 },
    Power { exponent: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tail {
    pub f_limit: f64,
    pub g: Growth,
}

pub trait Profile: Send + Sync + fmt::Debug {
    fn name(&self) -> String;

    /// Unchecked evaluation; callers go through [`eval_profile`].
    fn jet(&self, t: f64) -> Jet;

    fn ratios(&self, t: f64) -> WarpRatios {
        WarpRatios::from_jet(&self.jet(t))
    }

    /// `f̃ = f − 1`, `g̃ = g − sinh² t` and their derivatives, packed in a [`Jet`].
    fn deviation(&self, t: f64) -> Jet {
        let j = self.jet(t);
        let h = hyperbolic_jet(t);
        Jet {
            f: j.f - h.f,
            df: j.df - h.df,
            d2f: j.d2f - h.d2f,
            g: j.g - h.g,
            dg: j.dg - h.dg,
            d2g: j.d2g - h.d2g,
        }
    }

    fn asymptotic_class(&self) -> AsymptoticClass;

    /// `Some(ε)` when `f ≡ 1` and `g = t²` on `(0, ε)`.
    fn near_zero_model(&self) -> Option<f64> {
        None
    }

    fn tail(&self) -> Option<Tail>;

    /// True when `f ≡ 1` identically.
    fn unit_radial(&self) -> bool {
        false
    }
}

pub fn eval_profile(profile: &dyn Profile, t: f64) -> Result<Jet, MetricError> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(MetricError::Domain(t));
    }
    let jet = profile.jet(t);
    if !jet.is_finite() {
        return Err(MetricError::NonFinite {
            name: profile.name(),
            t,
        });
    }
    Ok(jet)
}

fn hyperbolic_jet(t: f64) -> Jet {
    let s = t.sinh();
    Jet {
        f: 1.0,
        df: 0.0,
        d2f: 0.0,
        g: s * s,
        dg: (2.0 * t).sinh(),
        d2g: 2.0 * (2.0 * t).cosh(),
    }
}

/// `f = 1 + α/(1+t)`, `g = sinh² t + β/(1+t)`; `α = β = 0` is exact hyperbolic space.
fn sinh_family_jet(alpha: f64, beta: f64, t: f64) -> Jet {
    let u = 1.0 / (1.0 + t);
    let s = t.sinh();
    Jet {
        f: 1.0 + alpha * u,
        df: -alpha * u * u,
        d2f: 2.0 * alpha * u * u * u,
        g: s * s + beta * u,
        dg: (2.0 * t).sinh() - beta * u * u,
        d2g: 2.0 * (2.0 * t).cosh() + 2.0 * beta * u * u * u,
    }
}

fn sinh_family_ratios(beta: f64, t: f64) -> WarpRatios {
    // Everything is divided by sinh² t first.
    let u = 1.0 / (1.0 + t);
    let inv_s = 1.0 / t.sinh();
    let inv_s2 = inv_s * inv_s;
    let coth = 1.0 / t.tanh();
    let g_rel = 1.0 + beta * u * inv_s2;
    WarpRatios {
        dg_over_g: (2.0 * coth - beta * u * u * inv_s2) / g_rel,
        d2g_over_g: (4.0 + 2.0 * inv_s2 + 2.0 * beta * u * u * u * inv_s2) / g_rel,
        inv_g: inv_s2 / g_rel,
    }
}

const HYPERBOLIC_TAIL: Tail = Tail {
    f_limit: 1.0,
    g: Growth::Exponential { rate: 2.0 },
};

/// Hyperbolic space `dt² + sinh² t dθ²`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Hyperbolic;

impl Profile for Hyperbolic {
    fn name(&self) -> String {
        "hyperbolic".to_string()
    }
    fn jet(&self, t: f64) -> Jet {
        sinh_family_jet(0.0, 0.0, t)
    }
    fn ratios(&self, t: f64) -> WarpRatios {
        sinh_family_ratios(0.0, t)
    }
    fn deviation(&self, _t: f64) -> Jet {
        Jet {
            f: 0.0,
            df: 0.0,
            d2f: 0.0,
            g: 0.0,
            dg: 0.0,
            d2g: 0.0,
        }
    }
    fn asymptotic_class(&self) -> AsymptoticClass {
        AsymptoticClass::ExactlyHyperbolic
    }
    fn tail(&self) -> Option<Tail> {
        Some(HYPERBOLIC_TAIL)
    }
    fn unit_radial(&self) -> bool {
        true
    }
}

/// Constant absorbing derivative factors in the decay certificate of [`Perturbed`].
pub const PERTURBED_DECAY_FACTOR: f64 = 1.0;

/// `f = 1 + α/(1+t)`, `g = sinh² t + β/(1+t)`.
#[derive(Debug, Clone, Copy)]
pub struct Perturbed {
    alpha: f64,
    beta: f64,
}

impl Perturbed {
    pub fn alpha(&self) -> f64 {
        self.alpha
    }
    pub fn beta(&self) -> f64 {
        self.beta
    }
}

impl Profile for Perturbed {
    fn name(&self) -> String {
        format!("perturbed(alpha={}, beta={})", self.alpha, self.beta)
    }
    fn jet(&self, t: f64) -> Jet {
        sinh_family_jet(self.alpha, self.beta, t)
    }
    fn ratios(&self, t: f64) -> WarpRatios {
        sinh_family_ratios(self.beta, t)
    }
    fn deviation(&self, t: f64) -> Jet {
        let u = 1.0 / (1.0 + t);
        Jet {
            f: self.alpha * u,
            df: -self.alpha * u * u,
            d2f: 2.0 * self.alpha * u * u * u,
            g: self.beta * u,
            dg: -self.beta * u * u,
            d2g: 2.0 * self.beta * u * u * u,
        }
    }
    fn asymptotic_class(&self) -> AsymptoticClass {
        let size = self.alpha.abs().max(self.beta.abs());
        if size == 0.0 {
            return AsymptoticClass::ExactlyHyperbolic;
        }
        AsymptoticClass::DecayCertified {
            constant: size * PERTURBED_DECAY_FACTOR,
            onset: 1.0,
        }
    }
    fn tail(&self) -> Option<Tail> {
        Some(HYPERBOLIC_TAIL)
    }
    fn unit_radial(&self) -> bool {
        self.alpha == 0.0
    }
}

pub fn hyperbolic_profile() -> Hyperbolic {
    Hyperbolic
}

pub fn perturbed_profile(alpha: f64, beta: f64) -> Result<Perturbed, MetricError> {
    if !alpha.is_finite() || !beta.is_finite() {
        return Err(MetricError::Construction(format!(
            "alpha = {alpha}, beta = {beta} must be finite"
        )));
    }
    // inf over t > 0 of 1 + α/(1+t) is min(1, 1 + α).
    if alpha <= -1.0 {
        return Err(MetricError::Construction(format!(
            "alpha = {alpha} makes f = 1 + alpha/(1+t) nonpositive near t = 0"
        )));
    }
    // sinh² t → 0 as t → 0, so any β < 0 makes g negative there.
    if beta < 0.0 {
        return Err(MetricError::Construction(format!(
            "beta = {beta} makes g = sinh²t + beta/(1+t) negative near t = 0"
        )));
    }
    Ok(Perturbed { alpha, beta })
}

/// Registry lookup used by the CLI.
pub fn lookup_profile(name: &str, alpha: f64, beta: f64) -> Result<Box<dyn Profile>, MetricError> {
    match name {
        "hyperbolic" => {
            if alpha != 0.0 || beta != 0.0 {
                return Err(MetricError::Construction(
                    "hyperbolic profile takes no parameters".to_string(),
                ));
            }
            Ok(Box::new(Hyperbolic))
        }
        "perturbed" => Ok(Box::new(perturbed_profile(alpha, beta)?)),
        other => Err(MetricError::UnknownProfile(other.to_string())),
    }
}

const DEVIATION_LABELS: [&str; 6] = ["f~", "f~'", "f~''", "g~", "g~'", "g~''"];

/// Sample-based check of `|f̃|, |f̃'|, |f̃''|, |g̃|, |g̃'|, |g̃''| ≤ C/t` on `[t₀, 100 t₀]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecayReport {
    pub onset: f64,
    pub constant: f64,
    pub samples: usize,
    /// Maxima of `t·|·|` in the order f̃, f̃', f̃'', g̃, g̃', g̃''.
    pub maxima: [f64; 6],
    pub pass: bool,
    pub witness_t: f64,
    pub witness_quantity: String,
}

impl DecayReport {
    pub fn worst(&self) -> f64 {
        self.maxima.iter().cloned().fold(0.0, f64::max)
    }
}

pub fn check_decay(
    profile: &dyn Profile,
    onset: f64,
    constant: f64,
    sample_count: usize,
) -> Result<DecayReport, MetricError> {
    if !(onset > 0.0) || !onset.is_finite() {
        return Err(MetricError::InvalidArgument(format!("t0 = {onset} must be > 0")));
    }
    if !(constant > 0.0) {
        return Err(MetricError::InvalidArgument(format!("C = {constant} must be > 0")));
    }
    if sample_count < 2 {
        return Err(MetricError::InvalidArgument(format!(
            "sample_count = {sample_count} must be >= 2"
        )));
    }
    let log_lo = onset.ln();
    let log_hi = (100.0 * onset).ln();
    let mut maxima = [0.0f64; 6];
    let mut witness = (onset, DEVIATION_LABELS[0], 0.0f64);
    for i in 0..sample_count {
        let frac = i as f64 / (sample_count - 1) as f64;
        let t = (log_lo + frac * (log_hi - log_lo)).exp();
        let d = profile.deviation(t);
        let values = [d.f, d.df, d.d2f, d.g, d.dg, d.d2g];
        for (k, v) in values.iter().enumerate() {
            let r = t * v.abs();
            if !r.is_finite() {
                return Err(MetricError::NonFinite {
                    name: profile.name(),
                    t,
                });
            }
            if r > maxima[k] {
                maxima[k] = r;
            }
            if r > witness.2 {
                witness = (t, DEVIATION_LABELS[k], r);
            }
        }
    }
    Ok(DecayReport {
        onset,
        constant,
        samples: sample_count,
        maxima,
        pass: maxima.iter().all(|&m| m <= constant),
        witness_t: witness.0,
        witness_quantity: witness.1.to_string(),
    })
}
