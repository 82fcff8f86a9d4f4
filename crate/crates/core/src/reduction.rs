//! Radial reduction of the Hodge Laplacian.
//!
//! A p-form `ω = ω₁ + ω₂ ∧ dt` splits along sphere eigenforms into three
//! channels. After the substitution `w = h·(radial factor)` each channel
//! becomes a half-line operator `−(a w')' + q w` on `L²(c, ∞)`, with
//! `a = 1/f`; channel III is a symmetric 2×2 system coupled through
//! `g^{−3/2} f^{−1/2} g' √λ`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::metric::{eval_profile, MetricError, Profile};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ReductionError {
    #[error(transparent)]
    Metric(#[from] MetricError),
    #[error("invalid channel: {0}")]
    Channel(String),
    #[error("invalid argument: {0}")]
    Argument(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ChannelTag {
    I,
    II,
    III,
}

impl ChannelTag {
    pub const ALL: [ChannelTag; 3] = [ChannelTag::I, ChannelTag::II, ChannelTag::III];
}

impl fmt::Display for ChannelTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ChannelTag::I => "I",
            ChannelTag::II => "II",
            ChannelTag::III => "III",
        })
    }
}

impl FromStr for ChannelTag {
    type Err = ReductionError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "I" | "1" => Ok(ChannelTag::I),
            "II" | "2" => Ok(ChannelTag::II),
            "III" | "3" => Ok(ChannelTag::III),
            _ => Err(ReductionError::Channel(format!("unknown channel `{s}`"))),
        }
    }
}

/// Which printed form of the `f'g'` cross term of the channel-II potential to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CrossTerm {
    /// Factor `(N−1+2p)/4`.
    #[default]
    AsPrinted,
    /// Factor `(2p−N−1)/4`, making channel II at degree p agree with channel I
    /// at degree `N−p` for every `f`.
    DualConsistent,
}

impl fmt::Display for CrossTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CrossTerm::AsPrinted => "as-printed",
            CrossTerm::DualConsistent => "dual-consistent",
        })
    }
}

impl FromStr for CrossTerm {
    type Err = ReductionError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "as-printed" => Ok(CrossTerm::AsPrinted),
            "dual-consistent" => Ok(CrossTerm::DualConsistent),
            _ => Err(ReductionError::Argument(format!(
                "w2 cross term must be `as-printed` or `dual-consistent`, got `{s}`"
            ))),
        }
    }
}

/// Which half of the form the radial coefficient multiplies: the tangential
/// part `ω₁` (channel I, first component of III) or the normal part
/// `ω₂ ∧ dt` (channel II, second component of III).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormPart {
    Tangential,
    Normal,
}

impl From<ChannelTag> for FormPart {
    /// Channel III maps to its first (tangential) component.
    fn from(tag: ChannelTag) -> Self {
        match tag {
            ChannelTag::II => FormPart::Normal,
            ChannelTag::I | ChannelTag::III => FormPart::Tangential,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Channel {
    pub tag: ChannelTag,
    pub n_dim: usize,
    pub degree: usize,
    /// Sphere eigenvalue; for channel III the shared λ of the coclosed `(p−1)`-mode.
    pub lambda: f64,
}

impl Channel {
    pub fn new(tag: ChannelTag, n_dim: usize, degree: usize, lambda: f64) -> Result<Self, ReductionError> {
        let ch = Channel {
            tag,
            n_dim,
            degree,
            lambda,
        };
        ch.validate()?;
        Ok(ch)
    }

    pub fn validate(&self) -> Result<(), ReductionError> {
        let (n, p) = (self.n_dim, self.degree);
        if n < 2 {
            return Err(ReductionError::Channel(format!("N = {n} must be >= 2")));
        }
        if !(self.lambda >= 0.0) || !self.lambda.is_finite() {
            return Err(ReductionError::Channel(format!(
                "lambda = {} must be finite and >= 0",
                self.lambda
            )));
        }
        let ok = match self.tag {
            ChannelTag::I => p < n,
            ChannelTag::II => (1..=n).contains(&p),
            ChannelTag::III => (1..n).contains(&p) && self.lambda > 0.0,
        };
        if !ok {
            return Err(ReductionError::Channel(format!(
                "channel {} does not exist for N = {n}, p = {p}, lambda = {}",
                self.tag, self.lambda
            )));
        }
        Ok(())
    }
}

fn check_t(t: f64) -> Result<(), ReductionError> {
    if t > 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(MetricError::Domain(t).into())
    }
}

/// Domain and finiteness check for the quantities the potentials use; `g`
/// itself may overflow for large `t`.
fn check_radial(profile: &dyn Profile, t: f64) -> Result<(), ReductionError> {
    check_t(t)?;
    let j = profile.jet(t);
    let r = profile.ratios(t);
    let ok = [j.f, j.df, j.d2f, r.dg_over_g, r.d2g_over_g, r.inv_g]
        .iter()
        .all(|v| v.is_finite());
    if ok && j.f > 0.0 {
        Ok(())
    } else {
        Err(MetricError::NonFinite {
            name: profile.name(),
            t,
        }
        .into())
    }
}

fn check_lambda(lambda: f64) -> Result<(), ReductionError> {
    if lambda >= 0.0 && lambda.is_finite() {
        Ok(())
    } else {
        Err(ReductionError::Argument(format!("lambda = {lambda} must be >= 0")))
    }
}

/// `f`-only part shared by both scalar potentials, plus the cross term with
/// the given factor.
fn radial_terms(f: f64, df: f64, d2f: f64, cross: f64, dg_over_g: f64) -> f64 {
    -7.0 / 16.0 * df * df / (f * f * f) + 0.25 * d2f / (f * f) - 0.5 * df / (f * f) * cross * dg_over_g
}

fn w1_unchecked(profile: &dyn Profile, n_dim: usize, p: usize, lambda: f64, t: f64) -> f64 {
    let j = profile.jet(t);
    let r = profile.ratios(t);
    let a = (n_dim as f64 - 1.0 - 2.0 * p as f64) / 4.0;
    radial_terms(j.f, j.df, j.d2f, a, r.dg_over_g)
        + (a * (a - 1.0) * r.dg_over_g * r.dg_over_g + a * r.d2g_over_g) / j.f
        + lambda * r.inv_g
}

fn w2_unchecked(profile: &dyn Profile, n_dim: usize, p: usize, lambda: f64, t: f64, variant: CrossTerm) -> f64 {
    let j = profile.jet(t);
    let r = profile.ratios(t);
    let b = (n_dim as f64 - 2.0 * p as f64 + 1.0) / 4.0;
    let cross = match variant {
        CrossTerm::AsPrinted => (n_dim as f64 - 1.0 + 2.0 * p as f64) / 4.0,
        CrossTerm::DualConsistent => -b,
    };
    radial_terms(j.f, j.df, j.d2f, cross, r.dg_over_g)
        + (b * (b + 1.0) * r.dg_over_g * r.dg_over_g - b * r.d2g_over_g) / j.f
        + lambda * r.inv_g
}

fn v3_unchecked(profile: &dyn Profile, lambda: f64, t: f64) -> f64 {
    let j = profile.jet(t);
    let r = profile.ratios(t);
    // g^{-3/2} g' = (g'/g) g^{-1/2}
    r.dg_over_g * r.inv_g.sqrt() / j.f.sqrt() * lambda.sqrt()
}

/// Potential of the channel-I operator at degree `p`.
pub fn potential_w1(profile: &dyn Profile, n_dim: usize, p: usize, lambda: f64, t: f64) -> Result<f64, ReductionError> {
    check_t(t)?;
    check_lambda(lambda)?;
    if p >= n_dim {
        return Err(ReductionError::Argument(format!("degree {p} must be < N = {n_dim}")));
    }
    check_radial(profile, t)?;
    Ok(w1_unchecked(profile, n_dim, p, lambda, t))
}

/// Potential of the channel-II operator at degree `p`.
pub fn potential_w2(
    profile: &dyn Profile,
    n_dim: usize,
    p: usize,
    lambda: f64,
    t: f64,
    variant: CrossTerm,
) -> Result<f64, ReductionError> {
    check_t(t)?;
    check_lambda(lambda)?;
    if p == 0 || p > n_dim {
        return Err(ReductionError::Argument(format!("degree {p} must be in 1..={n_dim}")));
    }
    check_radial(profile, t)?;
    Ok(w2_unchecked(profile, n_dim, p, lambda, t, variant))
}

/// Off-diagonal coupling of the channel-III system.
pub fn coupling_v3(profile: &dyn Profile, lambda: f64, t: f64) -> Result<f64, ReductionError> {
    check_t(t)?;
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(ReductionError::Argument(format!(
            "channel III coupling needs lambda > 0, got {lambda}"
        )));
    }
    check_radial(profile, t)?;
    Ok(v3_unchecked(profile, lambda, t))
}

/// Pointwise potential of a radial operator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Potential {
    Scalar(f64),
    Coupled { q1: f64, q2: f64, c: f64 },
}

impl Potential {
    /// Smallest eigenvalue of the potential matrix.
    pub fn min_eigenvalue(&self) -> f64 {
        match *self {
            Potential::Scalar(q) => q,
            Potential::Coupled { q1, q2, c } => {
                let mean = 0.5 * (q1 + q2);
                let half_gap = 0.5 * (q1 - q2);
                mean - half_gap.hypot(c)
            }
        }
    }

    pub fn is_finite(&self) -> bool {
        match *self {
            Potential::Scalar(q) => q.is_finite(),
            Potential::Coupled { q1, q2, c } => q1.is_finite() && q2.is_finite() && c.is_finite(),
        }
    }
}

/// `−(a w')' + Q w` on a half line, with scalar or 2×2 symmetric `Q`.
pub trait SturmLiouville: Sync {
    fn stiffness(&self, t: f64) -> f64;
    fn potential(&self, t: f64) -> Potential;
}

/// Radial operator of one channel and sphere mode.
#[derive(Debug, Clone, Copy)]
pub struct RadialOperator<'a> {
    profile: &'a dyn Profile,
    channel: Channel,
    cross_term: CrossTerm,
    start: f64,
}

impl<'a> RadialOperator<'a> {
    pub fn channel(&self) -> &Channel {
        &self.channel
    }

    pub fn profile(&self) -> &'a dyn Profile {
        self.profile
    }

    pub fn domain_start(&self) -> f64 {
        self.start
    }

    pub fn is_coupled(&self) -> bool {
        self.channel.tag == ChannelTag::III
    }

    /// `a = 1/f`.
    pub fn a(&self, t: f64) -> f64 {
        1.0 / self.profile.jet(t).f
    }

    pub fn q1(&self, t: f64) -> f64 {
        let ch = &self.channel;
        match ch.tag {
            ChannelTag::I | ChannelTag::III => w1_unchecked(self.profile, ch.n_dim, ch.degree, ch.lambda, t),
            ChannelTag::II => w2_unchecked(self.profile, ch.n_dim, ch.degree, ch.lambda, t, self.cross_term),
        }
    }

    pub fn q2(&self, t: f64) -> Option<f64> {
        let ch = &self.channel;
        self.is_coupled()
            .then(|| w2_unchecked(self.profile, ch.n_dim, ch.degree, ch.lambda, t, self.cross_term))
    }

    pub fn c(&self, t: f64) -> Option<f64> {
        self.is_coupled().then(|| v3_unchecked(self.profile, self.channel.lambda, t))
    }

    /// Value of the potential as `t → ∞` for asymptotically hyperbolic profiles.
    pub fn limit_potential(&self) -> f64 {
        let ch = &self.channel;
        let (n, p) = (ch.n_dim as f64, ch.degree as f64);
        let first = ((n - 2.0 * p - 1.0) / 2.0).powi(2);
        let second = ((n - 2.0 * p + 1.0) / 2.0).powi(2);
        match ch.tag {
            ChannelTag::I => first,
            ChannelTag::II => second,
            ChannelTag::III => first.min(second),
        }
    }
}

impl SturmLiouville for RadialOperator<'_> {
    fn stiffness(&self, t: f64) -> f64 {
        self.a(t)
    }

    fn potential(&self, t: f64) -> Potential {
        match (self.q2(t), self.c(t)) {
            (Some(q2), Some(c)) => Potential::Coupled { q1: self.q1(t), q2, c },
            _ => Potential::Scalar(self.q1(t)),
        }
    }
}

pub fn build_radial_operator<'a>(
    profile: &'a dyn Profile,
    channel: Channel,
    cross_term: CrossTerm,
    start: f64,
) -> Result<RadialOperator<'a>, ReductionError> {
    channel.validate()?;
    if !(start > 0.0) || !start.is_finite() {
        return Err(ReductionError::Argument(format!("domain start {start} must be > 0")));
    }
    check_radial(profile, start)?;
    Ok(RadialOperator {
        profile,
        channel,
        cross_term,
        start,
    })
}

fn radial_factor(profile: &dyn Profile, n_dim: usize, p: usize, part: FormPart, t: f64) -> Result<f64, ReductionError> {
    let j = eval_profile(profile, t)?;
    let (n, p) = (n_dim as f64, p as f64);
    Ok(match part {
        FormPart::Tangential => j.f.powf(0.25) * j.g.powf((n - 2.0 * p - 1.0) / 4.0),
        FormPart::Normal => j.f.powf(-0.25) * j.g.powf((n - 2.0 * p + 1.0) / 4.0),
    })
}

/// `w = h·f^{1/4} g^{(N−2p−1)/4}` (tangential) or `w = h·f^{−1/4} g^{(N−2p+1)/4}` (normal).
pub fn transform_h_to_w(
    profile: &dyn Profile,
    n_dim: usize,
    p: usize,
    part: FormPart,
    grid: &[f64],
    h: &[f64],
) -> Result<Vec<f64>, ReductionError> {
    if grid.len() != h.len() {
        return Err(ReductionError::Argument(format!(
            "grid has {} points but h has {}",
            grid.len(),
            h.len()
        )));
    }
    grid.iter()
        .zip(h)
        .map(|(&t, &v)| Ok(v * radial_factor(profile, n_dim, p, part, t)?))
        .collect()
}

pub fn transform_w_to_h(
    profile: &dyn Profile,
    n_dim: usize,
    p: usize,
    part: FormPart,
    grid: &[f64],
    w: &[f64],
) -> Result<Vec<f64>, ReductionError> {
    if grid.len() != w.len() {
        return Err(ReductionError::Argument(format!(
            "grid has {} points but w has {}",
            grid.len(),
            w.len()
        )));
    }
    grid.iter()
        .zip(w)
        .map(|(&t, &v)| Ok(v / radial_factor(profile, n_dim, p, part, t)?))
        .collect()
}

/// Radial density of the L² norm for the given part of a p-form.
pub fn l2_weight(profile: &dyn Profile, n_dim: usize, p: usize, part: FormPart, t: f64) -> Result<f64, ReductionError> {
    let j = eval_profile(profile, t)?;
    let (n, p) = (n_dim as f64, p as f64);
    Ok(match part {
        FormPart::Tangential => j.g.powf((n - 2.0 * p - 1.0) / 2.0) * j.f.sqrt(),
        FormPart::Normal => j.g.powf((n - 2.0 * p + 1.0) / 2.0) / j.f.sqrt(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::{hyperbolic_profile, perturbed_profile, AsymptoticClass, Jet, Tail};
    use approx::assert_relative_eq;

    #[derive(Debug)]
    struct Euclidean;
    impl Profile for Euclidean {
        fn name(&self) -> String {
            "euclidean".into()
        }
        fn jet(&self, t: f64) -> Jet {
            Jet { f: 1.0, df: 0.0, d2f: 0.0, g: t * t, dg: 2.0 * t, d2g: 2.0 }
        }
        fn asymptotic_class(&self) -> AsymptoticClass {
            AsymptoticClass::Uncertified
        }
        fn near_zero_model(&self) -> Option<f64> {
            Some(f64::INFINITY)
        }
        fn tail(&self) -> Option<Tail> {
            None
        }
        fn unit_radial(&self) -> bool {
            true
        }
    }

    #[test]
    fn w1_collapses_to_one_for_functions_on_h3() {
        let hyp = hyperbolic_profile();
        for t in [0.5, 1.0, 5.0, 8.0, 40.0] {
            let q = potential_w1(&hyp, 3, 0, 0.0, t).unwrap();
            assert!((q - 1.0).abs() < 1e-13, "t = {t}: {q}");
        }
    }

    #[test]
    fn w1_limits() {
        let hyp = hyperbolic_profile();
        for n in 2..=6usize {
            for p in 0..n {
                let q = potential_w1(&hyp, n, p, 0.0, 30.0).unwrap();
                let lim = ((n as f64 - 2.0 * p as f64 - 1.0) / 2.0).powi(2);
                assert!((q - lim).abs() <= 1e-10, "N={n} p={p}: {q} vs {lim}");
            }
        }
    }

    #[test]
    fn lambda_term_is_additive() {
        let hyp = hyperbolic_profile();
        let t = 1.0f64.asinh();
        let base = potential_w1(&hyp, 4, 1, 0.0, t).unwrap();
        let with = potential_w1(&hyp, 4, 1, 2.0, t).unwrap();
        assert!((with - base - 2.0).abs() < 1e-14);
    }

    #[test]
    fn w2_limits() {
        let hyp = hyperbolic_profile();
        let q = potential_w2(&hyp, 3, 1, 0.0, 30.0, CrossTerm::AsPrinted).unwrap();
        assert!((q - 1.0).abs() < 1e-10);
        let q = potential_w2(&hyp, 4, 2, 0.0, 30.0, CrossTerm::AsPrinted).unwrap();
        assert!((q - 0.25).abs() < 1e-10);
    }

    #[test]
    fn w2_is_w1_at_complementary_degree_when_f_is_one() {
        let profiles: Vec<Box<dyn Profile>> = vec![
            Box::new(hyperbolic_profile()),
            Box::new(perturbed_profile(0.0, 2.0).unwrap()),
        ];
        for prof in &profiles {
            for n in 2..=6usize {
                for p in 1..=n {
                    for i in 1..60 {
                        let t = 0.37 * i as f64;
                        for lambda in [0.0, 3.0] {
                            let a = potential_w2(prof.as_ref(), n, p, lambda, t, CrossTerm::AsPrinted).unwrap();
                            let b = potential_w1(prof.as_ref(), n, n - p, lambda, t);
                            // w1 needs N−p < N
                            if let Ok(b) = b {
                                assert!((a - b).abs() <= 1e-12 * b.abs().max(1.0), "N={n} p={p} t={t}");
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn cross_term_variants() {
        let prof = perturbed_profile(1.0, 1.0).unwrap();
        let mut printed_differs = false;
        for i in 1..40 {
            let t = 0.5 * i as f64;
            let dual = potential_w2(&prof, 5, 2, 0.0, t, CrossTerm::DualConsistent).unwrap();
            let w1 = potential_w1(&prof, 5, 3, 0.0, t).unwrap();
            assert!((dual - w1).abs() <= 1e-12 * w1.abs().max(1.0));
            let printed = potential_w2(&prof, 5, 2, 0.0, t, CrossTerm::AsPrinted).unwrap();
            printed_differs |= (printed - w1).abs() > 1e-6;
        }
        assert!(printed_differs);
        assert_eq!("dual-consistent".parse::<CrossTerm>().unwrap(), CrossTerm::DualConsistent);
        assert!("other".parse::<CrossTerm>().is_err());
    }

    #[test]
    fn coupling_values() {
        let hyp = hyperbolic_profile();
        let t = 1.0f64.asinh();
        let c = coupling_v3(&hyp, 1.0, t).unwrap();
        assert_relative_eq!(c, 2.0 * 2.0f64.sqrt(), max_relative = 1e-14);
        assert!(coupling_v3(&hyp, 1.0, 30.0).unwrap() < 1e-11);
        for i in 1..20 {
            let t = 0.6 * i as f64;
            let one = coupling_v3(&hyp, 1.5, t).unwrap();
            let four = coupling_v3(&hyp, 6.0, t).unwrap();
            assert_relative_eq!(four, 2.0 * one, max_relative = 1e-14);
        }
        assert!(coupling_v3(&hyp, 0.0, 1.0).is_err());
    }

    #[test]
    fn argument_errors() {
        let hyp = hyperbolic_profile();
        assert!(potential_w1(&hyp, 3, 3, 0.0, 1.0).is_err());
        assert!(potential_w1(&hyp, 3, 0, -1.0, 1.0).is_err());
        assert!(potential_w1(&hyp, 3, 0, 0.0, 0.0).is_err());
        assert!(potential_w2(&hyp, 3, 0, 0.0, 1.0, CrossTerm::AsPrinted).is_err());
        assert!(Channel::new(ChannelTag::III, 4, 2, 0.0).is_err());
        assert!(Channel::new(ChannelTag::III, 4, 4, 1.0).is_err());
        assert!(Channel::new(ChannelTag::II, 4, 0, 1.0).is_err());
        assert!(Channel::new(ChannelTag::I, 4, 4, 1.0).is_err());
        assert!(Channel::new(ChannelTag::I, 1, 0, 0.0).is_err());
        assert!(build_radial_operator(&hyp, Channel::new(ChannelTag::I, 3, 0, 0.0).unwrap(), CrossTerm::AsPrinted, 0.0).is_err());
    }

    #[test]
    fn built_operators() {
        let hyp = hyperbolic_profile();
        let op = build_radial_operator(&hyp, Channel::new(ChannelTag::I, 3, 0, 0.0).unwrap(), CrossTerm::AsPrinted, 1.0).unwrap();
        for t in [1.0, 3.0, 9.0] {
            assert_eq!(op.a(t), 1.0);
            assert!((op.q1(t) - 1.0).abs() < 1e-13);
            assert!(op.q2(t).is_none() && op.c(t).is_none());
        }

        let op = build_radial_operator(&hyp, Channel::new(ChannelTag::III, 5, 2, 4.0).unwrap(), CrossTerm::AsPrinted, 1.0).unwrap();
        assert!(op.q1(30.0).abs() < 1e-9);
        assert!((op.q2(30.0).unwrap() - 1.0).abs() < 1e-9);
        assert!(op.c(30.0).unwrap().abs() < 1e-9);
        match op.potential(2.0) {
            Potential::Coupled { q1, q2, c } => {
                assert_eq!(q1, op.q1(2.0));
                assert_eq!(q2, op.q2(2.0).unwrap());
                assert_eq!(c, op.c(2.0).unwrap());
            }
            Potential::Scalar(_) => panic!("expected coupled potential"),
        }
        assert_eq!(op.limit_potential(), 0.0);

        let pert = perturbed_profile(1.0, 1.0).unwrap();
        let op = build_radial_operator(&pert, Channel::new(ChannelTag::I, 3, 0, 0.0).unwrap(), CrossTerm::AsPrinted, 1.0).unwrap();
        assert!((op.q1(50.0) - 1.0).abs() < 1e-1);
    }

    #[test]
    fn perturbed_potential_approaches_limit_like_one_over_t() {
        let pert = perturbed_profile(1.0, 1.0).unwrap();
        for (n, p) in [(3usize, 0usize), (4, 1), (5, 2), (6, 4)] {
            let lim = ((n as f64 - 2.0 * p as f64 - 1.0) / 2.0).powi(2);
            let fitted = |lo: f64, hi: f64| {
                (0..=200)
                    .map(|i| lo + (hi - lo) * i as f64 / 200.0)
                    .map(|t| t * (potential_w1(&pert, n, p, 0.0, t).unwrap() - lim).abs())
                    .fold(0.0, f64::max)
            };
            let near = fitted(50.0, 100.0);
            let far = fitted(250.0, 500.0);
            assert!(near.is_finite() && far.is_finite());
            assert!(far <= near * 1.05 + 1e-9, "N={n} p={p}: K grew from {near} to {far}");
            assert!(near < 50.0);
        }
    }

    #[test]
    fn potential_matrix_min_eigenvalue() {
        let m = Potential::Coupled { q1: 2.0, q2: 2.0, c: 1.0 };
        assert_relative_eq!(m.min_eigenvalue(), 1.0);
        assert_eq!(Potential::Scalar(3.0).min_eigenvalue(), 3.0);
    }

    #[test]
    fn transform_examples() {
        // exponent (N−2p−1)/4 = 1/2 on g = t²
        let w = transform_h_to_w(&Euclidean, 3, 0, FormPart::Tangential, &[4.0], &[1.0]).unwrap();
        assert_relative_eq!(w[0], 4.0, max_relative = 1e-15);

        let hyp = hyperbolic_profile();
        let grid: Vec<f64> = (1..50).map(|i| 0.2 * i as f64).collect();
        let h: Vec<f64> = grid.iter().map(|t| (t * 1.3).sin() + 0.1).collect();
        for part in [FormPart::Tangential, FormPart::Normal] {
            let w = transform_h_to_w(&hyp, 5, 2, part, &grid, &h).unwrap();
            let back = transform_w_to_h(&hyp, 5, 2, part, &grid, &w).unwrap();
            for (a, b) in h.iter().zip(&back) {
                assert!((a - b).abs() <= 1e-14 * a.abs().max(1.0));
            }
        }

        // N = 2p, normal part: w = h·g^{1/4}
        let w = transform_h_to_w(&hyp, 4, 2, FormPart::Normal, &grid, &h).unwrap();
        for ((t, hv), wv) in grid.iter().zip(&h).zip(&w) {
            let g = t.sinh().powi(2);
            assert_relative_eq!(*wv, hv * g.powf(0.25), max_relative = 1e-14);
        }
        assert!(transform_h_to_w(&hyp, 4, 2, FormPart::Normal, &grid, &h[1..]).is_err());
    }

    #[test]
    fn l2_weights() {
        let hyp = hyperbolic_profile();
        assert_relative_eq!(
            l2_weight(&hyp, 3, 0, FormPart::Tangential, 1.0).unwrap(),
            1.0f64.sinh().powi(2),
            max_relative = 1e-14
        );
        for t in [0.1, 0.5, 2.0] {
            assert_relative_eq!(l2_weight(&Euclidean, 3, 0, FormPart::Tangential, t).unwrap(), t * t, max_relative = 1e-14);
        }
    }

    #[test]
    fn transform_is_unitary() {
        let profiles: Vec<Box<dyn Profile>> = vec![
            Box::new(hyperbolic_profile()),
            Box::new(perturbed_profile(0.8, 2.5).unwrap()),
        ];
        let n = 4000;
        let (lo, hi) = (1.0, 10.0);
        let step = (hi - lo) / n as f64;
        let grid: Vec<f64> = (0..n).map(|i| lo + (i as f64 + 0.5) * step).collect();
        let h: Vec<f64> = grid
            .iter()
            .map(|t| ((t - lo) * (hi - t)).powi(2) * (-0.3 * t).exp())
            .collect();
        for prof in &profiles {
            for (n_dim, p) in [(3usize, 0usize), (4, 2), (6, 1)] {
                for part in [FormPart::Tangential, FormPart::Normal] {
                    let w = transform_h_to_w(prof.as_ref(), n_dim, p, part, &grid, &h).unwrap();
                    let lhs: f64 = grid
                        .iter()
                        .zip(&h)
                        .map(|(&t, hv)| hv * hv * l2_weight(prof.as_ref(), n_dim, p, part, t).unwrap())
                        .sum::<f64>()
                        * step;
                    let rhs: f64 = w.iter().map(|v| v * v).sum::<f64>() * step;
                    assert!((lhs - rhs).abs() <= 1e-8 * lhs.abs(), "{lhs} vs {rhs}");
                }
            }
        }
    }
}
