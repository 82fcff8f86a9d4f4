//! Brackets for the bottom of the essential spectrum.
//!
//! For each channel and sphere mode the radial operator on `[c, ∞)` is
//! bracketed from below by the infimum of its potential (the kinetic term is
//! non-negative) and from above by the smallest Dirichlet eigenvalue on
//! `[c, c+L]`. Brackets are then compared against the thresholds
//! `((N−2p∓1)/2)²`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::discretize::{assemble_block, assemble_tridiagonal, AssemblyError, Grid};
use crate::eigensolve::{bisect_eigenvalues, smallest_eigenvalues_banded, EigenError};
use crate::harmonic::{classify_harmonic, HarmonicReport};
use crate::metric::{AsymptoticClass, Profile};
use crate::reduction::{build_radial_operator, Channel, ChannelTag, CrossTerm, ReductionError, SturmLiouville};
use crate::sphere_modes::{closed_eigenvalues, coclosed_eigenvalues, ModeError};

/// Bisection width for Dirichlet eigenvalues.
const EIG_TOL: f64 = 1e-10;
/// Samples of the potential beyond the truncation end, out to `c + L + FAR_REACH`.
const FAR_SAMPLES: usize = 400;
const FAR_REACH: f64 = 1000.0;

#[derive(Debug, Error)]
pub enum SpectrumError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("profile {0} is neither exactly hyperbolic nor decay-certified")]
    Uncertified(String),
    #[error(transparent)]
    Reduction(#[from] ReductionError),
    #[error(transparent)]
    Assembly(#[from] AssemblyError),
    #[error(transparent)]
    Eigen(#[from] EigenError),
    #[error(transparent)]
    Mode(#[from] ModeError),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BracketConfig {
    /// Left end `c` of the exterior domain.
    pub cut: f64,
    /// Truncation lengths `L`, ascending.
    pub lengths: Vec<f64>,
    /// Grid points per unit length.
    pub density: f64,
    pub tol: f64,
    /// Widest aggregate bracket that still counts as conclusive.
    pub max_width: f64,
    pub mode_count: usize,
    pub cross_term: CrossTerm,
}

impl Default for BracketConfig {
    fn default() -> Self {
        BracketConfig {
            cut: 8.0,
            lengths: vec![10.0, 20.0, 40.0],
            density: 100.0,
            tol: 1e-3,
            max_width: 5e-2,
            mode_count: 3,
            cross_term: CrossTerm::AsPrinted,
        }
    }
}

fn positive(name: &str, v: f64) -> Result<(), SpectrumError> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(SpectrumError::Config(format!("{name} = {v} must be finite and > 0")))
    }
}

impl BracketConfig {
    pub fn validate(&self) -> Result<(), SpectrumError> {
        positive("cut", self.cut)?;
        positive("density", self.density)?;
        positive("tol", self.tol)?;
        positive("max_width", self.max_width)?;
        if self.lengths.is_empty() {
            return Err(SpectrumError::Config("length schedule is empty".into()));
        }
        for &l in &self.lengths {
            positive("length", l)?;
        }
        if self.lengths.windows(2).any(|w| w[1] <= w[0]) {
            return Err(SpectrumError::Config("lengths must be strictly increasing".into()));
        }
        if self.mode_count == 0 {
            return Err(SpectrumError::Config("mode count must be >= 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LengthSample {
    pub length: f64,
    pub n: usize,
    pub upper: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EssentialBracket {
    pub channel: ChannelTag,
    pub lambda: f64,
    pub lower: f64,
    pub upper: f64,
    pub cut: f64,
    pub length: f64,
    pub n: usize,
    pub converged: bool,
    /// Richardson limit of the upper bounds as `L → ∞`.
    pub extrapolated: Option<f64>,
    pub schedule: Vec<LengthSample>,
    /// Where the potential infimum was found; `None` for the `t → ∞` limit.
    pub lower_at: Option<f64>,
}

impl EssentialBracket {
    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Consistent,
    Inconsistent,
    Inconclusive,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Consistent => 0,
            Verdict::Inconsistent => 2,
            Verdict::Inconclusive => 3,
        }
    }

    /// Inconclusive dominates, then inconsistent.
    fn combine(self, other: Verdict) -> Verdict {
        use Verdict::*;
        match (self, other) {
            (Inconclusive, _) | (_, Inconclusive) => Inconclusive,
            (Inconsistent, _) | (_, Inconsistent) => Inconsistent,
            _ => Consistent,
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Consistent => "consistent",
            Verdict::Inconsistent => "inconsistent",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Prediction {
    pub interval_start: f64,
    pub includes_isolated_zero: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChannelReport {
    pub channel: ChannelTag,
    pub threshold: f64,
    pub brackets: Vec<EssentialBracket>,
    pub aggregate_lower: f64,
    pub aggregate_upper: f64,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub profile: String,
    pub n_dim: usize,
    pub degree: usize,
    pub prediction: Prediction,
    pub channels: Vec<ChannelReport>,
    pub aggregate_lower: f64,
    pub aggregate_upper: f64,
    pub verdict: Verdict,
    pub zero_in_essential: bool,
    pub harmonic: Option<HarmonicReport>,
    pub config: BracketConfig,
    pub notes: Vec<String>,
}

fn first_threshold(n: usize, p: usize) -> f64 {
    ((n as f64 - 2.0 * p as f64 - 1.0) / 2.0).powi(2)
}

fn second_threshold(n: usize, p: usize) -> f64 {
    ((n as f64 - 2.0 * p as f64 + 1.0) / 2.0).powi(2)
}

/// Bottom of the essential spectrum of one channel over all its modes.
pub fn channel_threshold(n_dim: usize, p: usize, tag: ChannelTag) -> Result<f64, SpectrumError> {
    // λ plays no role in the threshold; any admissible value validates the range
    Channel::new(tag, n_dim, p, 1.0)?;
    Ok(match tag {
        ChannelTag::I => first_threshold(n_dim, p),
        ChannelTag::II => second_threshold(n_dim, p),
        ChannelTag::III => first_threshold(n_dim, p).min(second_threshold(n_dim, p)),
    })
}

pub fn predict_essential_spectrum(n_dim: usize, p: usize) -> Prediction {
    let start = if p == 0 {
        first_threshold(n_dim, 0)
    } else if p == n_dim {
        second_threshold(n_dim, p)
    } else {
        first_threshold(n_dim, p).min(second_threshold(n_dim, p))
    };
    Prediction {
        interval_start: start,
        includes_isolated_zero: 2 * p == n_dim,
    }
}

/// Channels present in degree `p`.
pub fn applicable_channels(n_dim: usize, p: usize) -> Vec<ChannelTag> {
    if p == 0 {
        vec![ChannelTag::I]
    } else if p == n_dim {
        vec![ChannelTag::II]
    } else {
        ChannelTag::ALL.to_vec()
    }
}

/// The first `count` sphere eigenvalues feeding a channel.
pub fn channel_modes(n_dim: usize, p: usize, tag: ChannelTag, count: usize) -> Result<Vec<f64>, SpectrumError> {
    if count == 0 {
        return Err(ModeError::Count.into());
    }
    Channel::new(tag, n_dim, p, 1.0)?;
    let lambdas = match tag {
        ChannelTag::I if p + 1 == n_dim => vec![0.0],
        ChannelTag::I => coclosed_eigenvalues(n_dim, p, count)?.iter().map(|m| m.lambda).collect(),
        ChannelTag::II if p == 1 => vec![0.0],
        ChannelTag::II => closed_eigenvalues(n_dim, p - 1, count)?.iter().map(|m| m.lambda).collect(),
        ChannelTag::III => coclosed_eigenvalues(n_dim, p - 1, count + 1)?
            .iter()
            .map(|m| m.lambda)
            .filter(|&l| l > 0.0)
            .take(count)
            .collect(),
    };
    Ok(lambdas)
}

fn richardson(a: &LengthSample, b: &LengthSample) -> f64 {
    let (la, lb) = (a.length * a.length, b.length * b.length);
    (lb * b.upper - la * a.upper) / (lb - la)
}

/// Upper bounds behave like `u∞ + K/L²`; converged when the last two
/// extrapolations agree.
fn convergence(schedule: &[LengthSample], tol: f64) -> (bool, Option<f64>) {
    match schedule {
        [] | [_] => (false, None),
        [a, b] => ((a.upper - b.upper).abs() < tol, Some(richardson(a, b))),
        [.., a, b, c] => {
            let (e1, e2) = (richardson(a, b), richardson(b, c));
            ((e1 - e2).abs() < tol, Some(e2))
        }
    }
}

fn smallest_dirichlet<O: SturmLiouville>(op: &O, coupled: bool, grid: &Grid) -> Result<f64, SpectrumError> {
    let values = if coupled {
        smallest_eigenvalues_banded(&assemble_block(op, grid)?, 1, EIG_TOL)?
    } else {
        bisect_eigenvalues(&assemble_tridiagonal(op, grid)?, 1, 1, EIG_TOL)?
    };
    Ok(values[0])
}

/// Infimum of the (smallest eigenvalue of the) potential over `[c, ∞)`.
fn potential_infimum<O: SturmLiouville>(op: &O, grid: &Grid, limit: f64) -> (f64, Option<f64>) {
    let far_start = grid.start() + grid.length();
    let ratio = (FAR_REACH / grid.spacing()).powf(1.0 / FAR_SAMPLES as f64);
    let far = (0..=FAR_SAMPLES).map(|k| far_start + grid.spacing() * ratio.powi(k as i32));
    let mut best = (limit, None);
    for t in std::iter::once(grid.start()).chain(grid.points()).chain(far) {
        let v = op.potential(t).min_eigenvalue();
        if v < best.0 {
            best = (v, Some(t));
        }
    }
    best
}

fn require_certified(profile: &dyn Profile) -> Result<(), SpectrumError> {
    match profile.asymptotic_class() {
        AsymptoticClass::Uncertified => Err(SpectrumError::Uncertified(profile.name())),
        _ => Ok(()),
    }
}

pub fn essential_bottom_bracket(
    profile: &dyn Profile,
    channel: Channel,
    config: &BracketConfig,
) -> Result<EssentialBracket, SpectrumError> {
    config.validate()?;
    require_certified(profile)?;
    let op = build_radial_operator(profile, channel, config.cross_term, config.cut)?;
    let grids = config
        .lengths
        .iter()
        .map(|&l| Grid::with_density(config.cut, l, config.density))
        .collect::<Result<Vec<_>, _>>()?;
    let schedule = grids
        .par_iter()
        .map(|g| {
            Ok(LengthSample {
                length: g.length(),
                n: g.len(),
                upper: smallest_dirichlet(&op, op.is_coupled(), g)?,
            })
        })
        .collect::<Result<Vec<_>, SpectrumError>>()?;
    let last = *schedule.last().expect("schedule validated non-empty");
    let (lower, lower_at) = potential_infimum(&op, grids.last().expect("non-empty"), op.limit_potential());
    let (converged, extrapolated) = convergence(&schedule, config.tol);
    Ok(EssentialBracket {
        channel: channel.tag,
        lambda: channel.lambda,
        lower,
        upper: last.upper,
        cut: config.cut,
        length: last.length,
        n: last.n,
        converged,
        extrapolated,
        schedule,
        lower_at,
    })
}

fn judge(threshold: f64, lower: f64, upper: f64, brackets: &[EssentialBracket], config: &BracketConfig) -> Verdict {
    let tol = config.tol;
    if brackets.iter().any(|b| !b.converged) {
        return Verdict::Inconclusive;
    }
    if brackets.iter().any(|b| b.upper < threshold - tol) || lower > threshold + tol {
        return Verdict::Inconsistent;
    }
    if upper - lower > config.max_width {
        return Verdict::Inconclusive;
    }
    if lower - tol <= threshold && threshold <= upper + tol {
        Verdict::Consistent
    } else {
        Verdict::Inconsistent
    }
}

fn aggregate(brackets: &[EssentialBracket]) -> (f64, f64) {
    brackets
        .iter()
        .fold((f64::INFINITY, f64::INFINITY), |(lo, up), b| (lo.min(b.lower), up.min(b.upper)))
}

/// Brackets for the first `config.mode_count` modes of a channel.
pub fn sweep_modes(
    profile: &dyn Profile,
    n_dim: usize,
    p: usize,
    tag: ChannelTag,
    config: &BracketConfig,
) -> Result<ChannelReport, SpectrumError> {
    config.validate()?;
    let threshold = channel_threshold(n_dim, p, tag)?;
    let lambdas = channel_modes(n_dim, p, tag, config.mode_count)?;
    let brackets = lambdas
        .par_iter()
        .map(|&lambda| essential_bottom_bracket(profile, Channel::new(tag, n_dim, p, lambda)?, config))
        .collect::<Result<Vec<_>, _>>()?;
    let (aggregate_lower, aggregate_upper) = aggregate(&brackets);
    let verdict = judge(threshold, aggregate_lower, aggregate_upper, &brackets, config);
    Ok(ChannelReport {
        channel: tag,
        threshold,
        brackets,
        aggregate_lower,
        aggregate_upper,
        verdict,
    })
}

pub fn verify(profile: &dyn Profile, n_dim: usize, p: usize, config: &BracketConfig) -> Result<SpectrumReport, SpectrumError> {
    verify_channels(profile, n_dim, p, None, config)
}

/// [`verify`] restricted to `only` (all applicable channels when `None`). With
/// a strict subset the aggregate is compared against the smallest selected
/// channel threshold instead of the predicted interval start.
pub fn verify_channels(
    profile: &dyn Profile,
    n_dim: usize,
    p: usize,
    only: Option<&[ChannelTag]>,
    config: &BracketConfig,
) -> Result<SpectrumReport, SpectrumError> {
    config.validate()?;
    if n_dim < 2 || p > n_dim {
        return Err(SpectrumError::Config(format!("need N >= 2 and 0 <= p <= N, got N = {n_dim}, p = {p}")));
    }
    require_certified(profile)?;
    let prediction = predict_essential_spectrum(n_dim, p);
    let applicable = applicable_channels(n_dim, p);
    let selected: Vec<ChannelTag> = match only {
        None => applicable.clone(),
        Some(tags) => {
            if let Some(bad) = tags.iter().find(|t| !applicable.contains(t)) {
                return Err(SpectrumError::Config(format!("channel {bad} does not occur for N = {n_dim}, p = {p}")));
            }
            applicable.iter().copied().filter(|t| tags.contains(t)).collect()
        }
    };
    let channels = selected
        .par_iter()
        .map(|&tag| sweep_modes(profile, n_dim, p, tag, config))
        .collect::<Result<Vec<_>, _>>()?;

    let aggregate_lower = channels.iter().map(|c| c.aggregate_lower).fold(f64::INFINITY, f64::min);
    let aggregate_upper = channels.iter().map(|c| c.aggregate_upper).fold(f64::INFINITY, f64::min);
    let mut verdict = channels.iter().fold(Verdict::Consistent, |v, c| v.combine(c.verdict));
    let start = channels.iter().map(|c| c.threshold).fold(f64::INFINITY, f64::min);
    if verdict == Verdict::Consistent
        && !(aggregate_lower - config.tol <= start && start <= aggregate_upper + config.tol)
    {
        verdict = Verdict::Inconsistent;
    }

    let mut notes = vec![
        "brackets enclose the bottom of the spectrum of each exterior radial operator; \
         the union over the computed modes only approximates the essential spectrum from below"
            .to_string(),
        "convergence flag is heuristic: Richardson extrapolation of the Dirichlet upper bounds in 1/L^2".to_string(),
    ];
    let harmonic = match classify_harmonic(profile, n_dim, p) {
        Ok(h) => Some(h),
        Err(e) => {
            notes.push(format!("harmonic classification unavailable: {e}"));
            None
        }
    };
    let zero_in_essential = prediction.includes_isolated_zero
        && harmonic.as_ref().is_some_and(|h| h.zero_in_essential_spectrum);
    if prediction.includes_isolated_zero {
        match &harmonic {
            None => verdict = verdict.combine(Verdict::Inconclusive),
            Some(_) if !zero_in_essential => verdict = verdict.combine(Verdict::Inconsistent),
            Some(_) => notes.push("0 is an eigenvalue of infinite multiplicity (L2 harmonic forms of middle degree)".into()),
        }
    } else {
        notes.push(format!("p != N/2: 0 is not in the essential spectrum in degree {p}"));
    }

    Ok(SpectrumReport {
        profile: profile.name(),
        n_dim,
        degree: p,
        prediction,
        channels,
        aggregate_lower,
        aggregate_upper,
        verdict,
        zero_in_essential,
        harmonic,
        config: config.clone(),
        notes,
    })
}
