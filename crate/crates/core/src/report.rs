//! Serialization of run results.
//!
//! Structured output is one JSON document per run on a single line, wrapped
//! in an [`Envelope`] carrying the schema version and document kind.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::harmonic::{HarmonicReport, IntegralVerdict};
use crate::spectrum::{SpectrumReport, Verdict};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Human,
    Structured,
    Csv,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "human" => Ok(Format::Human),
            "structured" | "json" => Ok(Format::Structured),
            "csv" => Ok(Format::Csv),
            other => Err(format!("unknown format {other:?} (expected human, structured or csv)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Envelope<T> {
    pub schema_version: u32,
    pub kind: String,
    pub body: T,
}

impl<T> Envelope<T> {
    pub fn new(kind: &str, body: T) -> Self {
        Envelope {
            schema_version: SCHEMA_VERSION,
            kind: kind.to_string(),
            body,
        }
    }
}

pub fn to_structured<T: Serialize>(kind: &str, body: &T) -> serde_json::Result<String> {
    serde_json::to_string(&Envelope::new(kind, body))
}

pub fn from_structured<T: DeserializeOwned>(line: &str) -> serde_json::Result<Envelope<T>> {
    serde_json::from_str(line.trim_end())
}

/// One row of a degree sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub degree: usize,
    pub predicted_start: f64,
    pub includes_isolated_zero: bool,
    pub aggregate_lower: f64,
    pub aggregate_upper: f64,
    pub zero_in_essential: bool,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub profile: String,
    pub n_dim: usize,
    pub rows: Vec<SweepRow>,
    pub verdict: Verdict,
}

impl SweepReport {
    pub fn from_reports(profile: String, n_dim: usize, reports: &[SpectrumReport]) -> Self {
        let rows: Vec<SweepRow> = reports
            .iter()
            .map(|r| SweepRow {
                degree: r.degree,
                predicted_start: r.prediction.interval_start,
                includes_isolated_zero: r.prediction.includes_isolated_zero,
                aggregate_lower: r.aggregate_lower,
                aggregate_upper: r.aggregate_upper,
                zero_in_essential: r.zero_in_essential,
                verdict: r.verdict,
            })
            .collect();
        let verdict = if rows.iter().any(|r| r.verdict == Verdict::Inconclusive) {
            Verdict::Inconclusive
        } else if rows.iter().any(|r| r.verdict == Verdict::Inconsistent) {
            Verdict::Inconsistent
        } else {
            Verdict::Consistent
        };
        SweepReport {
            profile,
            n_dim,
            rows,
            verdict,
        }
    }
}

pub fn spectrum_human(r: &SpectrumReport) -> String {
    let mut s = String::new();
    let zero = if r.prediction.includes_isolated_zero { "{0} ∪ " } else { "" };
    let _ = writeln!(s, "profile {}  N = {}  p = {}", r.profile, r.n_dim, r.degree);
    let _ = writeln!(s, "predicted essential spectrum: {zero}[{}, ∞)", r.prediction.interval_start);
    for c in &r.channels {
        let _ = writeln!(
            s,
            "channel {:<3} threshold {:<8} bracket [{:.6}, {:.6}]  {}",
            c.channel, c.threshold, c.aggregate_lower, c.aggregate_upper, c.verdict
        );
        for b in &c.brackets {
            let _ = writeln!(
                s,
                "    λ = {:<6} [{:.6}, {:.6}]  L = {}  n = {}{}",
                b.lambda,
                b.lower,
                b.upper,
                b.length,
                b.n,
                if b.converged { "" } else { "  (not converged)" }
            );
        }
    }
    let _ = writeln!(s, "aggregate bracket [{:.6}, {:.6}]", r.aggregate_lower, r.aggregate_upper);
    if r.prediction.includes_isolated_zero {
        let _ = writeln!(s, "isolated zero in essential spectrum: {}", r.zero_in_essential);
    }
    for n in &r.notes {
        let _ = writeln!(s, "note: {n}");
    }
    let _ = writeln!(s, "verdict: {}", r.verdict);
    s
}

/// Rows `channel,lambda,L,lower,upper`, one per truncation length.
pub fn spectrum_csv(r: &SpectrumReport) -> String {
    let mut s = String::from("channel,lambda,L,lower,upper\n");
    for c in &r.channels {
        for b in &c.brackets {
            for sample in &b.schedule {
                let _ = writeln!(s, "{},{},{},{},{}", c.channel, b.lambda, sample.length, b.lower, sample.upper);
            }
        }
    }
    s
}

fn integral_line(name: &str, v: &IntegralVerdict) -> String {
    match v.value() {
        Some(value) => format!("{name}: convergent, value {value:.9} (tail ≤ {:.1e})", v.tail_bound.unwrap_or(0.0)),
        None => format!(
            "{name}: divergent ({:?}), finite part on [{}, {}] = {:.6e}",
            v.tail_class, v.lower_limit, v.cutoff, v.finite_part
        ),
    }
}

pub fn harmonic_human(h: &HarmonicReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "N = {}  p = {}", h.n_dim, h.degree);
    let _ = writeln!(s, "classification: {}", classification_name(h));
    let _ = writeln!(s, "{}", integral_line("volume integral", &h.volume_integral));
    let _ = writeln!(s, "{}", integral_line("middle integral", &h.middle_integral));
    if let Some(r) = h.conformal_radius {
        let _ = writeln!(s, "conformal radius: {r:.9}");
    }
    let _ = writeln!(s, "zero in point spectrum: {}", h.zero_in_point_spectrum);
    let _ = writeln!(s, "zero in essential spectrum: {}", h.zero_in_essential_spectrum);
    s
}

fn classification_name(h: &HarmonicReport) -> String {
    serde_json::to_value(h.classification)
        .ok()
        .and_then(|v| v.as_str().map(str::to_owned))
        .unwrap_or_default()
}

pub fn harmonic_csv(h: &HarmonicReport) -> String {
    format!(
        "n_dim,degree,classification,conformal_radius,zero_in_point_spectrum,zero_in_essential_spectrum\n{},{},{},{},{},{}\n",
        h.n_dim,
        h.degree,
        classification_name(h),
        h.conformal_radius.map(|r| r.to_string()).unwrap_or_default(),
        h.zero_in_point_spectrum,
        h.zero_in_essential_spectrum
    )
}

pub fn sweep_human(r: &SweepReport) -> String {
    let mut s = format!("profile {}  N = {}\n", r.profile, r.n_dim);
    let _ = writeln!(s, "{:>3}  {:>10}  {:>24}  {:>5}  verdict", "p", "start", "aggregate bracket", "zero");
    for row in &r.rows {
        let _ = writeln!(
            s,
            "{:>3}  {:>10}  [{:>10.6}, {:>10.6}]  {:>5}  {}",
            row.degree,
            row.predicted_start,
            row.aggregate_lower,
            row.aggregate_upper,
            row.includes_isolated_zero,
            row.verdict
        );
    }
    let _ = writeln!(s, "overall: {}", r.verdict);
    s
}

pub fn sweep_csv(r: &SweepReport) -> String {
    let mut s = String::from("degree,predicted_start,isolated_zero,aggregate_lower,aggregate_upper,verdict\n");
    for row in &r.rows {
        let _ = writeln!(
            s,
            "{},{},{},{},{},{}",
            row.degree, row.predicted_start, row.includes_isolated_zero, row.aggregate_lower, row.aggregate_upper, row.verdict
        );
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harmonic::classify_harmonic;
    use crate::metric::hyperbolic_profile;
    use crate::spectrum::{verify, BracketConfig};

    fn small_config() -> BracketConfig {
        BracketConfig {
            lengths: vec![10.0, 20.0],
            density: 40.0,
            mode_count: 2,
            ..BracketConfig::default()
        }
    }

    #[test]
    fn spectrum_report_round_trips() {
        let r = verify(&hyperbolic_profile(), 4, 2, &small_config()).unwrap();
        let line = to_structured("spectrum", &r).unwrap();
        assert!(!line.contains('\n'));
        let back: Envelope<SpectrumReport> = from_structured(&line).unwrap();
        assert_eq!(back.schema_version, SCHEMA_VERSION);
        assert_eq!(back.kind, "spectrum");
        assert_eq!(back.body, r);
    }

    #[test]
    fn harmonic_and_sweep_round_trip() {
        let h = classify_harmonic(&hyperbolic_profile(), 6, 3).unwrap();
        let back: Envelope<HarmonicReport> = from_structured(&to_structured("harmonic", &h).unwrap()).unwrap();
        assert_eq!(back.body, h);

        let reports: Vec<_> = (0..=2).map(|p| verify(&hyperbolic_profile(), 2, p, &small_config()).unwrap()).collect();
        let sweep = SweepReport::from_reports("hyperbolic".into(), 2, &reports);
        let back: Envelope<SweepReport> = from_structured(&to_structured("sweep", &sweep).unwrap()).unwrap();
        assert_eq!(back.body, sweep);
        assert_eq!(sweep.rows.len(), 3);
    }

    #[test]
    fn csv_shapes() {
        let r = verify(&hyperbolic_profile(), 3, 1, &small_config()).unwrap();
        let csv = spectrum_csv(&r);
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("channel,lambda,L,lower,upper"));
        let rows: Vec<&str> = lines.collect();
        let expected: usize = r.channels.iter().map(|c| c.brackets.len() * 2).sum();
        assert_eq!(rows.len(), expected);
        assert!(rows.iter().all(|l| l.split(',').count() == 5));

        let h = classify_harmonic(&hyperbolic_profile(), 4, 2).unwrap();
        assert!(harmonic_csv(&h).contains(",infinite_dimensional,"));
    }

    #[test]
    fn human_output_mentions_verdict() {
        let config = BracketConfig { mode_count: 1, ..BracketConfig::default() };
        let r = verify(&hyperbolic_profile(), 3, 0, &config).unwrap();
        let text = spectrum_human(&r);
        assert!(text.contains("verdict: consistent"));
        let h = classify_harmonic(&hyperbolic_profile(), 4, 2).unwrap();
        assert!(harmonic_human(&h).contains("infinite_dimensional"));
    }

    #[test]
    fn formats_parse() {
        assert_eq!("human".parse::<Format>(), Ok(Format::Human));
        assert_eq!("json".parse::<Format>(), Ok(Format::Structured));
        assert_eq!("csv".parse::<Format>(), Ok(Format::Csv));
        assert!("xml".parse::<Format>().is_err());
    }
}
