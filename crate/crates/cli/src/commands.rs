use std::fmt::Write as _;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use ahspec::discretize::{assemble_block, assemble_tridiagonal, AssemblyError, Grid};
use ahspec::harmonic::{classify_harmonic, HarmonicError};
use ahspec::metric::{lookup_profile, MetricError};
use ahspec::reduction::{build_radial_operator, Potential, ReductionError, SturmLiouville};
use ahspec::report::{self, Format, SweepReport};
use ahspec::selftest::{run_selftest, CheckStatus, SelftestConfig, SelftestError};
use ahspec::spectrum::{verify_channels, SpectrumError};
use ahspec::sphere_modes::{closed_eigenvalues, coclosed_eigenvalues, FormKind, ModeError};
use ahspec::{Channel, Profile};
use rayon::prelude::*;

use crate::args::{DumpArgs, HarmonicArgs, ModesArgs, OutputArgs, ProfileArgs, SelftestArgs, SpectrumArgs, SweepArgs};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Metric(#[from] MetricError),
    #[error(transparent)]
    Spectrum(#[from] SpectrumError),
    #[error(transparent)]
    Harmonic(#[from] HarmonicError),
    #[error(transparent)]
    Reduction(#[from] ReductionError),
    #[error(transparent)]
    Assembly(#[from] AssemblyError),
    #[error(transparent)]
    Mode(#[from] ModeError),
    #[error(transparent)]
    Selftest(#[from] SelftestError),
    #[error("numerical failure: {0}")]
    Numeric(String),
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl CliError {
    /// 1 for usage and configuration problems, 3 when the numerics could not decide.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Spectrum(SpectrumError::Assembly(_) | SpectrumError::Eigen(_)) => 3,
            CliError::Harmonic(HarmonicError::Inconclusive(_) | HarmonicError::Divergent) => 3,
            CliError::Numeric(_) => 3,
            _ => 1,
        }
    }
}

fn load_profile(p: &ProfileArgs) -> Result<Box<dyn Profile>, CliError> {
    Ok(lookup_profile(&p.profile, p.alpha, p.beta)?)
}

fn check_degree(dim: usize, degree: usize) -> Result<(), CliError> {
    if dim < 2 {
        return Err(CliError::Usage(format!("--dim {dim} must be >= 2")));
    }
    if degree > dim {
        return Err(CliError::Usage(format!("--degree {degree} exceeds --dim {dim}")));
    }
    Ok(())
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            w.write_all(text.as_bytes())?;
            w.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(text.as_bytes())?;
            lock.flush()?;
        }
    }
    Ok(())
}

fn structured<T: serde::Serialize>(kind: &str, body: &T) -> Result<String, CliError> {
    Ok(report::to_structured(kind, body)? + "\n")
}

fn render<T: serde::Serialize>(
    output: &OutputArgs,
    kind: &str,
    body: &T,
    human: impl FnOnce(&T) -> String,
    csv: impl FnOnce(&T) -> String,
) -> Result<(), CliError> {
    let text = match output.format {
        Format::Human => human(body),
        Format::Structured => structured(kind, body)?,
        Format::Csv => csv(body),
    };
    emit(output.out.as_deref(), &text)
}

pub fn cmd_spectrum(a: &SpectrumArgs) -> Result<i32, CliError> {
    check_degree(a.dim, a.degree)?;
    let profile = load_profile(&a.profile)?;
    let only = (!a.channel.is_empty()).then_some(a.channel.as_slice());
    let rep = verify_channels(profile.as_ref(), a.dim, a.degree, only, &a.bracket.config())?;
    render(&a.output, "spectrum", &rep, report::spectrum_human, report::spectrum_csv)?;
    Ok(rep.verdict.exit_code())
}

pub fn cmd_harmonic(a: &HarmonicArgs) -> Result<i32, CliError> {
    check_degree(a.dim, a.degree)?;
    let profile = load_profile(&a.profile)?;
    let rep = classify_harmonic(profile.as_ref(), a.dim, a.degree)?;
    render(&a.output, "harmonic", &rep, report::harmonic_human, report::harmonic_csv)?;
    Ok(0)
}

pub fn cmd_sweep(a: &SweepArgs) -> Result<i32, CliError> {
    check_degree(a.dim, 0)?;
    let profile = load_profile(&a.profile)?;
    let config = a.bracket.config();
    let reports = (0..=a.dim)
        .into_par_iter()
        .map(|p| verify_channels(profile.as_ref(), a.dim, p, None, &config))
        .collect::<Result<Vec<_>, _>>()?;
    let sweep = SweepReport::from_reports(profile.name(), a.dim, &reports);
    render(&a.output, "sweep", &sweep, report::sweep_human, report::sweep_csv)?;
    Ok(sweep.verdict.exit_code())
}

pub fn cmd_selftest(a: &SelftestArgs) -> Result<i32, CliError> {
    let profile = load_profile(&a.profile)?;
    let config = SelftestConfig {
        tol: a.tol,
        cross_term: a.cross_term,
        seed: a.seed,
    };
    let rep = run_selftest(profile.as_ref(), &config)?;
    let human = |r: &ahspec::selftest::SelftestReport| {
        let mut s = String::new();
        for c in &r.checks {
            let status = match c.status {
                CheckStatus::Pass => "PASS",
                CheckStatus::Fail => "FAIL",
                CheckStatus::Skipped => "SKIP",
            };
            let _ = writeln!(s, "{status}  {:<24} {}", c.name, c.detail);
        }
        let _ = writeln!(s, "{}", if r.passed { "all checks passed" } else { "some checks failed" });
        s
    };
    let csv = |r: &ahspec::selftest::SelftestReport| {
        let mut s = String::from("check,status,detail\n");
        for c in &r.checks {
            let _ = writeln!(s, "{},{:?},\"{}\"", c.name, c.status, c.detail);
        }
        s
    };
    render(&a.output, "selftest", &rep, human, csv)?;
    Ok(if rep.passed { 0 } else { 2 })
}

pub fn cmd_modes(a: &ModesArgs) -> Result<i32, CliError> {
    let modes = match FormKind::from(a.kind) {
        FormKind::Coclosed => coclosed_eigenvalues(a.dim, a.degree, a.modes)?,
        FormKind::Closed => closed_eigenvalues(a.dim, a.degree, a.modes)?,
    };
    let table = |ms: &Vec<ahspec::sphere_modes::SphereMode>, sep: &str| {
        let mut s = format!("index{sep}lambda{sep}multiplicity\n");
        for m in ms {
            let _ = writeln!(s, "{}{sep}{}{sep}{}", m.index, m.lambda, m.multiplicity);
        }
        s
    };
    render(&a.output, "modes", &modes, |m| table(m, "\t"), |m| table(m, ","))?;
    Ok(0)
}

pub fn cmd_operator_dump(a: &DumpArgs) -> Result<i32, CliError> {
    check_degree(a.dim, a.degree)?;
    let (lo, hi) = match a.range.as_slice() {
        &[lo, hi] => (lo, hi),
        _ => return Err(CliError::Usage("--range takes two values a,b".into())),
    };
    if !(lo > 0.0) || !(hi > lo) || !hi.is_finite() {
        return Err(CliError::Usage(format!("--range {lo},{hi} must satisfy 0 < a < b")));
    }
    if a.points < 2 {
        return Err(CliError::Usage("--points must be >= 2".into()));
    }
    let profile = load_profile(&a.profile)?;
    let channel = Channel::new(a.channel, a.dim, a.degree, a.lambda)?;
    let op = build_radial_operator(profile.as_ref(), channel, a.cross_term, lo)?;

    let mut text = String::from(if op.is_coupled() { "t,a,q1,q2,c\n" } else { "t,a,q1\n" });
    let step = (hi - lo) / (a.points - 1) as f64;
    for i in 0..a.points {
        let t = if i + 1 == a.points { hi } else { lo + i as f64 * step };
        let stiffness = op.stiffness(t);
        let q = op.potential(t);
        if !stiffness.is_finite() || !q.is_finite() {
            return Err(CliError::Numeric(format!("non-finite coefficient at t = {t}")));
        }
        match q {
            Potential::Scalar(q1) => writeln!(text, "{t},{stiffness},{q1}"),
            Potential::Coupled { q1, q2, c } => writeln!(text, "{t},{stiffness},{q1},{q2},{c}"),
        }
        .expect("writing to a String");
    }
    emit(a.out.as_deref(), &text)?;

    if let Some(path) = &a.matrix {
        let grid = Grid::new(lo, hi - lo, a.points)?;
        let mut w = BufWriter::new(File::create(path)?);
        if op.is_coupled() {
            let b = assemble_block(&op, &grid)?;
            writeln!(w, "node,d1,d2,c,link")?;
            for (i, [d1, d2, c]) in b.blocks.iter().enumerate() {
                match b.links.get(i) {
                    Some(l) => writeln!(w, "{i},{d1:e},{d2:e},{c:e},{l:e}")?,
                    None => writeln!(w, "{i},{d1:e},{d2:e},{c:e},")?,
                }
            }
        } else {
            assemble_tridiagonal(&op, &grid)?.write_csv(&mut w)?;
        }
        w.flush()?;
    }
    Ok(0)
}
