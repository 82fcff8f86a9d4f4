//! Built-in oracle checks run by `ahspec selftest`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::discretize::{assemble_block, assemble_tridiagonal, Grid, TridiagonalSym};
use crate::eigensolve::dense::jacobi_eigenvalues;
use crate::eigensolve::{bisect_eigenvalues, smallest_eigenvalues_banded};
use crate::harmonic::middle_integral;
use crate::metric::{hyperbolic_profile, Profile};
use crate::reduction::{build_radial_operator, potential_w1, Channel, ChannelTag, CrossTerm, Potential, SturmLiouville};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SelftestError {
    #[error("tolerance {0} must be finite and > 0")]
    Tolerance(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SelftestConfig {
    pub tol: f64,
    pub cross_term: CrossTerm,
    pub seed: u64,
}

impl Default for SelftestConfig {
    fn default() -> Self {
        SelftestConfig {
            tol: 1e-9,
            cross_term: CrossTerm::AsPrinted,
            seed: 7,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub status: CheckStatus,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SelftestReport {
    pub profile: String,
    pub tol: f64,
    pub checks: Vec<CheckResult>,
    pub passed: bool,
}

fn check(name: &str, error: f64, bound: f64) -> CheckResult {
    CheckResult {
        name: name.into(),
        status: if error <= bound { CheckStatus::Pass } else { CheckStatus::Fail },
        detail: format!("max error {error:.3e} (bound {bound:.1e})"),
    }
}

fn failed(name: &str, detail: String) -> CheckResult {
    CheckResult {
        name: name.into(),
        status: CheckStatus::Fail,
        detail,
    }
}

fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

fn tridiagonal_vs_dense(rng: &mut ChaCha8Rng, tol: f64) -> CheckResult {
    let mut worst = 0.0f64;
    for _ in 0..10 {
        let n = 30;
        let t = TridiagonalSym::new(
            (0..n).map(|_| rng.gen_range(-5.0..5.0)).collect(),
            (0..n - 1).map(|_| rng.gen_range(-2.0..2.0)).collect(),
        );
        match bisect_eigenvalues(&t, 1, n, tol * 1e-2) {
            Ok(ev) => worst = worst.max(max_diff(&ev, &jacobi_eigenvalues(&t.to_dense()))),
            Err(e) => return failed("tridiagonal_vs_dense", e.to_string()),
        }
    }
    check("tridiagonal_vs_dense", worst, tol)
}

fn banded_vs_dense(tol: f64, cross_term: CrossTerm) -> CheckResult {
    let hyp = hyperbolic_profile();
    let run = || -> Result<f64, String> {
        let ch = Channel::new(ChannelTag::III, 5, 2, 4.0).map_err(|e| e.to_string())?;
        let op = build_radial_operator(&hyp, ch, cross_term, 2.0).map_err(|e| e.to_string())?;
        let b = assemble_block(&op, &Grid::new(2.0, 4.0, 25).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let ev = smallest_eigenvalues_banded(&b, 6, tol * 1e-2).map_err(|e| e.to_string())?;
        Ok(max_diff(&ev, &jacobi_eigenvalues(&b.to_dense())))
    };
    match run() {
        Ok(err) => check("banded_vs_dense", err, tol),
        Err(e) => failed("banded_vs_dense", e),
    }
}

fn quadrature_closed_form(tol: f64) -> CheckResult {
    let exact = -(0.5f64).tanh().ln();
    match middle_integral(&hyperbolic_profile()) {
        Ok(v) => check("quadrature_closed_form", (v.value().unwrap_or(f64::NAN) - exact).abs(), tol),
        Err(e) => failed("quadrature_closed_form", e.to_string()),
    }
}

fn potential_identities(tol: f64) -> CheckResult {
    let hyp = hyperbolic_profile();
    let mut worst = 0.0f64;
    for t in [0.5, 2.0, 8.0, 30.0] {
        match potential_w1(&hyp, 3, 0, 0.0, t) {
            Ok(q) => worst = worst.max((q - 1.0).abs()),
            Err(e) => return failed("potential_identities", e.to_string()),
        }
    }
    for n in 2..=6usize {
        for p in 0..n {
            let limit = ((n as f64 - 2.0 * p as f64 - 1.0) / 2.0).powi(2);
            match potential_w1(&hyp, n, p, 0.0, 30.0) {
                Ok(q) => worst = worst.max((q - limit).abs()),
                Err(e) => return failed("potential_identities", e.to_string()),
            }
        }
    }
    check("potential_identities", worst, tol)
}

fn duality(profile: &dyn Profile, tol: f64, cross_term: CrossTerm) -> CheckResult {
    if !profile.unit_radial() {
        return CheckResult {
            name: "duality".into(),
            status: CheckStatus::Skipped,
            detail: format!("profile {} has f ≢ 1; duality identity only checked for f ≡ 1", profile.name()),
        };
    }
    let run = || -> Result<f64, String> {
        let mut worst = 0.0f64;
        for (n, p) in [(4, 1), (5, 2), (6, 2)] {
            let grid = Grid::new(2.0, 6.0, 60).map_err(|e| e.to_string())?;
            let build = |tag, degree| -> Result<TridiagonalSym, String> {
                let ch = Channel::new(tag, n, degree, 6.0).map_err(|e| e.to_string())?;
                let op = build_radial_operator(profile, ch, cross_term, 2.0).map_err(|e| e.to_string())?;
                assemble_tridiagonal(&op, &grid).map_err(|e| e.to_string())
            };
            let (second, first) = (build(ChannelTag::II, p)?, build(ChannelTag::I, n - p)?);
            worst = worst
                .max(max_diff(&second.diag, &first.diag))
                .max(max_diff(&second.off, &first.off));
        }
        Ok(worst)
    };
    match run() {
        Ok(err) => check("duality", err, tol),
        Err(e) => failed("duality", e),
    }
}

struct FreeLine;

impl SturmLiouville for FreeLine {
    fn stiffness(&self, _t: f64) -> f64 {
        1.0
    }
    fn potential(&self, _t: f64) -> Potential {
        Potential::Scalar(0.0)
    }
}

/// Errors of the first Dirichlet eigenvalue of `−w″` on `[0, π]` quarter per halving of h.
fn second_order() -> CheckResult {
    let run = || -> Result<Vec<f64>, String> {
        [250, 500, 1000]
            .iter()
            .map(|&n| {
                let grid = Grid::new(0.0, std::f64::consts::PI, n).map_err(|e| e.to_string())?;
                let m = assemble_tridiagonal(&FreeLine, &grid).map_err(|e| e.to_string())?;
                let ev = bisect_eigenvalues(&m, 1, 1, 1e-13).map_err(|e| e.to_string())?;
                Ok((ev[0] - 1.0).abs())
            })
            .collect()
    };
    match run() {
        Ok(errors) => {
            let ratios: Vec<f64> = errors.windows(2).map(|w| w[0] / w[1]).collect();
            let worst = ratios.iter().map(|r| (r - 4.0).abs()).fold(0.0, f64::max);
            CheckResult {
                name: "second_order".into(),
                status: if worst <= 0.6 { CheckStatus::Pass } else { CheckStatus::Fail },
                detail: format!("error ratios {ratios:.4?}"),
            }
        }
        Err(e) => failed("second_order", e),
    }
}

pub fn run_selftest(profile: &dyn Profile, config: &SelftestConfig) -> Result<SelftestReport, SelftestError> {
    let tol = config.tol;
    if !(tol > 0.0) || !tol.is_finite() {
        return Err(SelftestError::Tolerance(tol));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let checks = vec![
        tridiagonal_vs_dense(&mut rng, tol),
        banded_vs_dense(tol, config.cross_term),
        quadrature_closed_form(tol),
        potential_identities(tol),
        duality(profile, tol, config.cross_term),
        second_order(),
    ];
    let passed = checks.iter().all(|c| c.status != CheckStatus::Fail);
    Ok(SelftestReport {
        profile: profile.name(),
        tol,
        checks,
        passed,
    })
}
