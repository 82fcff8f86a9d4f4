//! Eigenvalues of the Hodge Laplacian on `S^{N−1}` restricted to coclosed and
//! closed forms.
//!
//! On `S^n` the coclosed p-eigenforms (`0 ≤ p ≤ n−1`) have eigenvalues
//! `(k+p)(k+n−1−p)`, `k ≥ 1`, plus the constants (`λ = 0`) when `p = 0`.
//! Closed q-eigenforms with `λ > 0` are differentials of coclosed
//! `(q−1)`-eigenforms with the same eigenvalue. Multiplicities come from the
//! Weyl dimension formula for the `SO(n+1)` representation with highest
//! weight `(k, 1^p)`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModeError {
    #[error("sphere dimension N = {0} must be >= 2")]
    Dimension(usize),
    #[error("degree {degree} out of range {lo}..={hi} for {kind:?} forms with N = {n_dim}")]
    Degree {
        n_dim: usize,
        degree: usize,
        kind: FormKind,
        lo: usize,
        hi: usize,
    },
    #[error("mode count must be >= 1")]
    Count,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FormKind {
    Coclosed,
    Closed,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SphereMode {
    /// Dimension of the ambient manifold; the sphere is `S^{N−1}`.
    pub n_dim: usize,
    pub degree: usize,
    pub kind: FormKind,
    pub index: usize,
    pub lambda: f64,
    pub multiplicity: u64,
}

fn check_dim(n_dim: usize) -> Result<(), ModeError> {
    if n_dim < 2 {
        Err(ModeError::Dimension(n_dim))
    } else {
        Ok(())
    }
}

/// Coclosed p-eigenforms on `S^{N−1}`, `0 ≤ p ≤ N−2`, sorted by λ.
pub fn coclosed_eigenvalues(n_dim: usize, p: usize, count: usize) -> Result<Vec<SphereMode>, ModeError> {
    check_dim(n_dim)?;
    if count == 0 {
        return Err(ModeError::Count);
    }
    if p > n_dim - 2 {
        return Err(ModeError::Degree {
            n_dim,
            degree: p,
            kind: FormKind::Coclosed,
            lo: 0,
            hi: n_dim - 2,
        });
    }
    let n = n_dim - 1;
    let first = if p == 0 { 0 } else { 1 };
    Ok((first..first + count)
        .map(|k| SphereMode {
            n_dim,
            degree: p,
            kind: FormKind::Coclosed,
            index: k,
            lambda: ((k + p) * (k + n - 1 - p)) as f64,
            multiplicity: if k == 0 { 1 } else { coclosed_multiplicity(n, p, k) },
        })
        .collect())
}

/// Closed q-eigenforms on `S^{N−1}`, `1 ≤ q ≤ N−1`, sorted by λ. Exact modes
/// inherit λ from coclosed `(q−1)`-modes; for `q = N−1` the volume form
/// (`λ = 0`) comes first.
pub fn closed_eigenvalues(n_dim: usize, q: usize, count: usize) -> Result<Vec<SphereMode>, ModeError> {
    check_dim(n_dim)?;
    if count == 0 {
        return Err(ModeError::Count);
    }
    if q == 0 || q > n_dim - 1 {
        return Err(ModeError::Degree {
            n_dim,
            degree: q,
            kind: FormKind::Closed,
            lo: 1,
            hi: n_dim - 1,
        });
    }
    let mut modes = Vec::with_capacity(count);
    if q == n_dim - 1 {
        modes.push(SphereMode {
            n_dim,
            degree: q,
            kind: FormKind::Closed,
            index: 0,
            lambda: 0.0,
            multiplicity: 1,
        });
    }
    let needed = count - modes.len();
    if needed > 0 {
        let exact = coclosed_eigenvalues(n_dim, q - 1, needed + 1)?
            .into_iter()
            .filter(|m| m.lambda > 0.0)
            .take(needed)
            .map(|m| SphereMode {
                degree: q,
                kind: FormKind::Closed,
                ..m
            });
        modes.extend(exact);
    }
    Ok(modes)
}

/// Dimension of the coclosed p-form eigenspace with index `k ≥ 1` on `S^n`.
fn coclosed_multiplicity(n: usize, p: usize, k: usize) -> u64 {
    // Hodge star on S^n pairs coclosed p-forms with coclosed (n−1−p)-forms.
    let p = p.min(n - 1 - p);
    let m = n + 1;
    let rank = m / 2;
    let mut weight = vec![0i64; rank];
    weight[0] = k as i64;
    for w in weight.iter_mut().skip(1).take(p) {
        *w = 1;
    }
    if m % 2 == 0 && p + 1 == rank {
        // (k,1,…,1) and (k,1,…,−1) are the self-dual/anti-self-dual pair.
        let mut flipped = weight.clone();
        flipped[rank - 1] = -1;
        weyl_dimension(m, &weight) + weyl_dimension(m, &flipped)
    } else {
        weyl_dimension(m, &weight)
    }
}

/// Weyl dimension formula for `so(m)` with highest weight `weight` (length ⌊m/2⌋).
fn weyl_dimension(m: usize, weight: &[i64]) -> u64 {
    let rank = m / 2;
    let odd = m % 2 == 1;
    let shift = |i: usize| -> f64 {
        if odd {
            (rank - i) as f64 - 0.5
        } else {
            (rank - i - 1) as f64
        }
    };
    let l: Vec<f64> = (0..rank).map(|i| weight[i] as f64 + shift(i)).collect();
    let r: Vec<f64> = (0..rank).map(shift).collect();
    let mut dim = 1.0;
    for i in 0..rank {
        for j in i + 1..rank {
            dim *= (l[i] * l[i] - l[j] * l[j]) / (r[i] * r[i] - r[j] * r[j]);
        }
        if odd {
            dim *= l[i] / r[i];
        }
    }
    dim.round() as u64
}
