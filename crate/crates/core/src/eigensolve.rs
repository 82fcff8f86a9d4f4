//! Eigenvalue extraction for the assembled matrices.
//!
//! Production paths count eigenvalues below a shift (Sturm sequence for
//! tridiagonal, LDLᵀ inertia for the bandwidth-2 coupled system) and
//! bisect on the count. [`dense`] holds a cyclic Jacobi solver used only
//! as an independent reference.

use thiserror::Error;

use crate::discretize::{BlockBandedSym, TridiagonalSym};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EigenError {
    #[error("eigenvalue index range {lo}..={hi} invalid for dimension {dim}")]
    Index { lo: usize, hi: usize, dim: usize },
    #[error("tolerance {0} must be > 0")]
    Tolerance(f64),
    #[error("invalid window [{0}, {1}]")]
    Window(f64, f64),
    #[error("LDLT factorization broke down at shift {0} and at both perturbed shifts")]
    Breakdown(f64),
    #[error("matrix has non-finite entries")]
    NonFinite,
}

const PIVOT_FLOOR: f64 = 1e-290;
/// Shift perturbation used when the banded factorization breaks down.
pub const RETRY_SHIFT: f64 = 1e-12;

fn pivot_guard(scale: f64) -> f64 {
    (f64::EPSILON * scale).max(PIVOT_FLOOR)
}

fn guarded(pivot: f64, guard: f64, hits: &mut usize) -> f64 {
    if pivot.abs() < guard {
        *hits += 1;
        // an exact zero is treated as positive so the count stays strict
        if pivot < 0.0 {
            -guard
        } else {
            guard
        }
    } else {
        pivot
    }
}

fn tridiagonal_scale(t: &TridiagonalSym) -> f64 {
    t.diag
        .iter()
        .chain(&t.off)
        .fold(0.0f64, |m, v| m.max(v.abs()))
}

/// Number of eigenvalues of `T` strictly below `mu`.
pub fn sturm_count(t: &TridiagonalSym, mu: f64) -> usize {
    sturm_count_guarded(t, mu).0
}

/// Count plus the number of guarded (near-zero) pivots.
pub fn sturm_count_guarded(t: &TridiagonalSym, mu: f64) -> (usize, usize) {
    let n = t.len();
    if n == 0 {
        return (0, 0);
    }
    let guard = pivot_guard(tridiagonal_scale(t).max(mu.abs()));
    let mut hits = 0;
    let mut q = guarded(t.diag[0] - mu, guard, &mut hits);
    let mut count = usize::from(q < 0.0);
    for i in 1..n {
        let e = t.off[i - 1];
        q = guarded(t.diag[i] - mu - e * e / q, guard, &mut hits);
        if q < 0.0 {
            count += 1;
        }
    }
    (count, hits)
}

/// Result of an inertia count on the banded system.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InertiaCount {
    pub below: usize,
    pub guarded_pivots: usize,
    /// Shift actually used; differs from the request after a breakdown retry.
    pub shift: f64,
}

fn banded_scale(b: &BlockBandedSym) -> f64 {
    b.blocks
        .iter()
        .flat_map(|blk| blk.iter())
        .chain(&b.links)
        .fold(0.0f64, |m, v| m.max(v.abs()))
}

/// `LDLᵀ` factors of `B − σI` for the interleaved bandwidth-2 layout.
struct BandedLdl {
    d: Vec<f64>,
    l1: Vec<f64>,
    l2: Vec<f64>,
    guarded: usize,
}

fn factor_banded(b: &BlockBandedSym, shift: f64) -> Option<BandedLdl> {
    let n = b.dim();
    let guard = pivot_guard(banded_scale(b).max(shift.abs()));
    let mut d = vec![0.0; n];
    let mut l1 = vec![0.0; n];
    let mut l2 = vec![0.0; n];
    let mut hits = 0;
    for r in 0..n {
        let mut pivot = b.lower(r, 0) - shift;
        if r >= 2 {
            l2[r] = b.lower(r, 2) / d[r - 2];
            pivot -= l2[r] * l2[r] * d[r - 2];
        }
        if r >= 1 {
            let mut num = b.lower(r, 1);
            if r >= 2 {
                num -= l2[r] * d[r - 2] * l1[r - 1];
            }
            l1[r] = num / d[r - 1];
            pivot -= l1[r] * l1[r] * d[r - 1];
        }
        if !pivot.is_finite() {
            return None;
        }
        d[r] = guarded(pivot, guard, &mut hits);
    }
    Some(BandedLdl {
        d,
        l1,
        l2,
        guarded: hits,
    })
}

impl BandedLdl {
    fn solve(&self, rhs: &[f64]) -> Vec<f64> {
        let n = self.d.len();
        let mut y = rhs.to_vec();
        for r in 0..n {
            if r >= 1 {
                y[r] -= self.l1[r] * y[r - 1];
            }
            if r >= 2 {
                y[r] -= self.l2[r] * y[r - 2];
            }
        }
        for r in 0..n {
            y[r] /= self.d[r];
        }
        for r in (0..n).rev() {
            if r + 1 < n {
                y[r] -= self.l1[r + 1] * y[r + 1];
            }
            if r + 2 < n {
                y[r] -= self.l2[r + 2] * y[r + 2];
            }
        }
        y
    }
}

/// Number of eigenvalues of `B` strictly below `mu`, from the signs of the
/// `LDLᵀ` pivots of `B − mu·I`.
pub fn inertia_count_banded(b: &BlockBandedSym, mu: f64) -> Result<InertiaCount, EigenError> {
    for shift in [mu, mu + RETRY_SHIFT, mu - RETRY_SHIFT] {
        if let Some(f) = factor_banded(b, shift) {
            return Ok(InertiaCount {
                below: f.d.iter().filter(|&&p| p < 0.0).count(),
                guarded_pivots: f.guarded,
                shift,
            });
        }
    }
    Err(EigenError::Breakdown(mu))
}

fn check_tol(tol: f64) -> Result<(), EigenError> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(EigenError::Tolerance(tol))
    }
}

/// Bisection for eigenvalues `k_lo..=k_hi` (1-based) given a counting function.
fn bisect_with<F>(dim: usize, bounds: (f64, f64), k_lo: usize, k_hi: usize, tol: f64, count: F) -> Result<Vec<f64>, EigenError>
where
    F: Fn(f64) -> Result<usize, EigenError>,
{
    check_tol(tol)?;
    if k_lo == 0 || k_lo > k_hi || k_hi > dim {
        return Err(EigenError::Index {
            lo: k_lo,
            hi: k_hi,
            dim,
        });
    }
    let (glo, ghi) = bounds;
    if !glo.is_finite() || !ghi.is_finite() {
        return Err(EigenError::NonFinite);
    }
    let pad = 1e-12 * (glo.abs().max(ghi.abs())).max(1.0) + tol;
    let mut out: Vec<f64> = Vec::with_capacity(k_hi - k_lo + 1);
    let mut floor = glo - pad;
    for k in k_lo..=k_hi {
        let mut lo = floor;
        let mut hi = ghi + pad;
        while hi - lo > tol {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if count(mid)? >= k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let value = 0.5 * (lo + hi);
        // eigenvalue k+1 is at least eigenvalue k
        floor = lo;
        out.push(match out.last() {
            Some(&prev) if value < prev => prev,
            _ => value,
        });
    }
    Ok(out)
}

/// Eigenvalues `k_lo..=k_hi` (1-based, ascending) of `T`, each bracketed to width `tol`.
pub fn bisect_eigenvalues(t: &TridiagonalSym, k_lo: usize, k_hi: usize, tol: f64) -> Result<Vec<f64>, EigenError> {
    if t.len() == 1 && k_lo == 1 && k_hi == 1 {
        check_tol(tol)?;
        return Ok(vec![t.diag[0]]);
    }
    bisect_with(t.len(), t.gershgorin(), k_lo, k_hi, tol, |mu| Ok(sturm_count(t, mu)))
}

/// The `m` smallest eigenvalues of `B`.
pub fn smallest_eigenvalues_banded(b: &BlockBandedSym, m: usize, tol: f64) -> Result<Vec<f64>, EigenError> {
    bisect_with(b.dim(), b.gershgorin(), 1, m, tol, |mu| Ok(inertia_count_banded(b, mu)?.below))
}

fn banded_matvec(b: &BlockBandedSym, x: &[f64]) -> Vec<f64> {
    let n = b.dim();
    let mut y = vec![0.0; n];
    for r in 0..n {
        y[r] += b.lower(r, 0) * x[r];
        for k in 1..=2.min(r) {
            let v = b.lower(r, k);
            y[r] += v * x[r - k];
            y[r - k] += v * x[r];
        }
    }
    y
}

/// Rayleigh quotient after inverse iteration with shift `sigma`; converges to
/// the eigenvalue nearest `sigma`.
pub fn inverse_iteration_banded(b: &BlockBandedSym, sigma: f64, iterations: usize) -> Result<f64, EigenError> {
    let f = factor_banded(b, sigma).ok_or(EigenError::Breakdown(sigma))?;
    let n = b.dim();
    let mut x: Vec<f64> = (0..n).map(|i| 1.0 + 0.1 * ((i * 7919) % 13) as f64).collect();
    for _ in 0..iterations.max(1) {
        let y = f.solve(&x);
        let norm = y.iter().map(|v| v * v).sum::<f64>().sqrt();
        if !(norm > 0.0) || !norm.is_finite() {
            return Err(EigenError::NonFinite);
        }
        x = y.into_iter().map(|v| v / norm).collect();
    }
    let bx = banded_matvec(b, &x);
    Ok(x.iter().zip(&bx).map(|(a, c)| a * c).sum::<f64>() / x.iter().map(|v| v * v).sum::<f64>())
}

/// Borrowed view over either matrix layout.
#[derive(Debug, Clone, Copy)]
pub enum SymMatrix<'a> {
    Tridiagonal(&'a TridiagonalSym),
    Banded(&'a BlockBandedSym),
}

impl SymMatrix<'_> {
    pub fn dim(&self) -> usize {
        match self {
            SymMatrix::Tridiagonal(t) => t.len(),
            SymMatrix::Banded(b) => b.dim(),
        }
    }

    pub fn count_below(&self, mu: f64) -> Result<usize, EigenError> {
        match self {
            SymMatrix::Tridiagonal(t) => Ok(sturm_count(t, mu)),
            SymMatrix::Banded(b) => Ok(inertia_count_banded(b, mu)?.below),
        }
    }

    fn bounds(&self) -> (f64, f64) {
        match self {
            SymMatrix::Tridiagonal(t) => t.gershgorin(),
            SymMatrix::Banded(b) => b.gershgorin(),
        }
    }

    pub fn eigenvalue_range(&self, k_lo: usize, k_hi: usize, tol: f64) -> Result<Vec<f64>, EigenError> {
        match self {
            SymMatrix::Tridiagonal(t) => bisect_eigenvalues(t, k_lo, k_hi, tol),
            _ => bisect_with(self.dim(), self.bounds(), k_lo, k_hi, tol, |mu| self.count_below(mu)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Which {
    CountBelow(f64),
    Smallest(usize),
    Window(f64, f64),
}

#[derive(Debug, Clone, Copy)]
pub struct EigenRequest<'a> {
    pub matrix: SymMatrix<'a>,
    pub which: Which,
    pub tol: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum EigenAnswer {
    Count(usize),
    Values(Vec<f64>),
}

impl EigenRequest<'_> {
    pub fn run(&self) -> Result<EigenAnswer, EigenError> {
        check_tol(self.tol)?;
        match self.which {
            Which::CountBelow(mu) => Ok(EigenAnswer::Count(self.matrix.count_below(mu)?)),
            Which::Smallest(m) => Ok(EigenAnswer::Values(self.matrix.eigenvalue_range(1, m, self.tol)?)),
            Which::Window(lo, hi) => {
                if !(lo < hi) {
                    return Err(EigenError::Window(lo, hi));
                }
                let below_lo = self.matrix.count_below(lo)?;
                let below_hi = self.matrix.count_below(hi)?;
                if below_hi == below_lo {
                    return Ok(EigenAnswer::Values(Vec::new()));
                }
                let vals = self.matrix.eigenvalue_range(below_lo + 1, below_hi, self.tol)?;
                Ok(EigenAnswer::Values(vals))
            }
        }
    }
}

pub mod dense {
    //! Cyclic Jacobi rotations for small dense symmetric matrices.

    /// All eigenvalues of the symmetric matrix `a`, ascending.
    pub fn jacobi_eigenvalues(a: &[Vec<f64>]) -> Vec<f64> {
        let n = a.len();
        let mut m: Vec<Vec<f64>> = a.to_vec();
        let frob: f64 = m.iter().flatten().map(|v| v * v).sum::<f64>().sqrt();
        for _sweep in 0..100 {
            let off: f64 = (0..n)
                .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
                .map(|(i, j)| m[i][j] * m[i][j])
                .sum::<f64>()
                .sqrt();
            if off <= 1e-15 * frob.max(f64::MIN_POSITIVE) {
                break;
            }
            for p in 0..n {
                for q in p + 1..n {
                    let apq = m[p][q];
                    if apq == 0.0 {
                        continue;
                    }
                    let theta = (m[q][q] - m[p][p]) / (2.0 * apq);
                    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                    let t = if theta == 0.0 { 1.0 } else { t };
                    let c = 1.0 / (t * t + 1.0).sqrt();
                    let s = t * c;
                    for k in 0..n {
                        let mkp = m[k][p];
                        let mkq = m[k][q];
                        m[k][p] = c * mkp - s * mkq;
                        m[k][q] = s * mkp + c * mkq;
                    }
                    for k in 0..n {
                        let mpk = m[p][k];
                        let mqk = m[q][k];
                        m[p][k] = c * mpk - s * mqk;
                        m[q][k] = s * mpk + c * mqk;
                    }
                }
            }
        }
        let mut eig: Vec<f64> = (0..n).map(|i| m[i][i]).collect();
        eig.sort_by(|x, y| x.total_cmp(y));
        eig
    }
}

#[cfg(test)]
mod tests {
    use super::dense::jacobi_eigenvalues;
    use super::*;
    use crate::discretize::{assemble_block, Grid};
    use crate::metric::hyperbolic_profile;
    use crate::reduction::{build_radial_operator, Channel, ChannelTag, CrossTerm};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    fn dirichlet_laplacian(n: usize, length: f64) -> TridiagonalSym {
        let h = length / (n + 1) as f64;
        TridiagonalSym::new(vec![2.0 / (h * h); n], vec![-1.0 / (h * h); n - 1])
    }

    fn random_tridiagonal(rng: &mut ChaCha8Rng, n: usize) -> TridiagonalSym {
        TridiagonalSym::new(
            (0..n).map(|_| rng.gen_range(-5.0..5.0)).collect(),
            (0..n - 1).map(|_| rng.gen_range(-2.0..2.0)).collect(),
        )
    }

    #[test]
    fn jacobi_on_known_matrices() {
        let e = jacobi_eigenvalues(&[vec![2.0, 1.0], vec![1.0, 2.0]]);
        assert!((e[0] - 1.0).abs() < 1e-14 && (e[1] - 3.0).abs() < 1e-14);
        let t = dirichlet_laplacian(20, 1.0);
        let e = jacobi_eigenvalues(&t.to_dense());
        let h = 1.0 / 21.0;
        for (k, v) in e.iter().enumerate() {
            let exact = 2.0 / (h * h) * (1.0 - ((k + 1) as f64 * PI * h).cos());
            assert!((v - exact).abs() < 1e-9 * exact);
        }
    }

    #[test]
    fn sturm_count_diagonal() {
        let t = TridiagonalSym::new(vec![1.0, 2.0, 3.0], vec![0.0, 0.0]);
        assert_eq!(sturm_count(&t, 2.5), 2);
        assert_eq!(sturm_count(&t, 2.0), 1);
        assert_eq!(sturm_count(&t, 0.0), 0);
    }

    #[test]
    fn sturm_count_laplacian_on_zero_pi() {
        let t = dirichlet_laplacian(2000, PI);
        assert_eq!(sturm_count(&t, 5.0), 2);
        // dense cross-check on a small instance
        let small = dirichlet_laplacian(40, PI);
        let dense = jacobi_eigenvalues(&small.to_dense());
        for mu in [0.5, 1.5, 5.0, 20.0, 100.0] {
            assert_eq!(sturm_count(&small, mu), dense.iter().filter(|&&v| v < mu).count());
        }
    }

    #[test]
    fn count_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10 {
            let t = random_tridiagonal(&mut rng, 30);
            let (lo, hi) = t.gershgorin();
            assert_eq!(sturm_count(&t, lo - 1e-9), 0);
            assert_eq!(sturm_count(&t, hi + 1e-9), 30);
        }
    }

    #[test]
    fn bisection_laplacian() {
        let t = dirichlet_laplacian(2000, PI);
        let e = bisect_eigenvalues(&t, 1, 5, 1e-10).unwrap();
        for (k, v) in e.iter().enumerate() {
            let exact = ((k + 1) * (k + 1)) as f64;
            assert!((v - exact).abs() < 1e-3 * exact);
        }
    }

    #[test]
    fn bisection_vs_dense_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let t = random_tridiagonal(&mut rng, 50);
        let e = bisect_eigenvalues(&t, 1, 50, 1e-12).unwrap();
        let d = jacobi_eigenvalues(&t.to_dense());
        for (a, b) in e.iter().zip(&d) {
            assert!((a - b).abs() < 1e-9);
        }
    }

    #[test]
    fn bisection_single_and_errors() {
        let t = TridiagonalSym::new(vec![4.25], vec![]);
        assert_eq!(bisect_eigenvalues(&t, 1, 1, 1e-6).unwrap(), vec![4.25]);
        let t = dirichlet_laplacian(5, 1.0);
        assert!(bisect_eigenvalues(&t, 0, 1, 1e-6).is_err());
        assert!(bisect_eigenvalues(&t, 2, 6, 1e-6).is_err());
        assert!(bisect_eigenvalues(&t, 1, 2, 0.0).is_err());
    }

    #[test]
    fn inertia_two_by_two() {
        let b = BlockBandedSym {
            blocks: vec![[2.0, 2.0, 1.0]],
            links: vec![],
        };
        let c = inertia_count_banded(&b, 2.0).unwrap();
        assert_eq!(c.below, 1);
        assert_eq!(c.shift, 2.0);
        assert_eq!(inertia_count_banded(&b, 0.5).unwrap().below, 0);
        assert_eq!(inertia_count_banded(&b, 3.5).unwrap().below, 2);
    }

    #[test]
    fn decoupled_inertia_is_sum_of_sturm_counts() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let n = 40;
        let b = BlockBandedSym {
            blocks: (0..n).map(|_| [rng.gen_range(1.0..5.0), rng.gen_range(-2.0..3.0), 0.0]).collect(),
            links: (0..n - 1).map(|_| rng.gen_range(-1.5..-0.1)).collect(),
        };
        let (t1, t2) = b.components();
        for i in 0..40 {
            let mu = -4.0 + 0.3 * i as f64;
            assert_eq!(
                inertia_count_banded(&b, mu).unwrap().below,
                sturm_count(&t1, mu) + sturm_count(&t2, mu)
            );
        }
        let merged = {
            let mut v = bisect_eigenvalues(&t1, 1, n, 1e-11).unwrap();
            v.extend(bisect_eigenvalues(&t2, 1, n, 1e-11).unwrap());
            v.sort_by(f64::total_cmp);
            v
        };
        let banded = smallest_eigenvalues_banded(&b, 2 * n, 1e-11).unwrap();
        for (a, c) in banded.iter().zip(&merged) {
            assert!((a - c).abs() < 1e-10);
        }
    }

    fn channel_three(n_nodes: usize) -> BlockBandedSym {
        let hyp = hyperbolic_profile();
        let op = build_radial_operator(&hyp, Channel::new(ChannelTag::III, 5, 2, 4.0).unwrap(), CrossTerm::AsPrinted, 0.5).unwrap();
        assemble_block(&op, &Grid::new(0.5, 6.0, n_nodes).unwrap()).unwrap()
    }

    #[test]
    fn banded_vs_dense_channel_three() {
        let b = channel_three(50);
        let dense = jacobi_eigenvalues(&b.to_dense());
        let banded = smallest_eigenvalues_banded(&b, 100, 1e-12).unwrap();
        for (a, c) in banded.iter().zip(&dense) {
            assert!((a - c).abs() < 1e-9, "{a} vs {c}");
        }
    }

    #[test]
    fn channel_three_is_nonnegative() {
        let hyp = hyperbolic_profile();
        let op = build_radial_operator(&hyp, Channel::new(ChannelTag::III, 5, 2, 4.0).unwrap(), CrossTerm::AsPrinted, 8.0).unwrap();
        let b = assemble_block(&op, &Grid::with_density(8.0, 20.0, 50.0).unwrap()).unwrap();
        assert_eq!(inertia_count_banded(&b, 0.0).unwrap().below, 0);
    }

    #[test]
    fn inverse_iteration_agrees_with_bisection() {
        let b = channel_three(50);
        let tol = 1e-10;
        let lowest = smallest_eigenvalues_banded(&b, 2, tol).unwrap();
        let coarse = smallest_eigenvalues_banded(&b, 1, 1e-2).unwrap()[0];
        let rq = inverse_iteration_banded(&b, coarse - 0.05, 60).unwrap();
        assert!((rq - lowest[0]).abs() <= 10.0 * tol, "{rq} vs {}", lowest[0]);
        assert!(lowest[1] > lowest[0]);
    }

    #[test]
    fn eigen_requests() {
        let t = dirichlet_laplacian(200, PI);
        let m = SymMatrix::Tridiagonal(&t);
        let req = EigenRequest { matrix: m, which: Which::CountBelow(10.0), tol: 1e-9 };
        assert_eq!(req.run().unwrap(), EigenAnswer::Count(3));
        let req = EigenRequest { matrix: m, which: Which::Window(3.0, 17.0), tol: 1e-9 };
        match req.run().unwrap() {
            EigenAnswer::Values(v) => {
                assert_eq!(v.len(), 3);
                assert!((v[0] - 4.0).abs() < 1e-2 && (v[2] - 16.0).abs() < 2e-2);
            }
            other => panic!("{other:?}"),
        }
        let req = EigenRequest { matrix: m, which: Which::Window(3.0, 2.0), tol: 1e-9 };
        assert!(req.run().is_err());
        let req = EigenRequest { matrix: m, which: Which::Smallest(2), tol: 0.0 };
        assert!(req.run().is_err());
        let b = channel_three(10);
        let req = EigenRequest { matrix: SymMatrix::Banded(&b), which: Which::Smallest(3), tol: 1e-10 };
        match req.run().unwrap() {
            EigenAnswer::Values(v) => {
                let d = jacobi_eigenvalues(&b.to_dense());
                for (a, c) in v.iter().zip(&d) {
                    assert!((a - c).abs() < 1e-9);
                }
            }
            other => panic!("{other:?}"),
        }
    }

    proptest! {
        #[test]
        fn count_is_monotone(seed in 0u64..10_000, mu1 in -10.0f64..10.0, mu2 in -10.0f64..10.0) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let t = random_tridiagonal(&mut rng, 25);
            let (lo, hi) = if mu1 <= mu2 { (mu1, mu2) } else { (mu2, mu1) };
            prop_assert!(sturm_count(&t, lo) <= sturm_count(&t, hi));
            let b = BlockBandedSym {
                blocks: (0..12).map(|i| [t.diag[i], t.diag[i + 12], t.off[i]]).collect(),
                links: t.off[12..23].to_vec(),
            };
            prop_assert!(inertia_count_banded(&b, lo).unwrap().below <= inertia_count_banded(&b, hi).unwrap().below);
        }

        #[test]
        fn bisection_output_sorted_and_counted(seed in 0u64..10_000) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let t = random_tridiagonal(&mut rng, 20);
            let tol = 1e-9;
            let e = bisect_eigenvalues(&t, 1, 20, tol).unwrap();
            for (k, v) in e.iter().enumerate() {
                prop_assert!(sturm_count(&t, v + tol) >= k + 1);
                if k > 0 {
                    prop_assert!(e[k] >= e[k - 1]);
                }
            }
        }
    }
}
