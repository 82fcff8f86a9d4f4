//! Finite-difference assembly of `−(a w')' + Q w` on `[c, c+L]` with
//! Dirichlet conditions at both ends.
//!
//! The stiffness uses the conservative three-point scheme with `a` sampled
//! at cell midpoints, so the assembled matrices are symmetric by
//! construction.

use std::io::{self, Write};

use thiserror::Error;

use crate::reduction::{Potential, SturmLiouville};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AssemblyError {
    #[error("invalid grid: {0}")]
    Grid(String),
    #[error("non-finite coefficient at node {index} (t = {t})")]
    NonFinite { index: usize, t: f64 },
    #[error("operator is {found}, expected {expected}")]
    Shape {
        expected: &'static str,
        found: &'static str,
    },
}

/// Uniform grid of `n` interior points `tᵢ = c + i·h`, `h = L/(n+1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    start: f64,
    length: f64,
    n: usize,
}

impl Grid {
    pub fn new(start: f64, length: f64, n: usize) -> Result<Self, AssemblyError> {
        if !(start >= 0.0) || !start.is_finite() {
            return Err(AssemblyError::Grid(format!("start {start} must be >= 0")));
        }
        if !(length > 0.0) || !length.is_finite() {
            return Err(AssemblyError::Grid(format!("length {length} must be > 0")));
        }
        if n == 0 {
            return Err(AssemblyError::Grid("need at least one interior point".into()));
        }
        Ok(Grid { start, length, n })
    }

    /// Grid with about `density` points per unit length (at least two).
    pub fn with_density(start: f64, length: f64, density: f64) -> Result<Self, AssemblyError> {
        if !(density > 0.0) || !density.is_finite() {
            return Err(AssemblyError::Grid(format!("density {density} must be > 0")));
        }
        let n = (density * length).round().max(2.0) as usize;
        Grid::new(start, length, n)
    }

    pub fn start(&self) -> f64 {
        self.start
    }
    pub fn length(&self) -> f64 {
        self.length
    }
    pub fn len(&self) -> usize {
        self.n
    }
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }
    pub fn spacing(&self) -> f64 {
        self.length / (self.n + 1) as f64
    }
    pub fn point(&self, i: usize) -> f64 {
        self.start + (i + 1) as f64 * self.spacing()
    }
    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n).map(move |i| self.point(i))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TridiagonalSym {
    pub diag: Vec<f64>,
    pub off: Vec<f64>,
}

impl TridiagonalSym {
    pub fn new(diag: Vec<f64>, off: Vec<f64>) -> Self {
        assert_eq!(off.len() + 1, diag.len().max(1), "off-diagonal must have n−1 entries");
        TridiagonalSym { diag, off }
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    /// Gershgorin interval containing every eigenvalue.
    pub fn gershgorin(&self) -> (f64, f64) {
        let n = self.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let r = if i > 0 { self.off[i - 1].abs() } else { 0.0 }
                + if i + 1 < n { self.off[i].abs() } else { 0.0 };
            lo = lo.min(self.diag[i] - r);
            hi = hi.max(self.diag[i] + r);
        }
        (lo, hi)
    }

    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        let n = self.len();
        let mut m = vec![vec![0.0; n]; n];
        for i in 0..n {
            m[i][i] = self.diag[i];
            if i + 1 < n {
                m[i][i + 1] = self.off[i];
                m[i + 1][i] = self.off[i];
            }
        }
        m
    }

    /// CSV rows `index,diag,off`; `off` is empty on the last row.
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "index,diag,off")?;
        for (i, d) in self.diag.iter().enumerate() {
            match self.off.get(i) {
                Some(o) => writeln!(out, "{i},{d:e},{o:e}")?,
                None => writeln!(out, "{i},{d:e},")?,
            }
        }
        Ok(())
    }
}

/// Symmetric matrix of bandwidth 2 for a coupled pair, unknowns interleaved
/// as `(w1₀, w2₀, w1₁, w2₁, …)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockBandedSym {
    /// Per node: `[d1, d2, coupling]`.
    pub blocks: Vec<[f64; 3]>,
    /// Stiffness link between nodes `i` and `i+1`, identical for both components.
    pub links: Vec<f64>,
}

impl BlockBandedSym {
    pub fn nodes(&self) -> usize {
        self.blocks.len()
    }

    pub fn dim(&self) -> usize {
        2 * self.blocks.len()
    }

    /// Entry `(row, row − k)` for `k ∈ {0, 1, 2}`.
    pub fn lower(&self, row: usize, k: usize) -> f64 {
        if k > row {
            return 0.0;
        }
        let node = row / 2;
        match (k, row % 2) {
            (0, 0) => self.blocks[node][0],
            (0, _) => self.blocks[node][1],
            (1, 1) => self.blocks[node][2],
            (1, _) => 0.0,
            (2, _) => self.links[node - 1],
            _ => 0.0,
        }
    }

    pub fn gershgorin(&self) -> (f64, f64) {
        let n = self.dim();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for r in 0..n {
            let mut radius = 0.0;
            for k in 1..=2 {
                radius += self.lower(r, k).abs();
                if r + k < n {
                    radius += self.lower(r + k, k).abs();
                }
            }
            let d = self.lower(r, 0);
            lo = lo.min(d - radius);
            hi = hi.max(d + radius);
        }
        (lo, hi)
    }

    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        let n = self.dim();
        let mut m = vec![vec![0.0; n]; n];
        for r in 0..n {
            for k in 0..=2.min(r) {
                let v = self.lower(r, k);
                m[r][r - k] = v;
                m[r - k][r] = v;
            }
        }
        m
    }

    /// The two component tridiagonals with the coupling dropped.
    pub fn components(&self) -> (TridiagonalSym, TridiagonalSym) {
        let first = TridiagonalSym::new(self.blocks.iter().map(|b| b[0]).collect(), self.links.clone());
        let second = TridiagonalSym::new(self.blocks.iter().map(|b| b[1]).collect(), self.links.clone());
        (first, second)
    }
}

struct Stencil {
    diag: Vec<f64>,
    links: Vec<f64>,
    potentials: Vec<Potential>,
}

fn stencil<O: SturmLiouville + ?Sized>(op: &O, grid: &Grid) -> Result<Stencil, AssemblyError> {
    let h = grid.spacing();
    let h2 = h * h;
    let n = grid.len();
    // a at the n+1 cell midpoints c + (i + 1/2) h
    let mid: Vec<f64> = (0..=n)
        .map(|i| op.stiffness(grid.start() + (i as f64 + 0.5) * h))
        .collect();
    let mut diag = Vec::with_capacity(n);
    let mut potentials = Vec::with_capacity(n);
    for i in 0..n {
        let t = grid.point(i);
        let q = op.potential(t);
        let d = (mid[i] + mid[i + 1]) / h2;
        if !d.is_finite() || !q.is_finite() {
            return Err(AssemblyError::NonFinite { index: i, t });
        }
        diag.push(d);
        potentials.push(q);
    }
    let links = (1..n).map(|i| -mid[i] / h2).collect();
    Ok(Stencil {
        diag,
        links,
        potentials,
    })
}

/// Tridiagonal matrix of a scalar operator.
pub fn assemble_tridiagonal<O: SturmLiouville + ?Sized>(op: &O, grid: &Grid) -> Result<TridiagonalSym, AssemblyError> {
    let s = stencil(op, grid)?;
    let diag = s
        .diag
        .iter()
        .zip(&s.potentials)
        .map(|(d, q)| match q {
            Potential::Scalar(q) => Ok(d + q),
            Potential::Coupled { .. } => Err(AssemblyError::Shape {
                expected: "scalar",
                found: "coupled",
            }),
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(TridiagonalSym::new(diag, s.links))
}

/// Banded matrix of a coupled 2×2 operator.
pub fn assemble_block<O: SturmLiouville + ?Sized>(op: &O, grid: &Grid) -> Result<BlockBandedSym, AssemblyError> {
    let s = stencil(op, grid)?;
    let blocks = s
        .diag
        .iter()
        .zip(&s.potentials)
        .map(|(d, q)| match *q {
            Potential::Coupled { q1, q2, c } => Ok([d + q1, d + q2, c]),
            Potential::Scalar(_) => Err(AssemblyError::Shape {
                expected: "coupled",
                found: "scalar",
            }),
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(BlockBandedSym {
        blocks,
        links: s.links,
    })
}
