//! Adaptive Simpson quadrature on finite intervals.

/// Maximum recursion depth per panel.
const MAX_DEPTH: u32 = 50;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    /// Sum of the local Richardson error estimates.
    pub error_estimate: f64,
    pub evaluations: usize,
}

/// `∫_a^b f` to absolute tolerance `tol`, starting from `panels` equal panels.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64, panels: usize) -> Quadrature {
    let panels = panels.max(1);
    let width = (b - a) / panels as f64;
    let mut total = Quadrature {
        value: 0.0,
        error_estimate: 0.0,
        evaluations: 0,
    };
    for i in 0..panels {
        let lo = a + i as f64 * width;
        let hi = if i + 1 == panels { b } else { lo + width };
        let (flo, fmid, fhi) = (f(lo), f(0.5 * (lo + hi)), f(hi));
        total.evaluations += 3;
        let whole = simpson(lo, hi, flo, fmid, fhi);
        recurse(
            &f,
            Segment { lo, hi, flo, fmid, fhi, whole },
            tol / panels as f64,
            MAX_DEPTH,
            &mut total,
        );
    }
    total
}

fn simpson(lo: f64, hi: f64, flo: f64, fmid: f64, fhi: f64) -> f64 {
    (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi)
}

struct Segment {
    lo: f64,
    hi: f64,
    flo: f64,
    fmid: f64,
    fhi: f64,
    whole: f64,
}

fn recurse<F: Fn(f64) -> f64>(f: &F, s: Segment, tol: f64, depth: u32, acc: &mut Quadrature) {
    let mid = 0.5 * (s.lo + s.hi);
    let (lm, rm) = (0.5 * (s.lo + mid), 0.5 * (mid + s.hi));
    let (flm, frm) = (f(lm), f(rm));
    acc.evaluations += 2;
    let left = simpson(s.lo, mid, s.flo, flm, s.fmid);
    let right = simpson(mid, s.hi, s.fmid, frm, s.fhi);
    let delta = left + right - s.whole;
    // Stop once the refinement is below roundoff of the local value.
    let floor = 64.0 * f64::EPSILON * (left.abs() + right.abs());
    if depth == 0 || !delta.is_finite() || delta.abs() <= (15.0 * tol).max(floor) {
        acc.value += left + right + delta / 15.0;
        acc.error_estimate += delta.abs() / 15.0;
        return;
    }
    recurse(
        f,
        Segment { lo: s.lo, hi: mid, flo: s.flo, fmid: flm, fhi: s.fmid, whole: left },
        0.5 * tol,
        depth - 1,
        acc,
    );
    recurse(
        f,
        Segment { lo: mid, hi: s.hi, flo: s.fmid, fmid: frm, fhi: s.fhi, whole: right },
        0.5 * tol,
        depth - 1,
        acc,
    );
}
