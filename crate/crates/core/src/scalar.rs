//! One-dimensional search primitives shared by the fitter and the solver.

use crate::error::Result;

/// Inverse golden ratio, (√5 − 1) / 2.
const INV_PHI: f64 = 0.618_033_988_749_894_8;

#[derive(Debug, Clone, Copy)]
pub(crate) struct GoldenResult {
    pub x: f64,
    pub value: f64,
    /// Final bracket; the optimum lies inside it.
    pub lo: f64,
    pub hi: f64,
    pub iterations: usize,
}

/// Minimizes `f` on `[lo, hi]` by golden-section search.
///
/// Stops once the bracket is narrower than `tol` (absolute) or after
/// `max_iter` shrink steps. Of the final interior probes the better one is
/// returned, ties going to the smaller abscissa so plateaus resolve left.
pub(crate) fn golden_min<F>(
    mut f: F,
    mut lo: f64,
    mut hi: f64,
    tol: f64,
    max_iter: usize,
) -> Result<GoldenResult>
where
    F: FnMut(f64) -> Result<f64>,
{
    debug_assert!(lo.is_finite() && hi.is_finite() && lo <= hi);
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    let mut iterations = 0;
    while hi - lo > tol && iterations < max_iter {
        iterations += 1;
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1)?;
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2)?;
        }
    }
    let (x, value) = if f1 <= f2 { (x1, f1) } else { (x2, f2) };
    Ok(GoldenResult { x, value, lo, hi, iterations })
}

/// Maximizes `f` on `[lo, hi]`; see [`golden_min`].
pub(crate) fn golden_max<F>(
    mut f: F,
    lo: f64,
    hi: f64,
    tol: f64,
    max_iter: usize,
) -> Result<GoldenResult>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mut out = golden_min(|t| f(t).map(|v| -v), lo, hi, tol, max_iter)?;
    out.value = -out.value;
    Ok(out)
}

/// Bisects a bracketed sign change of `g`.
///
/// `positive_at_lo` states the (already known) sign of `g(lo)`; `g(hi)` must
/// have the opposite sign. Halving continues until the bracket is narrower
/// than `x_tol` *and* the last midpoint satisfied `|g| <= g_tol`, the bracket
/// collapses to float resolution, or `max_iter` halvings have run. Returns
/// the midpoint and the number of halvings used.
pub(crate) fn bisect_root<G>(
    mut g: G,
    mut lo: f64,
    mut hi: f64,
    positive_at_lo: bool,
    x_tol: f64,
    g_tol: f64,
    max_iter: usize,
) -> Result<(f64, usize)>
where
    G: FnMut(f64) -> Result<f64>,
{
    debug_assert!(lo.is_finite() && hi.is_finite() && lo <= hi);
    let mut iterations = 0;
    let mut g_mid = f64::INFINITY;
    while iterations < max_iter {
        if hi - lo <= x_tol && g_mid.abs() <= g_tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        g_mid = g(mid)?;
        iterations += 1;
        if g_mid == 0.0 {
            return Ok((mid, iterations));
        }
        if (g_mid > 0.0) == positive_at_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((0.5 * (lo + hi), iterations))
}
