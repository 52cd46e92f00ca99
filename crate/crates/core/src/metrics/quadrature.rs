use crate::error::{Error, Result};

/// Maximum number of interval doublings before giving up.
pub const MAX_DOUBLINGS: u32 = 24;

/// Convergence is not tested before the grid has this many intervals.
const MIN_INTERVALS: usize = 32;

/// Composite Simpson's rule on a uniform grid, doubling the number of
/// intervals until two successive estimates agree to `rel_tol`.
///
/// Each doubling reuses every previous evaluation, so the total cost is one
/// evaluation per grid node of the final level.
pub fn simpson<F>(mut f: F, a: f64, b: f64, rel_tol: f64) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    if !(a.is_finite() && b.is_finite() && b > a) {
        return Err(Error::InvalidParameter(format!(
            "integration bounds must satisfy a < b, got [{a}, {b}]"
        )));
    }
    if !(rel_tol > 0.0 && rel_tol.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "relative tolerance must be positive, got {rel_tol}"
        )));
    }

    let width = b - a;
    let mut intervals = 1usize;
    let endpoint_sum = f(a) + f(b);
    let mut interior_sum = 0.0;
    let mut trapezoid = 0.5 * width * endpoint_sum;
    let mut previous = f64::NAN;
    let mut last = f64::NAN;

    for _ in 0..MAX_DOUBLINGS {
        let h = width / (2 * intervals) as f64;
        let mut midpoints = 0.0;
        for i in 0..intervals {
            midpoints += f(a + (2 * i + 1) as f64 * h);
        }
        interior_sum += midpoints;
        intervals *= 2;
        let refined = h * (0.5 * endpoint_sum + interior_sum);
        let estimate = (4.0 * refined - trapezoid) / 3.0;
        trapezoid = refined;
        previous = last;
        last = estimate;

        if !estimate.is_finite() {
            break;
        }
        let diff = (last - previous).abs();
        if intervals >= MIN_INTERVALS && (diff <= rel_tol * last.abs() || diff == 0.0) {
            return Ok(last);
        }
    }
    Err(Error::Convergence { previous, last })
}

/// Fixed-step composite trapezoid rule.
pub fn trapezoid<F>(mut f: F, a: f64, b: f64, intervals: usize) -> f64
where
    F: FnMut(f64) -> f64,
{
    let h = (b - a) / intervals as f64;
    let inner: f64 = (1..intervals).map(|i| f(a + i as f64 * h)).sum();
    h * (0.5 * (f(a) + f(b)) + inner)
}
