use serde::Serialize;

/// A closed time interval `[t_minus, t_plus]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Interval {
    pub t_minus: f64,
    pub t_plus: f64,
}

impl Interval {
    pub fn length(&self) -> f64 {
        self.t_plus - self.t_minus
    }
}

/// Shrinks `[lo, hi]` around the point where `below` flips, until the bracket
/// is no wider than `tol`. `below(lo)` and `below(hi)` must differ.
pub fn bisect_boundary<P>(mut below: P, mut lo: f64, mut hi: f64, tol: f64) -> f64
where
    P: FnMut(f64) -> bool,
{
    let lo_state = below(lo);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if below(mid) == lo_state {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Maximal sub-intervals of `[start, end]` where `f(t) < threshold`.
///
/// `f` is sampled on a uniform grid no coarser than `scan_step`; every change
/// of the strict `f < threshold` predicate between neighbouring samples is
/// refined by bisection to `refine_tol`. Points where `f` only touches the
/// threshold never change the predicate and produce no interval. Excursions
/// narrower than the grid spacing are not resolved.
pub fn below_threshold<F>(
    mut f: F,
    start: f64,
    end: f64,
    threshold: f64,
    scan_step: f64,
    refine_tol: f64,
) -> Vec<Interval>
where
    F: FnMut(f64) -> f64,
{
    let steps = ((end - start) / scan_step).ceil().max(1.0) as usize;
    let h = (end - start) / steps as f64;
    let grid = |i: usize| {
        if i == steps {
            end
        } else {
            start + i as f64 * h
        }
    };

    let mut intervals = Vec::new();
    let mut prev_t = start;
    let mut prev_below = f(start) < threshold;
    let mut open = prev_below.then_some(start);

    for i in 1..=steps {
        let t = grid(i);
        let below = f(t) < threshold;
        if below != prev_below {
            let edge = bisect_boundary(|s| f(s) < threshold, prev_t, t, refine_tol);
            match open.take() {
                Some(t_minus) => intervals.push(Interval {
                    t_minus,
                    t_plus: edge,
                }),
                None => open = Some(edge),
            }
        }
        prev_t = t;
        prev_below = below;
    }
    if let Some(t_minus) = open {
        intervals.push(Interval {
            t_minus,
            t_plus: end,
        });
    }
    merge_touching(intervals, refine_tol)
}

fn merge_touching(intervals: Vec<Interval>, gap: f64) -> Vec<Interval> {
    let mut merged: Vec<Interval> = Vec::with_capacity(intervals.len());
    for iv in intervals {
        match merged.last_mut() {
            Some(last) if iv.t_minus - last.t_plus <= gap => last.t_plus = iv.t_plus,
            _ => merged.push(iv),
        }
    }
    merged
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bisection_finds_sqrt2() {
        let r = bisect_boundary(|x| x * x < 2.0, 0.0, 2.0, 1e-12);
        assert!((r - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn parabola_dip() {
        // x² - 1 < 0 on (-1, 1)
        let iv = below_threshold(|x| x * x, -3.0, 3.0, 1.0, 1e-3, 1e-10);
        assert_eq!(iv.len(), 1);
        assert!((iv[0].t_minus + 1.0).abs() < 1e-9);
        assert!((iv[0].t_plus - 1.0).abs() < 1e-9);
    }

    #[test]
    fn clipped_at_window_edges() {
        let iv = below_threshold(|x: f64| x.cos(), -1.0, 4.0, 0.5, 1e-3, 1e-10);
        // cos < 0.5 on (π/3, 5π/3) ∩ [-1, 4]
        assert_eq!(iv.len(), 1);
        assert!((iv[0].t_minus - std::f64::consts::FRAC_PI_3).abs() < 1e-9);
        assert_eq!(iv[0].t_plus, 4.0);

        let all = below_threshold(|_| 0.0, -2.0, 2.0, 1.0, 1e-2, 1e-6);
        assert_eq!(
            all,
            vec![Interval {
                t_minus: -2.0,
                t_plus: 2.0
            }]
        );
    }

    #[test]
    fn tangency_is_not_an_interval() {
        // (x - 0.5)² touches 0 from above at x = 0.5 exactly on a grid node.
        let iv = below_threshold(|x| (x - 0.5) * (x - 0.5), 0.0, 1.0, 0.0, 1e-3, 1e-9);
        assert!(iv.is_empty());
    }

    #[test]
    fn several_intervals_sorted_and_disjoint() {
        let iv = below_threshold(|x: f64| (3.0 * x).sin(), 0.0, 10.0, 0.2, 1e-3, 1e-10);
        assert!(iv.len() > 2);
        for w in iv.windows(2) {
            assert!(w[0].t_plus < w[1].t_minus);
        }
        assert!(iv.iter().all(|i| i.t_minus < i.t_plus));
    }
}
