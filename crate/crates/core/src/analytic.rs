//! Closed-form results for a two-antenna train and their numerical checks.
//!
//! The two antennas sit at offsets `{0, s}`. Every closed-form expression is
//! evaluated exactly as stated and then compared against a numerical oracle;
//! mismatches are reported, never patched over.

use rayon::prelude::*;
use serde::Serialize;

use crate::channel::capacity_at;
use crate::error::{Error, Result};
use crate::metrics::{self, intervals::bisect_boundary};
use crate::scenario::Scenario;

/// Residual `|C(T) − C_th|` below which a closed-form crossing is accepted.
pub const CROSSING_RESIDUAL_TOL: f64 = 1e-8;
/// Bisection tolerance for numerically located critical points, in seconds.
pub const CRITICAL_POINT_TOL: f64 = 1e-10;
/// Bisection tolerance for numerically located threshold crossings.
pub const CROSSING_TOL: f64 = 1e-10;
/// Quadrature tolerance used inside finite differences of the service.
pub const LEMMA1_REL_TOL: f64 = 1e-10;
/// Scan resolution for numeric root finding, as a fraction of the window.
const ROOT_SCAN_DIVISIONS: f64 = 120_000.0;

/// `(2^C_th − 1) / snr0`.
pub fn beta(scenario: &Scenario, threshold: f64) -> f64 {
    (threshold * std::f64::consts::LN_2).exp_m1() / scenario.snr0()
}

/// `(e^C_th − 1) / snr0`, the natural-log convention.
pub fn beta_natural(scenario: &Scenario, threshold: f64) -> f64 {
    threshold.exp_m1() / scenario.snr0()
}

fn pair(separation: f64) -> [f64; 2] {
    [0.0, separation]
}

// ---------------------------------------------------------------------------
// Critical points of C(t)
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CriticalKind {
    Maximum,
    Minimum,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriticalPoint {
    pub time: f64,
    pub kind: CriticalKind,
}

/// The closed-form peak and valley times; `None` marks a non-real value.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClosedFormCriticalTimes {
    pub t1: Option<f64>,
    pub t2: f64,
    pub t3: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriticalPointsReport {
    pub numeric: Vec<CriticalPoint>,
    pub closed_form: ClosedFormCriticalTimes,
    /// Distance from each closed-form time to the nearest numeric root.
    pub deviation_t1: Option<f64>,
    pub deviation_t2: Option<f64>,
    pub deviation_t3: Option<f64>,
}

/// Numerator of `dC/dt` for offsets `{0, s}` with the positive factor
/// `2·snr0·v` removed. Its sign is the sign of the derivative.
fn slope_numerator(scenario: &Scenario, separation: f64, t: f64) -> f64 {
    let v = scenario.speed();
    let d0_sq = scenario.d0() * scenario.d0();
    let ahead = separation - v * t;
    let behind = v * t;
    let a = ahead * ahead + d0_sq;
    let b = behind * behind + d0_sq;
    ahead / (a * a) - behind / (b * b)
}

/// Sign changes of `f` over the observation window, refined by bisection.
fn scan_roots<F>(scenario: &Scenario, f: F, tol: f64) -> Vec<(f64, bool)>
where
    F: Fn(f64) -> f64,
{
    let (start, end) = scenario.observation_window();
    let steps = ROOT_SCAN_DIVISIONS as usize;
    let h = (end - start) / steps as f64;
    let mut roots = Vec::new();
    let mut prev_t = start;
    let mut prev_pos = f(start) > 0.0;
    for i in 1..=steps {
        let t = if i == steps {
            end
        } else {
            start + i as f64 * h
        };
        let pos = f(t) > 0.0;
        if pos != prev_pos {
            let root = bisect_boundary(|s| f(s) > 0.0, prev_t, t, tol);
            // `true` when the function falls through zero.
            roots.push((root, prev_pos));
        }
        prev_t = t;
        prev_pos = pos;
    }
    roots
}

fn sqrt_real(x: f64) -> Option<f64> {
    (x >= 0.0 && x.is_finite()).then(|| x.sqrt())
}

fn nearest(values: &[f64], target: f64) -> Option<f64> {
    values
        .iter()
        .map(|v| (v - target).abs())
        .min_by(f64::total_cmp)
}

pub fn critical_points_n2(scenario: &Scenario, separation: f64) -> CriticalPointsReport {
    let numeric: Vec<CriticalPoint> = scan_roots(
        scenario,
        |t| slope_numerator(scenario, separation, t),
        CRITICAL_POINT_TOL,
    )
    .into_iter()
    .map(|(time, falling)| CriticalPoint {
        time,
        kind: if falling {
            CriticalKind::Maximum
        } else {
            CriticalKind::Minimum
        },
    })
    .collect();

    let v = scenario.speed();
    let l = separation;
    let d0_sq = scenario.d0() * scenario.d0();
    let inner = (2.0 * l * (l * l + 4.0 * d0_sq)).sqrt();
    let closed_form = ClosedFormCriticalTimes {
        t1: sqrt_real(l - inner - l * l - 4.0 * d0_sq).map(|r| r / (2.0 * v)),
        t2: l / (2.0 * v),
        t3: sqrt_real(l + inner - l * l - 4.0 * d0_sq).map(|r| r / (2.0 * v)),
    };

    let times: Vec<f64> = numeric.iter().map(|c| c.time).collect();
    CriticalPointsReport {
        deviation_t1: closed_form.t1.and_then(|t| nearest(&times, t)),
        deviation_t2: nearest(&times, closed_form.t2),
        deviation_t3: closed_form.t3.and_then(|t| nearest(&times, t)),
        numeric,
        closed_form,
    }
}

// ---------------------------------------------------------------------------
// Threshold crossings
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CrossingLabel {
    T1,
    T2,
    T3,
    T4,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Crossing {
    pub label: CrossingLabel,
    pub time: f64,
    /// `|C(time) − C_th|`.
    pub residual: f64,
    pub passes_residual_check: bool,
    pub in_window: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrossingsReport {
    pub beta: f64,
    pub q: f64,
    pub theta: f64,
    pub phi: Option<f64>,
    pub psi: Option<f64>,
    /// `sqrt((Q + 4 − 4·sqrt(βL² − β²L²d0² + 1)) / β)`, solved directly from
    /// `C(t) = C_th`; the inner crossings are `(L ∓ psi_direct)/(2v)`.
    pub psi_direct: Option<f64>,
    /// Real closed-form crossings, sorted by time.
    pub closed_form: Vec<Crossing>,
    /// Crossings of `C(t) = C_th` found by scanning and bisection.
    pub numeric: Vec<f64>,
    pub discrepancies: Vec<String>,
}

struct CrossingTerms {
    beta: f64,
    q: f64,
    theta: f64,
    root: Option<f64>,
}

fn crossing_terms(scenario: &Scenario, separation: f64, beta: f64) -> CrossingTerms {
    let l_sq = separation * separation;
    let d0_sq = scenario.d0() * scenario.d0();
    let root = sqrt_real(beta * l_sq - beta * beta * l_sq * d0_sq + 1.0);
    CrossingTerms {
        beta,
        q: beta * (l_sq - 4.0 * d0_sq),
        theta: root.map_or(f64::NAN, |r| 4.0 * r + 4.0),
        root,
    }
}

impl CrossingTerms {
    fn phi(&self) -> Option<f64> {
        sqrt_real((self.q + self.theta) / self.beta)
    }

    fn psi(&self) -> Option<f64> {
        sqrt_real((self.q - self.theta) / self.beta)
    }

    fn psi_direct(&self) -> Option<f64> {
        self.root
            .and_then(|r| sqrt_real((self.q + 4.0 - 4.0 * r) / self.beta))
    }
}

/// Times where `C(t)` crosses `threshold`, located numerically over the window.
pub fn numeric_crossings(scenario: &Scenario, offsets: &[f64], threshold: f64) -> Vec<f64> {
    scan_roots(
        scenario,
        |t| capacity_at(scenario, offsets, t) - threshold,
        CROSSING_TOL,
    )
    .into_iter()
    .map(|(t, _)| t)
    .collect()
}

pub fn threshold_crossings_n2(
    scenario: &Scenario,
    separation: f64,
    threshold: f64,
) -> CrossingsReport {
    let terms = crossing_terms(scenario, separation, beta(scenario, threshold));
    let v = scenario.speed();
    let (start, end) = scenario.observation_window();
    let offsets = pair(separation);

    let make = |label, time: f64| {
        let residual = (capacity_at(scenario, &offsets, time) - threshold).abs();
        Crossing {
            label,
            time,
            residual,
            passes_residual_check: residual <= CROSSING_RESIDUAL_TOL,
            in_window: (start..=end).contains(&time),
        }
    };

    let phi = terms.phi();
    let psi = terms.psi();
    let mut closed_form = Vec::new();
    if let Some(p) = phi {
        closed_form.push(make(CrossingLabel::T1, (separation + p) / (2.0 * v)));
        closed_form.push(make(CrossingLabel::T2, (separation - p) / (2.0 * v)));
    }
    if let Some(p) = psi {
        closed_form.push(make(CrossingLabel::T3, (separation - p) / (2.0 * v)));
        closed_form.push(make(CrossingLabel::T4, (separation + p) / (2.0 * v)));
    }
    closed_form.sort_by(|a, b| a.time.total_cmp(&b.time));

    let numeric = numeric_crossings(scenario, &offsets, threshold);

    let mut discrepancies = Vec::new();
    for c in &closed_form {
        if !c.passes_residual_check {
            discrepancies.push(format!(
                "{:?} = {} s has residual {:e} bit/s/Hz",
                c.label, c.time, c.residual
            ));
        }
    }
    let in_window = closed_form.iter().filter(|c| c.in_window).count();
    if in_window != numeric.len() {
        discrepancies.push(format!(
            "closed form gives {in_window} crossings inside the window, numeric scan finds {}",
            numeric.len()
        ));
    }

    CrossingsReport {
        beta: terms.beta,
        q: terms.q,
        theta: terms.theta,
        phi,
        psi,
        psi_direct: terms.psi_direct(),
        closed_form,
        numeric,
        discrepancies,
    }
}

// ---------------------------------------------------------------------------
// Outage time ratio
// ---------------------------------------------------------------------------

fn otr_closed_form_with_beta(
    scenario: &Scenario,
    separation: f64,
    threshold: f64,
    beta: f64,
) -> Result<f64> {
    let v = scenario.speed();
    let coverage = scenario.coverage();
    let offsets = pair(separation);
    let valley = capacity_at(scenario, &offsets, separation / (2.0 * v));
    if threshold >= valley {
        return Err(Error::Regime(format!(
            "threshold {threshold} bit/s/Hz is not below the mid-point capacity {valley}; \
             use the numeric outage report"
        )));
    }
    let l_sq = separation * separation;
    let d0_sq = scenario.d0() * scenario.d0();
    let radicand = (beta * l_sq - 4.0 * beta * d0_sq
        + 4.0 * (-beta * beta * l_sq * d0_sq + beta * l_sq + 1.0).sqrt()
        + 4.0)
        / beta;
    let phi = radicand.sqrt();
    if !phi.is_finite() {
        return Err(Error::Regime(format!(
            "closed-form crossing spread is not real (radicand {radicand})"
        )));
    }
    let (start, end) = scenario.observation_window();
    let (t_lo, t_hi) = (
        (separation - phi) / (2.0 * v),
        (separation + phi) / (2.0 * v),
    );
    if t_lo < start || t_hi > end {
        return Err(Error::Regime(format!(
            "crossings [{t_lo}, {t_hi}] s fall outside the window [{start}, {end}] s; \
             use the numeric outage report"
        )));
    }
    Ok(1.0 - phi / coverage)
}

/// Closed-form outage time ratio, valid when the threshold sits below the
/// capacity at the mid-point between the two peaks and both crossings fall
/// inside the window.
pub fn otr_closed_form_n2(scenario: &Scenario, separation: f64, threshold: f64) -> Result<f64> {
    otr_closed_form_with_beta(scenario, separation, threshold, beta(scenario, threshold))
}

/// The same expression with `β = (e^C_th − 1)/snr0`.
pub fn otr_closed_form_n2_natural(
    scenario: &Scenario,
    separation: f64,
    threshold: f64,
) -> Result<f64> {
    otr_closed_form_with_beta(
        scenario,
        separation,
        threshold,
        beta_natural(scenario, threshold),
    )
}

// ---------------------------------------------------------------------------
// Service versus train length
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Lemma1Point {
    pub train_length: f64,
    pub derivative: f64,
    pub sign: i8,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Lemma1Profile {
    pub points: Vec<Lemma1Point>,
    pub sign_changes: usize,
    /// Every sampled length beyond the coverage span has a negative slope.
    pub decreasing_beyond_coverage: bool,
}

fn difference_step(length: f64) -> f64 {
    (1e-3 * length).max(1.0).min(0.5 * length)
}

/// Central-difference `dS/dL` for a head/tail antenna pair at each length.
pub fn lemma1_sign_check(scenario: &Scenario, lengths: &[f64]) -> Result<Lemma1Profile> {
    if lengths.iter().any(|&l| !(l > 0.0 && l.is_finite())) {
        return Err(Error::InvalidParameter(
            "train lengths must be positive".into(),
        ));
    }
    if lengths.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidParameter(
            "train lengths must be increasing".into(),
        ));
    }
    let points = lengths
        .par_iter()
        .map(|&length| {
            let h = difference_step(length);
            let up = metrics::service_amount(scenario, &pair(length + h), LEMMA1_REL_TOL)?;
            let down = metrics::service_amount(scenario, &pair(length - h), LEMMA1_REL_TOL)?;
            let derivative = (up - down) / (2.0 * h);
            Ok(Lemma1Point {
                train_length: length,
                derivative,
                sign: if derivative > 0.0 {
                    1
                } else if derivative < 0.0 {
                    -1
                } else {
                    0
                },
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let sign_changes = points.windows(2).filter(|w| w[0].sign != w[1].sign).count();
    let coverage = scenario.coverage();
    let decreasing_beyond_coverage = points
        .iter()
        .filter(|p| p.train_length > coverage)
        .all(|p| p.sign < 0);
    Ok(Lemma1Profile {
        points,
        sign_changes,
        decreasing_beyond_coverage,
    })
}

// ---------------------------------------------------------------------------
// Pairwise group distances
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GroupDistances {
    pub group: usize,
    pub equidistant: f64,
    pub fixed_interval: f64,
}

/// Distance between the two antennas of group `m` (antennas `m` and `N+1−m`)
/// under each strategy.
pub fn group_distances(count: usize, length: f64, delta: f64) -> Result<Vec<GroupDistances>> {
    if count < 2 || !count.is_multiple_of(2) {
        return Err(Error::InvalidCount {
            count,
            reason: "grouping needs an even number of antennas".into(),
        });
    }
    let spacing = length / (count - 1) as f64;
    if delta > spacing * (1.0 + 1e-12) {
        return Err(Error::ConstraintViolation(format!(
            "interval {delta} m exceeds L/(N-1) = {spacing} m"
        )));
    }
    Ok((1..=count / 2)
        .map(|m| {
            let k = (m - 1) as f64;
            GroupDistances {
                group: m,
                equidistant: length - 2.0 * spacing * k,
                fixed_interval: length - 2.0 * delta * k,
            }
        })
        .collect())
}

// ---------------------------------------------------------------------------
// Combined report
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OtrComparison {
    pub closed_form: Option<f64>,
    pub closed_form_e_variant: Option<f64>,
    pub numeric: f64,
    /// Numeric value recomputed with half the scan step and refine tolerance.
    pub numeric_half_step: f64,
    pub abs_dev: Option<f64>,
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalyticReportN2 {
    pub separation: f64,
    pub threshold: f64,
    pub critical_points: CriticalPointsReport,
    pub crossings: CrossingsReport,
    pub otr: OtrComparison,
    pub lemma1: Lemma1Profile,
    pub lemma3: Vec<GroupDistances>,
    /// Present when a fixed-interval spacing is known.
    pub n_max: Option<AntennaLimit>,
}

/// Antenna-count limits for interval `delta`. `formula` is `floor(L/δ) + 1`;
/// `ratio_floor` is `floor(L/δ)`; `largest_even` is the largest even count a
/// fixed-interval layout accepts.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AntennaLimit {
    pub delta: f64,
    pub formula: usize,
    pub ratio_floor: usize,
    pub largest_even: usize,
}

pub fn antenna_limit(length: f64, delta: f64) -> Result<AntennaLimit> {
    let formula = crate::deployment::n_max(length, delta)?;
    Ok(AntennaLimit {
        delta,
        formula,
        ratio_floor: formula - 1,
        largest_even: formula - formula % 2,
    })
}

/// Lengths at which the service slope is sampled by default: 50 points over
/// `[10 m, 3D]`.
pub fn default_lemma1_lengths(scenario: &Scenario) -> Vec<f64> {
    let (lo, hi) = (10.0, 3.0 * scenario.coverage());
    (0..50).map(|i| lo + (hi - lo) * i as f64 / 49.0).collect()
}

pub fn compare_otr(scenario: &Scenario, separation: f64, threshold: f64) -> Result<OtrComparison> {
    let offsets = pair(separation);
    let scan = metrics::default_scan_step(scenario);
    let tol = metrics::DEFAULT_REFINE_TOL;
    let numeric = metrics::outage_report(scenario, &offsets, threshold, scan, tol)?.otr;
    let numeric_half_step =
        metrics::outage_report(scenario, &offsets, threshold, scan / 2.0, tol / 2.0)?.otr;
    let closed = otr_closed_form_n2(scenario, separation, threshold);
    let natural = otr_closed_form_n2_natural(scenario, separation, threshold).ok();
    let (closed_form, note) = match closed {
        Ok(v) => (Some(v), None),
        Err(e) => (None, Some(e.to_string())),
    };
    Ok(OtrComparison {
        abs_dev: closed_form.map(|c| (c - numeric).abs()),
        closed_form,
        closed_form_e_variant: natural,
        numeric,
        numeric_half_step,
        note,
    })
}

pub fn analytic_report_n2(
    scenario: &Scenario,
    separation: f64,
    threshold: f64,
    lemma1_lengths: &[f64],
    lemma3: Option<(usize, f64)>,
) -> Result<AnalyticReportN2> {
    if !(separation > 0.0 && separation.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "separation must be positive, got {separation}"
        )));
    }
    if !(threshold >= 0.0 && threshold.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "threshold must be non-negative, got {threshold}"
        )));
    }
    let (lemma3, n_max) = match lemma3 {
        Some((count, delta)) => (
            group_distances(count, scenario.train_length(), delta)?,
            Some(antenna_limit(scenario.train_length(), delta)?),
        ),
        None => (Vec::new(), None),
    };
    Ok(AnalyticReportN2 {
        separation,
        threshold,
        critical_points: critical_points_n2(scenario, separation),
        crossings: threshold_crossings_n2(scenario, separation, threshold),
        otr: compare_otr(scenario, separation, threshold)?,
        lemma1: lemma1_sign_check(scenario, lemma1_lengths)?,
        lemma3,
        n_max,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn antenna_limits() {
        let a = antenna_limit(200.0, 0.075).unwrap();
        assert_eq!(
            (a.formula, a.ratio_floor, a.largest_even),
            (2667, 2666, 2666)
        );
        let b = antenna_limit(200.0, 1.0).unwrap();
        assert_eq!((b.formula, b.ratio_floor, b.largest_even), (201, 200, 200));
    }

    fn reference() -> Scenario {
        Scenario::reference()
    }

    #[test]
    fn valley_time_is_half_transit() {
        let sc = reference();
        let r = critical_points_n2(&sc, 200.0);
        assert_eq!(r.closed_form.t2, 1.0);
        assert_eq!(r.numeric.len(), 3);
        assert_eq!(r.numeric[0].kind, CriticalKind::Maximum);
        assert_eq!(r.numeric[1].kind, CriticalKind::Minimum);
        assert_eq!(r.numeric[2].kind, CriticalKind::Maximum);
        assert!((r.numeric[1].time - 1.0).abs() < 1e-9);
        assert!(r.numeric[0].time < 1.0 && r.numeric[2].time > 1.0);
        assert!(r.deviation_t2.unwrap() < 1e-9);
    }

    #[test]
    fn peak_formulas_are_not_real_for_reference_pair() {
        let r = critical_points_n2(&reference(), 200.0);
        assert!(r.closed_form.t1.is_none());
        assert!(r.closed_form.t3.is_none());
        assert!(r.deviation_t1.is_none());
    }

    #[test]
    fn nearly_coincident_pair_has_one_peak() {
        let r = critical_points_n2(&reference(), 0.001);
        assert_eq!(r.numeric.len(), 1);
        assert_eq!(r.numeric[0].kind, CriticalKind::Maximum);
        assert!((r.numeric[0].time - 0.001 / 200.0).abs() < 1e-9);
    }

    #[test]
    fn two_crossing_regime() {
        let sc = reference();
        let r = threshold_crossings_n2(&sc, 200.0, 0.15);
        assert_eq!(r.closed_form.len(), 2);
        assert!(r.psi.is_none());
        assert!(r.discrepancies.is_empty(), "{:?}", r.discrepancies);
        let (t2, t1) = (r.closed_form[0].time, r.closed_form[1].time);
        assert!(((t1 + t2) / 2.0 - 1.0).abs() < 1e-12);
        assert_eq!(r.numeric.len(), 2);
        assert!((r.numeric[0] - t2).abs() < 1e-6);
        assert!((r.numeric[1] - t1).abs() < 1e-6);
        for c in &r.closed_form {
            assert!(c.residual <= CROSSING_RESIDUAL_TOL);
        }
    }

    #[test]
    fn four_crossing_regime() {
        let sc = reference();
        let pair = [0.0, 200.0];
        let valley = capacity_at(&sc, &pair, 1.0);
        let cps = critical_points_n2(&sc, 200.0);
        let peak = capacity_at(&sc, &pair, cps.numeric[0].time);
        let cth = 0.5 * (valley + peak);
        let r = threshold_crossings_n2(&sc, 200.0, cth);

        assert_eq!(r.numeric.len(), 4);
        // The outer pair from the closed form holds.
        let outer: Vec<_> = r
            .closed_form
            .iter()
            .filter(|c| matches!(c.label, CrossingLabel::T1 | CrossingLabel::T2))
            .collect();
        assert_eq!(outer.len(), 2);
        assert!(outer.iter().all(|c| c.passes_residual_check));
        // The inner pair as written is not real here; the direct solution is.
        assert!(r.psi.is_none());
        assert!(!r.discrepancies.is_empty());
        let direct = r.psi_direct.unwrap();
        let inner = [(200.0 - direct) / 200.0, (200.0 + direct) / 200.0];
        assert!((inner[0] - r.numeric[1]).abs() < 1e-6);
        assert!((inner[1] - r.numeric[2]).abs() < 1e-6);
    }

    #[test]
    fn no_crossing_above_peak() {
        let r = threshold_crossings_n2(&reference(), 200.0, 3.0);
        assert!(r.closed_form.is_empty());
        assert!(r.numeric.is_empty());
    }

    #[test]
    fn closed_form_otr_identity() {
        let sc = reference();
        let otr = otr_closed_form_n2(&sc, 200.0, 0.15).unwrap();
        let r = threshold_crossings_n2(&sc, 200.0, 0.15);
        let t1 = r.closed_form[1].time;
        let t2 = r.closed_form[0].time;
        assert!((otr - (1.0 - (t1 - t2) * sc.speed() / sc.coverage())).abs() < 1e-15);
    }

    #[test]
    fn closed_form_otr_matches_numeric() {
        let sc = reference();
        let closed = otr_closed_form_n2(&sc, 200.0, 0.15).unwrap();
        let numeric = metrics::outage_report_default(&sc, &[0.0, 200.0], 0.15)
            .unwrap()
            .otr;
        assert!((closed - numeric).abs() < 2e-5);
    }

    #[test]
    fn closed_form_otr_regimes() {
        let sc = reference();
        // Tiny threshold: crossings lie far outside the window.
        assert!(matches!(
            otr_closed_form_n2(&sc, 200.0, 1e-6),
            Err(Error::Regime(_))
        ));
        let numeric = metrics::outage_report_default(&sc, &[0.0, 200.0], 1e-6).unwrap();
        assert_eq!(numeric.otr, 0.0);

        // Four-crossing regime.
        assert!(matches!(
            otr_closed_form_n2(&sc, 200.0, 1.5),
            Err(Error::Regime(_))
        ));

        // No coverage: the base station is too far to ever reach the threshold.
        let far = sc.with_d0(5_000.0).unwrap();
        assert!(matches!(
            otr_closed_form_n2(&far, 200.0, 0.15),
            Err(Error::Regime(_))
        ));
        let numeric = metrics::outage_report_default(&far, &[0.0, 200.0], 0.15).unwrap();
        assert_eq!(numeric.otr, 1.0);
    }

    #[test]
    fn natural_log_variant_differs() {
        let sc = reference();
        let b2 = otr_closed_form_n2(&sc, 200.0, 0.15).unwrap();
        let be = otr_closed_form_n2_natural(&sc, 200.0, 0.15).unwrap();
        assert!(be > b2);
        assert!(beta_natural(&sc, 0.15) > beta(&sc, 0.15));
    }

    #[test]
    fn lemma1_signs() {
        let sc = reference();
        let d = sc.coverage();
        let p = lemma1_sign_check(&sc, &[0.1, 2.0 * d]).unwrap();
        assert_eq!(p.points[0].sign, 1);
        assert_eq!(p.points[1].sign, -1);
        assert!(p.decreasing_beyond_coverage);
        assert!(lemma1_sign_check(&sc, &[5.0, 1.0]).is_err());
        assert!(lemma1_sign_check(&sc, &[0.0]).is_err());
    }

    #[test]
    fn group_distance_examples() {
        let g = group_distances(4, 200.0, 1.0).unwrap();
        assert_eq!(g.len(), 2);
        assert_eq!((g[0].equidistant, g[0].fixed_interval), (200.0, 200.0));
        assert!((g[1].equidistant - 200.0 / 3.0).abs() < 1e-12);
        assert_eq!(g[1].fixed_interval, 198.0);

        let single = group_distances(2, 345.0, 7.0).unwrap();
        assert_eq!(single.len(), 1);
        assert_eq!(
            (single[0].equidistant, single[0].fixed_interval),
            (345.0, 345.0)
        );

        let tight = group_distances(10, 200.0, 200.0 / 9.0).unwrap();
        assert!(tight
            .iter()
            .all(|g| (g.equidistant - g.fixed_interval).abs() < 1e-12));

        assert!(matches!(
            group_distances(4, 200.0, 100.0),
            Err(Error::ConstraintViolation(_))
        ));
        assert!(group_distances(3, 200.0, 1.0).is_err());
    }

    #[test]
    fn fixed_groups_never_narrower() {
        for n in (2..=200).step_by(2) {
            let widest = 200.0 / (n - 1) as f64;
            for frac in [0.05, 0.3, 0.7, 1.0] {
                for g in group_distances(n, 200.0, frac * widest).unwrap() {
                    assert!(g.fixed_interval >= g.equidistant - 1e-12);
                }
            }
        }
    }
}
