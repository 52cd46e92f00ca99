//! Deterministic large-scale link: per-antenna distance and SNR, and the
//! maximal-ratio-combined capacity `C(t) = log2(1 + Σ snr0 / d_n(t)²)`.

use serde::Serialize;

use crate::scenario::Scenario;

/// Snapshot of every antenna's link at one instant.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LinkState {
    pub time: f64,
    pub distances: Vec<f64>,
    pub snrs: Vec<f64>,
    pub capacity: f64,
}

/// Distance from the base station to an antenna at `offset` at time `t`.
pub fn distance_at(scenario: &Scenario, offset: f64, t: f64) -> f64 {
    (scenario.speed() * t - offset).hypot(scenario.d0())
}

/// Combined SNR `Σ snr0 / d_n(t)²`.
pub fn combined_snr<O>(scenario: &Scenario, offsets: &O, t: f64) -> f64
where
    O: AsRef<[f64]> + ?Sized,
{
    let x = scenario.speed() * t;
    let d0_sq = scenario.d0() * scenario.d0();
    let inverse_sq: f64 = offsets
        .as_ref()
        .iter()
        .map(|&o| {
            let along = x - o;
            1.0 / (along * along + d0_sq)
        })
        .sum();
    scenario.snr0() * inverse_sq
}

/// Instantaneous achievable rate in bits/s/Hz.
pub fn capacity_at<O>(scenario: &Scenario, offsets: &O, t: f64) -> f64
where
    O: AsRef<[f64]> + ?Sized,
{
    (1.0 + combined_snr(scenario, offsets, t)).log2()
}

pub fn link_state_at<O>(scenario: &Scenario, offsets: &O, t: f64) -> LinkState
where
    O: AsRef<[f64]> + ?Sized,
{
    let distances: Vec<f64> = offsets
        .as_ref()
        .iter()
        .map(|&o| distance_at(scenario, o, t))
        .collect();
    let snrs: Vec<f64> = distances.iter().map(|&d| scenario.snr_at(d)).collect();
    let capacity = (1.0 + snrs.iter().sum::<f64>()).log2();
    LinkState {
        time: t,
        distances,
        snrs,
        capacity,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deployment::Deployment;
    use proptest::prelude::*;

    /// Neumaier-compensated sum and `ln_1p`, independent of the production path.
    fn oracle_capacity(sc: &Scenario, offsets: &[f64], t: f64) -> f64 {
        let (v, d0, snr0) = (sc.speed(), sc.d0(), sc.snr0());
        let mut sum = 0.0f64;
        let mut comp = 0.0f64;
        for &o in offsets {
            let dx = v * t - o;
            let term = snr0 / (dx.mul_add(dx, d0 * d0));
            let s = sum + term;
            if sum.abs() >= term.abs() {
                comp += (sum - s) + term;
            } else {
                comp += (term - s) + sum;
            }
            sum = s;
        }
        (sum + comp).ln_1p() / std::f64::consts::LN_2
    }

    #[test]
    fn distances() {
        let sc = Scenario::reference();
        assert_eq!(distance_at(&sc, 0.0, 0.0), 50.0);
        assert_eq!(distance_at(&sc, 200.0, 2.0), 50.0);
        assert!((distance_at(&sc, 0.0, 6.0) - 602.0797289396148).abs() < 1e-9);
    }

    #[test]
    fn single_antenna_peak() {
        let sc = Scenario::reference();
        let c = capacity_at(&sc, &[0.0], 0.0);
        assert!((c - 2.057373208606795).abs() < 1e-12);
    }

    #[test]
    fn stacked_antennas_add_snr() {
        let sc = Scenario::reference();
        for &t in &[-4.2, 0.0, 0.7, 3.3] {
            let single = combined_snr(&sc, &[12.0], t);
            for n in 1..6 {
                let stacked = vec![12.0; n];
                let expect = (1.0 + n as f64 * single).log2();
                assert!((capacity_at(&sc, &stacked, t) - expect).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn head_tail_pair_mirrors_about_midpoint() {
        let sc = Scenario::reference();
        let dep = Deployment::equidistant(&sc, 2).unwrap();
        let c1 = capacity_at(&sc, &dep, 1.0 - 0.37);
        let c2 = capacity_at(&sc, &dep, 1.0 + 0.37);
        assert!((c1 - c2).abs() < 1e-12);
    }

    #[test]
    fn link_state_contents() {
        let sc = Scenario::reference();
        let one = link_state_at(&sc, &[0.0], 0.0);
        assert_eq!(one.distances, vec![50.0]);
        assert!((one.capacity - (1.0 + sc.snr0() / 2500.0).log2()).abs() < 1e-15);

        let two = link_state_at(&sc, &[0.0, 200.0], 0.0);
        assert!((two.snrs[0] - 10f64.sqrt()).abs() < 1e-12);
        assert!((two.snrs[1] - 0.18601633295108116).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn link_state_is_self_consistent(
            offsets in prop::collection::vec(0.0f64..200.0, 1..20),
            t in -6.0f64..6.0,
        ) {
            let sc = Scenario::reference();
            let s = link_state_at(&sc, &offsets, t);
            let recomputed = (1.0 + s.snrs.iter().sum::<f64>()).log2();
            prop_assert!((recomputed - s.capacity).abs() <= 1e-12);
            prop_assert!(s.distances.iter().all(|&d| d >= sc.d0()));
            prop_assert!((s.capacity - capacity_at(&sc, &offsets, t)).abs() <= 1e-12);
        }

        #[test]
        fn matches_compensated_oracle(
            offsets in prop::collection::vec(0.0f64..200.0, 1..300),
            t in -6.0f64..6.0,
        ) {
            let sc = Scenario::reference();
            let c = capacity_at(&sc, &offsets, t);
            let o = oracle_capacity(&sc, &offsets, t);
            prop_assert!(((c - o) / o).abs() <= 1e-10);
        }

        #[test]
        fn mirror_symmetry(
            offsets in prop::collection::vec(0.0f64..200.0, 1..10),
            t in -6.0f64..6.0,
        ) {
            let sc = Scenario::reference();
            let mirrored: Vec<f64> = offsets.iter().map(|o| -o).collect();
            let a = capacity_at(&sc, &offsets, t);
            let b = capacity_at(&sc, &mirrored, -t);
            prop_assert!((a - b).abs() <= 1e-12);
        }

        #[test]
        fn single_antenna_decreases_with_distance(
            a in 0.0f64..200.0, u in 0.0f64..500.0, du in 1e-3f64..100.0,
        ) {
            let sc = Scenario::reference();
            let v = sc.speed();
            let near = capacity_at(&sc, &[a], (a + u) / v);
            let far = capacity_at(&sc, &[a], (a + u + du) / v);
            prop_assert!(far < near);
        }

        #[test]
        fn adding_an_antenna_never_hurts(
            offsets in prop::collection::vec(0.0f64..200.0, 1..10),
            extra in 0.0f64..200.0,
            t in -6.0f64..6.0,
        ) {
            let sc = Scenario::reference();
            let before = capacity_at(&sc, &offsets, t);
            let mut more = offsets.clone();
            more.push(extra);
            prop_assert!(capacity_at(&sc, &more, t) >= before);
        }
    }
}
