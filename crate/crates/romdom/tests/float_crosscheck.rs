//! Cross-checks exact membership against a plain floating-point model.
//!
//! Sample points live on a grid deliberately offset from the endpoint grid,
//! so the two models only disagree if one of them is wrong by a margin far
//! beyond double rounding error.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use romdom::experiments::random_circle_set;
use romdom::{Alpha, CirclePoint, CircleSet};

struct FloatSet {
    arcs: Vec<(f64, f64)>,
    full: bool,
}

impl FloatSet {
    fn of(set: &CircleSet) -> FloatSet {
        FloatSet {
            arcs: set
                .arcs()
                .iter()
                .map(|a| (a.start().approx(), a.end().approx()))
                .collect(),
            full: set.is_full(),
        }
    }

    fn contains(&self, x: f64) -> bool {
        if self.full {
            return true;
        }
        self.arcs.iter().any(|&(s, e)| {
            if s < e {
                s <= x && x < e
            } else {
                x >= s || x < e
            }
        })
    }
}

fn sample_point(rng: &mut impl Rng, alpha: &Alpha) -> CirclePoint {
    let j: i64 = rng.random_range(0..1280);
    let q: i64 = rng.random_range(-2..=2);
    CirclePoint::from_ratio(2 * j + 1, 2560)
        .add(&CirclePoint::alpha_multiple(q, alpha).unwrap(), alpha)
        .unwrap()
}

fn crosscheck(alpha: &Alpha, seed: u64, sets: usize, points: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for trial in 0..sets {
        let set = random_circle_set(&mut rng, alpha).unwrap();
        let float = FloatSet::of(&set);
        for _ in 0..points {
            let x = sample_point(&mut rng, alpha);
            let exact = set.contains(&x, alpha).unwrap();
            let approx = float.contains(x.approx());
            assert_eq!(
                exact, approx,
                "trial {trial}: exact={exact} float={approx} at x={x} in {set:?}"
            );
        }
    }
}

#[test]
fn golden_membership_matches_float_model() {
    crosscheck(&Alpha::golden(), 0xC0FFEE, 1000, 100);
}

#[test]
fn sqrt2m1_membership_matches_float_model() {
    crosscheck(&Alpha::sqrt2m1(), 0xBEEF, 200, 100);
}

#[test]
fn measure_matches_float_sum() {
    let alpha = Alpha::golden();
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..200 {
        let set = random_circle_set(&mut rng, &alpha).unwrap();
        let exact = set.measure(&alpha).unwrap().to_f64(&alpha);
        let float: f64 = set
            .arcs()
            .iter()
            .map(|a| {
                let d = a.end().approx() - a.start().approx();
                if a.is_full() {
                    1.0
                } else if d > 0.0 {
                    d
                } else {
                    d + 1.0
                }
            })
            .sum();
        assert!(
            (exact - float).abs() < 1e-9,
            "measure mismatch: exact={exact} float={float}"
        );
    }
}
