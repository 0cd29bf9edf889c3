use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use romdom::graphing::le;
use romdom::scheme::{build_level_sets, hit_time, social_needy_audit};
use romdom::{Alpha, AlphaNum, CirclePoint, RotationGraphing, Scheme, SchemeParams};

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn params(eps_den: i64, depth: u32) -> SchemeParams {
    SchemeParams::new(Alpha::golden(), ratio(1, eps_den), depth).unwrap()
}

#[test]
fn hit_time_matches_level_membership_on_random_points() {
    let p = params(10, 30);
    let alpha = p.alpha().clone();
    let ls = build_level_sets(&p).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..300 {
        let j: i64 = rng.random_range(0..2048);
        let q: i64 = rng.random_range(-2..=2);
        let v = CirclePoint::from_ratio(2 * j + 1, 4096)
            .add(&CirclePoint::alpha_multiple(q, &alpha).unwrap(), &alpha)
            .unwrap();
        match hit_time(&v, &p).unwrap() {
            Some(k) => {
                assert!(ls.levels[k as usize].contains(&v, &alpha).unwrap());
                assert!(ls.covered.contains(&v, &alpha).unwrap());
                for earlier in 0..k {
                    assert!(!ls.levels[earlier as usize].contains(&v, &alpha).unwrap());
                }
            }
            None => assert!(ls.uncovered.contains(&v, &alpha).unwrap()),
        }
    }
}

#[test]
fn levels_translate_down_the_chain() {
    for (den, depth) in [(10, 30), (20, 60)] {
        let p = params(den, depth);
        let alpha = p.alpha().clone();
        let ls = build_level_sets(&p).unwrap();
        let back = CirclePoint::alpha_multiple(-1, &alpha).unwrap();
        for k in 1..ls.levels.len() {
            let shifted = ls.levels[k].translate(&back, &alpha).unwrap();
            let outside = shifted.difference(&ls.levels[k - 1], &alpha).unwrap();
            assert!(outside.is_empty(), "D_{k} - α escapes D_{}", k - 1);
        }
    }
}

#[test]
fn coverage_grows_with_depth() {
    let alpha = Alpha::golden();
    let eps = ratio(1, 100);
    let mut previous = romdom::CircleSet::empty();
    for depth in [3u32, 9, 27, 81] {
        let p = SchemeParams::new(alpha.clone(), eps.clone(), depth).unwrap();
        let ls = build_level_sets(&p).unwrap();
        let lost = previous.difference(&ls.covered, &alpha).unwrap();
        assert!(lost.is_empty(), "coverage shrank between depths");
        previous = ls.covered;
    }
}

#[test]
fn scheme_is_a_certified_dominating_function() {
    for (den, depth) in [(7, 21), (13, 39), (10, 3)] {
        let p = params(den, depth);
        let alpha = p.alpha().clone();
        let scheme = Scheme::build(p).unwrap();
        let report = &scheme.report;
        assert!(report.domination_valid);

        let g = RotationGraphing::irrational(alpha.clone());
        let recheck = g.is_rdf(&scheme.labeling).unwrap();
        assert!(recheck.valid);
        assert!(recheck.violating_set.is_empty());

        let x_bound = AlphaNum::from_rational(ratio(1, 3) + ratio(4, 3) * ratio(1, den));
        assert_eq!(report.x_bound, x_bound);
        assert!(le(&report.x_measure, &x_bound, &alpha).unwrap());

        let expected = &(&report.x_measure + &report.uncovered_measure).scale_int(2);
        assert_eq!(&report.completed_value, expected);
    }
}

#[test]
fn core_levels_are_inside_covered_region() {
    let p = params(10, 30);
    let alpha = p.alpha().clone();
    let scheme = Scheme::build(p).unwrap();
    let outside = scheme
        .core
        .difference(&scheme.level_sets.covered, &alpha)
        .unwrap();
    assert!(outside.is_empty());
    // label 2 is exactly the core plus whatever the levels missed
    let l2 = scheme
        .core
        .union(&scheme.level_sets.uncovered, &alpha)
        .unwrap();
    assert_eq!(&l2, scheme.labeling.l2());
}

#[test]
fn audit_social_mass_is_bounded() {
    for (den, depth) in [(10, 30), (25, 75)] {
        let p = params(den, depth);
        let alpha = p.alpha().clone();
        let scheme = Scheme::build(p).unwrap();
        let audit = social_needy_audit(&scheme).unwrap();
        assert!(le(&audit.social_covered, &audit.social_bound, &alpha).unwrap());
        let zero = AlphaNum::zero();
        assert!(le(&zero, &audit.needy_covered, &alpha).unwrap());
    }
}

#[test]
fn depth_must_be_a_positive_multiple_of_three() {
    let alpha = Alpha::golden();
    assert!(SchemeParams::new(alpha.clone(), ratio(1, 10), 31).is_err());
    assert!(SchemeParams::new(alpha.clone(), ratio(1, 10), 0).is_err());
    assert!(SchemeParams::new(alpha.clone(), ratio(3, 2), 30).is_err());
    assert!(SchemeParams::new(alpha, ratio(1, 10), 30).is_ok());
}
