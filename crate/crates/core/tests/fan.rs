mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;

use cyclotwist::bundled::Example;
use cyclotwist::fan::{find_unimodular_triangulations, junior_points, FanFile, ResolutionFan, ValidationIssue};
use cyclotwist::lattice::{QuotientWeights, ScaledLattice};

fn coords(fan: &ResolutionFan) -> BTreeSet<[i64; 3]> {
    fan.junior_rays().map(|(_, r)| r.coords).collect()
}

#[test]
fn junior_points_match_published_lists() {
    let w = QuotientWeights::new(13, [1, 3, 9]).unwrap();
    let got: BTreeSet<_> = junior_points(&w).into_iter().map(|r| r.coords).collect();
    let want: BTreeSet<_> = [[1, 3, 9], [2, 6, 5], [3, 9, 1], [5, 2, 6], [6, 5, 2], [9, 1, 3]].into_iter().collect();
    assert_eq!(got, want);

    let w = QuotientWeights::new(17, [1, 3, 13]).unwrap();
    let got: BTreeSet<_> = junior_points(&w).into_iter().map(|r| r.coords).collect();
    assert_eq!(got.len(), 8);
    for p in [[1, 3, 13], [8, 7, 2], [12, 2, 3]] {
        assert!(got.contains(&p), "missing {p:?}");
    }
}

#[test]
fn junior_points_agree_with_residue_oracle() {
    for (r, w) in [(13, [1, 3, 9]), (17, [1, 3, 13]), (7, [1, 2, 4]), (11, [1, 2, 8]), (19, [1, 7, 11])] {
        let weights = QuotientWeights::new(r, w).unwrap();
        let got: BTreeSet<_> = junior_points(&weights).into_iter().map(|p| p.coords).collect();
        let want: BTreeSet<_> = common::junior_oracle(r, w).into_iter().collect();
        assert_eq!(got, want, "r = {r}, w = {w:?}");
    }
}

#[test]
fn bundled_fans_are_valid_with_expected_cone_counts() {
    for (ex, cones) in [(Example::X139, 13), (Example::X1313, 17)] {
        let fan = ex.fan();
        let report = fan.validate();
        assert!(report.is_valid(), "{}: {:?}", ex.name(), report.issues);
        assert_eq!(report.maximal_cones, cones);
        let r = fan.order();
        let w = fan.weights.weights();
        for cone in &fan.cones {
            let [a, b, c] = cone.map(|i| fan.rays[i].coords);
            assert!(common::unimodular(r, a, b, c), "{}: cone {:?}", ex.name(), fan.cone_ids(cone));
            assert!([a, b, c].iter().all(|&v| common::in_lattice(r, w, v)));
        }
        assert_eq!(coords(&fan).len(), fan.junior_rays().count());
    }
}

#[test]
fn lattice_determinant_matches_plain_determinant_over_r_squared() {
    let w = QuotientWeights::new(17, [1, 3, 13]).unwrap();
    let lat = ScaledLattice::of(&w);
    assert_eq!(lat.determinant().abs(), 17 * 17);
    let pts: Vec<_> = junior_points(&w).into_iter().map(|p| p.coords).collect();
    for a in &pts {
        for b in &pts {
            for c in &pts {
                let d = common::det3(*a, *b, *c);
                assert_eq!(d % (17 * 17), 0);
                assert_eq!(lat.lattice_det(*a, *b, *c), Some(d / (17 * 17)));
            }
        }
    }
}

#[test]
fn dropping_a_cone_is_reported() {
    let mut fan = Example::X139.fan();
    fan.cones.pop();
    let report = fan.validate();
    assert!(!report.is_valid());
    assert!(report.issues.iter().any(|i| matches!(i, ValidationIssue::WrongConeCount { .. })));
    assert!(report.issues.iter().any(|i| matches!(i, ValidationIssue::WallMultiplicity { .. })));
}

#[test]
fn fan_files_round_trip() {
    for ex in Example::ALL {
        let fan = ex.fan();
        let text = serde_json::to_string(&FanFile::from(&fan)).unwrap();
        let back: FanFile = serde_json::from_str(&text).unwrap();
        let again = back.into_fan().unwrap();
        assert_eq!(again.cone_coordinates(), fan.cone_coordinates());
        assert_eq!(again.label, fan.label);
    }
}

#[test]
fn bundled_fans_are_members_of_the_search() {
    for (ex, total) in [(Example::X139, 7), (Example::X1313, 41)] {
        let fan = ex.fan();
        let all = find_unimodular_triangulations(&fan.weights, 1000, 60).unwrap();
        assert_eq!(all.len(), total, "{}", ex.name());
        assert_eq!(all.iter().filter(|f| f.cone_coordinates() == fan.cone_coordinates()).count(), 1);
        for f in &all {
            assert!(f.validate().is_valid());
        }
    }
}

fn coprime_weights() -> impl Strategy<Value = (i64, [i64; 3])> {
    (4i64..=23).prop_flat_map(|r| (Just(r), 1..r, 1..r)).prop_filter_map("isolated", |(r, a, b)| {
        let c = r - a - b;
        let g = |mut x: i64, mut y: i64| {
            while y != 0 {
                (x, y) = (y, x % y);
            }
            x.abs()
        };
        (c >= 1 && g(a, r) == 1 && g(b, r) == 1 && g(c, r) == 1).then_some((r, [a, b, c]))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn lattice_membership_agrees_with_oracle((r, w) in coprime_weights(), v in prop::array::uniform3(-30i64..30)) {
        let lat = ScaledLattice::of(&QuotientWeights::new(r, w).unwrap());
        prop_assert_eq!(lat.contains(v), common::in_lattice(r, w, v));
        prop_assert_eq!(lat.determinant().abs(), r * r);
    }

    #[test]
    fn first_triangulation_is_valid((r, w) in coprime_weights()) {
        let weights = QuotientWeights::new(r, w).unwrap();
        let found = find_unimodular_triangulations(&weights, 1, 60).unwrap();
        prop_assert_eq!(found.len(), 1);
        let fan = &found[0];
        prop_assert!(fan.validate().is_valid());
        for cone in &fan.cones {
            let [a, b, c] = cone.map(|i| fan.rays[i].coords);
            prop_assert!(common::unimodular(r, a, b, c));
        }
    }
}
