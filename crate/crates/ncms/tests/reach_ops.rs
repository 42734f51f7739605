//! Reach/right-range semantics, restrictions, and the extensibility check,
//! including property tests for the algebraic invariants.

mod common;

use common::label_traj;
use ncms::classk::ClassKFunction;
use ncms::interval::GridInterval;
use ncms::oracle::{ts_to_ncms, FiniteTs};
use ncms::reach::{
    certify_underapprox, check_f_backward_extensible, initial_trajectories, is_sub_ncms,
    reach_set, restrict_states, right_range_set, CertRestriction, Certificate,
    Ncms,
};
use ncms::state::{State, StateFilter};
use ncms::time::{parse_time, Time, TimeGrid};
use ncms::trajectory::{concat, is_subtrajectory, Trajectory};
use ncms::trajset::{TrajectorySet, DEFAULT_CAP, DEFAULT_EPS};
use proptest::prelude::*;
use std::collections::BTreeSet;

fn chain_ts() -> FiniteTs {
    FiniteTs::new(
        ["a", "b", "c"].iter().map(|s| s.to_string()).collect(),
        [("a", "b"), ("b", "c")]
            .iter()
            .map(|(x, y)| (x.to_string(), y.to_string()))
            .collect(),
        ["a"].iter().map(|s| s.to_string()).collect(),
    )
    .unwrap()
}

fn t(s: &str) -> Time {
    parse_time(s).unwrap()
}

fn labels(states: &[&str]) -> BTreeSet<State> {
    states.iter().map(|s| State::label(*s)).collect()
}

#[test]
fn chain_reach_and_right_range_frozen_values() {
    // enumerated with the lift: members [0,1] ab, [0,2] abc, [1,2] bc
    let grid = TimeGrid::new(1, 1, 2).unwrap();
    let sys = ts_to_ncms(&chain_ts(), &grid, DEFAULT_CAP).unwrap();
    assert_eq!(sys.trajectories().len(), 3);

    assert_eq!(reach_set(&sys, t("2")).unwrap(), labels(&["a", "b", "c"]));
    assert_eq!(reach_set(&sys, t("1")).unwrap(), labels(&["a", "b"]));
    assert_eq!(reach_set(&sys, t("0.5")).unwrap(), labels(&["a"]));

    // within [0,1] only the [0,1] member fits and it ends at b
    assert_eq!(right_range_set(&sys, t("1")).unwrap(), labels(&["b"]));
    assert_eq!(right_range_set(&sys, t("2")).unwrap(), labels(&["b", "c"]));
}

#[test]
fn right_range_capture_of_positive_time_samples() {
    // every state attained at a positive sample time by an initial
    // trajectory shows up in the right range set
    let grid = TimeGrid::new(1, 1, 2).unwrap();
    let sys = ts_to_ncms(&chain_ts(), &grid, DEFAULT_CAP).unwrap();
    let t0 = t("2");
    let rr = right_range_set(&sys, t0).unwrap();
    for s in initial_trajectories(&sys) {
        for k in s.dom().included_indices() {
            if k > 0 && sys.grid().time_of(k) <= t0 {
                assert!(rr.contains(s.value_at(k).unwrap()));
            }
        }
    }
}

#[test]
fn restriction_monotone_in_the_state_set() {
    let grid = TimeGrid::new(1, 1, 2).unwrap();
    let sys = ts_to_ncms(&chain_ts(), &grid, DEFAULT_CAP).unwrap();
    let small = restrict_states(&sys, &StateFilter::Labels(["a".into(), "b".into()].into())).unwrap();
    let big = restrict_states(
        &sys,
        &StateFilter::Labels(["a".into(), "b".into(), "c".into()].into()),
    )
    .unwrap();
    assert!(small.trajectories().subset_of(big.trajectories()));
    assert!(is_sub_ncms(&small, &sys).unwrap());
    assert!(is_sub_ncms(&big, &sys).unwrap());
}

#[test]
fn sub_ncms_rejects_grid_mismatch() {
    let sys1 = ts_to_ncms(&chain_ts(), &TimeGrid::new(1, 1, 2).unwrap(), DEFAULT_CAP).unwrap();
    let sys2 = ts_to_ncms(&chain_ts(), &TimeGrid::new(1, 2, 2).unwrap(), DEFAULT_CAP).unwrap();
    assert!(is_sub_ncms(&sys1, &sys2).is_err());
}

#[test]
fn extensibility_example_with_escape_clause() {
    // hand-built restriction of the ramp flow: closed pieces from h on,
    // plus left-open variants of the suffix; dual thresholds drive clause
    // selection
    let grid = TimeGrid::new(1, 8, 8).unwrap();
    let ramp = |k: i64| State::vector(vec![0.125 * k as f64]);
    let mut members = Vec::new();
    for c in 1..8i64 {
        for d in (c + 1)..=8 {
            members.push(
                Trajectory::new(
                    GridInterval::closed(c, d).unwrap(),
                    (c..=d).map(ramp).collect(),
                )
                .unwrap(),
            );
        }
    }
    for d in 1..=8i64 {
        members.push(
            Trajectory::new(
                GridInterval::new(0, d, true, false).unwrap(),
                (1..=d).map(ramp).collect(),
            )
            .unwrap(),
        );
    }
    let ts = TrajectorySet::new(
        grid,
        ncms::state::StateSpace::Vector { dim: 1 },
        DEFAULT_EPS,
        members,
    )
    .unwrap();
    let sys = Ncms::new(ts).unwrap();

    // with f(x) = x/2 the only stuck members are the two shortest
    // minimum-free domains: (0, h] has no non-maximal sample, and (0, 2h]
    // would need an escape starting at 0
    let f = ClassKFunction::linear(0.5).unwrap();
    let report = check_f_backward_extensible(&sys, &f).unwrap();
    let stuck: Vec<String> = report.violations.iter().map(|v| v.dom().to_string()).collect();
    assert_eq!(stuck, vec!["(0,1]", "(0,2]"]);
    assert!(report.escape_count() >= 1);

    // a steeper function starves every escape: tau <= t < 2t
    let f2 = ClassKFunction::linear(2.0).unwrap();
    let report2 = check_f_backward_extensible(&sys, &f2).unwrap();
    assert_eq!(report2.violations.len(), 8);
    assert_eq!(report2.escape_count(), 0);
}

#[test]
fn escape_equality_is_accepted_within_slack() {
    // escape [h, 2h] from (0, d] at t = 2h has tau = h = f(2h) exactly when
    // f(x) = x/2; the comparison must not reject the boundary case
    let grid = TimeGrid::new(1, 8, 8).unwrap();
    let ramp = |k: i64| State::vector(vec![0.125 * k as f64]);
    let escape = Trajectory::new(
        GridInterval::closed(1, 2).unwrap(),
        vec![ramp(1), ramp(2)],
    )
    .unwrap();
    let left_open = Trajectory::new(
        GridInterval::new(0, 3, true, false).unwrap(),
        vec![ramp(1), ramp(2), ramp(3)],
    )
    .unwrap();
    let tau = ncms::trajectory::backward_escape(&left_open, &escape, 2, &grid, DEFAULT_EPS)
        .unwrap()
        .unwrap();
    let f = ClassKFunction::linear(0.5).unwrap();
    let threshold = f.eval(ncms::time::time_to_f64(grid.time_of(2))).unwrap();
    assert!(ncms::time::time_to_f64(tau) >= threshold - ncms::reach::ESCAPE_SLACK);
    assert_eq!(ncms::time::time_to_f64(tau), threshold);
}

#[test]
fn certify_with_explicit_sub_system() {
    let grid = TimeGrid::new(1, 1, 2).unwrap();
    let sys = ts_to_ncms(&chain_ts(), &grid, DEFAULT_CAP).unwrap();
    let witness = ncms::oracle::witness_from_initials(&sys, t("2"), DEFAULT_CAP).unwrap();
    let cert = Certificate {
        restriction: CertRestriction::Explicit(witness),
        f: ClassKFunction::linear(1.0).unwrap(),
        t0: t("2"),
    };
    let outcome = certify_underapprox(&sys, &labels(&["b", "c"]), &cert).unwrap();
    assert!(outcome.certified());

    // an explicit restriction that is not a sub-system is rejected
    let other = ts_to_ncms(
        &FiniteTs::new(
            ["a", "b", "c", "z"].iter().map(|s| s.to_string()).collect(),
            [("a", "z"), ("a", "b"), ("b", "c")]
                .iter()
                .map(|(x, y)| (x.to_string(), y.to_string()))
                .collect(),
            ["a"].iter().map(|s| s.to_string()).collect(),
        )
        .unwrap(),
        &grid,
        DEFAULT_CAP,
    )
    .unwrap();
    let bad = Certificate {
        restriction: CertRestriction::Explicit(other),
        f: ClassKFunction::linear(1.0).unwrap(),
        t0: t("2"),
    };
    assert!(certify_underapprox(&sys, &labels(&["b"]), &bad).is_err());
}

#[test]
fn certificate_t0_must_fit_the_window() {
    let grid = TimeGrid::new(1, 1, 2).unwrap();
    let sys = ts_to_ncms(&chain_ts(), &grid, DEFAULT_CAP).unwrap();
    for bad_t0 in ["0", "3"] {
        let cert = Certificate {
            restriction: CertRestriction::States(StateFilter::All),
            f: ClassKFunction::linear(1.0).unwrap(),
            t0: t(bad_t0),
        };
        assert!(certify_underapprox(&sys, &labels(&["b"]), &cert).is_err());
    }
}

#[test]
fn state_attained_only_at_time_zero_is_not_certifiable() {
    // a is reached (at t = 0) but never re-attained, so it lies outside
    // every right range set and no restriction can certify it
    let grid = TimeGrid::new(1, 1, 2).unwrap();
    let sys = ts_to_ncms(&chain_ts(), &grid, DEFAULT_CAP).unwrap();
    assert!(reach_set(&sys, t("2")).unwrap().contains(&State::label("a")));
    for mask in 0u32..8 {
        let subset: BTreeSet<String> = ["a", "b", "c"]
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, s)| s.to_string())
            .collect();
        let cert = Certificate {
            restriction: CertRestriction::States(StateFilter::Labels(subset)),
            f: ClassKFunction::linear(1.0).unwrap(),
            t0: t("2"),
        };
        let outcome = certify_underapprox(&sys, &labels(&["a"]), &cert).unwrap();
        assert!(!outcome.certified());
    }
}

// strategies for property tests

fn arb_interval(horizon: i64) -> impl Strategy<Value = GridInterval> {
    (0..horizon, any::<bool>(), any::<bool>())
        .prop_flat_map(move |(lo, lo_open, hi_open)| {
            ((lo + 1)..=horizon).prop_map(move |hi| (lo, hi, lo_open, hi_open))
        })
        .prop_filter_map("needs a sample", |(lo, hi, lo_open, hi_open)| {
            GridInterval::new(lo, hi, lo_open, hi_open).ok()
        })
}

fn arb_label_traj(horizon: i64) -> impl Strategy<Value = Trajectory> {
    arb_interval(horizon).prop_flat_map(move |dom| {
        proptest::collection::vec(0u8..3, dom.sample_count()..=dom.sample_count()).prop_map(
            move |codes| {
                let values = codes
                    .iter()
                    .map(|c| State::label(["a", "b", "c"][*c as usize]))
                    .collect();
                Trajectory::new(dom, values).unwrap()
            },
        )
    })
}

proptest! {
    #[test]
    fn every_family_restriction_is_a_subtrajectory(s in arb_label_traj(6)) {
        for dom in s.dom().restrictions() {
            let r = s.restrict(dom).unwrap();
            prop_assert!(is_subtrajectory(&r, &s, 0.0));
            // identity restriction reproduces the trajectory
            if dom == s.dom() {
                prop_assert_eq!(&r, &s);
            }
        }
    }

    #[test]
    fn concat_is_associative_and_splits_back(
        a in proptest::collection::vec(0u8..3, 2..4),
        b in proptest::collection::vec(0u8..3, 1..4),
        c in proptest::collection::vec(0u8..3, 1..4),
    ) {
        // build three adjoining runs sharing junction states
        let name = |x: u8| ["a", "b", "c"][x as usize];
        let mk = |lo: i64, codes: &[u8]| {
            let dom = GridInterval::closed(lo, lo + codes.len() as i64 - 1).unwrap();
            label_traj(dom, &codes.iter().map(|&x| name(x)).collect::<Vec<_>>())
        };
        let s1 = mk(0, &a);
        let mut b2 = vec![*a.last().unwrap()];
        b2.extend(&b);
        let s2 = mk(a.len() as i64 - 1, &b2);
        let mut c2 = vec![*b2.last().unwrap()];
        c2.extend(&c);
        let s3 = mk((a.len() + b.len()) as i64 - 1, &c2);

        let left = concat(&concat(&s1, &s2, 0.0).unwrap(), &s3, 0.0).unwrap();
        let right = concat(&s1, &concat(&s2, &s3, 0.0).unwrap(), 0.0).unwrap();
        prop_assert_eq!(&left, &right);
        prop_assert_eq!(left.restrict(s1.dom()).unwrap(), s1);
    }

    #[test]
    fn class_k_functions_increase_strictly(
        alpha in 0.01f64..10.0,
        x in 0.0f64..100.0,
        gap in 0.001f64..10.0,
    ) {
        let f = ClassKFunction::linear(alpha).unwrap();
        prop_assert!(f.eval(x).unwrap() < f.eval(x + gap).unwrap());
        let g = ClassKFunction::piecewise_linear(vec![(1.0, alpha), (2.0, alpha + 1.0)]).unwrap();
        prop_assert!(g.eval(x).unwrap() < g.eval(x + gap).unwrap());
        prop_assert_eq!(g.eval(0.0).unwrap(), 0.0);
    }

    #[test]
    fn f_minus_is_bounded_by_its_first_argument(
        alpha in 0.01f64..10.0,
        b in 0.0f64..50.0,
        gap in 0.0f64..50.0,
    ) {
        let f = ClassKFunction::linear(alpha).unwrap();
        let a = b + gap;
        let fm = f.f_minus(a, b).unwrap();
        prop_assert!(fm <= a);
        if gap == 0.0 {
            prop_assert_eq!(fm, a);
        } else {
            prop_assert!(fm < a);
        }
    }

    #[test]
    fn escape_threshold_equivalence(
        alpha in 0.01f64..4.0,
        a in 0.0f64..10.0,
        dgap in 0.125f64..10.0,
        cgap in 0.0f64..10.0,
    ) {
        // (d - c) >= f(d - a) iff c <= f_minus(d, a), for d > c >= 0, a <= c
        let f = ClassKFunction::linear(alpha).unwrap();
        let c = a + cgap;
        let d = c + dgap;
        let lhs = (d - c) >= f.eval(d - a).unwrap();
        let rhs = c <= f.f_minus(d, a).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}
