//! Differential testing of the production axiom checkers against the naive
//! definitional re-implementations in `common`.

mod common;

use common::{
    closed_label_set, label_space, label_traj, random_raw_members, reference_check_cpr,
    reference_check_markovian,
};
use ncms::axioms::{check_complete, check_cpr, check_markovian};
use ncms::interval::GridInterval;
use ncms::time::TimeGrid;
use ncms::trajectory::Trajectory;
use ncms::trajset::{TrajectorySet, DEFAULT_EPS};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

#[test]
fn production_checkers_agree_with_reference_on_random_sets() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let mut cpr_fail = 0;
    let mut markov_fail = 0;
    for case in 0..120 {
        let horizon = rng.gen_range(2..=5);
        let grid = TimeGrid::new(1, 1, horizon).unwrap();
        let seeds = random_raw_members(&mut rng, &grid, 4);
        let set = match case % 3 {
            // raw soup, usually violating
            0 => TrajectorySet::new(
                grid.clone(),
                label_space(&["a", "b", "c"]),
                DEFAULT_EPS,
                seeds,
            )
            .unwrap(),
            // closure, always valid
            1 => closed_label_set(&grid, seeds),
            // closure with one member knocked out, usually violating
            _ => {
                let closed = closed_label_set(&grid, seeds);
                let keep: Vec<Trajectory> = closed
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != rng.gen_range(0..closed.len()))
                    .map(|(_, t)| t.clone())
                    .collect();
                closed.with_items(keep).unwrap()
            }
        };
        if set.len() > 30 {
            continue;
        }

        let expect_cpr = reference_check_cpr(&set);
        let expect_markov = reference_check_markovian(&set);
        assert_eq!(
            check_cpr(&set).passed(),
            expect_cpr,
            "CPR verdict mismatch on case {case}"
        );
        assert_eq!(
            check_markovian(&set).passed(),
            expect_markov,
            "Markovian verdict mismatch on case {case}"
        );
        assert!(
            check_complete(&set).passed(),
            "finite sets are always complete (case {case})"
        );
        cpr_fail += usize::from(!expect_cpr);
        markov_fail += usize::from(!expect_markov);
    }
    // the corpus must exercise both verdicts to mean anything
    assert!(cpr_fail > 10, "too few CPR-failing cases: {cpr_fail}");
    assert!(markov_fail > 5, "too few Markovian-failing cases: {markov_fail}");
}

#[test]
fn closed_sets_pass_both_checkers_and_reference() {
    let grid = TimeGrid::new(1, 1, 3).unwrap();
    let set = closed_label_set(
        &grid,
        vec![
            label_traj(GridInterval::closed(0, 2).unwrap(), &["a", "b", "c"]),
            label_traj(GridInterval::closed(2, 3).unwrap(), &["c", "a"]),
            label_traj(GridInterval::new(0, 3, true, false).unwrap(), &["b", "a", "b"]),
        ],
    );
    assert!(check_cpr(&set).passed());
    assert!(check_markovian(&set).passed());
    assert!(reference_check_cpr(&set));
    assert!(reference_check_markovian(&set));
}

#[test]
fn first_counterexample_is_reported_in_sorted_order() {
    let grid = TimeGrid::new(1, 1, 2).unwrap();
    let set = TrajectorySet::new(
        grid,
        label_space(&["a", "b", "c"]),
        DEFAULT_EPS,
        vec![label_traj(GridInterval::closed(0, 2).unwrap(), &["a", "b", "c"])],
    )
    .unwrap();
    match check_cpr(&set) {
        ncms::axioms::AxiomVerdict::MissingRestriction { restriction, .. } => {
            // the family is enumerated sorted; [0,1] comes first
            assert_eq!(restriction.dom(), GridInterval::closed(0, 1).unwrap());
        }
        other => panic!("expected CPR failure, got {other:?}"),
    }
}
