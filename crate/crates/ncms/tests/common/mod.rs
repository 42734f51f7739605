//! Shared test support: independent, definitional re-implementations of the
//! axiom checkers, plus small builders. The reference checkers here stay
//! deliberately naive (quadruple loops, no indexing, no reuse of the
//! production enumeration) so they can arbitrate the production code.

#![allow(dead_code)]

use ncms::interval::GridInterval;
use ncms::state::{State, StateSpace};
use ncms::time::TimeGrid;
use ncms::trajectory::Trajectory;
use ncms::trajset::{ClosureBuilder, TrajectorySet, DEFAULT_CAP, DEFAULT_EPS};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

pub fn label_traj(dom: GridInterval, names: &[&str]) -> Trajectory {
    Trajectory::new(dom, names.iter().map(|n| State::label(*n)).collect()).unwrap()
}

pub fn label_space(names: &[&str]) -> StateSpace {
    StateSpace::Labels(names.iter().map(|s| s.to_string()).collect())
}

/// All syntactically valid intervals inside the grid window.
pub fn all_intervals(grid: &TimeGrid) -> Vec<GridInterval> {
    let mut out = Vec::new();
    for lo in 0..=grid.horizon() {
        for hi in lo..=grid.horizon() {
            for lo_open in [false, true] {
                for hi_open in [false, true] {
                    if let Ok(iv) = GridInterval::new(lo, hi, lo_open, hi_open) {
                        out.push(iv);
                    }
                }
            }
        }
    }
    out
}

/// Direct statement of the restriction-family rule, written independently
/// of the production enumerator: real containment, interior cuts attained,
/// boundary openness inherited.
fn family_member(candidate: &GridInterval, dom: &GridInterval) -> bool {
    let real_left_ok = candidate.lo > dom.lo
        || (candidate.lo == dom.lo && (!dom.lo_open || candidate.lo_open));
    let real_right_ok = candidate.hi < dom.hi
        || (candidate.hi == dom.hi && (!dom.hi_open || candidate.hi_open));
    if !(real_left_ok && real_right_ok) {
        return false;
    }
    let left_rule = if candidate.lo == dom.lo {
        candidate.lo_open == dom.lo_open
    } else {
        !candidate.lo_open
    };
    let right_rule = if candidate.hi == dom.hi {
        candidate.hi_open == dom.hi_open
    } else {
        !candidate.hi_open
    };
    left_rule && right_rule
}

fn member_matches(set: &TrajectorySet, dom: GridInterval, values: &[State]) -> bool {
    set.iter().any(|m| {
        m.dom() == dom
            && m.values()
                .iter()
                .zip(values)
                .all(|(a, b)| a.approx_eq(b, set.eps()))
    })
}

/// Random label trajectories over {a, b, c} with arbitrary domains.
pub fn random_raw_members(
    rng: &mut ChaCha8Rng,
    grid: &TimeGrid,
    max_members: usize,
) -> Vec<Trajectory> {
    let alphabet = ["a", "b", "c"];
    let intervals = all_intervals(grid);
    let count = rng.gen_range(1..=max_members);
    (0..count)
        .map(|_| {
            let dom = intervals[rng.gen_range(0..intervals.len())];
            let values = (0..dom.sample_count())
                .map(|_| State::label(alphabet[rng.gen_range(0..alphabet.len())]))
                .collect();
            Trajectory::new(dom, values).unwrap()
        })
        .collect()
}

/// Closure of the members under restrictions and concatenations.
pub fn closed_label_set(grid: &TimeGrid, members: Vec<Trajectory>) -> TrajectorySet {
    let mut b = ClosureBuilder::new(grid.clone(), DEFAULT_EPS, DEFAULT_CAP);
    for m in members {
        b.insert(m).unwrap();
    }
    b.close().unwrap();
    b.build(label_space(&["a", "b", "c"])).unwrap()
}

/// Definitional CPR check: for every member and every interval of the grid
/// that belongs to the member's restriction family, the sliced-out
/// trajectory must be present.
pub fn reference_check_cpr(set: &TrajectorySet) -> bool {
    for member in set.iter() {
        for candidate in all_intervals(set.grid()) {
            if !family_member(&candidate, &member.dom()) {
                continue;
            }
            let first = candidate.lo + i64::from(candidate.lo_open);
            let last = candidate.hi - i64::from(candidate.hi_open);
            let values: Vec<State> = (first..=last)
                .map(|k| member.value_at(k).unwrap().clone())
                .collect();
            if !member_matches(set, candidate, &values) {
                return false;
            }
        }
    }
    true
}

/// Definitional Markovian check: for every ordered pair that meets at an
/// attained junction with equal state, the pointwise union must be present.
pub fn reference_check_markovian(set: &TrajectorySet) -> bool {
    for s1 in set.iter() {
        for s2 in set.iter() {
            let d1 = s1.dom();
            let d2 = s2.dom();
            let adjacent = d1.hi == d2.lo && !d1.hi_open && !d2.lo_open;
            if !adjacent {
                continue;
            }
            let junction = d1.hi;
            let v1 = s1.value_at(junction).unwrap();
            let v2 = s2.value_at(junction).unwrap();
            if !v1.approx_eq(v2, set.eps()) {
                continue;
            }
            let Ok(dom) = GridInterval::new(d1.lo, d2.hi, d1.lo_open, d2.hi_open) else {
                continue;
            };
            let first = dom.lo + i64::from(dom.lo_open);
            let last = dom.hi - i64::from(dom.hi_open);
            let values: Vec<State> = (first..=last)
                .map(|k| {
                    if k <= junction {
                        s1.value_at(k).unwrap().clone()
                    } else {
                        s2.value_at(k).unwrap().clone()
                    }
                })
                .collect();
            if !member_matches(set, dom, &values) {
                return false;
            }
        }
    }
    true
}
