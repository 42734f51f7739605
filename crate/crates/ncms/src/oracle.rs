//! Exact finite-instance substrate: transition-system lifting, independent
//! BFS reachability, the witness construction from initial trajectories, and
//! exhaustive two-directional verification of the underapproximation
//! theorem.

use crate::classk::ClassKFunction;
use crate::error::{Error, Result};
use crate::interval::GridInterval;
use crate::reach::{
    certify_underapprox, check_f_backward_extensible, is_sub_ncms, reach_set, restrict_states,
    right_range_set, CertRestriction, Certificate, CertifyOutcome, Ncms,
};
use crate::state::{State, StateFilter, StateSpace};
use crate::time::{Time, TimeGrid};
use crate::trajectory::Trajectory;
use crate::trajset::ClosureBuilder;
use rand::Rng;
use std::collections::BTreeSet;

/// Maximum state count for exhaustive subset enumeration.
pub const SUBSET_CAP: usize = 12;

/// A finite transition system with designated initial states.
#[derive(Debug, Clone)]
pub struct FiniteTs {
    pub states: BTreeSet<String>,
    pub arcs: BTreeSet<(String, String)>,
    pub initials: BTreeSet<String>,
}

impl FiniteTs {
    pub fn new(
        states: BTreeSet<String>,
        arcs: BTreeSet<(String, String)>,
        initials: BTreeSet<String>,
    ) -> Result<Self> {
        if initials.is_empty() {
            return Err(Error::InvalidArgument("initial set must be nonempty".into()));
        }
        if !initials.is_subset(&states) {
            return Err(Error::InvalidArgument("initials must be states".into()));
        }
        for (a, b) in &arcs {
            if !states.contains(a) || !states.contains(b) {
                return Err(Error::InvalidArgument(format!(
                    "arc {a}->{b} uses an undeclared state"
                )));
            }
        }
        Ok(FiniteTs {
            states,
            arcs,
            initials,
        })
    }

    fn successors<'a>(&'a self, from: &'a str) -> impl Iterator<Item = &'a String> {
        self.arcs
            .iter()
            .filter(move |(a, _)| a == from)
            .map(|(_, b)| b)
    }
}

/// Lifts a transition system to a validated instance on the grid.
///
/// The trajectory set consists of all execution fragments of the system:
/// every run that starts in an initial state at time 0, together with all
/// grid restrictions of such runs. Runs defined at index 0 therefore start
/// in the initial set, and every fragment is reachable along some initial
/// execution.
pub fn ts_to_ncms(ts: &FiniteTs, grid: &TimeGrid, cap: usize) -> Result<Ncms> {
    let mut builder = ClosureBuilder::new(grid.clone(), 0.0, cap);
    // depth-first enumeration of initial runs up to the horizon
    let mut stack: Vec<Vec<&String>> = ts.initials.iter().map(|q| vec![q]).collect();
    while let Some(path) = stack.pop() {
        let last = path.last().unwrap();
        if path.len() >= 2 {
            let dom = GridInterval::closed(0, path.len() as i64 - 1)?;
            let run = Trajectory::new(
                dom,
                path.iter().map(|q| State::label(q.as_str())).collect(),
            )?;
            builder.insert(run)?;
        }
        if (path.len() as i64) <= grid.horizon() {
            for next in ts.successors(last) {
                let mut ext = path.clone();
                ext.push(next);
                stack.push(ext);
            }
        }
    }
    builder.close_under_restrictions()?;
    let space = StateSpace::Labels(ts.states.clone());
    Ncms::new(builder.build(space)?)
}

/// Breadth-first reachability: states reachable from the initial set in at
/// most `k` arc steps, including the initial states themselves. This is the
/// independent baseline the lifted reach set is compared against.
pub fn bfs_reach(ts: &FiniteTs, k: usize) -> BTreeSet<String> {
    let mut reached: BTreeSet<String> = ts.initials.clone();
    let mut frontier: BTreeSet<String> = ts.initials.clone();
    for _ in 0..k {
        let mut next = BTreeSet::new();
        for q in &frontier {
            for succ in ts.successors(q) {
                if reached.insert(succ.clone()) {
                    next.insert(succ.clone());
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    reached
}

/// The theorem's witness construction: the sub-system whose trajectories are
/// exactly the grid restrictions of the initial trajectories. The result is
/// backward extensible for every class-K function, because each non-initial
/// member extends back to time 0 inside the set.
pub fn witness_from_initials(sys: &Ncms, t0: Time, cap: usize) -> Result<Ncms> {
    if !crate::time::time_is_positive(t0) {
        return Err(Error::InvalidArgument(
            "witness construction needs a positive time bound".into(),
        ));
    }
    let mut builder = ClosureBuilder::new(sys.grid().clone(), sys.eps(), cap);
    for t in sys.trajectories().iter().filter(|t| t.is_initial()) {
        builder.insert(t.clone())?;
    }
    builder.close_under_restrictions()?;
    Ncms::new(builder.build(sys.space().clone())?)
}

/// One violation found while verifying the theorem on an instance.
#[derive(Debug, Clone)]
pub struct Violation {
    pub direction: &'static str,
    pub detail: String,
}

/// Per-instance verification report.
#[derive(Debug, Clone)]
pub struct TheoremReport {
    pub states: usize,
    pub arcs: usize,
    pub trajectories: usize,
    /// BFS-reachable states within the time bound.
    pub reach: BTreeSet<String>,
    /// States attained by initial trajectories at a positive time within the
    /// bound; exactly the certifiable part of the reach set.
    pub positive_reach: BTreeSet<String>,
    /// Reachable states attained only at time 0 (never at the attained right
    /// end of a trajectory), plus initial states that carry no trajectory at
    /// all. These are reachable but lie outside every right range set.
    pub zero_only: BTreeSet<String>,
    /// Subsets of the positive reach certified by some state restriction, as
    /// opposed to only by the explicit witness construction.
    pub state_restriction_certified: usize,
    pub target_subsets_checked: usize,
    pub restrictions_checked: usize,
    pub violations: Vec<Violation>,
}

impl TheoremReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

fn label_set(states: &BTreeSet<State>) -> BTreeSet<String> {
    states
        .iter()
        .map(|s| match s {
            State::Label(l) => l.clone(),
            State::Vector(_) => unreachable!("lifted systems carry label states"),
        })
        .collect()
}

fn subsets(items: &BTreeSet<String>) -> Vec<BTreeSet<String>> {
    let items: Vec<&String> = items.iter().collect();
    let mut out = Vec::with_capacity(1 << items.len());
    for mask in 0u32..(1 << items.len()) {
        out.push(
            items
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, s)| (*s).clone())
                .collect(),
        );
    }
    out
}

/// Exhaustively verifies both directions of the underapproximation theorem
/// on one finite instance.
///
/// Completeness: every subset of the positive-time reach set is certified by
/// the witness construction. Soundness: for every state subset `S` whose
/// restriction is backward extensible, the restriction's right range set
/// stays within BFS reachability. States attained only at time 0 are
/// accounted separately: they are reachable yet lie outside every right
/// range set, so no certificate can (or should) cover them.
pub fn verify_theorem(
    ts: &FiniteTs,
    grid: &TimeGrid,
    t0: Time,
    f: &ClassKFunction,
    cap: usize,
) -> Result<TheoremReport> {
    if ts.states.len() > SUBSET_CAP {
        return Err(Error::CapExceeded { limit: SUBSET_CAP });
    }
    let sys = ts_to_ncms(ts, grid, cap)?;
    let steps = grid.index_at_or_before(t0).max(0) as usize;
    let reach = bfs_reach(ts, steps);
    let mut violations = Vec::new();

    // cross-check the lifted reach set against BFS; initial states with no
    // outgoing arc carry no trajectory and are BFS-only
    let lifted_reach = label_set(&reach_set(&sys, t0)?);
    let isolated: BTreeSet<String> = ts
        .initials
        .iter()
        .filter(|q| ts.successors(q).next().is_none())
        .cloned()
        .collect();
    let mut expected = lifted_reach.clone();
    expected.extend(isolated.iter().cloned());
    if expected != reach {
        violations.push(Violation {
            direction: "reach-oracle",
            detail: format!(
                "lifted reach {{{}}} plus isolated initials disagrees with BFS {{{}}}",
                lifted_reach.iter().cloned().collect::<Vec<_>>().join(","),
                reach.iter().cloned().collect::<Vec<_>>().join(",")
            ),
        });
    }

    let witness = witness_from_initials(&sys, t0, cap)?;
    if !is_sub_ncms(&witness, &sys)? {
        violations.push(Violation {
            direction: "witness",
            detail: "witness construction is not a sub-system".into(),
        });
    }
    let witness_ext = check_f_backward_extensible(&witness, f)?;
    if !witness_ext.passed() {
        violations.push(Violation {
            direction: "witness",
            detail: format!(
                "witness construction not backward extensible; first violator {}",
                witness_ext.violations[0]
            ),
        });
    }

    let positive_reach = label_set(&right_range_set(&witness, t0)?);
    if !positive_reach.is_subset(&reach) {
        violations.push(Violation {
            direction: "witness",
            detail: "witness right range leaves the BFS reach set".into(),
        });
    }

    // decompose the reach set: everything not positively attained must be
    // explained by attainment only at time 0
    let zero_only: BTreeSet<String> = reach.difference(&positive_reach).cloned().collect();
    for q in &zero_only {
        let only_at_zero = isolated.contains(q)
            || sys.trajectories().iter().filter(|t| t.is_initial()).any(|t| {
                t.value_at(0) == Some(&State::label(q.as_str()))
            });
        if !only_at_zero {
            violations.push(Violation {
                direction: "decomposition",
                detail: format!("state {q} is reachable but unexplained"),
            });
        }
    }

    // completeness: every target inside the positive reach is certified by
    // the explicit witness
    let target_subsets = subsets(&positive_reach);
    let mut state_restriction_certified = 0;
    let restriction_subsets = subsets(&ts.states);
    for target_labels in &target_subsets {
        let target: BTreeSet<State> =
            target_labels.iter().map(|l| State::label(l.as_str())).collect();
        let cert = Certificate {
            restriction: CertRestriction::Explicit(witness.clone()),
            f: f.clone(),
            t0,
        };
        let outcome = certify_underapprox(&sys, &target, &cert)?;
        if !outcome.certified() {
            violations.push(Violation {
                direction: "completeness",
                detail: format!(
                    "target {{{}}} within the positive reach set was not certified by the witness",
                    target_labels.iter().cloned().collect::<Vec<_>>().join(",")
                ),
            });
        }
        // search mode comparison: is some state restriction also enough?
        let mut found = false;
        for s in &restriction_subsets {
            let cert = Certificate {
                restriction: CertRestriction::States(StateFilter::Labels(s.clone())),
                f: f.clone(),
                t0,
            };
            if matches!(certify_underapprox(&sys, &target, &cert)?, CertifyOutcome::Certified { .. }) {
                found = true;
                break;
            }
        }
        if found {
            state_restriction_certified += 1;
        }
    }

    // soundness: every backward-extensible state restriction has its right
    // range inside the reach set
    for s in &restriction_subsets {
        let sub = restrict_states(&sys, &StateFilter::Labels(s.clone()))?;
        let ext = check_f_backward_extensible(&sub, f)?;
        if !ext.passed() {
            continue;
        }
        let range = label_set(&right_range_set(&sub, t0)?);
        if !range.is_subset(&reach) {
            violations.push(Violation {
                direction: "soundness",
                detail: format!(
                    "restriction {{{}}} is extensible but its right range escapes the reach set",
                    s.iter().cloned().collect::<Vec<_>>().join(",")
                ),
            });
        }
    }

    Ok(TheoremReport {
        states: ts.states.len(),
        arcs: ts.arcs.len(),
        trajectories: sys.trajectories().len(),
        reach,
        positive_reach,
        zero_only,
        state_restriction_certified,
        target_subsets_checked: target_subsets.len(),
        restrictions_checked: restriction_subsets.len(),
        violations,
    })
}

/// Draws a pseudo-random instance: `n` states named s0..s(n-1), each arc
/// present with probability `density`, one uniformly chosen initial state
/// plus each further state initial with probability 0.2.
pub fn random_ts<R: Rng>(rng: &mut R, n: usize, density: f64) -> FiniteTs {
    let names: Vec<String> = (0..n).map(|i| format!("s{i}")).collect();
    let mut arcs = BTreeSet::new();
    for a in &names {
        for b in &names {
            if rng.gen_bool(density) {
                arcs.insert((a.clone(), b.clone()));
            }
        }
    }
    let mut initials = BTreeSet::new();
    initials.insert(names[rng.gen_range(0..n)].clone());
    for name in &names {
        if rng.gen_bool(0.2) {
            initials.insert(name.clone());
        }
    }
    FiniteTs::new(names.into_iter().collect(), arcs, initials).expect("generated instance is wellformed")
}
