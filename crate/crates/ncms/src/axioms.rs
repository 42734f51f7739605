//! Checkers for the three defining axioms of a trajectory set: closure under
//! proper restrictions, the Markovian gluing property, and chain
//! completeness.

use crate::trajectory::{concat, is_subtrajectory, Trajectory};
use crate::trajset::TrajectorySet;

/// Outcome of a single axiom check; failures carry the first counterexample
/// in the deterministic iteration order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomVerdict {
    Pass,
    /// A trajectory whose restriction to the named interval is missing.
    MissingRestriction {
        member: Trajectory,
        restriction: Trajectory,
    },
    /// A gluable pair whose concatenation is missing.
    MissingConcat {
        left: Trajectory,
        right: Trajectory,
        glued: Trajectory,
    },
    /// A chain whose union disagrees with its maximal element.
    ChainDefect { member: Trajectory },
}

impl AxiomVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, AxiomVerdict::Pass)
    }
}

/// Combined report for the three axioms.
#[derive(Debug, Clone)]
pub struct NcmsReport {
    pub cpr: AxiomVerdict,
    pub markovian: AxiomVerdict,
    pub complete: AxiomVerdict,
}

impl NcmsReport {
    pub fn overall(&self) -> bool {
        self.cpr.passed() && self.markovian.passed() && self.complete.passed()
    }
}

/// Closure under proper restrictions: every member's every grid restriction
/// is again a member.
pub fn check_cpr(ts: &TrajectorySet) -> AxiomVerdict {
    for member in ts.iter() {
        for dom in member.dom().restrictions() {
            let restriction = member.restrict(dom).expect("family is contained");
            if !ts.contains(&restriction) {
                return AxiomVerdict::MissingRestriction {
                    member: member.clone(),
                    restriction,
                };
            }
        }
    }
    AxiomVerdict::Pass
}

/// Markovian property: whenever one member ends where another begins with
/// the same state, the glued function is again a member.
pub fn check_markovian(ts: &TrajectorySet) -> AxiomVerdict {
    let eps = ts.eps();
    for s1 in ts.iter() {
        if s1.dom().hi_open {
            continue;
        }
        let junction = s1.dom().hi;
        for s2 in ts.iter() {
            if s2.dom().lo != junction || s2.dom().lo_open {
                continue;
            }
            let left = s1.value_at(junction).expect("attained");
            let right = s2.value_at(junction).expect("attained");
            if !left.approx_eq(right, eps) {
                continue;
            }
            let glued = concat(s1, s2, eps).expect("precondition established");
            if !ts.contains(&glued) {
                return AxiomVerdict::MissingConcat {
                    left: s1.clone(),
                    right: s2.clone(),
                    glued,
                };
            }
        }
    }
    AxiomVerdict::Pass
}

/// Chain completeness. Every finite chain contains its maximum, so finite
/// sets are complete; the checker verifies the fact rather than assuming it:
/// for every member `u`, the union of the graphs of all members below `u`
/// must equal the graph of `u` (any chain with maximum `u` has a union
/// squeezed between `u`'s graph and that union).
pub fn check_complete(ts: &TrajectorySet) -> AxiomVerdict {
    let eps = ts.eps();
    for u in ts.iter() {
        let mut sample_cover = vec![false; u.dom().sample_count()];
        let mut left = (u.dom().hi, true); // most restrictive possible start
        let mut right = (u.dom().lo, true);
        for t in ts.iter() {
            if !is_subtrajectory(t, u, eps) {
                continue;
            }
            for k in t.dom().included_indices() {
                sample_cover[(k - u.dom().first_sample()) as usize] = true;
            }
            let tl = (t.dom().lo, t.dom().lo_open);
            if tl.0 < left.0 || (tl.0 == left.0 && !tl.1) {
                left = tl;
            }
            let tr = (t.dom().hi, t.dom().hi_open);
            if tr.0 > right.0 || (tr.0 == right.0 && !tr.1) {
                right = tr;
            }
        }
        let dom = u.dom();
        let union_matches = sample_cover.iter().all(|&c| c)
            && left == (dom.lo, dom.lo_open)
            && right == (dom.hi, dom.hi_open);
        if !union_matches {
            return AxiomVerdict::ChainDefect { member: u.clone() };
        }
    }
    AxiomVerdict::Pass
}

/// Runs all three checks and aggregates.
pub fn check_ncms(ts: &TrajectorySet) -> NcmsReport {
    NcmsReport {
        cpr: check_cpr(ts),
        markovian: check_markovian(ts),
        complete: check_complete(ts),
    }
}
