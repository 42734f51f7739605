//! Reach sets, right range sets, state restrictions, backward
//! extensibility, and the certificate verifier.

use crate::axioms::check_ncms;
use crate::classk::ClassKFunction;
use crate::error::{Error, Result};
use crate::state::{State, StateFilter, StateSpace};
use crate::time::{time_is_positive, time_to_f64, Time, TimeGrid};
use crate::trajectory::{backward_escape, is_backward_extension, Trajectory};
use crate::trajset::TrajectorySet;
use std::collections::BTreeSet;

/// Absolute slack, in favor of acceptance, when comparing an exact escape
/// length against a floating-point class-K value.
pub const ESCAPE_SLACK: f64 = 1e-12;

/// A validated system instance: a trajectory set that passes all three
/// axioms. Construction fails otherwise.
#[derive(Debug, Clone)]
pub struct Ncms {
    ts: TrajectorySet,
}

impl Ncms {
    pub fn new(ts: TrajectorySet) -> Result<Self> {
        let report = check_ncms(&ts);
        if !report.overall() {
            let which = [
                ("CPR", report.cpr.passed()),
                ("Markovian", report.markovian.passed()),
                ("completeness", report.complete.passed()),
            ]
            .iter()
            .filter(|(_, ok)| !ok)
            .map(|(name, _)| *name)
            .collect::<Vec<_>>()
            .join(", ");
            return Err(Error::AxiomViolation(which));
        }
        Ok(Ncms { ts })
    }

    pub fn trajectories(&self) -> &TrajectorySet {
        &self.ts
    }

    pub fn grid(&self) -> &TimeGrid {
        self.ts.grid()
    }

    pub fn space(&self) -> &StateSpace {
        self.ts.space()
    }

    pub fn eps(&self) -> f64 {
        self.ts.eps()
    }
}

/// Members defined at the initial time moment.
pub fn initial_trajectories(sys: &Ncms) -> Vec<&Trajectory> {
    sys.trajectories().iter().filter(|t| t.is_initial()).collect()
}

/// States attained by initial trajectories at sample times within
/// `[0, t0]`.
pub fn reach_set(sys: &Ncms, t0: Time) -> Result<BTreeSet<State>> {
    require_positive(t0)?;
    let grid = sys.grid();
    let mut out = BTreeSet::new();
    for t in sys.trajectories().iter().filter(|t| t.is_initial()) {
        for k in t.dom().included_indices() {
            if grid.time_of(k) <= t0 {
                out.insert(t.value_at(k).unwrap().clone());
            }
        }
    }
    Ok(out)
}

/// States attained at the attained right end of trajectories whose domain
/// lies within `[0, t0]`.
pub fn right_range_set(sys: &Ncms, t0: Time) -> Result<BTreeSet<State>> {
    require_positive(t0)?;
    let grid = sys.grid();
    let mut out = BTreeSet::new();
    for t in sys.trajectories().iter() {
        if t.dom().has_maximum() && grid.time_of(t.dom().hi) <= t0 {
            out.insert(t.end_value().clone());
        }
    }
    Ok(out)
}

fn require_positive(t0: Time) -> Result<()> {
    if !time_is_positive(t0) {
        return Err(Error::InvalidArgument(format!(
            "time bound must be positive, got {}",
            crate::report::fmt_time(t0)
        )));
    }
    Ok(())
}

/// Restricts the system to trajectories whose range lies inside the state
/// set. The result is validated; restriction preserves all three axioms.
pub fn restrict_states(sys: &Ncms, filter: &StateFilter) -> Result<Ncms> {
    let eps = sys.eps();
    let mut kept = Vec::new();
    for t in sys.trajectories().iter() {
        let mut valued = true;
        for v in t.values() {
            if !filter.contains(v, eps)? {
                valued = false;
                break;
            }
        }
        if valued {
            kept.push(t.clone());
        }
    }
    let space = match sys.space() {
        StateSpace::Labels(alphabet) => StateSpace::Labels(filter.restrict_alphabet(alphabet)),
        other => other.clone(),
    };
    Ncms::new(sys.trajectories().with_space(space, kept)?)
}

/// Sub-system inclusion: same grid, included state space, included
/// trajectory set.
pub fn is_sub_ncms(sub: &Ncms, sys: &Ncms) -> Result<bool> {
    if sub.grid() != sys.grid() {
        return Err(Error::GridMismatch);
    }
    Ok(sub.space().included_in(sys.space())
        && sub.trajectories().subset_of(sys.trajectories()))
}

/// How a single trajectory satisfied the backward-extensibility condition.
#[derive(Debug, Clone)]
pub enum Discharge {
    Initial,
    BackwardExtension { witness: Trajectory },
    Escape {
        witness: Trajectory,
        at_index: i64,
        tau: Time,
        threshold: f64,
    },
}

/// Result of the backward-extensibility check, with a per-trajectory
/// discharge log and the violating trajectories on failure.
#[derive(Debug, Clone)]
pub struct ExtensibilityReport {
    pub discharges: Vec<(Trajectory, Discharge)>,
    pub violations: Vec<Trajectory>,
}

impl ExtensibilityReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn escape_count(&self) -> usize {
        self.discharges
            .iter()
            .filter(|(_, d)| matches!(d, Discharge::Escape { .. }))
            .count()
    }
}

/// Checks that every trajectory is initial, has a backward extension in the
/// set, or (when its domain has no minimum) admits a grid-aligned backward
/// escape of length at least `f(t - inf dom)`.
pub fn check_f_backward_extensible(sys: &Ncms, f: &ClassKFunction) -> Result<ExtensibilityReport> {
    let ts = sys.trajectories();
    let grid = sys.grid();
    let eps = sys.eps();
    let mut discharges = Vec::new();
    let mut violations = Vec::new();

    'members: for s in ts.iter() {
        if s.is_initial() {
            discharges.push((s.clone(), Discharge::Initial));
            continue;
        }
        for cand in ts.iter() {
            if is_backward_extension(s, cand, eps) {
                discharges.push((
                    s.clone(),
                    Discharge::BackwardExtension {
                        witness: cand.clone(),
                    },
                ));
                continue 'members;
            }
        }
        if !s.dom().has_minimum() {
            let inf = grid.time_of(s.dom().lo);
            for t_idx in s.dom().included_indices() {
                if t_idx >= s.dom().hi {
                    continue; // escapes happen strictly before the right end
                }
                let threshold = f.eval(time_to_f64(grid.time_of(t_idx) - inf))?;
                for cand in ts.iter() {
                    let Some(tau) = backward_escape(s, cand, t_idx, grid, eps)? else {
                        continue;
                    };
                    if time_to_f64(tau) >= threshold - ESCAPE_SLACK {
                        discharges.push((
                            s.clone(),
                            Discharge::Escape {
                                witness: cand.clone(),
                                at_index: t_idx,
                                tau,
                                threshold,
                            },
                        ));
                        continue 'members;
                    }
                }
            }
        }
        violations.push(s.clone());
    }

    Ok(ExtensibilityReport {
        discharges,
        violations,
    })
}

/// A certificate: a state restriction (or explicit sub-system), a class-K
/// function, and a time horizon.
#[derive(Debug, Clone)]
pub struct Certificate {
    pub restriction: CertRestriction,
    pub f: ClassKFunction,
    pub t0: Time,
}

#[derive(Debug, Clone)]
pub enum CertRestriction {
    States(StateFilter),
    Explicit(Ncms),
}

impl Certificate {
    pub fn validate(&self, grid: &TimeGrid) -> Result<()> {
        if !time_is_positive(self.t0) {
            return Err(Error::MalformedCertificate(format!(
                "t0 must be positive, got {}",
                crate::report::fmt_time(self.t0)
            )));
        }
        if self.t0 > grid.horizon_time() {
            return Err(Error::MalformedCertificate(format!(
                "t0 {} exceeds the grid window {}",
                crate::report::fmt_time(self.t0),
                crate::report::fmt_time(grid.horizon_time())
            )));
        }
        Ok(())
    }
}

/// Why a certificate was rejected.
#[derive(Debug, Clone)]
pub enum CertifyOutcome {
    /// The restriction is backward extensible and the target lies in its
    /// right range set; by the underapproximation theorem the target is then
    /// contained in the reach set.
    Certified {
        extensibility: ExtensibilityReport,
        right_range: BTreeSet<State>,
    },
    NotExtensible {
        report: ExtensibilityReport,
    },
    OutsideRightRange {
        missing: Vec<State>,
        right_range: BTreeSet<State>,
    },
}

impl CertifyOutcome {
    pub fn certified(&self) -> bool {
        matches!(self, CertifyOutcome::Certified { .. })
    }
}

/// Verifies that `target` is an underapproximation of the reach set, via the
/// certificate's restriction. Clause order is fixed: extensibility first,
/// then right-range containment.
pub fn certify_underapprox(
    sys: &Ncms,
    target: &BTreeSet<State>,
    cert: &Certificate,
) -> Result<CertifyOutcome> {
    cert.validate(sys.grid())?;
    let restricted = match &cert.restriction {
        CertRestriction::States(filter) => restrict_states(sys, filter)?,
        CertRestriction::Explicit(sub) => {
            if !is_sub_ncms(sub, sys)? {
                return Err(Error::NotSubSystem(
                    "explicit restriction is not included in the system".into(),
                ));
            }
            sub.clone()
        }
    };

    let report = check_f_backward_extensible(&restricted, &cert.f)?;
    if !report.passed() {
        return Ok(CertifyOutcome::NotExtensible { report });
    }

    let right_range = right_range_set(&restricted, cert.t0)?;
    let eps = sys.eps();
    let missing: Vec<State> = target
        .iter()
        .filter(|q| !right_range.iter().any(|r| r.approx_eq(q, eps)))
        .cloned()
        .collect();
    if !missing.is_empty() {
        return Ok(CertifyOutcome::OutsideRightRange {
            missing,
            right_range,
        });
    }
    Ok(CertifyOutcome::Certified {
        extensibility: report,
        right_range,
    })
}
