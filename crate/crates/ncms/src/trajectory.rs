//! Partial trajectories: state-valued functions on a grid interval.

use crate::error::{Error, Result};
use crate::interval::GridInterval;
use crate::state::State;
use crate::time::{Time, TimeGrid};
use std::cmp::Ordering;
use std::fmt;

/// A partial trajectory: one state per sample index of its domain.
#[derive(Debug, Clone)]
pub struct Trajectory {
    dom: GridInterval,
    values: Vec<State>,
}

impl Trajectory {
    pub fn new(dom: GridInterval, values: Vec<State>) -> Result<Self> {
        if values.len() != dom.sample_count() {
            return Err(Error::InvalidArgument(format!(
                "domain {dom} has {} samples but {} values were given",
                dom.sample_count(),
                values.len()
            )));
        }
        Ok(Trajectory { dom, values })
    }

    pub fn dom(&self) -> GridInterval {
        self.dom
    }

    pub fn values(&self) -> &[State] {
        &self.values
    }

    /// State at sample index `k`; `None` outside the sample range.
    pub fn value_at(&self, k: i64) -> Option<&State> {
        if !self.dom.contains_index(k) {
            return None;
        }
        Some(&self.values[(k - self.dom.first_sample()) as usize])
    }

    /// Value at the last sample (the right-end state when the domain has a
    /// maximum).
    pub fn end_value(&self) -> &State {
        self.values.last().expect("domains always carry a sample")
    }

    /// Defined at the initial time moment 0.
    pub fn is_initial(&self) -> bool {
        self.dom.lo == 0 && !self.dom.lo_open
    }

    /// Pointwise agreement with `other` on this trajectory's samples.
    pub fn agrees_on_own_samples(&self, other: &Trajectory, eps: f64) -> bool {
        self.dom.included_indices().iter().all(|&k| {
            other
                .value_at(k)
                .is_some_and(|v| v.approx_eq(self.value_at(k).unwrap(), eps))
        })
    }

    /// Restriction to `dom2`, which must be contained in the domain as a real
    /// interval.
    pub fn restrict(&self, dom2: GridInterval) -> Result<Trajectory> {
        if !self.dom.contains_interval(&dom2) {
            return Err(Error::DomainNotContained {
                found: dom2.to_string(),
                bound: self.dom.to_string(),
            });
        }
        let offset = (dom2.first_sample() - self.dom.first_sample()) as usize;
        let values = self.values[offset..offset + dom2.sample_count()].to_vec();
        Trajectory::new(dom2, values)
    }

    pub fn render(&self, grid: &TimeGrid) -> String {
        let lo = crate::report::fmt_time(grid.time_of(self.dom.lo));
        let hi = crate::report::fmt_time(grid.time_of(self.dom.hi));
        let vals: Vec<String> = self.values.iter().map(|s| s.to_string()).collect();
        format!(
            "{}{},{}{} {}",
            if self.dom.lo_open { '(' } else { '[' },
            lo,
            hi,
            if self.dom.hi_open { ')' } else { ']' },
            vals.join(" ")
        )
    }
}

impl PartialEq for Trajectory {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Trajectory {}

impl PartialOrd for Trajectory {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Trajectory {
    fn cmp(&self, other: &Self) -> Ordering {
        self.dom
            .cmp(&other.dom)
            .then_with(|| self.values.cmp(&other.values))
    }
}

impl fmt::Display for Trajectory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vals: Vec<String> = self.values.iter().map(|s| s.to_string()).collect();
        write!(f, "{} {}", self.dom, vals.join(" "))
    }
}

/// Graph inclusion: `s1`'s domain is contained in `s2`'s as real intervals
/// and the two agree (within `eps`) at every sample of `s1`.
pub fn is_subtrajectory(s1: &Trajectory, s2: &Trajectory, eps: f64) -> bool {
    s2.dom().contains_interval(&s1.dom()) && s1.agrees_on_own_samples(s2, eps)
}

/// Proper graph inclusion.
pub fn is_proper_subtrajectory(s1: &Trajectory, s2: &Trajectory, eps: f64) -> bool {
    s1.dom() != s2.dom() && is_subtrajectory(s1, s2, eps)
}

/// Glues two trajectories that meet at a shared junction sample with equal
/// state. The junction must be the attained right end of `s1` and the
/// attained left end of `s2`.
pub fn concat(s1: &Trajectory, s2: &Trajectory, eps: f64) -> Result<Trajectory> {
    let d1 = s1.dom();
    let d2 = s2.dom();
    if d1.hi != d2.lo {
        return Err(Error::NonAdjacentDomains);
    }
    let junction = d1.hi;
    if d1.hi_open || d2.lo_open {
        return Err(Error::JunctionNotIncluded { index: junction });
    }
    let left = s1.value_at(junction).expect("right end attained");
    let right = s2.value_at(junction).expect("left end attained");
    if !left.approx_eq(right, eps) {
        return Err(Error::JunctionMismatch { index: junction });
    }
    let dom = GridInterval::new(d1.lo, d2.hi, d1.lo_open, d2.hi_open)?;
    let mut values = s1.values().to_vec();
    values.extend_from_slice(&s2.values()[1..]);
    Trajectory::new(dom, values)
}

/// `s2` extends `s1` strictly backward in time: a proper supertrajectory
/// whose added domain lies entirely to the left of `dom(s1)`.
pub fn is_backward_extension(s1: &Trajectory, s2: &Trajectory, eps: f64) -> bool {
    s2.dom().same_right_end(&s1.dom())
        && s2.dom().starts_strictly_before(&s1.dom())
        && is_subtrajectory(s1, s2, eps)
}

/// Tests whether `s2` is a backward escape from `s1` at the sample index `d`:
/// `s2` must live on a closed interval `[c, d]` and meet `s1`'s value at `d`.
/// Returns the escape length `tau = (d - c) * step` when it is one.
///
/// `d` must be a sample of `dom(s1)` that is not its maximal element.
pub fn backward_escape(
    s1: &Trajectory,
    s2: &Trajectory,
    d: i64,
    grid: &TimeGrid,
    eps: f64,
) -> Result<Option<Time>> {
    if !s1.dom().contains_index(d) || d >= s1.dom().hi {
        return Err(Error::InvalidArgument(format!(
            "escape time index {d} is not a non-maximal sample of {}",
            s1.dom()
        )));
    }
    let d2 = s2.dom();
    let closed_ending_at_d = !d2.lo_open && !d2.hi_open && d2.hi == d && d2.lo < d;
    if !closed_ending_at_d {
        return Ok(None);
    }
    let meets = s2
        .value_at(d)
        .expect("closed right end")
        .approx_eq(s1.value_at(d).expect("d is a sample"), eps);
    if !meets {
        return Ok(None);
    }
    Ok(Some(grid.time_of(d - d2.lo)))
}
