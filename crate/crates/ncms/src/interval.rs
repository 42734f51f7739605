//! Grid-aligned time intervals with open/closed endpoint flags.
//!
//! An interval is identified by its endpoint grid indices plus two openness
//! flags, so minimum-free domains such as `(a, b]` are representable exactly.
//! Every interval must include at least one grid sample.

use crate::error::{Error, Result};
use std::fmt;

/// A connected time interval aligned to the grid.
///
/// The underlying real interval runs from index `lo` to index `hi` (in grid
/// steps); `lo_open`/`hi_open` exclude the corresponding endpoint. Sample
/// indices are the grid points actually contained in the interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GridInterval {
    pub lo: i64,
    pub hi: i64,
    pub lo_open: bool,
    pub hi_open: bool,
}

impl GridInterval {
    pub fn new(lo: i64, hi: i64, lo_open: bool, hi_open: bool) -> Result<Self> {
        if hi <= lo {
            return Err(Error::InvalidInterval(format!(
                "need hi > lo, got lo={lo} hi={hi}"
            )));
        }
        let iv = GridInterval {
            lo,
            hi,
            lo_open,
            hi_open,
        };
        if iv.first_sample() > iv.last_sample() {
            return Err(Error::InvalidInterval(format!(
                "{iv} contains no grid sample"
            )));
        }
        Ok(iv)
    }

    pub fn closed(lo: i64, hi: i64) -> Result<Self> {
        Self::new(lo, hi, false, false)
    }

    /// First grid index included in the interval.
    pub fn first_sample(&self) -> i64 {
        self.lo + i64::from(self.lo_open)
    }

    /// Last grid index included in the interval.
    pub fn last_sample(&self) -> i64 {
        self.hi - i64::from(self.hi_open)
    }

    /// Sample indices in increasing order.
    pub fn included_indices(&self) -> Vec<i64> {
        (self.first_sample()..=self.last_sample()).collect()
    }

    pub fn sample_count(&self) -> usize {
        (self.last_sample() - self.first_sample() + 1) as usize
    }

    pub fn contains_index(&self, k: i64) -> bool {
        (self.first_sample()..=self.last_sample()).contains(&k)
    }

    /// The interval has a minimum element iff its left endpoint is attained.
    pub fn has_minimum(&self) -> bool {
        !self.lo_open
    }

    /// The interval has a maximum element iff its right endpoint is attained.
    pub fn has_maximum(&self) -> bool {
        !self.hi_open
    }

    /// Containment as real intervals.
    pub fn contains_interval(&self, other: &GridInterval) -> bool {
        let left_ok = other.lo > self.lo || (other.lo == self.lo && (!self.lo_open || other.lo_open));
        let right_ok = other.hi < self.hi || (other.hi == self.hi && (!self.hi_open || other.hi_open));
        left_ok && right_ok
    }

    /// Strictly-left comparison of left endpoints as reals: does `self` start
    /// before `other` starts?
    pub fn starts_strictly_before(&self, other: &GridInterval) -> bool {
        self.lo < other.lo || (self.lo == other.lo && !self.lo_open && other.lo_open)
    }

    /// Same right endpoint, including openness.
    pub fn same_right_end(&self, other: &GridInterval) -> bool {
        self.hi == other.hi && self.hi_open == other.hi_open
    }

    /// The grid-representable restrictions of this interval.
    ///
    /// A restriction may cut the interval at an interior grid point, in which
    /// case the cut endpoint is attained (closed); at its own boundary the
    /// original openness is inherited. Includes the interval itself. This is
    /// the restriction family used by the closure and axiom machinery; it is
    /// closed under composition.
    pub fn restrictions(&self) -> Vec<GridInterval> {
        let mut lefts: Vec<(i64, bool)> = vec![(self.lo, self.lo_open)];
        lefts.extend(((self.lo + 1)..self.hi).map(|c| (c, false)));
        let mut rights: Vec<(i64, bool)> = vec![(self.hi, self.hi_open)];
        rights.extend(((self.lo + 1)..self.hi).map(|d| (d, false)));
        let mut out = Vec::new();
        for &(lo, lo_open) in &lefts {
            for &(hi, hi_open) in &rights {
                if let Ok(iv) = GridInterval::new(lo, hi, lo_open, hi_open) {
                    out.push(iv);
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }

    /// Whether `other` belongs to the restriction family of `self`.
    pub fn is_restriction_of(&self, other: &GridInterval) -> bool {
        // other = parent here; kept as a predicate so callers can test without
        // materializing the family.
        let parent = other;
        if !parent.contains_interval(self) {
            return false;
        }
        let left_ok = if self.lo == parent.lo && self.lo_open == parent.lo_open {
            true
        } else {
            self.lo > parent.lo && !self.lo_open
        };
        let right_ok = if self.hi == parent.hi && self.hi_open == parent.hi_open {
            true
        } else {
            self.hi < parent.hi && !self.hi_open
        };
        left_ok && right_ok
    }
}

impl fmt::Display for GridInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{},{}{}",
            if self.lo_open { '(' } else { '[' },
            self.lo,
            self.hi,
            if self.hi_open { ')' } else { ']' }
        )
    }
}
