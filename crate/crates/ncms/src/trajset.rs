//! Finitely materialized trajectory sets over a shared grid.

use crate::error::{Error, Result};
use crate::interval::GridInterval;
use crate::state::StateSpace;
use crate::time::TimeGrid;
use crate::trajectory::Trajectory;

pub const DEFAULT_EPS: f64 = 1e-9;
pub const DEFAULT_CAP: usize = 1_000_000;

/// A finite set of trajectories over one grid, with set semantics
/// (duplicates collapsed) and deterministic iteration order sorted by
/// (domain, values).
#[derive(Debug, Clone)]
pub struct TrajectorySet {
    grid: TimeGrid,
    space: StateSpace,
    eps: f64,
    items: Vec<Trajectory>,
}

impl TrajectorySet {
    pub fn new(
        grid: TimeGrid,
        space: StateSpace,
        eps: f64,
        trajectories: Vec<Trajectory>,
    ) -> Result<Self> {
        let mut items = trajectories;
        for t in &items {
            if t.dom().lo < 0 || t.dom().hi > grid.horizon() {
                return Err(Error::InvalidArgument(format!(
                    "trajectory domain {} leaves the grid window [0,{}]",
                    t.dom(),
                    grid.horizon()
                )));
            }
            for v in t.values() {
                if !space.admits(v) {
                    return Err(Error::StateSpaceMismatch(format!(
                        "state {v} does not belong to the declared state space"
                    )));
                }
            }
        }
        items.sort();
        items.dedup();
        Ok(TrajectorySet {
            grid,
            space,
            eps,
            items,
        })
    }

    pub fn empty(grid: TimeGrid, space: StateSpace, eps: f64) -> Self {
        TrajectorySet {
            grid,
            space,
            eps,
            items: Vec::new(),
        }
    }

    pub fn grid(&self) -> &TimeGrid {
        &self.grid
    }

    pub fn space(&self) -> &StateSpace {
        &self.space
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Trajectory> {
        self.items.iter()
    }

    /// Members sharing the given domain, as a contiguous sorted slice.
    pub fn with_domain(&self, dom: GridInterval) -> &[Trajectory] {
        let start = self.items.partition_point(|t| t.dom() < dom);
        let end = self.items.partition_point(|t| t.dom() <= dom);
        &self.items[start..end]
    }

    /// Set membership: same domain and values within the configured
    /// tolerance.
    pub fn contains(&self, t: &Trajectory) -> bool {
        self.with_domain(t.dom()).iter().any(|m| {
            m.values()
                .iter()
                .zip(t.values())
                .all(|(a, b)| a.approx_eq(b, self.eps))
        })
    }

    /// All members contained in `ts` (used for set inclusion tests).
    pub fn subset_of(&self, other: &TrajectorySet) -> bool {
        self.items.iter().all(|t| other.contains(t))
    }

    /// Rebuilds the set with the given members, keeping grid/space/eps.
    pub fn with_items(&self, items: Vec<Trajectory>) -> Result<Self> {
        TrajectorySet::new(self.grid.clone(), self.space.clone(), self.eps, items)
    }

    /// Rebuilds the set with a different state-space descriptor.
    pub fn with_space(&self, space: StateSpace, items: Vec<Trajectory>) -> Result<Self> {
        TrajectorySet::new(self.grid.clone(), space, self.eps, items)
    }
}

/// Builder that accumulates trajectories and closes them under the grid
/// restriction family and junction concatenations, up to a cap.
pub struct ClosureBuilder {
    grid: TimeGrid,
    eps: f64,
    cap: usize,
    seen: std::collections::BTreeSet<Trajectory>,
}

impl ClosureBuilder {
    pub fn new(grid: TimeGrid, eps: f64, cap: usize) -> Self {
        ClosureBuilder {
            grid,
            eps,
            cap,
            seen: Default::default(),
        }
    }

    pub fn insert(&mut self, t: Trajectory) -> Result<bool> {
        if self.seen.contains(&t) {
            return Ok(false);
        }
        if self.seen.len() >= self.cap {
            return Err(Error::CapExceeded { limit: self.cap });
        }
        Ok(self.seen.insert(t))
    }

    pub fn len(&self) -> usize {
        self.seen.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seen.is_empty()
    }

    /// Adds every restriction of every member.
    pub fn close_under_restrictions(&mut self) -> Result<()> {
        let mut frontier: Vec<Trajectory> = self.seen.iter().cloned().collect();
        while let Some(t) = frontier.pop() {
            for dom in t.dom().restrictions() {
                let r = t.restrict(dom).expect("family members are contained");
                if self.insert(r.clone())? {
                    frontier.push(r);
                }
            }
        }
        Ok(())
    }

    /// Adds every junction concatenation, interleaved with restriction
    /// closure until a fixpoint.
    pub fn close(&mut self) -> Result<()> {
        loop {
            self.close_under_restrictions()?;
            let snapshot: Vec<Trajectory> = self.seen.iter().cloned().collect();
            let mut grew = false;
            for s1 in &snapshot {
                if s1.dom().hi_open {
                    continue;
                }
                let junction = s1.dom().hi;
                for s2 in &snapshot {
                    if s2.dom().lo != junction || s2.dom().lo_open {
                        continue;
                    }
                    let left = s1.value_at(junction).expect("attained");
                    let right = s2.value_at(junction).expect("attained");
                    if !left.approx_eq(right, self.eps) {
                        continue;
                    }
                    let glued = crate::trajectory::concat(s1, s2, self.eps)?;
                    grew |= self.insert(glued)?;
                }
            }
            if !grew {
                return Ok(());
            }
        }
    }

    pub fn build(self, space: StateSpace) -> Result<TrajectorySet> {
        TrajectorySet::new(self.grid, space, self.eps, self.seen.into_iter().collect())
    }
}
