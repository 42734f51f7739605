//! States, state spaces, and state-set filters.

use crate::error::{Error, Result};
use crate::expr::Predicate;
use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

/// A single system state: a symbolic label or a real vector.
#[derive(Debug, Clone)]
pub enum State {
    Label(String),
    Vector(Vec<f64>),
}

impl State {
    pub fn label(s: impl Into<String>) -> Self {
        State::Label(s.into())
    }

    pub fn vector(v: Vec<f64>) -> Self {
        State::Vector(v.into_iter().map(clean_component).collect())
    }

    /// Equality up to the configured tolerance. Labels compare exactly;
    /// vectors componentwise within `eps`.
    pub fn approx_eq(&self, other: &State, eps: f64) -> bool {
        match (self, other) {
            (State::Label(a), State::Label(b)) => a == b,
            (State::Vector(a), State::Vector(b)) => {
                a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= eps)
            }
            _ => false,
        }
    }
}

fn clean_component(x: f64) -> f64 {
    // normalize -0.0 so ordering and dedup behave
    if x == 0.0 {
        0.0
    } else {
        x
    }
}

impl PartialEq for State {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for State {}

impl PartialOrd for State {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for State {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (State::Label(a), State::Label(b)) => a.cmp(b),
            (State::Vector(a), State::Vector(b)) => {
                let len = a.len().cmp(&b.len());
                if len != Ordering::Equal {
                    return len;
                }
                for (x, y) in a.iter().zip(b) {
                    let c = x.total_cmp(y);
                    if c != Ordering::Equal {
                        return c;
                    }
                }
                Ordering::Equal
            }
            (State::Label(_), State::Vector(_)) => Ordering::Less,
            (State::Vector(_), State::Label(_)) => Ordering::Greater,
        }
    }
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            State::Label(l) => write!(f, "{l}"),
            State::Vector(v) => {
                write!(f, "(")?;
                for (i, x) in v.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{}", crate::report::fmt_sig(*x))?;
                }
                write!(f, ")")
            }
        }
    }
}

/// Descriptor of the state space a trajectory set lives in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StateSpace {
    Labels(BTreeSet<String>),
    Vector { dim: usize },
}

impl StateSpace {
    pub fn admits(&self, state: &State) -> bool {
        match (self, state) {
            (StateSpace::Labels(alphabet), State::Label(l)) => alphabet.contains(l),
            (StateSpace::Vector { dim }, State::Vector(v)) => v.len() == *dim,
            _ => false,
        }
    }

    /// Set-theoretic inclusion of descriptors.
    pub fn included_in(&self, other: &StateSpace) -> bool {
        match (self, other) {
            (StateSpace::Labels(a), StateSpace::Labels(b)) => a.is_subset(b),
            (StateSpace::Vector { dim: a }, StateSpace::Vector { dim: b }) => a == b,
            _ => false,
        }
    }
}

/// A state set used for restriction and for certificate targets: either an
/// explicit finite set or a predicate over vector components.
#[derive(Debug, Clone)]
pub enum StateFilter {
    All,
    Labels(BTreeSet<String>),
    Vectors(Vec<Vec<f64>>),
    Predicate(Predicate),
}

impl StateFilter {
    pub fn contains(&self, state: &State, eps: f64) -> Result<bool> {
        match (self, state) {
            (StateFilter::All, _) => Ok(true),
            (StateFilter::Labels(set), State::Label(l)) => Ok(set.contains(l)),
            (StateFilter::Labels(_), State::Vector(_)) => Err(Error::StateSpaceMismatch(
                "label set applied to a vector state".into(),
            )),
            (StateFilter::Vectors(set), State::Vector(v)) => Ok(set
                .iter()
                .any(|w| w.len() == v.len() && w.iter().zip(v).all(|(x, y)| (x - y).abs() <= eps))),
            (StateFilter::Vectors(_), State::Label(_)) => Err(Error::StateSpaceMismatch(
                "vector set applied to a label state".into(),
            )),
            (StateFilter::Predicate(p), State::Vector(v)) => {
                p.holds(v).map_err(|e| Error::Eval(e.to_string()))
            }
            (StateFilter::Predicate(_), State::Label(_)) => Err(Error::StateSpaceMismatch(
                "predicate applied to a label state".into(),
            )),
        }
    }

    /// Restricts a label alphabet to this filter, for rebuilding descriptors.
    pub fn restrict_alphabet(&self, alphabet: &BTreeSet<String>) -> BTreeSet<String> {
        match self {
            StateFilter::Labels(set) => alphabet.intersection(set).cloned().collect(),
            _ => alphabet.clone(),
        }
    }
}
