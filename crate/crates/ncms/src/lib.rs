//! Certified underapproximations of reach sets for nondeterministic
//! complete Markovian systems (NCMS) on finite time grids.
//!
//! An NCMS is a set of partial state-valued trajectories over continuous
//! time that is closed under restriction, glues at shared states
//! (Markovian), and is chain-complete. This crate materializes such systems
//! finitely — time quantized to an exact rational grid, interval endpoints
//! carrying open/closed flags — and provides:
//!
//! - the trajectory data model and checkers for the three defining axioms
//!   ([`axioms`]);
//! - reach sets, right range sets, state restrictions, backward
//!   extensibility, and the certificate verifier ([`reach`]): a target set
//!   is a certified underapproximation of the reach set when it lies in the
//!   right range set of a backward-extensible state restriction;
//! - an exact oracle layer that lifts finite transition systems, computes
//!   reachability by BFS, builds the witness restriction from initial
//!   trajectories, and exhaustively verifies both directions of the
//!   certification theorem on finite instances ([`oracle`]);
//! - continuous front-ends (ODE vector fields, switched systems) compiled
//!   to grid trajectory sets by fixed-step integration ([`systems`]), with a
//!   small expression language ([`expr`]);
//! - a model-file format and the four commands exposed by the `ncms` binary
//!   ([`model`], [`cli`]).
//!
//! Start with the runnable examples: `cargo run --example reach_and_range`,
//! `certify_transition_system`, `theorem_oracle`, `certify_flow`,
//! `oscillator_certificate`, `axiom_checks`, `expression_tools`.

pub mod axioms;
pub mod classk;
pub mod cli;
pub mod error;
pub mod expr;
pub mod interval;
pub mod model;
pub mod oracle;
pub mod reach;
pub mod report;
pub mod state;
pub mod systems;
pub mod time;
pub mod trajectory;
pub mod trajset;

pub use classk::ClassKFunction;
pub use error::{Error, Result};
pub use interval::GridInterval;
pub use reach::{Certificate, CertifyOutcome, Ncms};
pub use state::{State, StateFilter, StateSpace};
pub use time::{Time, TimeGrid};
pub use trajectory::Trajectory;
pub use trajset::TrajectorySet;
