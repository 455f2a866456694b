//! Verification toolkit for disjunctive timed networks (DTNs).
//!
//! A DTN is a family of systems, each composed of `n` identical copies of a
//! guarded timed automaton: a timed automaton whose transitions may carry a
//! *location guard* that is satisfied whenever **another** copy currently
//! occupies the named location. This crate answers questions about the whole
//! family at once, independently of `n`:
//!
//! - [`minreach::solve_minreach`] computes, for every location, the minimal
//!   time at which *some* copy can reach it in a network of arbitrary size.
//! - [`summary::build_summary`] turns a guarded automaton into an unguarded
//!   *summary automaton* over an extra never-reset clock `t`, which replays
//!   the behaviour a single copy can exhibit inside the infinite family.
//! - [`flooding`] certifies that guard locations can be kept continuously
//!   occupied by finitely many copies, which yields *cutoffs*: network sizes
//!   beyond which no new behaviour appears, even in the presence of location
//!   invariants.
//! - [`oracle`] re-derives the same answers by brute force on explicit
//!   products of small networks, and is used to cross-validate everything
//!   else.
//!
//! Models are described in a small line-oriented text format (see [`parse`])
//! and can be exported to Graphviz via [`render`]. The `dtnv` binary wraps
//! all of the above in a command-line interface.

pub mod benchgen;
pub mod dbm;
pub mod flooding;
pub mod minreach;
pub mod model;
pub mod oracle;
pub mod parse;
pub mod render;
pub mod report;
pub mod summary;
pub mod zone_graph;

pub use dbm::{Bound, Dbm};
pub use model::{
    AtomicConstraint, ClockConstraint, ClockId, Gta, LocGuard, LocationId, Relation, TimeBound,
    Transition,
};
