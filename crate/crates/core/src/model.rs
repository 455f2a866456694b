//! Guarded timed automata and the time-bound arithmetic shared by all
//! analyses.
//!
//! A *guarded timed automaton* (gTA) is a timed automaton whose transitions
//! may additionally carry a **location guard**: the name of a location that
//! some *other* copy of the same automaton must currently occupy for the
//! transition to fire. Networks of identical copies of a gTA, any number of
//! them running in parallel with this disjunctive synchronisation, are the
//! object every module in this crate analyses.
//!
//! Clock constraints are conjunctions of atoms `c ∼ d` and `c − c' ∼ d` with
//! `d` a natural number and `∼` one of `<, <=, =, >=, >`. Inequality (`!=`)
//! is deliberately absent: zones must stay convex.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Index of a clock within [`Gta::clocks`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ClockId(pub usize);

/// Index of a location within [`Gta::locations`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LocationId(pub usize);

/// Comparison operator usable in clock constraints. `!=` is not part of the
/// constraint language.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Relation {
    Lt,
    Le,
    Eq,
    Ge,
    Gt,
}

impl Relation {
    /// Evaluate `lhs ∼ rhs` for concrete integer operands.
    pub fn holds(self, lhs: i64, rhs: i64) -> bool {
        match self {
            Relation::Lt => lhs < rhs,
            Relation::Le => lhs <= rhs,
            Relation::Eq => lhs == rhs,
            Relation::Ge => lhs >= rhs,
            Relation::Gt => lhs > rhs,
        }
    }

    /// The textual operator, as written in the model format.
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Lt => "<",
            Relation::Le => "<=",
            Relation::Eq => "=",
            Relation::Ge => ">=",
            Relation::Gt => ">",
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// A single comparison against a constant: either one clock or the
/// difference of two distinct clocks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AtomicConstraint {
    /// `clock ∼ constant`
    Clock {
        clock: ClockId,
        rel: Relation,
        constant: u64,
    },
    /// `left − right ∼ constant`
    Diff {
        left: ClockId,
        right: ClockId,
        rel: Relation,
        constant: u64,
    },
}

impl AtomicConstraint {
    /// All clocks mentioned by the atom.
    pub fn clocks(&self) -> impl Iterator<Item = ClockId> {
        let (a, b) = match *self {
            AtomicConstraint::Clock { clock, .. } => (clock, None),
            AtomicConstraint::Diff { left, right, .. } => (left, Some(right)),
        };
        std::iter::once(a).chain(b)
    }

    /// Evaluate the atom at the valuation assigning zero to every clock.
    fn holds_at_zero(&self) -> bool {
        match *self {
            AtomicConstraint::Clock { rel, constant, .. }
            | AtomicConstraint::Diff { rel, constant, .. } => rel.holds(0, constant as i64),
        }
    }
}

/// A conjunction of atomic constraints; the empty conjunction is `⊤`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ClockConstraint {
    pub atoms: Vec<AtomicConstraint>,
}

impl ClockConstraint {
    /// The trivial constraint `⊤`.
    pub fn top() -> Self {
        ClockConstraint::default()
    }

    pub fn is_top(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn atom(atom: AtomicConstraint) -> Self {
        ClockConstraint { atoms: vec![atom] }
    }

    /// Conjoin a further atom in place.
    pub fn and(&mut self, atom: AtomicConstraint) {
        self.atoms.push(atom);
    }

    /// Does the all-zeroes valuation satisfy the constraint?
    pub fn satisfied_by_zero(&self) -> bool {
        self.atoms.iter().all(AtomicConstraint::holds_at_zero)
    }
}

/// Location guard of a transition: trivial, or the requirement that another
/// copy of the automaton currently occupies the given location.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LocGuard {
    Trivial,
    Loc(LocationId),
}

impl LocGuard {
    pub fn location(self) -> Option<LocationId> {
        match self {
            LocGuard::Trivial => None,
            LocGuard::Loc(q) => Some(q),
        }
    }
}

/// A transition of a guarded timed automaton.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transition {
    pub source: LocationId,
    /// Clock guard; `⊤` if empty.
    pub guard: ClockConstraint,
    /// Clocks reset to zero when the transition fires.
    pub resets: Vec<ClockId>,
    /// Disjunctive location guard.
    pub locguard: LocGuard,
    pub target: LocationId,
}

/// A guarded timed automaton.
///
/// Locations and clocks are referred to by index; the parallel vectors hold
/// their names. `invariants` is indexed like `locations` and holds `⊤` for
/// locations without an invariant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gta {
    pub name: String,
    pub clocks: Vec<String>,
    pub locations: Vec<String>,
    pub initial: LocationId,
    pub invariants: Vec<ClockConstraint>,
    pub transitions: Vec<Transition>,
}

/// Name reserved for the global-time clock added by [`Gta::augment_with_t`].
pub const TIME_CLOCK: &str = "t";

/// Problems detected by [`Gta::validate`]. Each names the offending element.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error("model `{model}` has no locations")]
    EmptyModel { model: String },
    #[error("`{name}` is not a valid identifier")]
    InvalidIdentifier { name: String },
    #[error("{context} refers to unknown {kind} `{name}`")]
    DanglingReference {
        context: String,
        kind: &'static str,
        name: String,
    },
    #[error("initial location `{location}` has invariant not satisfied at time zero")]
    InitialInvariantViolated { location: String },
    #[error("transition from `{location}` resets the reserved time clock `t`")]
    ReservedClockReset { location: String },
    #[error("clock `t` is reserved for global time and must be the first clock")]
    ReservedClockMisplaced,
    #[error("{context} contains a difference constraint over a single clock `{name}`")]
    DegenerateDifference { context: String, name: String },
    #[error("model `{model}` has {got} invariants for {want} locations")]
    InvariantArityMismatch {
        model: String,
        got: usize,
        want: usize,
    },
}

/// Error raised by [`Gta::augment_with_t`] on a model that already carries
/// the global-time clock.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("model `{model}` already contains the time clock `t`")]
pub struct AlreadyAugmented {
    pub model: String,
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Gta {
    /// An empty model with the given name. Populate it with
    /// [`add_clock`](Self::add_clock), [`add_location`](Self::add_location)
    /// and [`add_transition`](Self::add_transition), then check it with
    /// [`validate`](Self::validate).
    pub fn new(name: impl Into<String>) -> Self {
        Gta {
            name: name.into(),
            clocks: Vec::new(),
            locations: Vec::new(),
            initial: LocationId(0),
            invariants: Vec::new(),
            transitions: Vec::new(),
        }
    }

    pub fn add_clock(&mut self, name: impl Into<String>) -> ClockId {
        self.clocks.push(name.into());
        ClockId(self.clocks.len() - 1)
    }

    /// Add a location with trivial invariant.
    pub fn add_location(&mut self, name: impl Into<String>) -> LocationId {
        self.locations.push(name.into());
        self.invariants.push(ClockConstraint::top());
        LocationId(self.locations.len() - 1)
    }

    pub fn set_invariant(&mut self, location: LocationId, invariant: ClockConstraint) {
        self.invariants[location.0] = invariant;
    }

    pub fn add_transition(&mut self, transition: Transition) {
        self.transitions.push(transition);
    }

    pub fn location_name(&self, q: LocationId) -> &str {
        &self.locations[q.0]
    }

    pub fn clock_name(&self, c: ClockId) -> &str {
        &self.clocks[c.0]
    }

    pub fn location_index(&self, name: &str) -> Option<LocationId> {
        self.locations.iter().position(|l| l == name).map(LocationId)
    }

    pub fn clock_index(&self, name: &str) -> Option<ClockId> {
        self.clocks.iter().position(|c| c == name).map(ClockId)
    }

    pub fn invariant(&self, q: LocationId) -> &ClockConstraint {
        &self.invariants[q.0]
    }

    /// Transitions leaving `q`, with their indices into
    /// [`transitions`](Self::transitions).
    pub fn outgoing(&self, q: LocationId) -> impl Iterator<Item = (usize, &Transition)> {
        self.transitions
            .iter()
            .enumerate()
            .filter(move |(_, t)| t.source == q)
    }

    /// Whether the model already carries the global-time clock `t` (always
    /// at index 0 when present).
    pub fn is_time_augmented(&self) -> bool {
        self.clocks.first().map(String::as_str) == Some(TIME_CLOCK)
    }

    /// Location name, tolerating out-of-range indices (used when reporting
    /// validation problems on not-yet-validated models).
    fn loc_label(&self, q: LocationId) -> String {
        match self.locations.get(q.0) {
            Some(name) => name.clone(),
            None => format!("#{}", q.0),
        }
    }

    /// Every constraint of the model (guards and invariants), with a short
    /// description of where it occurs.
    fn constraints(&self) -> impl Iterator<Item = (String, &ClockConstraint)> {
        let invs = self
            .invariants
            .iter()
            .enumerate()
            .map(move |(i, inv)| (format!("invariant of `{}`", self.loc_label(LocationId(i))), inv));
        let guards = self.transitions.iter().map(move |t| {
            (
                format!(
                    "guard of `{}` -> `{}`",
                    self.loc_label(t.source),
                    self.loc_label(t.target)
                ),
                &t.guard,
            )
        });
        invs.chain(guards)
    }

    /// Check structural sanity: indices in range, identifiers well-formed,
    /// the reserved clock `t` used only as global time, and the initial
    /// invariant satisfiable at time zero.
    pub fn validate(&self) -> Result<(), ValidationError> {
        if self.locations.is_empty() {
            return Err(ValidationError::EmptyModel {
                model: self.name.clone(),
            });
        }
        if self.invariants.len() != self.locations.len() {
            return Err(ValidationError::InvariantArityMismatch {
                model: self.name.clone(),
                got: self.invariants.len(),
                want: self.locations.len(),
            });
        }
        for name in std::iter::once(&self.name)
            .chain(self.clocks.iter())
            .chain(self.locations.iter())
        {
            if !is_identifier(name) {
                return Err(ValidationError::InvalidIdentifier { name: name.clone() });
            }
        }
        if let Some(pos) = self.clocks.iter().position(|c| c == TIME_CLOCK) {
            if pos != 0 {
                return Err(ValidationError::ReservedClockMisplaced);
            }
        }
        if self.locations.iter().any(|l| l == TIME_CLOCK) {
            return Err(ValidationError::InvalidIdentifier {
                name: TIME_CLOCK.to_owned(),
            });
        }

        let check_loc = |context: &str, q: LocationId| -> Result<(), ValidationError> {
            if q.0 >= self.locations.len() {
                return Err(ValidationError::DanglingReference {
                    context: context.to_owned(),
                    kind: "location",
                    name: format!("#{}", q.0),
                });
            }
            Ok(())
        };
        let check_clock = |context: &str, c: ClockId| -> Result<(), ValidationError> {
            if c.0 >= self.clocks.len() {
                return Err(ValidationError::DanglingReference {
                    context: context.to_owned(),
                    kind: "clock",
                    name: format!("#{}", c.0),
                });
            }
            Ok(())
        };

        check_loc("initial location", self.initial)?;
        for (context, constraint) in self.constraints() {
            for atom in &constraint.atoms {
                for c in atom.clocks() {
                    check_clock(&context, c)?;
                }
                if let AtomicConstraint::Diff { left, right, .. } = *atom {
                    if left == right {
                        return Err(ValidationError::DegenerateDifference {
                            context,
                            name: self.clocks[left.0].clone(),
                        });
                    }
                }
            }
        }
        for (i, t) in self.transitions.iter().enumerate() {
            let context = format!("transition #{i}");
            check_loc(&context, t.source)?;
            check_loc(&context, t.target)?;
            if let LocGuard::Loc(q) = t.locguard {
                check_loc(&context, q)?;
            }
            for &c in &t.resets {
                check_clock(&context, c)?;
                if self.is_time_augmented() && c == ClockId(0) {
                    return Err(ValidationError::ReservedClockReset {
                        location: self.locations[t.source.0].clone(),
                    });
                }
            }
        }
        if !self.invariants[self.initial.0].satisfied_by_zero() {
            return Err(ValidationError::InitialInvariantViolated {
                location: self.locations[self.initial.0].clone(),
            });
        }
        Ok(())
    }

    /// The *unguarded* automaton: the same model with every location guard
    /// dropped. Its behaviour over-approximates a single copy in a network.
    pub fn unguard(&self) -> Gta {
        let mut ta = self.clone();
        for t in &mut ta.transitions {
            t.locguard = LocGuard::Trivial;
        }
        ta
    }

    /// Locations that appear as a location guard on some transition.
    pub fn guards_of(&self) -> BTreeSet<LocationId> {
        self.transitions
            .iter()
            .filter_map(|t| t.locguard.location())
            .collect()
    }

    /// Are all guard locations free of invariants? Families with this shape
    /// admit cutoffs without any flooding argument.
    pub fn has_persistent_guards(&self) -> bool {
        self.guards_of()
            .iter()
            .all(|&q| self.invariants[q.0].is_top())
    }

    /// Extend the clock set with the global-time clock `t` at index 0,
    /// shifting every existing clock reference up by one. Transitions and
    /// invariants are otherwise unchanged; `t` is never reset.
    pub fn augment_with_t(&self) -> Result<Gta, AlreadyAugmented> {
        if self.is_time_augmented() {
            return Err(AlreadyAugmented {
                model: self.name.clone(),
            });
        }
        let shift = |c: ClockId| ClockId(c.0 + 1);
        let shift_constraint = |cc: &ClockConstraint| ClockConstraint {
            atoms: cc
                .atoms
                .iter()
                .map(|atom| match *atom {
                    AtomicConstraint::Clock {
                        clock,
                        rel,
                        constant,
                    } => AtomicConstraint::Clock {
                        clock: shift(clock),
                        rel,
                        constant,
                    },
                    AtomicConstraint::Diff {
                        left,
                        right,
                        rel,
                        constant,
                    } => AtomicConstraint::Diff {
                        left: shift(left),
                        right: shift(right),
                        rel,
                        constant,
                    },
                })
                .collect(),
        };
        let mut clocks = Vec::with_capacity(self.clocks.len() + 1);
        clocks.push(TIME_CLOCK.to_owned());
        clocks.extend(self.clocks.iter().cloned());
        Ok(Gta {
            name: self.name.clone(),
            clocks,
            locations: self.locations.clone(),
            initial: self.initial,
            invariants: self.invariants.iter().map(shift_constraint).collect(),
            transitions: self
                .transitions
                .iter()
                .map(|t| Transition {
                    source: t.source,
                    guard: shift_constraint(&t.guard),
                    resets: t.resets.iter().copied().map(shift).collect(),
                    locguard: t.locguard,
                    target: t.target,
                })
                .collect(),
        })
    }

    /// The least upper bound that the invariant of `q` imposes on clock `c`:
    /// the tightest `d` such that the invariant entails `c ≤ d` (or `c < d`
    /// when the bound is strict). [`TimeBound::Infinite`] if the invariant
    /// leaves `c` unbounded. Difference atoms do not bound a clock by
    /// themselves and are ignored.
    pub fn inv_upper_bound(&self, q: LocationId, c: ClockId) -> TimeBound {
        let mut best = TimeBound::Infinite;
        for atom in &self.invariants[q.0].atoms {
            if let AtomicConstraint::Clock {
                clock,
                rel,
                constant,
            } = *atom
            {
                if clock != c {
                    continue;
                }
                let candidate = match rel {
                    Relation::Le | Relation::Eq => TimeBound::finite(constant),
                    Relation::Lt => TimeBound::finite_strict(constant),
                    Relation::Ge | Relation::Gt => continue,
                };
                best = TimeBound::tighter_upper(best, candidate);
            }
        }
        best
    }

    /// Largest constant appearing in any guard or invariant; 0 for a model
    /// without constraints. Used for zone extrapolation.
    pub fn max_constant(&self) -> u64 {
        self.constraints()
            .flat_map(|(_, cc)| cc.atoms.iter())
            .map(|atom| match *atom {
                AtomicConstraint::Clock { constant, .. }
                | AtomicConstraint::Diff { constant, .. } => constant,
            })
            .max()
            .unwrap_or(0)
    }
}

/// A (possibly unattained or infinite) non-negative time value.
///
/// `Finite { value, strict: false }` is an ordinary attained bound; with
/// `strict: true` it denotes an infimum that runs can approach but never
/// realise — reachability "strictly after `value`". The derived order places
/// `Infinite` last and, among equal values, the attained bound before the
/// strict one, which is exactly the order in which a minimum-time search
/// discovers them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum TimeBound {
    Finite { value: u64, strict: bool },
    Infinite,
}

impl TimeBound {
    pub const ZERO: TimeBound = TimeBound::Finite {
        value: 0,
        strict: false,
    };

    pub fn finite(value: u64) -> TimeBound {
        TimeBound::Finite {
            value,
            strict: false,
        }
    }

    pub fn finite_strict(value: u64) -> TimeBound {
        TimeBound::Finite {
            value,
            strict: true,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, TimeBound::Finite { .. })
    }

    pub fn value(self) -> Option<u64> {
        match self {
            TimeBound::Finite { value, .. } => Some(value),
            TimeBound::Infinite => None,
        }
    }

    pub fn is_strict(self) -> bool {
        matches!(self, TimeBound::Finite { strict: true, .. })
    }

    /// Sum of two bounds. Values add; the sum is strict if either summand
    /// is, since an infimum component keeps the total unattained.
    /// Deliberately not [`std::ops::Add`]: it saturates at infinity.
    #[allow(clippy::should_implement_trait)]
    pub fn add(self, other: TimeBound) -> TimeBound {
        match (self, other) {
            (
                TimeBound::Finite { value: a, strict: sa },
                TimeBound::Finite { value: b, strict: sb },
            ) => TimeBound::Finite {
                value: a + b,
                strict: sa || sb,
            },
            _ => TimeBound::Infinite,
        }
    }

    /// Multiply the value by a constant, keeping strictness.
    pub fn scale(self, k: u64) -> TimeBound {
        match self {
            TimeBound::Finite { value, strict } => TimeBound::Finite {
                value: value * k,
                strict,
            },
            TimeBound::Infinite => TimeBound::Infinite,
        }
    }

    /// The tighter of two *upper* bounds. Upper bounds order differently
    /// from reach times: at equal value, `c < d` is tighter than `c ≤ d`.
    pub fn tighter_upper(a: TimeBound, b: TimeBound) -> TimeBound {
        match (a, b) {
            (TimeBound::Infinite, x) | (x, TimeBound::Infinite) => x,
            (
                TimeBound::Finite { value: va, strict: sa },
                TimeBound::Finite { value: vb, strict: sb },
            ) => {
                if va != vb {
                    if va < vb {
                        a
                    } else {
                        b
                    }
                } else {
                    TimeBound::Finite {
                        value: va,
                        strict: sa || sb,
                    }
                }
            }
        }
    }
}

impl fmt::Display for TimeBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            TimeBound::Finite { value, strict } => {
                if strict {
                    write!(f, ">{value}")
                } else {
                    write!(f, "{value}")
                }
            }
            TimeBound::Infinite => f.write_str("inf"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_clock_model() -> Gta {
        let mut m = Gta::new("pair");
        let x = m.add_clock("x");
        let y = m.add_clock("y");
        let a = m.add_location("a");
        let b = m.add_location("b");
        m.set_invariant(
            b,
            ClockConstraint::atom(AtomicConstraint::Clock {
                clock: x,
                rel: Relation::Le,
                constant: 4,
            }),
        );
        m.add_transition(Transition {
            source: a,
            guard: ClockConstraint::atom(AtomicConstraint::Diff {
                left: x,
                right: y,
                rel: Relation::Le,
                constant: 1,
            }),
            resets: vec![y],
            locguard: LocGuard::Loc(b),
            target: b,
        });
        m
    }

    #[test]
    fn validate_accepts_wellformed_model() {
        assert_eq!(two_clock_model().validate(), Ok(()));
    }

    #[test]
    fn validate_rejects_dangling_location() {
        let mut m = two_clock_model();
        m.transitions[0].target = LocationId(9);
        assert!(matches!(
            m.validate(),
            Err(ValidationError::DanglingReference { kind: "location", .. })
        ));
    }

    #[test]
    fn validate_rejects_dangling_clock_in_guard() {
        let mut m = two_clock_model();
        m.transitions[0].guard.and(AtomicConstraint::Clock {
            clock: ClockId(7),
            rel: Relation::Le,
            constant: 1,
        });
        assert!(matches!(
            m.validate(),
            Err(ValidationError::DanglingReference { kind: "clock", .. })
        ));
    }

    #[test]
    fn validate_rejects_initial_invariant_excluding_zero() {
        let mut m = two_clock_model();
        m.set_invariant(
            LocationId(0),
            ClockConstraint::atom(AtomicConstraint::Clock {
                clock: ClockId(0),
                rel: Relation::Ge,
                constant: 1,
            }),
        );
        assert_eq!(
            m.validate(),
            Err(ValidationError::InitialInvariantViolated {
                location: "a".to_owned()
            })
        );
    }

    #[test]
    fn validate_rejects_reset_of_time_clock() {
        let m = two_clock_model().augment_with_t().unwrap();
        let mut bad = m.clone();
        bad.transitions[0].resets.push(ClockId(0));
        assert!(matches!(
            bad.validate(),
            Err(ValidationError::ReservedClockReset { .. })
        ));
        // The augmented model itself is fine.
        assert_eq!(m.validate(), Ok(()));
    }

    #[test]
    fn validate_rejects_misplaced_time_clock() {
        let mut m = Gta::new("bad");
        m.add_clock("x");
        m.add_clock("t");
        m.add_location("a");
        assert_eq!(m.validate(), Err(ValidationError::ReservedClockMisplaced));
    }

    #[test]
    fn validate_rejects_degenerate_difference() {
        let mut m = two_clock_model();
        m.transitions[0].guard = ClockConstraint::atom(AtomicConstraint::Diff {
            left: ClockId(0),
            right: ClockId(0),
            rel: Relation::Lt,
            constant: 2,
        });
        assert!(matches!(
            m.validate(),
            Err(ValidationError::DegenerateDifference { .. })
        ));
    }

    #[test]
    fn unguard_drops_all_location_guards_and_nothing_else() {
        let m = two_clock_model();
        let u = m.unguard();
        assert!(u.guards_of().is_empty());
        assert_eq!(u.transitions.len(), m.transitions.len());
        assert_eq!(u.transitions[0].guard, m.transitions[0].guard);
        assert_eq!(u.transitions[0].resets, m.transitions[0].resets);
        assert_eq!(u.invariants, m.invariants);
    }

    #[test]
    fn guards_of_collects_guard_locations() {
        let m = two_clock_model();
        assert_eq!(m.guards_of().into_iter().collect::<Vec<_>>(), vec![LocationId(1)]);
    }

    #[test]
    fn augment_shifts_clock_references() {
        let m = two_clock_model();
        let a = m.augment_with_t().unwrap();
        assert_eq!(a.clocks, vec!["t", "x", "y"]);
        assert!(a.is_time_augmented());
        // y (was index 1) is now index 2 in the reset set.
        assert_eq!(a.transitions[0].resets, vec![ClockId(2)]);
        match a.transitions[0].guard.atoms[0] {
            AtomicConstraint::Diff { left, right, .. } => {
                assert_eq!((left, right), (ClockId(1), ClockId(2)));
            }
            _ => panic!("guard shape changed"),
        }
        match a.invariants[1].atoms[0] {
            AtomicConstraint::Clock { clock, .. } => assert_eq!(clock, ClockId(1)),
            _ => panic!("invariant shape changed"),
        }
        assert_eq!(a.augment_with_t(), Err(AlreadyAugmented { model: "pair".into() }));
    }

    #[test]
    fn inv_upper_bound_picks_tightest_bound() {
        let mut m = Gta::new("inv");
        let x = m.add_clock("x");
        let q = m.add_location("q");
        let mut inv = ClockConstraint::atom(AtomicConstraint::Clock {
            clock: x,
            rel: Relation::Lt,
            constant: 3,
        });
        inv.and(AtomicConstraint::Clock {
            clock: x,
            rel: Relation::Le,
            constant: 5,
        });
        m.set_invariant(q, inv);
        assert_eq!(m.inv_upper_bound(q, x), TimeBound::finite_strict(3));
    }

    #[test]
    fn inv_upper_bound_trivial_and_lower_only() {
        let mut m = Gta::new("inv");
        let x = m.add_clock("x");
        let q = m.add_location("q");
        assert_eq!(m.inv_upper_bound(q, x), TimeBound::Infinite);
        m.set_invariant(
            q,
            ClockConstraint::atom(AtomicConstraint::Clock {
                clock: x,
                rel: Relation::Ge,
                constant: 0,
            }),
        );
        assert_eq!(m.inv_upper_bound(q, x), TimeBound::Infinite);
    }

    #[test]
    fn inv_upper_bound_equality_counts_as_upper() {
        let mut m = Gta::new("inv");
        let x = m.add_clock("x");
        let q = m.add_location("q");
        m.set_invariant(
            q,
            ClockConstraint::atom(AtomicConstraint::Clock {
                clock: x,
                rel: Relation::Eq,
                constant: 2,
            }),
        );
        assert_eq!(m.inv_upper_bound(q, x), TimeBound::finite(2));
    }

    #[test]
    fn inv_upper_bound_never_loosens_under_conjunction() {
        // Adding conjuncts can only tighten the bound.
        let mut m = Gta::new("inv");
        let x = m.add_clock("x");
        let q = m.add_location("q");
        m.set_invariant(
            q,
            ClockConstraint::atom(AtomicConstraint::Clock {
                clock: x,
                rel: Relation::Le,
                constant: 4,
            }),
        );
        let before = m.inv_upper_bound(q, x);
        m.invariants[q.0].and(AtomicConstraint::Clock {
            clock: x,
            rel: Relation::Ge,
            constant: 1,
        });
        let after = m.inv_upper_bound(q, x);
        assert_eq!(TimeBound::tighter_upper(before, after), after);
    }

    #[test]
    fn time_bound_order_is_value_then_strictness() {
        let mut bounds = vec![
            TimeBound::Infinite,
            TimeBound::finite_strict(2),
            TimeBound::finite(2),
            TimeBound::finite(0),
            TimeBound::finite_strict(0),
        ];
        bounds.sort();
        assert_eq!(
            bounds,
            vec![
                TimeBound::finite(0),
                TimeBound::finite_strict(0),
                TimeBound::finite(2),
                TimeBound::finite_strict(2),
                TimeBound::Infinite,
            ]
        );
    }

    #[test]
    fn time_bound_addition_ors_strictness() {
        assert_eq!(
            TimeBound::finite(2).add(TimeBound::finite(3)),
            TimeBound::finite(5)
        );
        assert_eq!(
            TimeBound::finite(2).add(TimeBound::finite_strict(3)),
            TimeBound::finite_strict(5)
        );
        assert_eq!(
            TimeBound::finite_strict(1).add(TimeBound::finite_strict(1)),
            TimeBound::finite_strict(2)
        );
        assert_eq!(TimeBound::finite(2).add(TimeBound::Infinite), TimeBound::Infinite);
        assert_eq!(TimeBound::finite(3).scale(4), TimeBound::finite(12));
        assert_eq!(TimeBound::finite_strict(3).scale(2), TimeBound::finite_strict(6));
    }

    #[test]
    fn max_constant_scans_guards_and_invariants() {
        let m = two_clock_model();
        assert_eq!(m.max_constant(), 4);
        assert_eq!(Gta::new("empty").max_constant(), 0);
    }
}
