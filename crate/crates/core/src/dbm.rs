//! Difference bound matrices (DBMs): the symbolic representation of clock
//! zones.
//!
//! A zone over clocks `x_1 … x_n` is a conjunction of constraints
//! `x_i − x_j ≺ c` with `≺ ∈ {<, ≤}`. Adding the constant-zero reference
//! clock `x_0`, every such zone is a square matrix of [`Bound`]s where entry
//! `(i, j)` bounds `x_i − x_j`. The encoding, the shortest-path closure and
//! the zone operations follow the classical presentation of Bengtsson & Yi
//! (*Timed Automata: Semantics, Algorithms and Tools*, 2004).
//!
//! Operations that inspect individual entries ([`Dbm::includes`],
//! [`Dbm::lower_bound`], …) require the matrix to be in *canonical form*,
//! i.e. closed under shortest paths; [`Dbm::canonicalize`] establishes it
//! and doubles as the emptiness check. Emptiness is a result, not an error:
//! fallible operations return `Option` and `None` means the empty zone.

use std::fmt;

use crate::model::{AtomicConstraint, ClockConstraint, ClockId, Relation, TimeBound};

/// An upper bound on a clock difference: `< c`, `≤ c`, or unbounded.
///
/// Encoded in a single integer as `2c + 1` for `≤ c` and `2c` for `< c`, so
/// that the natural integer order is exactly the tightness order (`< c` is
/// tighter than `≤ c`, both tighter than any bound on a larger constant).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bound(i64);

impl Bound {
    /// The absent bound `< ∞`.
    pub const INFINITY: Bound = Bound(i64::MAX);

    /// `≤ c`
    pub fn le(c: i64) -> Bound {
        Bound((c << 1) | 1)
    }

    /// `< c`
    pub fn lt(c: i64) -> Bound {
        Bound(c << 1)
    }

    pub fn is_infinite(self) -> bool {
        self == Bound::INFINITY
    }

    /// The constant, meaningless for [`Bound::INFINITY`].
    pub fn constant(self) -> i64 {
        self.0 >> 1
    }

    pub fn is_strict(self) -> bool {
        self.0 & 1 == 0
    }

    /// Bound on a sum: constants add, and the result is weak (`≤`) only if
    /// both operands are. Deliberately not [`std::ops::Add`]: it saturates
    /// at infinity rather than obeying the usual arithmetic laws.
    #[allow(clippy::should_implement_trait)]
    pub fn add(self, other: Bound) -> Bound {
        if self.is_infinite() || other.is_infinite() {
            Bound::INFINITY
        } else {
            Bound(self.0 + other.0 - ((self.0 | other.0) & 1))
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            f.write_str("<inf")
        } else if self.is_strict() {
            write!(f, "<{}", self.constant())
        } else {
            write!(f, "<={}", self.constant())
        }
    }
}

/// A difference bound matrix over `dim` clocks *including* the reference
/// clock `x_0`, stored row-major: entry `(i, j)` bounds `x_i − x_j`.
///
/// Clock `ClockId(k)` of a model corresponds to matrix index `k + 1`.
#[derive(Debug, Clone)]
pub struct Dbm {
    dim: usize,
    entries: Vec<Bound>,
    canonical: bool,
}

impl PartialEq for Dbm {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.entries == other.entries
    }
}

impl Eq for Dbm {}

impl std::hash::Hash for Dbm {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.dim.hash(state);
        self.entries.hash(state);
    }
}

/// Matrix index of a model clock.
fn idx(c: ClockId) -> usize {
    c.0 + 1
}

impl Dbm {
    /// The zone where every clock equals zero. Canonical.
    pub fn zero(dim: usize) -> Dbm {
        assert!(dim >= 1, "a DBM needs at least the reference clock");
        Dbm {
            dim,
            entries: vec![Bound::le(0); dim * dim],
            canonical: true,
        }
    }

    /// The zone constraining every clock to be non-negative and nothing
    /// else. Canonical.
    pub fn nonnegative(dim: usize) -> Dbm {
        assert!(dim >= 1, "a DBM needs at least the reference clock");
        let mut z = Dbm {
            dim,
            entries: vec![Bound::INFINITY; dim * dim],
            canonical: true,
        };
        for i in 0..dim {
            z.set(i, i, Bound::le(0));
            z.set(0, i, Bound::le(0));
        }
        z
    }

    /// Build a matrix from raw entries (row-major, `dim * dim` of them).
    /// The result is not assumed canonical; pass it through
    /// [`canonicalize`](Self::canonicalize) before using entry-inspecting
    /// operations.
    pub fn from_entries(dim: usize, entries: Vec<Bound>) -> Dbm {
        assert_eq!(entries.len(), dim * dim, "entry count must be dim²");
        Dbm {
            dim,
            entries,
            canonical: false,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, i: usize, j: usize) -> Bound {
        self.entries[i * self.dim + j]
    }

    fn set(&mut self, i: usize, j: usize, b: Bound) {
        self.entries[i * self.dim + j] = b;
    }

    /// Tighten entry `(i, j)` to at most `b`, clearing the canonical flag if
    /// anything changed.
    fn tighten(&mut self, i: usize, j: usize, b: Bound) {
        if b < self.entry(i, j) {
            self.set(i, j, b);
            self.canonical = false;
        }
    }

    /// Shortest-path closure (Floyd–Warshall, `O(dim³)`). Returns the
    /// canonical form of the zone, or `None` if it is empty (some cycle of
    /// constraints sums to a negative bound).
    pub fn canonicalize(mut self) -> Option<Dbm> {
        if self.canonical {
            return Some(self);
        }
        for k in 0..self.dim {
            for i in 0..self.dim {
                let ik = self.entry(i, k);
                if ik.is_infinite() {
                    continue;
                }
                for j in 0..self.dim {
                    let through_k = ik.add(self.entry(k, j));
                    if through_k < self.entry(i, j) {
                        self.set(i, j, through_k);
                    }
                }
            }
            // A diagonal entry below `≤ 0` witnesses a negative cycle.
            if self.entry(k, k) < Bound::le(0) {
                return None;
            }
        }
        for i in 0..self.dim {
            if self.entry(i, i) < Bound::le(0) {
                return None;
            }
        }
        self.canonical = true;
        Some(self)
    }

    /// Delay closure: remove every upper bound on individual clocks,
    /// letting time elapse. Preserves canonical form.
    pub fn up(&self) -> Dbm {
        debug_assert!(self.canonical, "up requires a canonical DBM");
        let mut z = self.clone();
        for i in 1..z.dim {
            z.set(i, 0, Bound::INFINITY);
        }
        z
    }

    /// Intersect with a clock constraint and re-canonicalize. `None` if the
    /// intersection is empty.
    pub fn constrain(&self, constraint: &ClockConstraint) -> Option<Dbm> {
        let mut z = self.clone();
        for atom in &constraint.atoms {
            z.apply_atom(atom);
        }
        z.canonicalize()
    }

    fn apply_atom(&mut self, atom: &AtomicConstraint) {
        let (i, j, rel, c) = match *atom {
            AtomicConstraint::Clock {
                clock,
                rel,
                constant,
            } => (idx(clock), 0, rel, constant as i64),
            AtomicConstraint::Diff {
                left,
                right,
                rel,
                constant,
            } => (idx(left), idx(right), rel, constant as i64),
        };
        match rel {
            Relation::Lt => self.tighten(i, j, Bound::lt(c)),
            Relation::Le => self.tighten(i, j, Bound::le(c)),
            Relation::Eq => {
                self.tighten(i, j, Bound::le(c));
                self.tighten(j, i, Bound::le(-c));
            }
            Relation::Ge => self.tighten(j, i, Bound::le(-c)),
            Relation::Gt => self.tighten(j, i, Bound::lt(-c)),
        }
    }

    /// Add the lower bound `clock ≥ b` (or `> b` for a strict bound) and
    /// re-canonicalize. `None` if the zone becomes empty. The bound must be
    /// finite.
    pub fn constrain_lower(&self, clock: ClockId, bound: TimeBound) -> Option<Dbm> {
        let mut z = self.clone();
        match bound {
            TimeBound::Finite { value, strict } => {
                let b = if strict {
                    Bound::lt(-(value as i64))
                } else {
                    Bound::le(-(value as i64))
                };
                z.tighten(0, idx(clock), b);
            }
            TimeBound::Infinite => panic!("cannot constrain a clock above every finite value"),
        }
        z.canonicalize()
    }

    /// Add the upper bound `clock ≤ value` and re-canonicalize. `None` if
    /// the zone becomes empty.
    pub fn constrain_upper(&self, clock: ClockId, value: u64) -> Option<Dbm> {
        let mut z = self.clone();
        z.tighten(idx(clock), 0, Bound::le(value as i64));
        z.canonicalize()
    }

    /// Reset the given clocks to zero. Preserves canonical form.
    pub fn reset(&self, resets: &[ClockId]) -> Dbm {
        debug_assert!(self.canonical, "reset requires a canonical DBM");
        let mut z = self.clone();
        for &r in resets {
            let k = idx(r);
            for j in 0..z.dim {
                z.set(k, j, z.entry(0, j));
                z.set(j, k, z.entry(j, 0));
            }
            z.set(k, k, Bound::le(0));
        }
        z
    }

    /// Does this zone contain `other`? Entrywise comparison of canonical
    /// forms.
    pub fn includes(&self, other: &Dbm) -> bool {
        debug_assert!(
            self.canonical && other.canonical,
            "inclusion requires canonical DBMs"
        );
        debug_assert_eq!(self.dim, other.dim);
        self.entries
            .iter()
            .zip(other.entries.iter())
            .all(|(a, b)| b <= a)
    }

    /// The least value of `clock` in the zone, as a reach-time bound:
    /// strict when the infimum is not attained. Values below zero (possible
    /// only for raw matrices that do not constrain clocks to be
    /// non-negative) clamp to zero.
    pub fn lower_bound(&self, clock: ClockId) -> TimeBound {
        debug_assert!(self.canonical, "lower_bound requires a canonical DBM");
        let e = self.entry(0, idx(clock));
        if e.is_infinite() {
            return TimeBound::ZERO;
        }
        let value = -e.constant();
        if value <= 0 {
            TimeBound::ZERO
        } else {
            TimeBound::Finite {
                value: value as u64,
                strict: e.is_strict(),
            }
        }
    }

    /// The raw upper-bound entry of `clock` against the reference clock.
    pub fn upper_bound(&self, clock: ClockId) -> Bound {
        debug_assert!(self.canonical, "upper_bound requires a canonical DBM");
        self.entry(idx(clock), 0)
    }

    /// Classical maximum-constant extrapolation: bounds above `k` become
    /// infinite, lower bounds below `−k` saturate at `< −k`. Enlarges the
    /// zone, so the result of a non-empty input is never empty.
    pub fn extrapolate(&self, k: u64) -> Dbm {
        debug_assert!(self.canonical, "extrapolate requires a canonical DBM");
        let k = k as i64;
        let mut z = self.clone();
        let mut changed = false;
        for i in 0..z.dim {
            for j in 0..z.dim {
                if i == j {
                    continue;
                }
                let e = z.entry(i, j);
                if !e.is_infinite() && e > Bound::le(k) {
                    z.set(i, j, Bound::INFINITY);
                    changed = true;
                } else if e < Bound::lt(-k) {
                    z.set(i, j, Bound::lt(-k));
                    changed = true;
                }
            }
        }
        if !changed {
            return z;
        }
        z.canonical = false;
        z.canonicalize()
            .expect("extrapolation enlarges the zone and cannot empty it")
    }

    /// Render the zone as a conjunction of atomic constraints in stable
    /// row-major entry order, using the given clock names (index `k` of
    /// `clock_names` is matrix index `k + 1`).
    pub fn render(&self, clock_names: &[String]) -> String {
        debug_assert_eq!(clock_names.len() + 1, self.dim);
        let mut parts = Vec::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                if i == j {
                    continue;
                }
                let e = self.entry(i, j);
                if e.is_infinite() {
                    continue;
                }
                let (op_upper, op_lower) = if e.is_strict() { ("<", ">") } else { ("<=", ">=") };
                let c = e.constant();
                let part = if j == 0 {
                    format!("{} {} {}", clock_names[i - 1], op_upper, c)
                } else if i == 0 {
                    format!("{} {} {}", clock_names[j - 1], op_lower, -c)
                } else {
                    format!(
                        "{} - {} {} {}",
                        clock_names[i - 1],
                        clock_names[j - 1],
                        op_upper,
                        c
                    )
                };
                parts.push(part);
            }
        }
        if parts.is_empty() {
            "true".to_owned()
        } else {
            parts.join(" && ")
        }
    }
}
