//! Brute-force baseline: explicit symbolic exploration of the finite
//! product `A^n` with true disjunctive-guard semantics.
//!
//! Unlike the unbounded-network analysis, the product interprets a
//! location guard `γ` literally: process `i` may take a `γ`-guarded
//! transition only if some *other* process occupies `γ` at that discrete
//! instant (delays never change occupancy). This makes the oracle an
//! independent cross-check for the network minimum-time results — it
//! shares none of their guard-release reasoning, only the DBM layer.
//!
//! Exploration is bounded by `t ≤ UB`, which is harmless for every
//! cross-validation use: network minimum times are below `UB` by
//! construction, and the monotonicity checks only compare values within
//! the same bound.

use std::collections::{BTreeSet, BinaryHeap, HashMap};

use thiserror::Error;

use crate::dbm::{Bound, Dbm};
use crate::minreach::{self, MinReachMap};
use crate::model::{
    AtomicConstraint, ClockConstraint, ClockId, Gta, LocGuard, LocationId, TimeBound,
};
use crate::zone_graph::QueueEntry;

/// Default ceiling for the product size; the state space is exponential
/// in `n` and the oracle is meant for desk-scale cross-checks.
pub const DEFAULT_LIMIT: usize = 4;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("product oracle supports at most {limit} processes, requested {n}")]
    LimitExceeded { n: usize, limit: usize },
    #[error("horizon analysis needs a finite time budget")]
    UnboundedHorizon,
}

#[derive(Debug, Error)]
#[error("step {step} violates single-process semantics: {reason}")]
pub struct InvalidTrace {
    pub step: usize,
    pub reason: String,
}

/// Per-location minimum times in the `n`-process product.
#[derive(Debug, Clone)]
pub struct OracleResult {
    pub model: String,
    pub n: usize,
    pub ub: TimeBound,
    /// Indexed by location; [`TimeBound::Infinite`] when no process
    /// reaches it within the horizon.
    pub bounds: Vec<TimeBound>,
    /// Reachable location vectors, sorted per state (occupancy multisets).
    pub vectors: BTreeSet<Vec<LocationId>>,
}

impl OracleResult {
    pub fn bound(&self, q: LocationId) -> TimeBound {
        self.bounds[q.0]
    }
}

/// Clock layout and successor machinery of the product.
struct Product<'a> {
    model: &'a Gta,
    n: usize,
    dim: usize,
}

impl<'a> Product<'a> {
    fn new(model: &'a Gta, n: usize) -> Self {
        Product {
            model,
            n,
            dim: 2 + n * model.clocks.len(),
        }
    }

    /// DBM clock id of process `p`'s copy of model clock `c` (the shared
    /// global-time clock sits at matrix index 1).
    fn clock(&self, p: usize, c: ClockId) -> ClockId {
        ClockId(1 + p * self.model.clocks.len() + c.0)
    }

    fn t(&self) -> ClockId {
        ClockId(0)
    }

    fn remap(&self, p: usize, atom: &AtomicConstraint) -> AtomicConstraint {
        match *atom {
            AtomicConstraint::Clock { clock, rel, constant } => AtomicConstraint::Clock {
                clock: self.clock(p, clock),
                rel,
                constant,
            },
            AtomicConstraint::Diff { left, right, rel, constant } => AtomicConstraint::Diff {
                left: self.clock(p, left),
                right: self.clock(p, right),
                rel,
                constant,
            },
        }
    }

    fn invariant_of(&self, locs: &[LocationId]) -> ClockConstraint {
        let mut cc = ClockConstraint::top();
        for (p, &q) in locs.iter().enumerate() {
            for atom in &self.model.invariant(q).atoms {
                cc.and(self.remap(p, atom));
            }
        }
        cc
    }

    fn initial(&self) -> (Vec<LocationId>, Option<Dbm>) {
        let locs = vec![self.model.initial; self.n];
        let zone = Dbm::zero(self.dim)
            .up()
            .constrain(&self.invariant_of(&locs));
        (locs, zone)
    }

    /// Whether process `p` may take a transition guarded by `γ` in this
    /// occupancy vector: some other process must sit in `γ` right now.
    fn guard_open(&self, locs: &[LocationId], p: usize, locguard: LocGuard) -> bool {
        match locguard {
            LocGuard::Trivial => true,
            LocGuard::Loc(g) => locs
                .iter()
                .enumerate()
                .any(|(j, &q)| j != p && q == g),
        }
    }

    /// Discrete step of process `p` through transition `ix`, followed by
    /// a delay closed under every process's invariant; `None` if empty.
    /// `delay` can be disabled to freeze time at the discrete instant.
    fn step(
        &self,
        locs: &[LocationId],
        zone: &Dbm,
        p: usize,
        ix: usize,
        delay: bool,
    ) -> Option<(Vec<LocationId>, Dbm)> {
        let tr = &self.model.transitions[ix];
        if tr.source != locs[p] || !self.guard_open(locs, p, tr.locguard) {
            return None;
        }
        let mut guard = ClockConstraint::top();
        for atom in &tr.guard.atoms {
            guard.and(self.remap(p, atom));
        }
        let resets: Vec<ClockId> = tr.resets.iter().map(|&c| self.clock(p, c)).collect();
        let mut next = locs.to_vec();
        next[p] = tr.target;
        let inv = self.invariant_of(&next);
        let mut z = zone
            .constrain(&guard)?
            .reset(&resets)
            .constrain(&inv)?;
        if delay {
            z = z.up().constrain(&inv)?;
        }
        Some((next, z))
    }
}

fn cap_zone(z: Dbm, t: ClockId, horizon: TimeBound) -> Option<Dbm> {
    match horizon {
        TimeBound::Finite { value, .. } => z.constrain_upper(t, value),
        TimeBound::Infinite => Some(z),
    }
}

pub fn product_minreach(model: &Gta, n: usize) -> Result<OracleResult, OracleError> {
    product_minreach_limited(model, n, DEFAULT_LIMIT)
}

/// As [`product_minreach`] with an explicit process ceiling.
pub fn product_minreach_limited(
    model: &Gta,
    n: usize,
    limit: usize,
) -> Result<OracleResult, OracleError> {
    if n == 0 || n > limit {
        return Err(OracleError::LimitExceeded { n, limit });
    }
    let ub = minreach::upper_bound(model).map_err(|_| OracleError::UnboundedHorizon)?;
    let prod = Product::new(model, n);
    let t = prod.t();

    let mut bounds = vec![TimeBound::Infinite; model.locations.len()];
    let mut vectors: BTreeSet<Vec<LocationId>> = BTreeSet::new();
    let mut popped: HashMap<Vec<LocationId>, Vec<Dbm>> = HashMap::new();
    let mut queue: BinaryHeap<QueueEntry<(Vec<LocationId>, Dbm)>> = BinaryHeap::new();
    let mut seq = 0u64;

    let (locs, zone) = prod.initial();
    if let Some(zone) = zone.and_then(|z| cap_zone(z, t, ub)) {
        queue.push(QueueEntry {
            priority: zone.lower_bound(t),
            seq,
            payload: (locs, zone),
        });
    }

    while let Some(entry) = queue.pop() {
        let (locs, zone) = entry.payload;
        let stored = popped.entry(locs.clone()).or_default();
        if stored.iter().any(|z| z.includes(&zone)) {
            continue;
        }
        stored.push(zone.clone());

        let mut sorted = locs.clone();
        sorted.sort_unstable();
        vectors.insert(sorted);
        for &q in &locs {
            if bounds[q.0] == TimeBound::Infinite {
                bounds[q.0] = entry.priority;
            }
        }

        for p in 0..n {
            for (ix, _) in model.outgoing(locs[p]) {
                let Some((next, z)) = prod.step(&locs, &zone, p, ix, true) else {
                    continue;
                };
                let Some(z) = cap_zone(z, t, ub) else { continue };
                if popped
                    .get(&next)
                    .is_some_and(|zs| zs.iter().any(|s| s.includes(&z)))
                {
                    continue;
                }
                seq += 1;
                queue.push(QueueEntry {
                    priority: z.lower_bound(t),
                    seq,
                    payload: (next, z),
                });
            }
        }
    }

    Ok(OracleResult {
        model: model.name.clone(),
        n,
        ub,
        bounds,
        vectors,
    })
}

/// One step of a concrete single-process run: wait `delay`, then fire
/// `transition`.
#[derive(Debug, Clone, Copy)]
pub struct TraceStep {
    pub delay: u64,
    pub transition: usize,
}

/// Whether a concrete run of the *unguarded* automaton is realizable in
/// some network: every location-guarded step must fire no earlier than
/// the guard location's network minimum time (strictly later for strict
/// minima). Returns an error if the run is not even a valid unguarded
/// execution.
pub fn realizable_run_check(
    model: &Gta,
    minreach: &MinReachMap,
    run: &[TraceStep],
) -> Result<bool, InvalidTrace> {
    let mut here = model.initial;
    let mut clocks = vec![0u64; model.clocks.len()];
    let mut now = 0u64;
    let mut realizable = true;

    for (step, s) in run.iter().enumerate() {
        let fail = |reason: String| InvalidTrace { step, reason };
        let holds = |cc: &ClockConstraint, clocks: &[u64]| {
            cc.atoms.iter().all(|atom| match *atom {
                AtomicConstraint::Clock { clock, rel, constant } => {
                    rel.holds(clocks[clock.0] as i64, constant as i64)
                }
                AtomicConstraint::Diff { left, right, rel, constant } => rel.holds(
                    clocks[left.0] as i64 - clocks[right.0] as i64,
                    constant as i64,
                ),
            })
        };

        if !holds(model.invariant(here), &clocks) {
            return Err(fail(format!(
                "invariant of {} does not hold before the wait",
                model.location_name(here)
            )));
        }
        for c in clocks.iter_mut() {
            *c += s.delay;
        }
        now += s.delay;
        if !holds(model.invariant(here), &clocks) {
            return Err(fail(format!(
                "waiting {} units leaves the invariant of {}",
                s.delay,
                model.location_name(here)
            )));
        }

        let tr = model
            .transitions
            .get(s.transition)
            .ok_or_else(|| fail(format!("no transition #{}", s.transition)))?;
        if tr.source != here {
            return Err(fail(format!(
                "transition #{} does not leave {}",
                s.transition,
                model.location_name(here)
            )));
        }
        if !holds(&tr.guard, &clocks) {
            return Err(fail(format!("guard of transition #{} is false", s.transition)));
        }
        if let LocGuard::Loc(g) = tr.locguard {
            realizable &= match minreach.bound(g) {
                TimeBound::Finite { value, strict: false } => now >= value,
                TimeBound::Finite { value, strict: true } => now > value,
                TimeBound::Infinite => false,
            };
        }
        for &c in &tr.resets {
            clocks[c.0] = 0;
        }
        if !holds(model.invariant(tr.target), &clocks) {
            return Err(fail(format!(
                "invariant of {} rejects the entry values",
                model.location_name(tr.target)
            )));
        }
        here = tr.target;
    }
    Ok(realizable)
}

/// Outcome of the finite-horizon occupancy check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FloodingVerdict {
    /// Some product run keeps the location occupied from its minimal
    /// reach time up to the horizon.
    Covered,
    /// The location is reached, but every run leaves it unoccupied at
    /// some point before the horizon.
    Uncovered,
    /// No process reaches the location at all in this product.
    NotReached,
}

/// Search `A^n` for a run that enters `q0` at its minimal time and keeps
/// it occupied up to `horizon` (a finite proxy for "forever": flooding
/// schedules are periodic, so a violation shows up within a few loop
/// lengths).
///
/// While `q0` is unoccupied, time must not pass — leaving and re-entering
/// within the same instant is allowed, a positive gap is not. This is
/// implemented by freezing delay closure in unoccupied states.
pub fn flooding_horizon_check(
    model: &Gta,
    q0: LocationId,
    n: usize,
    horizon: TimeBound,
) -> Result<FloodingVerdict, OracleError> {
    if n == 0 || n > DEFAULT_LIMIT {
        return Err(OracleError::LimitExceeded {
            n,
            limit: DEFAULT_LIMIT,
        });
    }
    let TimeBound::Finite { value: h, .. } = horizon else {
        return Err(OracleError::UnboundedHorizon);
    };
    let entry_bound = product_minreach_limited(model, n, n)?.bounds[q0.0];
    let TimeBound::Finite { value: entry, strict } = entry_bound else {
        return Ok(FloodingVerdict::NotReached);
    };
    if strict {
        // The minimum is an infimum: any concrete run enters strictly
        // after it, leaving the infimum instant itself uncovered.
        return Ok(FloodingVerdict::Uncovered);
    }

    let prod = Product::new(model, n);
    let t = prod.t();
    let occupied = |locs: &[LocationId]| locs.contains(&q0);

    // Keyed by (locations, occupied-since-entry phase flag).
    let mut seen: HashMap<(Vec<LocationId>, bool), Vec<Dbm>> = HashMap::new();
    let mut work: Vec<(Vec<LocationId>, Dbm, bool)> = Vec::new();
    let push = |seen: &mut HashMap<(Vec<LocationId>, bool), Vec<Dbm>>,
                    work: &mut Vec<(Vec<LocationId>, Dbm, bool)>,
                    locs: Vec<LocationId>,
                    zone: Dbm,
                    started: bool| {
        let stored = seen.entry((locs.clone(), started)).or_default();
        if stored.iter().any(|z| z.includes(&zone)) {
            return;
        }
        stored.push(zone.clone());
        work.push((locs, zone, started));
    };

    let (locs, zone) = prod.initial();
    if let Some(zone) = zone.and_then(|z| cap_zone(z, t, horizon)) {
        push(&mut seen, &mut work, locs, zone, false);
    }

    while let Some((locs, zone, started)) = work.pop() {
        if started && occupied(&locs) && zone.upper_bound(t) == Bound::le(h as i64) {
            return Ok(FloodingVerdict::Covered);
        }
        for p in 0..n {
            for (ix, _) in model.outgoing(locs[p]) {
                // In the covering phase, time may flow only while q0 is
                // occupied.
                let Some((next, z)) = prod.step(&locs, &zone, p, ix, true) else {
                    continue;
                };
                let next_started = started || occupied(&next);
                let gate = |z: Dbm| -> Option<Dbm> {
                    if !started && occupied(&next) {
                        // First entry must happen at the minimal time.
                        z.constrain_upper(t, entry)
                    } else {
                        Some(z)
                    }
                };
                if started && !occupied(&next) {
                    // Frozen variant: same discrete step, no delay.
                    if let Some((next_f, z_f)) = prod.step(&locs, &zone, p, ix, false) {
                        if let Some(z_f) = cap_zone(z_f, t, horizon) {
                            push(&mut seen, &mut work, next_f, z_f, true);
                        }
                    }
                    continue;
                }
                if let Some(z) = gate(z).and_then(|z| cap_zone(z, t, horizon)) {
                    push(&mut seen, &mut work, next, z, next_started);
                }
            }
        }
    }
    Ok(FloodingVerdict::Uncovered)
}
