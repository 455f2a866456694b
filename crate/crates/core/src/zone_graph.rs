//! Zone-graph semantics of a timed automaton: symbolic successors,
//! reachable locations, and minimum reach times for the *unguarded*
//! automaton (location guards ignored).
//!
//! Minimum times are computed on the model augmented with the never-reset
//! global-time clock `t`: the least value of `t` in a zone is the earliest
//! instant the zone can be entered, so a uniform-cost search ordered by
//! that value pops every location for the first time at exactly its
//! minimum reach time. The search carries no extrapolation (it would
//! destroy exact times); it terminates because it stops as soon as every
//! location known to be reachable has been popped once, and the set of
//! reachable locations is computed beforehand by a classical
//! extrapolated-zone search.

use std::collections::{BTreeSet, BinaryHeap, HashMap};

use serde::Serialize;

use crate::dbm::Dbm;
use crate::model::{ClockId, Gta, LocationId, TimeBound};

/// A node of the zone graph: a location paired with a canonical,
/// non-empty zone over the model's clocks (matrix index `k + 1` is clock
/// `k`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZgNode {
    pub location: LocationId,
    pub zone: Dbm,
}

/// One popped search node, for diagnostic traces.
#[derive(Debug, Clone, Serialize)]
pub struct PopRecord {
    pub location: String,
    pub zone: String,
    pub t: TimeBound,
}

/// The initial node `(q̂, {0}↑ ∩ Inv(q̂))`. The model must be valid, which
/// guarantees the zone is non-empty.
pub fn initial_node(model: &Gta) -> ZgNode {
    let dim = model.clocks.len() + 1;
    let zone = Dbm::zero(dim)
        .up()
        .constrain(model.invariant(model.initial))
        .expect("a valid model admits its initial invariant at time zero");
    ZgNode {
        location: model.initial,
        zone,
    }
}

/// Symbolic successors of a node, one per transition of the model whose
/// guard intersects the zone:
/// `z' = up(reset(z ∧ g, r) ∩ Inv(q')) ∩ Inv(q')`.
///
/// Location guards are *not* interpreted here; callers implementing guarded
/// semantics filter the result. Each successor is returned with the index
/// of its transition in [`Gta::transitions`].
pub fn successors(model: &Gta, node: &ZgNode) -> Vec<(usize, ZgNode)> {
    let mut out = Vec::new();
    for (ix, tr) in model.outgoing(node.location) {
        let inv = model.invariant(tr.target);
        let zone = node
            .zone
            .constrain(&tr.guard)
            .map(|z| z.reset(&tr.resets))
            .and_then(|z| z.constrain(inv))
            .map(|z| z.up())
            .and_then(|z| z.constrain(inv));
        if let Some(zone) = zone {
            out.push((
                ix,
                ZgNode {
                    location: tr.target,
                    zone,
                },
            ));
        }
    }
    out
}

/// Locations reachable in the unguarded automaton `⌊A⌋`, by a classical
/// zone-graph search with maximum-constant extrapolation (which keeps the
/// graph finite even when zones would otherwise drift apart without bound).
pub fn reach_locations_unguarded(model: &Gta) -> BTreeSet<LocationId> {
    let k = model.max_constant();
    let mut seen: HashMap<LocationId, Vec<Dbm>> = HashMap::new();
    let start = initial_node(model);
    let start_zone = start.zone.extrapolate(k);
    seen.insert(start.location, vec![start_zone.clone()]);
    let mut work = vec![ZgNode {
        location: start.location,
        zone: start_zone,
    }];
    let mut reached: BTreeSet<LocationId> = BTreeSet::new();
    reached.insert(start.location);
    while let Some(node) = work.pop() {
        for (_, succ) in successors(model, &node) {
            let zone = succ.zone.extrapolate(k);
            let stored = seen.entry(succ.location).or_default();
            if stored.iter().any(|z| z.includes(&zone)) {
                continue;
            }
            stored.push(zone.clone());
            reached.insert(succ.location);
            work.push(ZgNode {
                location: succ.location,
                zone,
            });
        }
    }
    reached
}

/// Per-location minimum reach times in the unguarded automaton.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnguardedMinReach {
    /// Indexed by location; [`TimeBound::Infinite`] for unreachable ones.
    pub bounds: Vec<TimeBound>,
}

impl UnguardedMinReach {
    pub fn bound(&self, q: LocationId) -> TimeBound {
        self.bounds[q.0]
    }

    pub fn reachable(&self, q: LocationId) -> bool {
        self.bounds[q.0].is_finite()
    }

    /// The largest finite minimum reach time across locations (the "every
    /// reachable location can be reached by then" horizon ingredient).
    pub fn max_finite(&self) -> TimeBound {
        self.bounds
            .iter()
            .copied()
            .filter(|b| b.is_finite())
            .max()
            .unwrap_or(TimeBound::Infinite)
    }
}

/// Priority-queue entry: least `t` lower bound first, FIFO among equals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct QueueEntry<T> {
    pub priority: TimeBound,
    pub seq: u64,
    pub payload: T,
}

impl<T: Eq> Ord for QueueEntry<T> {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // Reversed: BinaryHeap is a max-heap, we want the least element.
        other
            .priority
            .cmp(&self.priority)
            .then_with(|| other.seq.cmp(&self.seq))
    }
}

impl<T: Eq> PartialOrd for QueueEntry<T> {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Minimum reach time of every location of the unguarded automaton
/// `⌊A⌋`, ignoring location guards entirely.
pub fn minreach_unguarded(model: &Gta) -> UnguardedMinReach {
    minreach_unguarded_traced(model, None)
}

/// As [`minreach_unguarded`], optionally recording every popped node.
///
/// Termination needs care here. With the global-time clock in play,
/// classic maximal-constant extrapolation is unavailable — it would
/// erase exactly the quantity being computed — and a reset loop under an
/// invariant can spin off infinitely many zones whose `t` lower bound
/// never advances (each lap widens the reachable band of `t − x`), so a
/// plain best-first search can starve every location queued behind them.
/// The search therefore runs under a cap `t ≤ H`, which makes the space
/// of canonical matrices finite, and doubles `H` until every location
/// known to be reachable has been popped. Since `t` never decreases
/// along a run, a run arriving at time `d ≤ H` lies entirely inside the
/// capped graph: the cap cannot change any discovered minimum, it can
/// only hide locations whose earliest arrival lies beyond `H`, and each
/// of those is exposed after finitely many doublings.
pub fn minreach_unguarded_traced(
    model: &Gta,
    mut trace: Option<&mut Vec<PopRecord>>,
) -> UnguardedMinReach {
    let reachable = reach_locations_unguarded(model);
    let aug;
    let aug = if model.is_time_augmented() {
        model
    } else {
        aug = model
            .augment_with_t()
            .expect("model without `t` can be augmented");
        &aug
    };

    let mut horizon = (2 * model.max_constant()).max(1);
    loop {
        if let Some(trace) = trace.as_deref_mut() {
            trace.clear();
        }
        if let Some(bounds) = capped_search(aug, &reachable, horizon, trace.as_deref_mut()) {
            return UnguardedMinReach { bounds };
        }
        horizon *= 2;
    }
}

/// One bounded round of the search; `None` if some reachable location
/// was not popped within `t ≤ horizon`.
fn capped_search(
    aug: &Gta,
    reachable: &BTreeSet<LocationId>,
    horizon: u64,
    mut trace: Option<&mut Vec<PopRecord>>,
) -> Option<Vec<TimeBound>> {
    let t = ClockId(0);
    let mut bounds = vec![TimeBound::Infinite; aug.locations.len()];
    let mut outstanding = reachable.len();
    let mut popped: HashMap<LocationId, Vec<Dbm>> = HashMap::new();
    let mut queue: BinaryHeap<QueueEntry<ZgNode>> = BinaryHeap::new();
    let mut seq = 0u64;

    let start = initial_node(aug);
    if let Some(zone) = start.zone.constrain_upper(t, horizon) {
        queue.push(QueueEntry {
            priority: zone.lower_bound(t),
            seq,
            payload: ZgNode { zone, ..start },
        });
    }

    let mut last_priority = TimeBound::ZERO;
    while let Some(entry) = queue.pop() {
        debug_assert!(entry.priority >= last_priority, "pops must be monotone in t");
        last_priority = entry.priority;
        let node = entry.payload;
        let stored = popped.entry(node.location).or_default();
        if stored.iter().any(|z| z.includes(&node.zone)) {
            continue;
        }
        stored.push(node.zone.clone());
        if let Some(trace) = trace.as_deref_mut() {
            trace.push(PopRecord {
                location: aug.location_name(node.location).to_owned(),
                zone: node.zone.render(&aug.clocks),
                t: entry.priority,
            });
        }
        if bounds[node.location.0] == TimeBound::Infinite {
            bounds[node.location.0] = entry.priority;
            if reachable.contains(&node.location) {
                outstanding -= 1;
                if outstanding == 0 {
                    break;
                }
            }
        }
        for (_, succ) in successors(aug, &node) {
            let Some(zone) = succ.zone.constrain_upper(t, horizon) else {
                continue;
            };
            if popped
                .get(&succ.location)
                .is_some_and(|zones| zones.iter().any(|z| z.includes(&zone)))
            {
                continue;
            }
            seq += 1;
            queue.push(QueueEntry {
                priority: zone.lower_bound(t),
                seq,
                payload: ZgNode { zone, ..succ },
            });
        }
    }

    if outstanding == 0 {
        Some(bounds)
    } else {
        None
    }
}
