//! Minimum-time reachability for networks of arbitrarily many copies of a
//! guarded timed automaton.
//!
//! A location guard `γ` on a transition asks that *some other* process
//! occupy `γ`. With unboundedly many processes available, a helper can be
//! parked in `γ` from the earliest time `γ` is reachable onward (more
//! copies can always re-supply it), so the network minimum reach time
//! `δ∞min(q)` depends only on the minimum times of the guard locations
//! themselves. The search below exploits this: it explores the zone graph
//! of a *single* process, popping nodes in order of their least global
//! time `t`, and treats a guarded transition as enabled exactly when its
//! guard location has already been popped. Transitions seen before their
//! guard is available are parked in a disabled set and replayed — with
//! `t ≥ δ∞min(γ)` conjoined — the moment `γ` is popped for the first
//! time.
//!
//! All zones are intersected with `t ≤ UB`, where
//! `UB = δmax · (|guard locations| + 1)` and `δmax` is the largest
//! single-process minimum reach time: any location reachable at all is
//! reachable within that budget (each guard needs to be "unlocked" at
//! most once, and each unlock plus the final run costs at most `δmax`).
//! The cap makes the search terminate and makes infinite entries mean
//! genuinely unreachable in every network size.

use std::collections::{BinaryHeap, HashMap};

use thiserror::Error;

use crate::dbm::Dbm;
use crate::model::{ClockId, Gta, LocGuard, LocationId, TimeBound};
use crate::zone_graph::{self, PopRecord, QueueEntry, ZgNode};

#[derive(Debug, Error)]
pub enum MinReachError {
    /// No reachable location has a finite single-process minimum time, so
    /// no finite exploration horizon exists. Cannot occur for validated
    /// models (the initial location is always reachable at time 0); kept
    /// so callers never see a bogus horizon silently.
    #[error("model `{model}` admits no finite time horizon")]
    UnboundedHorizon { model: String },
}

#[derive(Debug, Error)]
#[error("location `{location}` is unreachable in every network size")]
pub struct Unreachable {
    pub location: String,
}

/// One step of a minimal-time witness path: the index of the transition
/// taken (into [`Gta::transitions`]) and the earliest global time at
/// which the step's target node can be entered.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessStep {
    pub transition: usize,
    pub at: TimeBound,
}

/// Network minimum reach times for every location, with witness paths.
#[derive(Debug, Clone)]
pub struct MinReachMap {
    pub model: String,
    pub locations: Vec<String>,
    /// Exploration horizon `UB`.
    pub ub: TimeBound,
    /// Indexed by location; [`TimeBound::Infinite`] means unreachable in
    /// every network size.
    pub bounds: Vec<TimeBound>,
    witnesses: Vec<Option<Vec<WitnessStep>>>,
}

impl MinReachMap {
    pub fn bound(&self, q: LocationId) -> TimeBound {
        self.bounds[q.0]
    }

    pub fn reachable(&self, q: LocationId) -> bool {
        self.bounds[q.0].is_finite()
    }
}

/// Exploration horizon `UB = δmax · (|guard locations| + 1)`.
pub fn upper_bound(model: &Gta) -> Result<TimeBound, MinReachError> {
    let delta_max = zone_graph::minreach_unguarded(model).max_finite();
    if !delta_max.is_finite() {
        return Err(MinReachError::UnboundedHorizon {
            model: model.name.clone(),
        });
    }
    Ok(delta_max.scale(model.guards_of().len() as u64 + 1))
}

#[derive(Debug, Clone, Copy)]
pub struct SolveOptions {
    /// Discard a popped node whose zone is included in a zone already
    /// popped at the same location *while the same set of guard locations
    /// was unlocked*. Sound because enabling only grows over time; the
    /// unlock-set tag keeps nodes that could exploit a newly unlocked
    /// guard. Disable to run the plain algorithm (which can diverge on
    /// zero-time reset cycles — test use only).
    pub subsumption: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { subsumption: true }
    }
}

/// Search node kept for witness reconstruction.
struct ArenaNode {
    node: ZgNode,
    parent: Option<(usize, usize)>, // (arena index, transition index)
}

/// A transition seen while its guard location was still locked, together
/// with the node it would have fired from.
struct DisabledEntry {
    transition: usize,
    arena: usize,
}

pub fn solve_minreach(model: &Gta) -> Result<MinReachMap, MinReachError> {
    solve_minreach_traced(model, SolveOptions::default(), None)
}

pub fn solve_minreach_traced(
    model: &Gta,
    opts: SolveOptions,
    mut trace: Option<&mut Vec<PopRecord>>,
) -> Result<MinReachMap, MinReachError> {
    let ub = upper_bound(model)?;
    let aug;
    let aug = if model.is_time_augmented() {
        model
    } else {
        aug = model
            .augment_with_t()
            .expect("model without `t` can be augmented");
        &aug
    };
    let t = ClockId(0);
    let cap = |z: Dbm| -> Option<Dbm> {
        match ub {
            TimeBound::Finite { value, .. } => z.constrain_upper(t, value),
            TimeBound::Infinite => Some(z),
        }
    };

    let n_locs = aug.locations.len();
    let mut visited = vec![false; n_locs];
    let mut bounds = vec![TimeBound::Infinite; n_locs];
    let mut first_pop = vec![None; n_locs];
    let mut unvisited = n_locs;
    let mut disabled: Vec<DisabledEntry> = Vec::new();
    let mut arena: Vec<ArenaNode> = Vec::new();
    let mut queue: BinaryHeap<QueueEntry<usize>> = BinaryHeap::new();
    let mut seq = 0u64;
    // Zones already popped per location, tagged with the number of guard
    // locations unlocked at pop time.
    let mut popped: HashMap<LocationId, Vec<(Dbm, usize)>> = HashMap::new();
    let mut unlocked_guards = 0usize;
    let guard_set = aug.guards_of();

    let mut push = |queue: &mut BinaryHeap<QueueEntry<usize>>,
                    arena: &mut Vec<ArenaNode>,
                    node: ZgNode,
                    parent: Option<(usize, usize)>| {
        let priority = node.zone.lower_bound(t);
        arena.push(ArenaNode { node, parent });
        seq += 1;
        queue.push(QueueEntry {
            priority,
            seq,
            payload: arena.len() - 1,
        });
    };

    let start = zone_graph::initial_node(aug);
    if let Some(zone) = cap(start.zone) {
        push(
            &mut queue,
            &mut arena,
            ZgNode {
                location: start.location,
                zone,
            },
            None,
        );
    }

    // Successor of `node` through transition `ix`. For location-guarded
    // transitions the source zone is first restricted to `t ≥ release`:
    // the discrete step cannot fire before the guard location is
    // occupied. Restricting the *source* (not the successor) matters —
    // the successor is delay-closed, so a late restriction would re-admit
    // runs that entered early and merely aged past the release time. For
    // transitions whose guard was already unlocked when the source was
    // popped the restriction is implied (pops are monotone in t).
    let guarded_successor = |node: &ZgNode, ix: usize, release: TimeBound| -> Option<ZgNode> {
        let tr = &aug.transitions[ix];
        let inv = aug.invariant(tr.target);
        let zone = node
            .zone
            .constrain_lower(t, release)?
            .constrain(&tr.guard)?
            .reset(&tr.resets)
            .constrain(inv)?
            .up()
            .constrain(inv)?;
        cap(zone).map(|zone| ZgNode {
            location: tr.target,
            zone,
        })
    };

    while let Some(entry) = queue.pop() {
        let here = arena[entry.payload].node.location;
        let zone = arena[entry.payload].node.zone.clone();

        if opts.subsumption
            && popped.get(&here).is_some_and(|stored| {
                stored
                    .iter()
                    .any(|(z, tag)| *tag == unlocked_guards && z.includes(&zone))
            })
        {
            continue;
        }
        if let Some(trace) = trace.as_deref_mut() {
            trace.push(PopRecord {
                location: aug.location_name(here).to_owned(),
                zone: zone.render(&aug.clocks),
                t: entry.priority,
            });
        }

        let mut replay: Vec<DisabledEntry> = Vec::new();
        if !visited[here.0] {
            visited[here.0] = true;
            unvisited -= 1;
            bounds[here.0] = entry.priority;
            first_pop[here.0] = Some(entry.payload);
            if guard_set.contains(&here) {
                unlocked_guards += 1;
                let (take, keep) = disabled
                    .drain(..)
                    .partition(|e| aug.transitions[e.transition].locguard == LocGuard::Loc(here));
                replay = take;
                disabled = keep;
            }
            if unvisited == 0 {
                break;
            }
        }
        if opts.subsumption {
            // Tagged after any unlock above: the node is expanded under
            // the post-unlock guard set.
            popped
                .entry(here)
                .or_default()
                .push((zone.clone(), unlocked_guards));
        }

        for entry in replay {
            let release = bounds[here.0];
            if let Some(node) =
                guarded_successor(&arena[entry.arena].node, entry.transition, release)
            {
                push(&mut queue, &mut arena, node, Some((entry.arena, entry.transition)));
            }
        }

        for (ix, tr) in aug.outgoing(here) {
            match tr.locguard {
                LocGuard::Loc(g) if !visited[g.0] => {
                    disabled.push(DisabledEntry {
                        transition: ix,
                        arena: entry.payload,
                    });
                }
                LocGuard::Loc(g) => {
                    let release = bounds[g.0];
                    if let Some(node) =
                        guarded_successor(&arena[entry.payload].node, ix, release)
                    {
                        push(&mut queue, &mut arena, node, Some((entry.payload, ix)));
                    }
                }
                LocGuard::Trivial => {
                    if let Some(node) =
                        guarded_successor(&arena[entry.payload].node, ix, TimeBound::ZERO)
                    {
                        push(&mut queue, &mut arena, node, Some((entry.payload, ix)));
                    }
                }
            }
        }
    }

    let witnesses = first_pop
        .iter()
        .map(|fp| {
            fp.map(|mut ix| {
                let mut steps = Vec::new();
                while let Some((parent, transition)) = arena[ix].parent {
                    steps.push(WitnessStep {
                        transition,
                        at: arena[ix].node.zone.lower_bound(t),
                    });
                    ix = parent;
                }
                steps.reverse();
                steps
            })
        })
        .collect();

    Ok(MinReachMap {
        model: model.name.clone(),
        locations: model.locations.clone(),
        ub,
        bounds,
        witnesses,
    })
}

/// The minimal-time symbolic path recorded for `q`, as transition indices
/// with the earliest entry time of each step. Empty for the initial
/// location.
pub fn explain_minreach(
    map: &MinReachMap,
    q: LocationId,
) -> Result<&[WitnessStep], Unreachable> {
    map.witnesses[q.0].as_deref().ok_or_else(|| Unreachable {
        location: map.locations[q.0].clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_gta;
    use crate::zone_graph::minreach_unguarded;

    const RELAY: &str = "\
gta relay
clocks x
location q_init initial
location q0 invariant: x <= 4
location q1
location q2
location q3
edge q_init -> q0 guard: x = 2
edge q0 -> q_init reset: x locguard: q0
edge q0 -> q1 guard: x = 4
edge q_init -> q2 reset: x locguard: q1
edge q2 -> q3 guard: x >= 2
";

    fn relay() -> Gta {
        parse_gta(RELAY).unwrap()
    }

    #[test]
    fn relay_horizon_is_delta_max_times_guard_count_plus_one() {
        assert_eq!(upper_bound(&relay()).unwrap(), TimeBound::finite(12));
    }

    #[test]
    fn unguarded_model_horizon_is_delta_max() {
        assert_eq!(upper_bound(&relay().unguard()).unwrap(), TimeBound::finite(4));
    }

    #[test]
    fn relay_network_minimum_times() {
        let map = solve_minreach(&relay()).unwrap();
        assert_eq!(
            map.bounds,
            vec![
                TimeBound::ZERO,      // q_init
                TimeBound::finite(2), // q0
                TimeBound::finite(4), // q1
                TimeBound::finite(4), // q2: edge into it waits for q1
                TimeBound::finite(6), // q3: x >= 2 after entering q2 at 4
            ]
        );
    }

    #[test]
    fn relay_witness_for_q3_goes_through_q2_at_four() {
        let map = solve_minreach(&relay()).unwrap();
        let steps = explain_minreach(&map, LocationId(4)).unwrap();
        assert_eq!(
            steps,
            &[
                WitnessStep { transition: 3, at: TimeBound::finite(4) },
                WitnessStep { transition: 4, at: TimeBound::finite(6) },
            ]
        );
    }

    #[test]
    fn initial_location_has_empty_witness() {
        let map = solve_minreach(&relay()).unwrap();
        assert_eq!(explain_minreach(&map, LocationId(0)).unwrap(), &[]);
    }

    #[test]
    fn unreachable_location_yields_error_with_its_name() {
        let text = "gta m\nclocks x\nlocation a initial\nlocation island\n";
        let map = solve_minreach(&parse_gta(text).unwrap()).unwrap();
        assert_eq!(map.bound(LocationId(1)), TimeBound::Infinite);
        let err = explain_minreach(&map, LocationId(1)).unwrap_err();
        assert_eq!(err.location, "island");
    }

    #[test]
    fn unguarded_solve_matches_single_process_minimum_times() {
        let m = relay().unguard();
        let map = solve_minreach(&m).unwrap();
        assert_eq!(map.bounds, minreach_unguarded(&m).bounds);
    }

    #[test]
    fn single_process_times_bound_network_times_from_below() {
        let m = relay();
        let single = minreach_unguarded(&m);
        let map = solve_minreach(&m).unwrap();
        for q in 0..m.locations.len() {
            assert!(single.bounds[q] <= map.bounds[q]);
            if map.bounds[q].is_finite() {
                assert!(map.bounds[q] <= map.ub);
            }
        }
    }

    #[test]
    fn strict_guard_bound_stays_strict_through_guard_release() {
        // g is first reached strictly after 1; the guarded reset edge into
        // b must therefore carry t > 1, not t >= 1.
        let text = "\
gta strictness
clocks x
location a initial
location g
location b
edge a -> g guard: x > 1
edge a -> b reset: x locguard: g
";
        let map = solve_minreach(&parse_gta(text).unwrap()).unwrap();
        assert_eq!(map.bound(LocationId(1)), TimeBound::finite_strict(1));
        assert_eq!(map.bound(LocationId(2)), TimeBound::finite_strict(1));
    }

    #[test]
    fn plain_search_agrees_with_subsumption_on_relay() {
        let m = relay();
        let with = solve_minreach(&m).unwrap();
        let without =
            solve_minreach_traced(&m, SolveOptions { subsumption: false }, None).unwrap();
        assert_eq!(with.bounds, without.bounds);
    }

    #[test]
    fn pops_are_monotone_and_guarded_steps_wait_for_release() {
        let mut trace = Vec::new();
        solve_minreach_traced(&relay(), SolveOptions::default(), Some(&mut trace)).unwrap();
        for w in trace.windows(2) {
            assert!(w[0].t <= w[1].t);
        }
        // q2 can only be entered once q1 is unlocked at t = 4.
        let q2_pop = trace.iter().find(|p| p.location == "q2").unwrap();
        assert!(q2_pop.t >= TimeBound::finite(4));
    }

    #[test]
    fn disabled_entries_with_never_visited_guards_are_dropped() {
        // The guard location g is unreachable, so the edge into b stays
        // disabled forever and b ends up unreachable.
        let text = "\
gta locked
clocks x
location a initial
location g
location b
edge a -> b reset: x locguard: g
";
        let map = solve_minreach(&parse_gta(text).unwrap()).unwrap();
        assert_eq!(map.bound(LocationId(1)), TimeBound::Infinite);
        assert_eq!(map.bound(LocationId(2)), TimeBound::Infinite);
    }

    #[test]
    fn guard_helps_only_other_processes_not_itself() {
        // A single process cannot satisfy its own guard: b is reachable in
        // the network because *another* copy sits in g; the witness time
        // reflects the earliest such help, x of the helped process being 0.
        let text = "\
gta helped
clocks x
location a initial
location g
location b
edge a -> g guard: x = 3
edge a -> b locguard: g
";
        let map = solve_minreach(&parse_gta(text).unwrap()).unwrap();
        assert_eq!(map.bound(LocationId(2)), TimeBound::finite(3));
    }
}
