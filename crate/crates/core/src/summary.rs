//! Summary automaton: a single guard-free automaton whose runs are exactly
//! the per-process behaviors observable in networks of any size.
//!
//! Each location-guarded transition is rewritten into an ordinary timed
//! transition by conjoining `t ≥ δ∞min(γ)` to its clock guard (strict if
//! the minimum is an infimum): once the guard location is reachable at
//! all, arbitrarily many helper processes can occupy it from that time
//! onward, so the *only* information the guard carries is a lower bound
//! on global time. Transitions whose guard location is unreachable in
//! every network size are dropped.
//!
//! Reachability questions about the first `i` processes of an unbounded
//! network reduce to the `i`-fold interleaving product of the summary
//! automaton, with the global-time clock `t` shared across copies (it is
//! never reset and all copies delay in lockstep, so per-copy time clocks
//! would be equal anyway).

use std::collections::{BTreeSet, BinaryHeap, HashMap};

use serde::Serialize;

use crate::dbm::Dbm;
use crate::minreach::MinReachMap;
use crate::model::{
    AtomicConstraint, ClockConstraint, ClockId, Gta, LocGuard, LocationId, Relation, TimeBound,
};
use crate::zone_graph::QueueEntry;

/// How far the summary construction is known to be trustworthy.
///
/// For models whose guard locations all have trivial invariants, a helper
/// process can literally stay in a guard location forever, and the
/// construction is sound by itself. Otherwise soundness additionally
/// requires a flooding certificate for every guard location (processes
/// take turns re-supplying it); the builder cannot check that, so it
/// tags the result and the certification pipeline upgrades the tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Soundness {
    Sound,
    Unverified,
}

/// Where a summary transition came from: the index of the original
/// transition, and — when its location guard was rewritten — the guard
/// location together with the time bound that replaced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Provenance {
    pub original: usize,
    pub rewritten: Option<(LocationId, TimeBound)>,
}

#[derive(Debug, Clone)]
pub struct SummaryAutomaton {
    /// Guard-free automaton over the original clocks plus leading `t`.
    pub base: Gta,
    /// Parallel to `base.transitions`.
    pub provenance: Vec<Provenance>,
    /// Exploration horizon inherited from the minimum-time analysis.
    pub ub: TimeBound,
    pub soundness: Soundness,
}

/// Build the summary automaton from a model and its network minimum
/// reach times (as produced by [`crate::minreach::solve_minreach`] on the
/// same model).
pub fn build_summary(model: &Gta, minreach: &MinReachMap) -> SummaryAutomaton {
    debug_assert_eq!(model.name, minreach.model);
    debug_assert_eq!(model.locations.len(), minreach.bounds.len());
    let mut base = if model.is_time_augmented() {
        model.clone()
    } else {
        model
            .augment_with_t()
            .expect("model without `t` can be augmented")
    };
    if !model.guards_of().is_empty() {
        // A model without location guards summarizes to itself; renaming
        // it would only pile up suffixes when re-summarized.
        base.name = format!("{}_summary", model.name);
    }

    let t = ClockId(0);
    let mut transitions = Vec::new();
    let mut provenance = Vec::new();
    for (ix, tr) in base.transitions.iter().enumerate() {
        match tr.locguard {
            LocGuard::Trivial => {
                transitions.push(tr.clone());
                provenance.push(Provenance {
                    original: ix,
                    rewritten: None,
                });
            }
            LocGuard::Loc(g) => match minreach.bound(g) {
                TimeBound::Finite { value, strict } => {
                    let mut tr = tr.clone();
                    tr.guard.and(AtomicConstraint::Clock {
                        clock: t,
                        rel: if strict { Relation::Gt } else { Relation::Ge },
                        constant: value,
                    });
                    tr.locguard = LocGuard::Trivial;
                    transitions.push(tr);
                    provenance.push(Provenance {
                        original: ix,
                        rewritten: Some((g, minreach.bound(g))),
                    });
                }
                TimeBound::Infinite => {}
            },
        }
    }
    base.transitions = transitions;

    let soundness = if model.has_persistent_guards() {
        Soundness::Sound
    } else {
        Soundness::Unverified
    };
    SummaryAutomaton {
        base,
        provenance,
        ub: minreach.ub,
        soundness,
    }
}

/// Result of a product reachability query.
#[derive(Debug, Clone)]
pub struct ReachResult {
    pub copies: usize,
    /// Aligned with the queried targets; [`TimeBound::Infinite`] means the
    /// target is not reachable by any copy within the horizon.
    pub targets: Vec<TargetResult>,
    /// Every reachable location vector, sorted per state so that results
    /// are invariant under copy permutation.
    pub vectors: BTreeSet<Vec<LocationId>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TargetResult {
    pub location: String,
    pub bound: TimeBound,
}

/// State of the interleaving product: one location per copy, plus a zone
/// over `t` followed by each copy's private clocks.
#[derive(Debug, Clone, PartialEq, Eq)]
struct ProductNode {
    locs: Vec<LocationId>,
    zone: Dbm,
}

/// Earliest time at which each target location is occupied by some copy
/// of the summary automaton in the `copies`-fold interleaving product,
/// within the horizon `t ≤ UB`.
pub fn check_reachability(
    sa: &SummaryAutomaton,
    targets: &[LocationId],
    copies: usize,
) -> ReachResult {
    assert!(copies >= 1, "the product needs at least one copy");
    let base = &sa.base;
    let t = ClockId(0);
    let private = base.clocks.len() - 1; // clocks besides t
    let dim = 2 + copies * private; // reference, t, per-copy clocks

    // Matrix index of copy `j`'s instance of the base clock `c`.
    let cix = |j: usize, c: ClockId| -> usize {
        if c == t {
            1
        } else {
            1 + j * private + c.0 // c.0 ≥ 1, so this lands past t
        }
    };
    let remap_atom = |j: usize, atom: &AtomicConstraint| -> AtomicConstraint {
        let m = |c: ClockId| ClockId(cix(j, c) - 1);
        match *atom {
            AtomicConstraint::Clock { clock, rel, constant } => AtomicConstraint::Clock {
                clock: m(clock),
                rel,
                constant,
            },
            AtomicConstraint::Diff { left, right, rel, constant } => AtomicConstraint::Diff {
                left: m(left),
                right: m(right),
                rel,
                constant,
            },
        }
    };
    let invariant_of = |locs: &[LocationId]| -> ClockConstraint {
        let mut cc = ClockConstraint::top();
        for (j, &q) in locs.iter().enumerate() {
            for atom in &base.invariant(q).atoms {
                cc.and(remap_atom(j, atom));
            }
        }
        cc
    };
    let cap = |z: Dbm| -> Option<Dbm> {
        match sa.ub {
            TimeBound::Finite { value, .. } => z.constrain_upper(t, value),
            TimeBound::Infinite => Some(z),
        }
    };

    let init_locs = vec![base.initial; copies];
    let init_zone = cap(Dbm::zero(dim)
        .up()
        .constrain(&invariant_of(&init_locs))
        .expect("initial invariants hold at time zero"));

    let mut bounds: HashMap<LocationId, TimeBound> = HashMap::new();
    let mut vectors: BTreeSet<Vec<LocationId>> = BTreeSet::new();
    let mut popped: HashMap<Vec<LocationId>, Vec<Dbm>> = HashMap::new();
    let mut queue: BinaryHeap<QueueEntry<ProductNode>> = BinaryHeap::new();
    let mut seq = 0u64;
    if let Some(zone) = init_zone {
        queue.push(QueueEntry {
            priority: zone.lower_bound(t),
            seq,
            payload: ProductNode {
                locs: init_locs,
                zone,
            },
        });
    }

    while let Some(entry) = queue.pop() {
        let node = entry.payload;
        let stored = popped.entry(node.locs.clone()).or_default();
        if stored.iter().any(|z| z.includes(&node.zone)) {
            continue;
        }
        stored.push(node.zone.clone());

        let mut sorted = node.locs.clone();
        sorted.sort_unstable();
        vectors.insert(sorted);
        for &q in &node.locs {
            bounds.entry(q).or_insert(entry.priority);
        }

        for j in 0..copies {
            for (_, tr) in base.outgoing(node.locs[j]) {
                let mut guard = ClockConstraint::top();
                for atom in &tr.guard.atoms {
                    guard.and(remap_atom(j, atom));
                }
                let resets: Vec<ClockId> = tr
                    .resets
                    .iter()
                    .map(|&c| ClockId(cix(j, c) - 1))
                    .collect();
                let mut locs = node.locs.clone();
                locs[j] = tr.target;
                let inv = invariant_of(&locs);
                let zone = node
                    .zone
                    .constrain(&guard)
                    .map(|z| z.reset(&resets))
                    .and_then(|z| z.constrain(&inv))
                    .map(|z| z.up())
                    .and_then(|z| z.constrain(&inv))
                    .and_then(&cap);
                let Some(zone) = zone else { continue };
                if popped
                    .get(&locs)
                    .is_some_and(|zs| zs.iter().any(|z| z.includes(&zone)))
                {
                    continue;
                }
                seq += 1;
                queue.push(QueueEntry {
                    priority: zone.lower_bound(t),
                    seq,
                    payload: ProductNode { locs, zone },
                });
            }
        }
    }

    let targets = targets
        .iter()
        .map(|&q| TargetResult {
            location: base.location_name(q).to_owned(),
            bound: bounds.get(&q).copied().unwrap_or(TimeBound::Infinite),
        })
        .collect();
    ReachResult {
        copies,
        targets,
        vectors,
    }
}

/// Convenience: entrywise comparison helper used by the verification
/// pipeline — the `copies = 1` product must reproduce the minimum-time
/// map exactly.
pub fn single_copy_bounds(sa: &SummaryAutomaton) -> Vec<TimeBound> {
    let all: Vec<LocationId> = (0..sa.base.locations.len()).map(LocationId).collect();
    check_reachability(sa, &all, 1)
        .targets
        .into_iter()
        .map(|t| t.bound)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minreach::solve_minreach;
    use crate::parse::parse_gta;
    use crate::render::write_gta;

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

    fn relay_summary() -> SummaryAutomaton {
        let m = parse_gta(RELAY).unwrap();
        let map = solve_minreach(&m).unwrap();
        build_summary(&m, &map)
    }

    #[test]
    fn guarded_edges_gain_release_time_constraints() {
        let sa = relay_summary();
        assert_eq!(sa.base.transitions.len(), 5);
        assert!(sa.base.guards_of().is_empty());

        // q0 -> q_init waits for q0 itself, first reachable at 2.
        let tr = &sa.base.transitions[1];
        assert_eq!(
            tr.guard.atoms,
            vec![AtomicConstraint::Clock {
                clock: ClockId(0),
                rel: Relation::Ge,
                constant: 2,
            }]
        );
        assert_eq!(
            sa.provenance[1].rewritten,
            Some((LocationId(1), TimeBound::finite(2)))
        );

        // q_init -> q2 waits for q1, first reachable at 4.
        let tr = &sa.base.transitions[3];
        assert_eq!(
            tr.guard.atoms,
            vec![AtomicConstraint::Clock {
                clock: ClockId(0),
                rel: Relation::Ge,
                constant: 4,
            }]
        );
        assert_eq!(
            sa.provenance[3].rewritten,
            Some((LocationId(2), TimeBound::finite(4)))
        );
        assert_eq!(sa.soundness, Soundness::Unverified);
    }

    #[test]
    fn unguarded_model_summary_is_the_time_augmented_model() {
        let m = parse_gta(RELAY).unwrap().unguard();
        let map = solve_minreach(&m).unwrap();
        let sa = build_summary(&m, &map);
        let aug = m.augment_with_t().unwrap();
        assert_eq!(sa.base.transitions, aug.transitions);
        assert_eq!(sa.base.clocks, aug.clocks);
        assert_eq!(sa.soundness, Soundness::Sound);
    }

    #[test]
    fn edges_guarded_by_unreachable_locations_are_dropped() {
        let text = "\
gta locked
clocks x
location a initial
location g
location b
edge a -> b reset: x locguard: g
";
        let m = parse_gta(text).unwrap();
        let map = solve_minreach(&m).unwrap();
        let sa = build_summary(&m, &map);
        assert!(sa.base.transitions.is_empty());
        assert!(sa.provenance.is_empty());
    }

    #[test]
    fn strict_release_times_become_strict_constraints() {
        let text = "\
gta strictness
clocks x
location a initial
location g
location b
edge a -> g guard: x > 1
edge a -> b reset: x locguard: g
";
        let m = parse_gta(text).unwrap();
        let map = solve_minreach(&m).unwrap();
        let sa = build_summary(&m, &map);
        let atom = *sa.base.transitions[1].guard.atoms.last().unwrap();
        assert_eq!(
            atom,
            AtomicConstraint::Clock {
                clock: ClockId(0),
                rel: Relation::Gt,
                constant: 1,
            }
        );
        let r = check_reachability(&sa, &[LocationId(2)], 1);
        assert_eq!(r.targets[0].bound, TimeBound::finite_strict(1));
    }

    #[test]
    fn summary_text_round_trips_through_the_parser() {
        let sa = relay_summary();
        let text = write_gta(&sa.base);
        let parsed = parse_gta(&text).unwrap();
        assert_eq!(parsed, sa.base);
    }

    #[test]
    fn single_copy_product_reproduces_the_minimum_time_map() {
        let m = parse_gta(RELAY).unwrap();
        let map = solve_minreach(&m).unwrap();
        let sa = build_summary(&m, &map);
        assert_eq!(single_copy_bounds(&sa), map.bounds);
    }

    #[test]
    fn relay_q3_reachable_at_six_with_one_copy() {
        let sa = relay_summary();
        let r = check_reachability(&sa, &[LocationId(4)], 1);
        assert_eq!(r.targets[0].location, "q3");
        assert_eq!(r.targets[0].bound, TimeBound::finite(6));
    }

    #[test]
    fn two_copies_can_both_reach_q3() {
        let sa = relay_summary();
        let r = check_reachability(&sa, &[], 2);
        let both = vec![LocationId(4), LocationId(4)];
        assert!(r.vectors.contains(&both));
    }

    #[test]
    fn product_vectors_are_permutation_closed_by_sorting() {
        let sa = relay_summary();
        let r = check_reachability(&sa, &[], 2);
        for v in &r.vectors {
            let mut s = v.clone();
            s.sort_unstable();
            assert_eq!(&s, v);
        }
    }
}
