//! Flooding certificates and cutoffs for single-clock models whose guard
//! locations carry invariants.
//!
//! The summary construction treats a guard location `q` as permanently
//! available from `δ∞min(q)` on. When `Inv(q)` is trivial that is
//! literally true — one helper process parks in `q` forever. With an
//! invariant, processes must take turns: each one leaves `q`, runs a loop
//! of the summary automaton back to `q`, and relieves the next one before
//! its invariant expires. A *flooding certificate* exhibits such a loop
//! together with the timing facts that make the relay work (Lemma-style
//! sufficient conditions):
//!
//! * the loop is *resetting* — split it at the first and last resetting
//!   transition into `ψ1 ψ2 ψ3`, with as-soon-as-possible durations
//!   `d1, d2, d3`;
//! * `T` is the tightest invariant upper bound on `x` among the locations
//!   traversed *before* the first reset (waiting in `q` eats into the
//!   budget of that whole stretch);
//! * `T ≥ d1 + d2 + d3 + v0(x)` — the first process returns before the
//!   one it left behind must leave — and `T > d3` — returning processes
//!   arrive with enough slack to wait for their next turn.
//!
//! The *width* `w(q)` is how many processes the relay needs:
//! `max{2, ⌈(T + d2)/(T − d3)⌉}` (at least two even for zero-time loops,
//! since a process cannot satisfy its own location guard), or `1` when
//! `Inv(q)` is trivial. Certificates for every reachable guard location
//! combine into the cutoff `m + Σ w(q)`: verifying the network of that
//! size verifies all larger ones.
//!
//! As-soon-as-possible runs are computed in exact arithmetic over values
//! `a + b·ε` (`ε` an infinitesimal): strict guards like `x > 1` force
//! delays infinitesimally above an integer, and comparing such quantities
//! with floats or by rounding would mis-certify borderline loops (a
//! strict budget exactly equal to `d1+d2+d3+v0(x)` must *fail*).

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;
use thiserror::Error;

use crate::minreach::{explain_minreach, MinReachMap};
use crate::model::{AtomicConstraint, ClockId, Gta, LocationId, Relation, TimeBound};
use crate::summary::SummaryAutomaton;

/// Exact value `val + eps·ε` with `ε` infinitesimal, ordered
/// lexicographically. Sums and differences of guard constants and strict
/// offsets stay in this domain; `eps` may be negative (just below a
/// value) or exceed one (accumulated strict steps).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct EpsVal {
    pub val: i64,
    pub eps: i64,
}

impl EpsVal {
    pub const ZERO: EpsVal = EpsVal { val: 0, eps: 0 };

    pub fn int(val: i64) -> EpsVal {
        EpsVal { val, eps: 0 }
    }

    /// The infinitesimal unit `ε`.
    pub const EPS: EpsVal = EpsVal { val: 0, eps: 1 };

    pub fn scale(self, k: i64) -> EpsVal {
        EpsVal {
            val: self.val * k,
            eps: self.eps * k,
        }
    }

    /// Greatest representable value satisfying `v REL k` (`v ≤ k` or
    /// `v < k`), used for invariant budgets: `x < 4` caps the budget just
    /// below 4.
    pub fn upper_from(bound: TimeBound) -> Option<EpsVal> {
        match bound {
            TimeBound::Finite { value, strict } => Some(EpsVal {
                val: value as i64,
                eps: if strict { -1 } else { 0 },
            }),
            TimeBound::Infinite => None,
        }
    }

    /// Whether this concrete value attains a minimum described by `bound`
    /// (strict bounds are infima, attained only infinitesimally above).
    pub fn attains(self, bound: TimeBound) -> bool {
        match bound {
            TimeBound::Finite { value, strict } => {
                self.val == value as i64 && strict == (self.eps > 0)
            }
            TimeBound::Infinite => false,
        }
    }
}

impl std::ops::Add for EpsVal {
    type Output = EpsVal;
    fn add(self, o: EpsVal) -> EpsVal {
        EpsVal {
            val: self.val + o.val,
            eps: self.eps + o.eps,
        }
    }
}

impl std::ops::Sub for EpsVal {
    type Output = EpsVal;
    fn sub(self, o: EpsVal) -> EpsVal {
        EpsVal {
            val: self.val - o.val,
            eps: self.eps - o.eps,
        }
    }
}

impl std::fmt::Display for EpsVal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.eps {
            0 => write!(f, "{}", self.val),
            e if e > 0 => write!(f, "{}+{}ε", self.val, e),
            e => write!(f, "{}-{}ε", self.val, -e),
        }
    }
}

#[derive(Debug, Clone, Error)]
#[error("step {step} of the path is infeasible: {reason}")]
pub struct Infeasible {
    pub step: usize,
    pub reason: String,
}

/// Concrete greedy execution of a syntactic path: per-step delays and the
/// final valuation of `(x, t)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AsapRun {
    pub delays: Vec<EpsVal>,
    pub end_x: EpsVal,
    pub end_t: EpsVal,
}

impl AsapRun {
    pub fn total(&self) -> EpsVal {
        self.delays
            .iter()
            .fold(EpsVal::ZERO, |acc, &d| acc + d)
    }
}

fn rel_holds(rel: Relation, v: EpsVal, k: i64) -> bool {
    let k = EpsVal::int(k);
    match rel {
        Relation::Lt => v < k,
        Relation::Le => v <= k,
        Relation::Eq => v == k,
        Relation::Ge => v >= k,
        Relation::Gt => v > k,
    }
}

/// Constraints on the delay `δ` collected from atoms over a value that
/// grows with the delay.
#[derive(Debug, Clone, Copy)]
struct DeltaWindow {
    lo: EpsVal,
    hi: Option<EpsVal>,
}

impl DeltaWindow {
    fn new() -> Self {
        DeltaWindow {
            lo: EpsVal::ZERO,
            hi: None,
        }
    }

    fn at_least(&mut self, v: EpsVal) {
        if v > self.lo {
            self.lo = v;
        }
    }

    fn at_most(&mut self, v: EpsVal) {
        if self.hi.is_none_or(|h| v < h) {
            self.hi = Some(v);
        }
    }

    /// Tighten with `base + δ REL k`.
    fn constrain(&mut self, rel: Relation, base: EpsVal, k: i64) {
        let k = EpsVal::int(k);
        match rel {
            Relation::Le => self.at_most(k - base),
            Relation::Lt => self.at_most(k - base - EpsVal::EPS),
            Relation::Ge => self.at_least(k - base),
            Relation::Gt => self.at_least(k - base + EpsVal::EPS),
            Relation::Eq => {
                self.at_most(k - base);
                self.at_least(k - base);
            }
        }
    }

    fn minimum(&self) -> Option<EpsVal> {
        match self.hi {
            Some(h) if h < self.lo => None,
            _ => Some(self.lo),
        }
    }
}

/// Greedy minimal-delay execution of `path` (transition indices into
/// `sa.base.transitions`) from `start`, for single-clock bases. Every
/// step takes the least delay satisfying the guard, the source invariant
/// for the whole wait, and the target invariant on entry (after resets).
/// Lower bounds on `t` or `x` never benefit from waiting earlier, so the
/// greedy run also minimizes total time and gets stuck only on paths with
/// no execution at all.
pub fn asap_run(
    sa: &SummaryAutomaton,
    start: (LocationId, (EpsVal, EpsVal)),
    path: &[usize],
) -> Result<AsapRun, Infeasible> {
    let base = &sa.base;
    assert_eq!(
        base.clocks.len(),
        2,
        "as-soon-as-possible runs support exactly one clock besides t"
    );
    let t = ClockId(0);
    let (mut here, (mut x, mut t_val)) = start;
    let mut delays = Vec::with_capacity(path.len());

    for (step, &ix) in path.iter().enumerate() {
        let tr = &base.transitions[ix];
        assert_eq!(tr.source, here, "path must be connected from the start location");
        let fail = |reason: String| Infeasible { step, reason };
        let value_of = |c: ClockId, x: EpsVal, t_val: EpsVal| if c == t { t_val } else { x };

        let mut window = DeltaWindow::new();
        // Source invariant: already holds now; upper-bound atoms cap how
        // long we may wait, lower-bound atoms must hold before waiting
        // (waiting to *enter* an invariant is not allowed).
        for atom in &base.invariant(here).atoms {
            match *atom {
                AtomicConstraint::Clock { clock, rel, constant } => {
                    let base_v = value_of(clock, x, t_val);
                    match rel {
                        Relation::Le | Relation::Lt => window.constrain(rel, base_v, constant as i64),
                        Relation::Ge | Relation::Gt => {
                            if !rel_holds(rel, base_v, constant as i64) {
                                return Err(fail(format!(
                                    "source invariant violated at {}",
                                    base.location_name(here)
                                )));
                            }
                        }
                        Relation::Eq => {
                            if !rel_holds(Relation::Eq, base_v, constant as i64) {
                                return Err(fail(format!(
                                    "source invariant violated at {}",
                                    base.location_name(here)
                                )));
                            }
                            window.at_most(EpsVal::ZERO);
                        }
                    }
                }
                AtomicConstraint::Diff { left, right, rel, constant } => {
                    let d = value_of(left, x, t_val) - value_of(right, x, t_val);
                    if !rel_holds(rel, d, constant as i64) {
                        return Err(fail("source invariant difference violated".into()));
                    }
                }
            }
        }
        // Guard: must hold at the moment of firing.
        for atom in &tr.guard.atoms {
            match *atom {
                AtomicConstraint::Clock { clock, rel, constant } => {
                    window.constrain(rel, value_of(clock, x, t_val), constant as i64);
                }
                AtomicConstraint::Diff { left, right, rel, constant } => {
                    // Differences are delay-invariant.
                    let d = value_of(left, x, t_val) - value_of(right, x, t_val);
                    if !rel_holds(rel, d, constant as i64) {
                        return Err(fail(format!(
                            "guard difference of transition {ix} can never hold"
                        )));
                    }
                }
            }
        }
        // Target invariant at entry, after resets.
        let resets_x = tr.resets.contains(&ClockId(1));
        for atom in &base.invariant(tr.target).atoms {
            if let AtomicConstraint::Clock { clock, rel, constant } = *atom {
                if clock != t && resets_x {
                    if !rel_holds(rel, EpsVal::ZERO, constant as i64) {
                        return Err(fail(format!(
                            "invariant of {} rejects a freshly reset clock",
                            base.location_name(tr.target)
                        )));
                    }
                } else {
                    window.constrain(rel, value_of(clock, x, t_val), constant as i64);
                }
            }
        }

        let Some(delta) = window.minimum() else {
            return Err(fail(format!(
                "no delay satisfies guard and invariants of transition {ix}"
            )));
        };
        x = x + delta;
        t_val = t_val + delta;
        if resets_x {
            x = EpsVal::ZERO;
        }
        here = tr.target;
        delays.push(delta);
    }

    Ok(AsapRun {
        delays,
        end_x: x,
        end_t: t_val,
    })
}

/// A resetting loop of the summary automaton split at its first and last
/// resetting transition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoopDecomposition {
    /// Transition indices into the summary automaton, starting and ending
    /// at the certified location.
    pub transitions: Vec<usize>,
    /// Position (within `transitions`) of the first resetting transition.
    pub first_reset: usize,
    /// Position of the last resetting transition.
    pub last_reset: usize,
}

impl LoopDecomposition {
    pub fn psi1(&self) -> &[usize] {
        &self.transitions[..=self.first_reset]
    }

    pub fn psi2(&self) -> &[usize] {
        &self.transitions[self.first_reset + 1..=self.last_reset]
    }

    pub fn psi3(&self) -> &[usize] {
        &self.transitions[self.last_reset + 1..]
    }
}

/// One step of a concrete timed path through the summary automaton.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TimedStep {
    pub transition: usize,
    pub delay: EpsVal,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CertificateKind {
    /// `Inv(q)` is trivial: one process parks in `q` forever.
    TrivialInvariant,
    /// Relay along a resetting loop.
    Lasso {
        decomposition: LoopDecomposition,
        /// Greedy delays of the loop, aligned with its transitions.
        delays: Vec<EpsVal>,
        d1: EpsVal,
        d2: EpsVal,
        d3: EpsVal,
        /// `T`: least invariant upper bound on `x` over the locations
        /// traversed before the first reset; `None` when unbounded.
        t_cap: Option<EpsVal>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FloodingCertificate {
    pub target: LocationId,
    /// Minimal-time path from the initial location into `target`, as
    /// concrete timed steps of the summary automaton.
    pub prefix: Vec<TimedStep>,
    /// Valuation `(x, t)` on entering `target` along the prefix.
    pub v0: (EpsVal, EpsVal),
    pub kind: CertificateKind,
    /// Processes dedicated to keeping `target` occupied.
    pub width: u64,
}

#[derive(Debug, Error)]
pub enum CertifyError {
    #[error("flooding analysis supports a single clock; model `{model}` has {clocks}")]
    MultiClockUnsupported { model: String, clocks: usize },
    #[error("no flooding certificate found for location `{location}`")]
    NotFound { location: String },
    #[error("flooding certification failed for: {}", failures.join(", "))]
    Unverified { failures: Vec<String> },
    #[error("cutoff requires flooding certificates for every reachable guard location")]
    Uncertified,
}

#[derive(Debug, Error)]
#[error("certificate for `{location}` does not check out: {reason}")]
pub struct CertificateViolation {
    pub location: String,
    pub reason: String,
}

/// Largest `c` such that searching widths stays cheap; loops whose slack
/// `T − d3` is only infinitesimal would need unbounded width and are
/// rejected rather than certified.
const WIDTH_SEARCH_LIMIT: i64 = 4096;

fn width_of(t_cap: Option<EpsVal>, d2: EpsVal, d3: EpsVal) -> Option<u64> {
    let Some(t_cap) = t_cap else {
        // No invariant bound anywhere before the reset: two processes
        // always suffice.
        return Some(2);
    };
    if d2 == EpsVal::ZERO && d3 == EpsVal::ZERO {
        // Zero-time loop: both processes sit at the budget's edge and
        // cycle instantaneously.
        return Some(2);
    }
    let margin = t_cap - d3;
    let need = t_cap + d2;
    (1..=WIDTH_SEARCH_LIMIT)
        .find(|&c| margin.scale(c) >= need)
        .map(|c| (c as u64).max(2))
}

/// Map each original transition index to its summary counterpart.
fn summary_index(sa: &SummaryAutomaton) -> HashMap<usize, usize> {
    sa.provenance
        .iter()
        .enumerate()
        .map(|(s, p)| (p.original, s))
        .collect()
}

/// Replay the minimal-time witness for `q0` through the summary
/// automaton; the greedy run must land exactly on the recorded minimum.
fn replay_prefix(
    sa: &SummaryAutomaton,
    minreach: &MinReachMap,
    q0: LocationId,
) -> Result<(Vec<TimedStep>, (EpsVal, EpsVal)), CertifyError> {
    let not_found = || CertifyError::NotFound {
        location: minreach.locations[q0.0].clone(),
    };
    let steps = explain_minreach(minreach, q0).map_err(|_| not_found())?;
    let by_original = summary_index(sa);
    let path: Vec<usize> = steps
        .iter()
        .map(|s| by_original.get(&s.transition).copied())
        .collect::<Option<_>>()
        .ok_or_else(not_found)?;
    let run = asap_run(
        sa,
        (sa.base.initial, (EpsVal::ZERO, EpsVal::ZERO)),
        &path,
    )
    .map_err(|_| not_found())?;
    if !run.end_t.attains(minreach.bound(q0)) {
        return Err(not_found());
    }
    let prefix = path
        .iter()
        .zip(&run.delays)
        .map(|(&transition, &delay)| TimedStep { transition, delay })
        .collect();
    Ok((prefix, (run.end_x, run.end_t)))
}

fn decompose(base: &Gta, cycle: &[usize]) -> Option<LoopDecomposition> {
    let x = ClockId(1);
    let mut resetting = cycle
        .iter()
        .enumerate()
        .filter(|&(_, &ix)| base.transitions[ix].resets.contains(&x));
    let first_reset = resetting.next()?.0;
    let last_reset = resetting.next_back().map_or(first_reset, |(j, _)| j);
    Some(LoopDecomposition {
        transitions: cycle.to_vec(),
        first_reset,
        last_reset,
    })
}

/// A loop through the target that passed the relay conditions, with its
/// timing decomposition and the resulting crew width.
struct CertifiedLoop {
    decomposition: LoopDecomposition,
    delays: Vec<EpsVal>,
    d1: EpsVal,
    d2: EpsVal,
    d3: EpsVal,
    t_cap: Option<EpsVal>,
    width: u64,
}

/// Evaluate one candidate loop from `(q0, v0)`; `None` if it is not
/// resetting, not executable, or fails the relay conditions.
fn try_cycle(
    sa: &SummaryAutomaton,
    q0: LocationId,
    v0: (EpsVal, EpsVal),
    cycle: &[usize],
) -> Option<CertifiedLoop> {
    let base = &sa.base;
    let x = ClockId(1);
    let dec = decompose(base, cycle)?;
    let run = asap_run(sa, (q0, v0), cycle).ok()?;

    let seg = |range: &[usize], offset: usize| -> EpsVal {
        run.delays[offset..offset + range.len()]
            .iter()
            .fold(EpsVal::ZERO, |acc, &d| acc + d)
    };
    let d1 = seg(dec.psi1(), 0);
    let d2 = seg(dec.psi2(), dec.first_reset + 1);
    let d3 = seg(dec.psi3(), dec.last_reset + 1);

    let mut t_cap: Option<EpsVal> = None;
    for &ix in dec.psi1() {
        let q = base.transitions[ix].source;
        if let Some(u) = EpsVal::upper_from(base.inv_upper_bound(q, x)) {
            t_cap = Some(t_cap.map_or(u, |b| b.min(u)));
        }
    }

    let budget_ok = match t_cap {
        None => true,
        Some(t_cap) => {
            let (x0, _) = v0;
            t_cap >= d1 + d2 + d3 + x0 && t_cap > d3
        }
    };
    if !budget_ok {
        return None;
    }
    let width = width_of(t_cap, d2, d3)?;
    Some(CertifiedLoop {
        decomposition: dec,
        delays: run.delays,
        d1,
        d2,
        d3,
        t_cap,
        width,
    })
}

/// Depth-first enumeration of simple cycles through `q0` in declaration
/// order, stopping at the first certified one.
fn search_cycles(
    sa: &SummaryAutomaton,
    q0: LocationId,
    v0: (EpsVal, EpsVal),
) -> Option<CertifiedLoop> {
    struct Dfs<'a> {
        sa: &'a SummaryAutomaton,
        q0: LocationId,
        v0: (EpsVal, EpsVal),
        on_path: Vec<bool>,
        path: Vec<usize>,
    }
    impl Dfs<'_> {
        fn go(&mut self, here: LocationId) -> Option<CertifiedLoop> {
            let outgoing: Vec<(usize, LocationId)> = self
                .sa
                .base
                .outgoing(here)
                .map(|(ix, tr)| (ix, tr.target))
                .collect();
            for (ix, target) in outgoing {
                if target == self.q0 {
                    self.path.push(ix);
                    let hit = try_cycle(self.sa, self.q0, self.v0, &self.path);
                    self.path.pop();
                    if hit.is_some() {
                        return hit;
                    }
                } else if !self.on_path[target.0] {
                    self.on_path[target.0] = true;
                    self.path.push(ix);
                    let hit = self.go(target);
                    self.path.pop();
                    self.on_path[target.0] = false;
                    if hit.is_some() {
                        return hit;
                    }
                }
            }
            None
        }
    }
    let mut dfs = Dfs {
        sa,
        q0,
        v0,
        on_path: vec![false; sa.base.locations.len()],
        path: Vec::new(),
    };
    dfs.on_path[q0.0] = true;
    dfs.go(q0)
}

/// Find a flooding certificate for guard location `q0`.
pub fn find_certificate(
    model: &Gta,
    sa: &SummaryAutomaton,
    minreach: &MinReachMap,
    q0: LocationId,
) -> Result<FloodingCertificate, CertifyError> {
    ensure_single_clock(model)?;
    let (prefix, v0) = replay_prefix(sa, minreach, q0)?;
    if model.invariant(q0).is_top() {
        return Ok(FloodingCertificate {
            target: q0,
            prefix,
            v0,
            kind: CertificateKind::TrivialInvariant,
            width: 1,
        });
    }
    let CertifiedLoop {
        decomposition,
        delays,
        d1,
        d2,
        d3,
        t_cap,
        width,
    } = search_cycles(sa, q0, v0).ok_or_else(|| CertifyError::NotFound {
        location: model.location_name(q0).to_owned(),
    })?;
    Ok(FloodingCertificate {
        target: q0,
        prefix,
        v0,
        kind: CertificateKind::Lasso {
            decomposition,
            delays,
            d1,
            d2,
            d3,
            t_cap,
        },
        width,
    })
}

fn ensure_single_clock(model: &Gta) -> Result<(), CertifyError> {
    let private = if model.is_time_augmented() {
        model.clocks.len() - 1
    } else {
        model.clocks.len()
    };
    if private != 1 {
        return Err(CertifyError::MultiClockUnsupported {
            model: model.name.clone(),
            clocks: private,
        });
    }
    Ok(())
}

/// Certify every reachable guard location, or report the ones that could
/// not be certified.
pub fn certify_all(
    model: &Gta,
    sa: &SummaryAutomaton,
    minreach: &MinReachMap,
) -> Result<BTreeMap<LocationId, FloodingCertificate>, CertifyError> {
    ensure_single_clock(model)?;
    let mut certs = BTreeMap::new();
    let mut failures = Vec::new();
    for q in model.guards_of() {
        if !minreach.reachable(q) {
            continue;
        }
        match find_certificate(model, sa, minreach, q) {
            Ok(c) => {
                certs.insert(q, c);
            }
            Err(_) => failures.push(model.location_name(q).to_owned()),
        }
    }
    if failures.is_empty() {
        Ok(certs)
    } else {
        Err(CertifyError::Unverified { failures })
    }
}

/// Re-check a certificate from scratch: loop shape, executability, the
/// relay conditions, and the width formula. Independent of how the
/// certificate was found.
pub fn verify_certificate(
    sa: &SummaryAutomaton,
    minreach: &MinReachMap,
    cert: &FloodingCertificate,
) -> Result<(), CertificateViolation> {
    let base = &sa.base;
    let location = base.location_name(cert.target).to_owned();
    let fail = |reason: &str| CertificateViolation {
        location: location.clone(),
        reason: reason.to_owned(),
    };

    // Prefix: connected from the initial location, executable, lands on
    // the target at its recorded minimal time.
    let path: Vec<usize> = cert.prefix.iter().map(|s| s.transition).collect();
    let run = asap_run(sa, (base.initial, (EpsVal::ZERO, EpsVal::ZERO)), &path)
        .map_err(|_| fail("prefix is not executable"))?;
    let landed = path
        .last()
        .map_or(base.initial, |&ix| base.transitions[ix].target);
    if landed != cert.target {
        return Err(fail("prefix does not end in the certified location"));
    }
    if !run.end_t.attains(minreach.bound(cert.target)) {
        return Err(fail("prefix does not reach the location at minimal time"));
    }
    if (run.end_x, run.end_t) != cert.v0 {
        return Err(fail("recorded start valuation differs from the replay"));
    }

    match &cert.kind {
        CertificateKind::TrivialInvariant => {
            if !base.invariant(cert.target).is_top() {
                return Err(fail("width-1 certificates need a trivial invariant"));
            }
            if cert.width != 1 {
                return Err(fail("trivial-invariant certificates have width 1"));
            }
            Ok(())
        }
        CertificateKind::Lasso {
            decomposition,
            delays,
            d1,
            d2,
            d3,
            t_cap,
        } => {
            let x = ClockId(1);
            let cyc = &decomposition.transitions;
            if cyc.is_empty()
                || base.transitions[cyc[0]].source != cert.target
                || base.transitions[*cyc.last().unwrap()].target != cert.target
            {
                return Err(fail("loop does not start and end in the location"));
            }
            for w in cyc.windows(2) {
                if base.transitions[w[0]].target != base.transitions[w[1]].source {
                    return Err(fail("loop transitions are not connected"));
                }
            }
            let expected = decompose(base, cyc).ok_or_else(|| fail("loop never resets the clock"))?;
            if expected != *decomposition {
                return Err(fail("split indices do not mark the first and last reset"));
            }
            let run = asap_run(sa, (cert.target, cert.v0), cyc)
                .map_err(|_| fail("loop is not executable from the start valuation"))?;
            if run.delays != *delays {
                return Err(fail("recorded delays differ from the greedy execution"));
            }
            let sum = |r: std::ops::Range<usize>| {
                run.delays[r].iter().fold(EpsVal::ZERO, |a, &d| a + d)
            };
            if sum(0..decomposition.first_reset + 1) != *d1
                || sum(decomposition.first_reset + 1..decomposition.last_reset + 1) != *d2
                || sum(decomposition.last_reset + 1..cyc.len()) != *d3
            {
                return Err(fail("segment durations are inconsistent"));
            }
            let mut best: Option<EpsVal> = None;
            for &ix in decomposition.psi1() {
                let q = base.transitions[ix].source;
                if let Some(u) = EpsVal::upper_from(base.inv_upper_bound(q, x)) {
                    best = Some(best.map_or(u, |b| b.min(u)));
                }
            }
            if best != *t_cap {
                return Err(fail("recorded invariant budget is wrong"));
            }
            if let Some(t_cap) = t_cap {
                if !(*t_cap >= *d1 + *d2 + *d3 + cert.v0.0) {
                    return Err(fail("budget does not cover a full relay round"));
                }
                if !(*t_cap > *d3) {
                    return Err(fail("returning processes have no slack"));
                }
            }
            if width_of(*t_cap, *d2, *d3) != Some(cert.width) {
                return Err(fail("width does not match the formula"));
            }
            Ok(())
        }
    }
}

/// Cutoff for verifying properties of up to `m` observed processes: for
/// models whose guard locations all have trivial invariants this is
/// `m + |reachable guard locations|`; otherwise every reachable guard
/// location needs a certificate and the widths are summed.
pub fn cutoff(
    model: &Gta,
    minreach: &MinReachMap,
    certificates: Option<&BTreeMap<LocationId, FloodingCertificate>>,
    m: u64,
) -> Result<u64, CertifyError> {
    let rguards: Vec<LocationId> = model
        .guards_of()
        .into_iter()
        .filter(|&q| minreach.reachable(q))
        .collect();
    if model.has_persistent_guards() {
        return Ok(m + rguards.len() as u64);
    }
    let certs = certificates.ok_or(CertifyError::Uncertified)?;
    let mut total = m;
    for q in rguards {
        let cert = certs.get(&q).ok_or(CertifyError::Uncertified)?;
        total += cert.width;
    }
    Ok(total)
}
