//! Parametric benchmark families and a seeded random-model generator.
//!
//! All generators are deterministic functions of their parameters: the
//! same inputs produce byte-identical models. They emit model text and
//! run it through the regular parser, so every generated model is valid
//! by the same rules as hand-written input.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::model::Gta;
use crate::parse::parse_gta;

fn parse_generated(text: &str) -> Gta {
    match parse_gta(text) {
        Ok(m) => m,
        Err(errs) => unreachable!("generator emitted an invalid model: {errs:?}\n{text}"),
    }
}

/// Gossip-clock-synchronisation family: `k` "high" locations `h0..h_{k-1}`
/// on a tight ring (period 2), `k` "low" locations `l0..l_{k-1}` on a slow
/// ring (period in `[1, 4]`), and two synchronisation hubs. A high process
/// may fall out of step (clock not exactly 2) only while some process
/// still occupies a high location, and may re-join a high location for
/// the same price.
///
/// With `with_invariants`, the high ring carries `x <= 2` invariants, so
/// staying synchronised is forced rather than merely possible; location
/// guards then live on expiring locations, which is the hard case for
/// cutoff certification.
pub fn gen_gcs(k: usize, with_invariants: bool) -> Gta {
    assert!(k >= 2, "the ring construction needs at least two members");
    let mut s = String::new();
    let name = if with_invariants {
        format!("gcs{k}")
    } else {
        format!("gcs{k}_noinv")
    };
    let _ = writeln!(s, "gta {name}");
    let _ = writeln!(s, "clocks x");

    for i in 0..k {
        let initial = if i == 0 { " initial" } else { "" };
        let inv = if with_invariants { " invariant: x <= 2" } else { "" };
        let _ = writeln!(s, "location h{i}{initial}{inv}");
    }
    for i in 0..k {
        let _ = writeln!(s, "location l{i} invariant: x <= 4");
    }
    let _ = writeln!(s, "location h_sy");
    let _ = writeln!(s, "location l_sy");

    // High ring: advance exactly every 2 time units.
    for i in 0..k {
        let _ = writeln!(s, "edge h{i} -> h{} guard: x = 2 reset: x", (i + 1) % k);
    }
    // Desynchronisation: leave the high ring off-beat, witnessed by any
    // occupied high location. `x != 2` is split into its two halves.
    for i in 0..k {
        for j in 0..k {
            let tgt = (i + 1) % k;
            let _ = writeln!(s, "edge h{i} -> l{tgt} guard: x < 2 reset: x locguard: h{j}");
            let _ = writeln!(s, "edge h{i} -> l{tgt} guard: x > 2 reset: x locguard: h{j}");
        }
    }
    // Low ring: a lap takes between 1 and 4 time units.
    for i in 0..k {
        let _ = writeln!(s, "edge l{i} -> l{} guard: x >= 1 reset: x", (i + 1) % k);
    }
    // Low-side hub, freely exchangeable with l0.
    let _ = writeln!(s, "edge l_sy -> l0");
    let _ = writeln!(s, "edge l0 -> l_sy");
    // Re-synchronisation: join a high location that is currently occupied.
    for i in 0..k {
        let _ = writeln!(s, "edge l_sy -> h{i} reset: x locguard: h{i}");
    }
    // High-side hub reachable from the start, feeding every high location.
    for i in 0..k {
        let _ = writeln!(s, "edge h_sy -> h{i} reset: x");
    }
    let _ = writeln!(s, "edge h0 -> h_sy");

    parse_generated(&s)
}

/// Star family: a hub with `k` branches `hub -> g_i` enabled at `x = i`,
/// and a chain `hub -> c1 -> … -> q_final` whose step `i` is guarded by
/// `g_i`. Reaching `q_final` therefore needs every guard location to have
/// been visited, in order — one process per branch plus one walker.
pub fn gen_star(k: usize) -> Gta {
    assert!(k >= 1, "a star needs at least one branch");
    let mut s = String::new();
    let _ = writeln!(s, "gta star{k}");
    let _ = writeln!(s, "clocks x");
    let _ = writeln!(s, "location hub initial");
    for i in 1..=k {
        let _ = writeln!(s, "location g{i}");
    }
    for i in 1..k {
        let _ = writeln!(s, "location c{i}");
    }
    let _ = writeln!(s, "location q_final");

    for i in 1..=k {
        let _ = writeln!(s, "edge hub -> g{i} guard: x = {i}");
    }
    let chain_loc = |i: usize| {
        if i == k {
            "q_final".to_string()
        } else {
            format!("c{i}")
        }
    };
    let _ = writeln!(s, "edge hub -> {} reset: x locguard: g1", chain_loc(1));
    for i in 2..=k {
        let _ = writeln!(
            s,
            "edge {} -> {} guard: x >= 1 reset: x locguard: g{i}",
            chain_loc(i - 1),
            chain_loc(i)
        );
    }
    parse_generated(&s)
}

/// Size and shape limits for [`gen_random`].
#[derive(Debug, Clone)]
pub struct RandomLimits {
    /// Maximum number of locations (at least 2 are always generated).
    pub locations: usize,
    /// Largest constant appearing in guards and invariants.
    pub constant: u64,
    /// Maximum number of distinct guard locations.
    pub guards: usize,
    /// Keep guard locations free of invariants, so that every location
    /// guard stays satisfiable forever once released.
    pub persistent: bool,
}

impl Default for RandomLimits {
    fn default() -> Self {
        RandomLimits {
            locations: 5,
            constant: 4,
            guards: 2,
            persistent: false,
        }
    }
}

/// Seeded random model over a single clock. The same `(seed, limits)`
/// pair always yields the same model. Every location is reachable under
/// unguarded semantics by construction (a random spanning tree is laid
/// down first); guarded reachability varies freely.
pub fn gen_random(seed: u64, limits: &RandomLimits) -> Gta {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(2..=limits.locations.max(2));
    let hi = limits.constant.max(1);

    // Guard locations, drawn without replacement.
    let mut pool: Vec<usize> = (0..n).collect();
    let mut guardset = Vec::new();
    for _ in 0..rng.gen_range(0..=limits.guards.min(n)) {
        guardset.push(pool.swap_remove(rng.gen_range(0..pool.len())));
    }
    guardset.sort_unstable();

    let mut invariants = vec![String::new(); n];
    for (q, inv) in invariants.iter_mut().enumerate() {
        if limits.persistent && guardset.contains(&q) {
            continue;
        }
        if rng.gen_bool(0.4) {
            let rel = if rng.gen_bool(0.25) { "<" } else { "<=" };
            let c = rng.gen_range(1..=hi);
            *inv = format!(" invariant: x {rel} {c}");
        }
    }

    let mut edges = Vec::new();
    let mut emit = |rng: &mut ChaCha8Rng, src: usize, tgt: usize| {
        let guard = match rng.gen_range(0..10) {
            0..=3 => String::new(),
            4..=7 => {
                let (rel, c) = match rng.gen_range(0..5) {
                    0 => ("<", rng.gen_range(1..=hi)),
                    1 => ("<=", rng.gen_range(1..=hi)),
                    2 => ("=", rng.gen_range(0..=hi)),
                    3 => (">=", rng.gen_range(0..=hi)),
                    _ => (">", rng.gen_range(0..=hi)),
                };
                format!(" guard: x {rel} {c}")
            }
            _ => {
                let lo = rng.gen_range(0..=hi);
                let up = rng.gen_range(lo.max(1)..=hi);
                format!(" guard: x >= {lo} && x <= {up}")
            }
        };
        let reset = if rng.gen_bool(0.5) { " reset: x" } else { "" };
        let locguard = if !guardset.is_empty() && rng.gen_bool(0.35) {
            format!(" locguard: q{}", guardset[rng.gen_range(0..guardset.len())])
        } else {
            String::new()
        };
        edges.push(format!("edge q{src} -> q{tgt}{guard}{reset}{locguard}"));
    };

    for tgt in 1..n {
        let src = rng.gen_range(0..tgt);
        emit(&mut rng, src, tgt);
    }
    for _ in 0..rng.gen_range(0..=n) {
        let src = rng.gen_range(0..n);
        let tgt = rng.gen_range(0..n);
        emit(&mut rng, src, tgt);
    }

    let mut s = String::new();
    let suffix = if limits.persistent { "_p" } else { "" };
    let _ = writeln!(s, "gta rand{seed}{suffix}");
    let _ = writeln!(s, "clocks x");
    for (q, inv) in invariants.iter().enumerate() {
        let initial = if q == 0 { " initial" } else { "" };
        let _ = writeln!(s, "location q{q}{initial}{inv}");
    }
    for e in &edges {
        let _ = writeln!(s, "{e}");
    }
    parse_generated(&s)
}
