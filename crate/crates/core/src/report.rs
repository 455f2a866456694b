//! Serializable result views and aligned text tables for the CLI.
//!
//! Struct field order fixes the JSON key order and all maps are ordered,
//! so identical analyses serialize byte-identically — results can be
//! diffed and committed as goldens.

use serde::Serialize;

use crate::flooding::{CertificateKind, EpsVal, FloodingCertificate};
use crate::minreach::{explain_minreach, MinReachMap};
use crate::model::{Gta, LocationId, TimeBound};
use crate::oracle::OracleResult;
use crate::summary::ReachResult;

/// A finite time bound; strict means the value itself is excluded.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct BoundJson {
    pub value: u64,
    pub strict: bool,
}

fn bound_json(b: TimeBound) -> Option<BoundJson> {
    match b {
        TimeBound::Finite { value, strict } => Some(BoundJson { value, strict }),
        TimeBound::Infinite => None,
    }
}

/// One row of a reachability result: `bound` is `null` for unreachable
/// locations, in which case `strict` is omitted entirely.
#[derive(Debug, Clone, Serialize)]
pub struct LocationBound {
    pub location: String,
    pub bound: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub strict: Option<bool>,
}

fn location_bound(location: &str, b: TimeBound) -> LocationBound {
    match b {
        TimeBound::Finite { value, strict } => LocationBound {
            location: location.to_owned(),
            bound: Some(value),
            strict: Some(strict),
        },
        TimeBound::Infinite => LocationBound {
            location: location.to_owned(),
            bound: None,
            strict: None,
        },
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct WitnessStepJson {
    pub transition: usize,
    pub at: Option<BoundJson>,
}

#[derive(Debug, Clone, Serialize)]
pub struct MinReachReport {
    pub model: String,
    pub ub: BoundJson,
    pub minreach: Vec<LocationBound>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witnesses: Option<std::collections::BTreeMap<String, Vec<WitnessStepJson>>>,
}

pub fn minreach_report(map: &MinReachMap, with_witnesses: bool) -> MinReachReport {
    let ub = bound_json(map.ub).expect("the solver always pins a finite horizon");
    let minreach = map
        .locations
        .iter()
        .zip(&map.bounds)
        .map(|(name, &b)| location_bound(name, b))
        .collect();
    let witnesses = with_witnesses.then(|| {
        (0..map.locations.len())
            .filter_map(|q| {
                let steps = explain_minreach(map, LocationId(q)).ok()?;
                let steps = steps
                    .iter()
                    .map(|s| WitnessStepJson {
                        transition: s.transition,
                        at: bound_json(s.at),
                    })
                    .collect();
                Some((map.locations[q].clone(), steps))
            })
            .collect()
    });
    MinReachReport {
        model: map.model.clone(),
        ub,
        minreach,
        witnesses,
    }
}

/// Mirrors [`MinReachReport`] with the product size `n` added.
#[derive(Debug, Clone, Serialize)]
pub struct OracleReport {
    pub model: String,
    pub n: usize,
    pub ub: BoundJson,
    pub minreach: Vec<LocationBound>,
}

pub fn oracle_report(model: &Gta, r: &OracleResult) -> OracleReport {
    OracleReport {
        model: r.model.clone(),
        n: r.n,
        ub: bound_json(r.ub).expect("the oracle horizon is finite"),
        minreach: r
            .bounds
            .iter()
            .enumerate()
            .map(|(q, &b)| location_bound(model.location_name(LocationId(q)), b))
            .collect(),
    }
}

/// Mirrors [`MinReachReport`] for a bounded summary-network query.
#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub model: String,
    pub copies: usize,
    pub minreach: Vec<LocationBound>,
}

pub fn check_report(model: &str, r: &ReachResult) -> CheckReport {
    CheckReport {
        model: model.to_owned(),
        copies: r.copies,
        minreach: r
            .targets
            .iter()
            .map(|t| location_bound(&t.location, t.bound))
            .collect(),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CertificateJson {
    pub location: String,
    pub width: u64,
    pub kind: &'static str,
    #[serde(rename = "loop", skip_serializing_if = "Option::is_none")]
    pub loop_transitions: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d1: Option<EpsVal>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d2: Option<EpsVal>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d3: Option<EpsVal>,
    #[serde(rename = "T", skip_serializing_if = "Option::is_none")]
    pub t_cap: Option<EpsVal>,
}

pub fn certificate_json(model: &Gta, cert: &FloodingCertificate) -> CertificateJson {
    let location = model.location_name(cert.target).to_owned();
    match &cert.kind {
        CertificateKind::TrivialInvariant => CertificateJson {
            location,
            width: cert.width,
            kind: "trivial_invariant",
            loop_transitions: None,
            d1: None,
            d2: None,
            d3: None,
            t_cap: None,
        },
        CertificateKind::Lasso {
            decomposition,
            d1,
            d2,
            d3,
            t_cap,
            ..
        } => CertificateJson {
            location,
            width: cert.width,
            kind: "lasso",
            loop_transitions: Some(decomposition.transitions.clone()),
            d1: Some(*d1),
            d2: Some(*d2),
            d3: Some(*d3),
            t_cap: *t_cap,
        },
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FloodReport {
    pub model: String,
    pub status: &'static str,
    pub certificates: Vec<CertificateJson>,
    pub failures: Vec<String>,
}

pub fn flood_report_verified(model: &Gta, certs: &[&FloodingCertificate]) -> FloodReport {
    FloodReport {
        model: model.name.clone(),
        status: "verified",
        certificates: certs.iter().map(|c| certificate_json(model, c)).collect(),
        failures: Vec::new(),
    }
}

pub fn flood_report_unverified(model: &Gta, failures: Vec<String>) -> FloodReport {
    FloodReport {
        model: model.name.clone(),
        status: "unverified",
        certificates: Vec::new(),
        failures,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CutoffReport {
    pub model: String,
    pub m: u64,
    pub cutoff: u64,
    pub method: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificates: Option<Vec<CertificateJson>>,
}

/// Renders rows as two aligned columns separated by two spaces.
fn aligned(rows: &[(String, String)]) -> String {
    let width = rows.iter().map(|(l, _)| l.len()).max().unwrap_or(0);
    let mut out = String::new();
    for (l, r) in rows {
        out.push_str(&format!("{l:<width$}  {r}\n"));
    }
    out
}

fn bound_cell(b: TimeBound) -> String {
    match b {
        TimeBound::Infinite => "unreachable".to_owned(),
        b => b.to_string(),
    }
}

pub fn minreach_table(map: &MinReachMap, with_witnesses: bool) -> String {
    let mut rows = vec![("location".to_owned(), "time".to_owned())];
    for (name, &b) in map.locations.iter().zip(&map.bounds) {
        rows.push((name.clone(), bound_cell(b)));
    }
    let mut out = format!("model {} (horizon {})\n{}", map.model, map.ub, aligned(&rows));
    if with_witnesses {
        for q in 0..map.locations.len() {
            if let Ok(steps) = explain_minreach(map, LocationId(q)) {
                let path: Vec<String> = steps
                    .iter()
                    .map(|s| format!("#{}@{}", s.transition, s.at))
                    .collect();
                out.push_str(&format!(
                    "witness {}: {}\n",
                    map.locations[q],
                    if path.is_empty() { "start".to_owned() } else { path.join(" ") }
                ));
            }
        }
    }
    out
}

pub fn oracle_table(model: &Gta, r: &OracleResult) -> String {
    let mut rows = vec![("location".to_owned(), "time".to_owned())];
    for (q, &b) in r.bounds.iter().enumerate() {
        rows.push((
            model.location_name(LocationId(q)).to_owned(),
            bound_cell(b),
        ));
    }
    format!(
        "model {} with {} processes (horizon {})\n{}",
        r.model,
        r.n,
        r.ub,
        aligned(&rows)
    )
}

pub fn check_table(model: &str, r: &ReachResult) -> String {
    let mut rows = vec![("location".to_owned(), "time".to_owned())];
    for t in &r.targets {
        rows.push((t.location.clone(), bound_cell(t.bound)));
    }
    format!("model {} with {} copies\n{}", model, r.copies, aligned(&rows))
}

pub fn flood_table(report: &FloodReport) -> String {
    let mut out = format!("model {}: {}\n", report.model, report.status);
    if !report.certificates.is_empty() {
        let mut rows = vec![(
            "location".to_owned(),
            format!("{:<6} details", "width"),
        )];
        for c in &report.certificates {
            let details = match c.kind {
                "lasso" => format!(
                    "lasso loop {:?}, d1 {}, d2 {}, d3 {}, T {}",
                    c.loop_transitions.as_deref().unwrap_or(&[]),
                    c.d1.unwrap_or(EpsVal::ZERO),
                    c.d2.unwrap_or(EpsVal::ZERO),
                    c.d3.unwrap_or(EpsVal::ZERO),
                    c.t_cap.map_or("none".to_owned(), |t| t.to_string()),
                ),
                kind => kind.replace('_', " "),
            };
            rows.push((c.location.clone(), format!("{:<6} {details}", c.width)));
        }
        out.push_str(&aligned(&rows));
    }
    for f in &report.failures {
        out.push_str(&format!("failure: {f}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flooding::certify_all;
    use crate::minreach::solve_minreach;
    use crate::oracle::product_minreach;
    use crate::parse::parse_gta;
    use crate::summary::{build_summary, check_reachability};

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
    fn minreach_schema_is_stable() {
        let m = relay();
        let map = solve_minreach(&m).unwrap();
        let json = serde_json::to_string(&minreach_report(&map, false)).unwrap();
        assert_eq!(
            json,
            r#"{"model":"relay","ub":{"value":12,"strict":false},"minreach":[{"location":"q_init","bound":0,"strict":false},{"location":"q0","bound":2,"strict":false},{"location":"q1","bound":4,"strict":false},{"location":"q2","bound":4,"strict":false},{"location":"q3","bound":6,"strict":false}]}"#
        );
    }

    #[test]
    fn unreachable_locations_serialize_as_null_without_strict() {
        let text = "\
gta dead
clocks x
location a initial
location b
edge b -> a
";
        let m = parse_gta(text).unwrap();
        let map = solve_minreach(&m).unwrap();
        let json = serde_json::to_string(&minreach_report(&map, false)).unwrap();
        assert!(json.contains(r#"{"location":"b","bound":null}"#), "{json}");
    }

    #[test]
    fn witnesses_list_transition_indices_with_firing_times() {
        let m = relay();
        let map = solve_minreach(&m).unwrap();
        let json = serde_json::to_string(&minreach_report(&map, true)).unwrap();
        assert!(
            json.contains(r#""q3":[{"transition":3,"at":{"value":4,"strict":false}},{"transition":4,"at":{"value":6,"strict":false}}]"#),
            "{json}"
        );
    }

    #[test]
    fn oracle_schema_mirrors_minreach_with_n() {
        let m = relay();
        let r = product_minreach(&m, 2).unwrap();
        let json = serde_json::to_string(&oracle_report(&m, &r)).unwrap();
        assert!(json.starts_with(r#"{"model":"relay","n":2,"ub":"#), "{json}");
        assert!(json.contains(r#"{"location":"q3","bound":6,"strict":false}"#), "{json}");
    }

    #[test]
    fn check_schema_carries_the_copy_count() {
        let m = relay();
        let map = solve_minreach(&m).unwrap();
        let sa = build_summary(&m, &map);
        let q3 = m.location_index("q3").unwrap();
        let r = check_reachability(&sa, &[q3], 2);
        let json = serde_json::to_string(&check_report(&sa.base.name, &r)).unwrap();
        assert!(json.starts_with(r#"{"model":"relay_summary","copies":2,"#), "{json}");
    }

    #[test]
    fn flood_report_freezes_relay_certificates() {
        let m = relay();
        let map = solve_minreach(&m).unwrap();
        let sa = build_summary(&m, &map);
        let certs = certify_all(&m, &sa, &map).unwrap();
        let ordered: Vec<_> = certs.values().collect();
        let report = flood_report_verified(&m, &ordered);
        let json = serde_json::to_string(&report).unwrap();
        assert!(
            json.contains(
                r#"{"location":"q0","width":2,"kind":"lasso","loop":[1,0],"d1":{"val":0,"eps":0},"d2":{"val":0,"eps":0},"d3":{"val":2,"eps":0},"T":{"val":4,"eps":0}}"#
            ),
            "{json}"
        );
        assert!(
            json.contains(r#"{"location":"q1","width":1,"kind":"trivial_invariant"}"#),
            "{json}"
        );
        let table = flood_table(&report);
        assert!(table.contains("verified"), "{table}");
        assert!(table.contains("q0"), "{table}");
    }

    #[test]
    fn tables_align_and_name_unreachable_rows() {
        let m = relay();
        let map = solve_minreach(&m).unwrap();
        let table = minreach_table(&map, true);
        assert!(table.contains("location  time"), "{table}");
        assert!(table.contains("q_init    0"), "{table}");
        assert!(table.contains("q3        6"), "{table}");
        assert!(table.contains("witness q3: #3@4 #4@6"), "{table}");
    }

    #[test]
    fn reports_are_deterministic() {
        let m = relay();
        let map = solve_minreach(&m).unwrap();
        let a = serde_json::to_string(&minreach_report(&map, true)).unwrap();
        let b = serde_json::to_string(&minreach_report(&map, true)).unwrap();
        assert_eq!(a, b);
    }
}
