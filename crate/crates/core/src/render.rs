//! Canonical text and Graphviz output for models.
//!
//! [`write_gta`] emits exactly the format accepted by [`crate::parse`]; for
//! any valid model, parsing the written text reproduces the model
//! structurally, and equal models produce byte-identical text.

use std::fmt::Write;

use crate::model::{AtomicConstraint, ClockConstraint, Gta, LocGuard};

/// Render one atom, e.g. `x <= 4` or `x - y < 2`.
pub fn render_atom(model: &Gta, atom: &AtomicConstraint) -> String {
    match *atom {
        AtomicConstraint::Clock {
            clock,
            rel,
            constant,
        } => format!("{} {} {}", model.clock_name(clock), rel, constant),
        AtomicConstraint::Diff {
            left,
            right,
            rel,
            constant,
        } => format!(
            "{} - {} {} {}",
            model.clock_name(left),
            model.clock_name(right),
            rel,
            constant
        ),
    }
}

/// Render a conjunction with `&&` separators; `⊤` renders as `true` (only
/// used in labels, never in the model format, which omits trivial parts).
pub fn render_constraint(model: &Gta, constraint: &ClockConstraint) -> String {
    if constraint.is_top() {
        "true".to_owned()
    } else {
        constraint
            .atoms
            .iter()
            .map(|a| render_atom(model, a))
            .collect::<Vec<_>>()
            .join(" && ")
    }
}

/// Serialize a model to the canonical text format: header, clocks, then
/// locations and edges in declaration order.
pub fn write_gta(model: &Gta) -> String {
    let mut out = String::new();
    writeln!(out, "gta {}", model.name).unwrap();
    if !model.clocks.is_empty() {
        writeln!(out, "clocks {}", model.clocks.join(", ")).unwrap();
    }
    for (i, name) in model.locations.iter().enumerate() {
        write!(out, "location {name}").unwrap();
        if model.initial.0 == i {
            write!(out, " initial").unwrap();
        }
        if !model.invariants[i].is_top() {
            write!(out, " invariant: {}", render_constraint(model, &model.invariants[i])).unwrap();
        }
        out.push('\n');
    }
    for t in &model.transitions {
        write!(
            out,
            "edge {} -> {}",
            model.location_name(t.source),
            model.location_name(t.target)
        )
        .unwrap();
        if !t.guard.is_top() {
            write!(out, " guard: {}", render_constraint(model, &t.guard)).unwrap();
        }
        if !t.resets.is_empty() {
            let names: Vec<&str> = t.resets.iter().map(|&c| model.clock_name(c)).collect();
            write!(out, " reset: {}", names.join(", ")).unwrap();
        }
        if let LocGuard::Loc(q) = t.locguard {
            write!(out, " locguard: {}", model.location_name(q)).unwrap();
        }
        out.push('\n');
    }
    out
}

/// Export the model as a Graphviz digraph. The initial location is drawn
/// double-circled, invariants appear as node sub-labels, resets as
/// `x := 0`, and location guards in square brackets.
pub fn export_dot(model: &Gta) -> String {
    let mut out = String::new();
    writeln!(out, "digraph {} {{", model.name).unwrap();
    writeln!(out, "  rankdir=LR;").unwrap();
    writeln!(out, "  node [shape=circle];").unwrap();
    for (i, name) in model.locations.iter().enumerate() {
        let mut attrs = Vec::new();
        if model.initial.0 == i {
            attrs.push("shape=doublecircle".to_owned());
        }
        if !model.invariants[i].is_top() {
            attrs.push(format!(
                "label=\"{}\\n{}\"",
                name,
                render_constraint(model, &model.invariants[i])
            ));
        }
        if attrs.is_empty() {
            writeln!(out, "  \"{name}\";").unwrap();
        } else {
            writeln!(out, "  \"{name}\" [{}];", attrs.join(", ")).unwrap();
        }
    }
    for t in &model.transitions {
        let mut label = Vec::new();
        if !t.guard.is_top() {
            label.push(render_constraint(model, &t.guard));
        }
        for &c in &t.resets {
            label.push(format!("{} := 0", model.clock_name(c)));
        }
        if let LocGuard::Loc(q) = t.locguard {
            label.push(format!("[{}]", model.location_name(q)));
        }
        write!(
            out,
            "  \"{}\" -> \"{}\"",
            model.location_name(t.source),
            model.location_name(t.target)
        )
        .unwrap();
        if label.is_empty() {
            out.push_str(";\n");
        } else {
            writeln!(out, " [label=\"{}\"];", label.join("\\n")).unwrap();
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{ClockId, LocationId, Relation, Transition};
    use crate::parse::parse_gta;

    fn relay() -> Gta {
        let mut m = Gta::new("relay");
        let x = m.add_clock("x");
        let q_init = m.add_location("q_init");
        let q0 = m.add_location("q0");
        let q1 = m.add_location("q1");
        let q2 = m.add_location("q2");
        let q3 = m.add_location("q3");
        m.set_invariant(
            q0,
            ClockConstraint::atom(AtomicConstraint::Clock {
                clock: x,
                rel: Relation::Le,
                constant: 4,
            }),
        );
        let edge = |source, guard: Option<AtomicConstraint>, resets: Vec<ClockId>, locguard, target| Transition {
            source,
            guard: guard.map(ClockConstraint::atom).unwrap_or_default(),
            resets,
            locguard,
            target,
        };
        let g = |rel, constant| AtomicConstraint::Clock {
            clock: x,
            rel,
            constant,
        };
        m.add_transition(edge(q_init, Some(g(Relation::Eq, 2)), vec![], LocGuard::Trivial, q0));
        m.add_transition(edge(q0, None, vec![x], LocGuard::Loc(q0), q_init));
        m.add_transition(edge(q0, Some(g(Relation::Eq, 4)), vec![], LocGuard::Trivial, q1));
        m.add_transition(edge(q_init, None, vec![x], LocGuard::Loc(q1), q2));
        m.add_transition(edge(q2, Some(g(Relation::Ge, 2)), vec![], LocGuard::Trivial, q3));
        m
    }

    #[test]
    fn writes_the_exact_canonical_text() {
        assert_eq!(
            write_gta(&relay()),
            "\
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
"
        );
    }

    #[test]
    fn writing_is_deterministic_and_round_trips() {
        let m = relay();
        let a = write_gta(&m);
        let b = write_gta(&m.clone());
        assert_eq!(a, b);
        assert_eq!(parse_gta(&a).unwrap(), m);
    }

    #[test]
    fn writes_initial_location_wherever_it_is_declared() {
        let mut m = Gta::new("shifted");
        m.add_location("a");
        m.add_location("b");
        m.initial = LocationId(1);
        let text = write_gta(&m);
        assert!(text.contains("location a\n"));
        assert!(text.contains("location b initial\n"));
        assert_eq!(parse_gta(&text).unwrap().initial, LocationId(1));
    }

    #[test]
    fn dot_export_shape() {
        let dot = export_dot(&relay());
        assert!(dot.starts_with("digraph relay {"));
        assert_eq!(dot.matches(" -> ").count(), 5);
        // One node line per location.
        for name in ["q_init", "q0", "q1", "q2", "q3"] {
            assert!(dot.contains(&format!("\"{name}\"")));
        }
        assert!(dot.contains("\"q_init\" [shape=doublecircle];"));
        assert!(dot.contains("label=\"q0\\nx <= 4\""));
        assert!(dot.contains("\"q0\" -> \"q_init\" [label=\"x := 0\\n[q0]\"];"));
        assert!(dot.contains("\"q_init\" -> \"q0\" [label=\"x = 2\"];"));
        assert!(dot.ends_with("}\n"));
    }

    #[test]
    fn dot_export_is_deterministic() {
        assert_eq!(export_dot(&relay()), export_dot(&relay()));
    }
}
