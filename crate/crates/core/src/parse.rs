//! Parser for the line-oriented model format.
//!
//! ```text
//! # comments run to end of line
//! gta <name>
//! clocks <id>(, <id>)*
//! location <id> [initial] [invariant: <conj>]
//! edge <id> -> <id> [guard: <conj>] [reset: <id>(, <id>)*] [locguard: <id>]
//! ```
//!
//! A conjunction `<conj>` is one or more atoms joined by `&&`; an atom is
//! `<id> <rel> <int>` or `<id> - <id> <rel> <int>` with `<rel>` one of
//! `<, <=, =, >=, >`. Identifiers match `[A-Za-z_][A-Za-z0-9_]*`; the name
//! `t` is reserved for the global-time clock and may only appear as the
//! first declared clock. Exactly one location must be marked `initial`.
//!
//! Lines are independent: parsing continues after an error so that a single
//! pass reports every diagnostic, each carrying a [`SourceSpan`].

use std::fmt;

use thiserror::Error;

use crate::model::{
    is_identifier, AtomicConstraint, ClockConstraint, ClockId, Gta, LocGuard, LocationId,
    Relation, Transition, ValidationError, TIME_CLOCK,
};

/// A 1-based position in the input text.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct SourceSpan {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}", self.line, self.column)
    }
}

/// A problem found while parsing. Parsing collects every diagnostic instead
/// of stopping at the first.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Diagnostic {
    #[error("{span}: {message}")]
    SyntaxError { span: SourceSpan, message: String },
    #[error("{span}: unknown clock `{name}`")]
    UnknownClock { span: SourceSpan, name: String },
    #[error("{span}: unknown location `{name}`")]
    UnknownLocation { span: SourceSpan, name: String },
    #[error("{span}: relation `{relation}` is not part of the constraint language")]
    UnsupportedRelation { span: SourceSpan, relation: String },
}

impl Diagnostic {
    pub fn span(&self) -> SourceSpan {
        match *self {
            Diagnostic::SyntaxError { span, .. }
            | Diagnostic::UnknownClock { span, .. }
            | Diagnostic::UnknownLocation { span, .. }
            | Diagnostic::UnsupportedRelation { span, .. } => span,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Tok<'a> {
    Ident(&'a str),
    Int(u64),
    Arrow,
    Comma,
    Colon,
    Minus,
    AndAnd,
    Rel(Relation),
    /// `!=` — recognised so it can be reported as unsupported.
    NotEqual,
    /// `==` — recognised so the error can suggest `=`.
    DoubleEqual,
}

fn syntax(span: SourceSpan, message: impl Into<String>) -> Diagnostic {
    Diagnostic::SyntaxError {
        span,
        message: message.into(),
    }
}

/// Tokenize one comment-stripped line. Returns `None` after recording a
/// diagnostic for an unrecognisable character or numeral.
fn tokenize<'a>(
    line: &'a str,
    line_no: usize,
    diags: &mut Vec<Diagnostic>,
) -> Option<Vec<(Tok<'a>, usize)>> {
    let bytes = line.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let col = i + 1;
        let span = SourceSpan { line: line_no, column: col };
        match c {
            ' ' | '\t' | '\r' => i += 1,
            'A'..='Z' | 'a'..='z' | '_' => {
                let start = i;
                while i < bytes.len()
                    && ((bytes[i] as char).is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                toks.push((Tok::Ident(&line[start..i]), col));
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && (bytes[i] as char).is_ascii_digit() {
                    i += 1;
                }
                match line[start..i].parse::<u64>() {
                    Ok(v) => toks.push((Tok::Int(v), col)),
                    Err(_) => {
                        diags.push(syntax(span, format!("numeral `{}` is too large", &line[start..i])));
                        return None;
                    }
                }
            }
            '-' => {
                if bytes.get(i + 1) == Some(&b'>') {
                    toks.push((Tok::Arrow, col));
                    i += 2;
                } else {
                    toks.push((Tok::Minus, col));
                    i += 1;
                }
            }
            ',' => {
                toks.push((Tok::Comma, col));
                i += 1;
            }
            ':' => {
                toks.push((Tok::Colon, col));
                i += 1;
            }
            '&' => {
                if bytes.get(i + 1) == Some(&b'&') {
                    toks.push((Tok::AndAnd, col));
                    i += 2;
                } else {
                    diags.push(syntax(span, "stray `&`; conjunction is written `&&`"));
                    return None;
                }
            }
            '<' => {
                if bytes.get(i + 1) == Some(&b'=') {
                    toks.push((Tok::Rel(Relation::Le), col));
                    i += 2;
                } else {
                    toks.push((Tok::Rel(Relation::Lt), col));
                    i += 1;
                }
            }
            '>' => {
                if bytes.get(i + 1) == Some(&b'=') {
                    toks.push((Tok::Rel(Relation::Ge), col));
                    i += 2;
                } else {
                    toks.push((Tok::Rel(Relation::Gt), col));
                    i += 1;
                }
            }
            '=' => {
                if bytes.get(i + 1) == Some(&b'=') {
                    toks.push((Tok::DoubleEqual, col));
                    i += 2;
                } else {
                    toks.push((Tok::Rel(Relation::Eq), col));
                    i += 1;
                }
            }
            '!' => {
                if bytes.get(i + 1) == Some(&b'=') {
                    toks.push((Tok::NotEqual, col));
                    i += 2;
                } else {
                    diags.push(syntax(span, "unexpected character `!`"));
                    return None;
                }
            }
            other => {
                diags.push(syntax(span, format!("unexpected character `{other}`")));
                return None;
            }
        }
    }
    Some(toks)
}

/// A token stream over one line, with the position of end-of-line for
/// errors that point past the final token.
struct Line<'a> {
    toks: Vec<(Tok<'a>, usize)>,
    pos: usize,
    line_no: usize,
    eol_column: usize,
}

impl<'a> Line<'a> {
    fn peek(&self) -> Option<Tok<'a>> {
        self.toks.get(self.pos).map(|&(t, _)| t)
    }

    fn next(&mut self) -> Option<(Tok<'a>, usize)> {
        let t = self.toks.get(self.pos).copied();
        self.pos += 1;
        t
    }

    fn span_here(&self) -> SourceSpan {
        let column = self
            .toks
            .get(self.pos)
            .map(|&(_, c)| c)
            .unwrap_or(self.eol_column);
        SourceSpan {
            line: self.line_no,
            column,
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    fn expect_ident(&mut self, what: &str) -> Result<(&'a str, SourceSpan), Diagnostic> {
        let span = self.span_here();
        match self.next() {
            Some((Tok::Ident(s), _)) => Ok((s, span)),
            _ => Err(syntax(span, format!("expected {what}"))),
        }
    }

    fn expect(&mut self, tok: Tok<'a>, what: &str) -> Result<(), Diagnostic> {
        let span = self.span_here();
        match self.next() {
            Some((t, _)) if t == tok => Ok(()),
            _ => Err(syntax(span, format!("expected {what}"))),
        }
    }

    fn expect_end(&self) -> Result<(), Diagnostic> {
        if self.at_end() {
            Ok(())
        } else {
            Err(syntax(self.span_here(), "unexpected trailing input"))
        }
    }
}

/// Intermediate representation of the declarations, collected in a first
/// pass so that later lines may refer to earlier-declared names and vice
/// versa.
#[derive(Default)]
struct Decls<'a> {
    name: Option<(&'a str, SourceSpan)>,
    clocks: Vec<&'a str>,
    clocks_span: Option<SourceSpan>,
    locations: Vec<&'a str>,
    location_spans: Vec<SourceSpan>,
}

/// Parse a model from text. On failure returns every diagnostic found, in
/// source order. The returned model always passes [`Gta::validate`].
pub fn parse_gta(text: &str) -> Result<Gta, Vec<Diagnostic>> {
    let mut diags = Vec::new();

    // Strip comments, keep line numbers, tokenize.
    let mut lines = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let stripped = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        };
        if stripped.trim().is_empty() {
            continue;
        }
        if let Some(toks) = tokenize(stripped, no + 1, &mut diags) {
            lines.push(Line {
                toks,
                pos: 0,
                line_no: no + 1,
                eol_column: stripped.len() + 1,
            });
        }
    }

    // First pass: header, clocks, location names.
    let mut decls = Decls::default();
    for line in &mut lines {
        let head_span = line.span_here();
        match line.peek() {
            Some(Tok::Ident("gta")) => {
                line.next();
                match line.expect_ident("model name") {
                    Ok((name, span)) => {
                        if decls.name.is_some() {
                            diags.push(syntax(span, "duplicate `gta` line"));
                        } else if name == TIME_CLOCK || !is_identifier(name) {
                            diags.push(syntax(span, format!("invalid model name `{name}`")));
                        } else {
                            decls.name = Some((name, span));
                        }
                    }
                    Err(d) => diags.push(d),
                }
                if let Err(d) = line.expect_end() {
                    diags.push(d);
                }
            }
            Some(Tok::Ident("clocks")) => {
                line.next();
                if decls.clocks_span.is_some() {
                    diags.push(syntax(head_span, "duplicate `clocks` line"));
                    continue;
                }
                decls.clocks_span = Some(head_span);
                loop {
                    match line.expect_ident("clock name") {
                        Ok((name, span)) => {
                            if name == TIME_CLOCK && !decls.clocks.is_empty() {
                                diags.push(syntax(
                                    span,
                                    "clock `t` is reserved for global time and must come first",
                                ));
                            } else if decls.clocks.contains(&name) {
                                diags.push(syntax(span, format!("duplicate clock `{name}`")));
                            } else {
                                decls.clocks.push(name);
                            }
                        }
                        Err(d) => {
                            diags.push(d);
                            break;
                        }
                    }
                    if line.peek() == Some(Tok::Comma) {
                        line.next();
                    } else {
                        break;
                    }
                }
                if let Err(d) = line.expect_end() {
                    diags.push(d);
                }
            }
            Some(Tok::Ident("location")) => {
                // Only the name is needed in this pass; attributes are
                // handled in the second pass.
                let mut probe = Line {
                    toks: std::mem::take(&mut line.toks),
                    pos: 1,
                    line_no: line.line_no,
                    eol_column: line.eol_column,
                };
                match probe.expect_ident("location name") {
                    Ok((name, span)) => {
                        if name == TIME_CLOCK {
                            diags.push(syntax(span, "`t` is reserved and cannot name a location"));
                        } else if decls.locations.contains(&name) {
                            diags.push(syntax(span, format!("duplicate location `{name}`")));
                        } else {
                            decls.locations.push(name);
                            decls.location_spans.push(span);
                        }
                    }
                    Err(d) => diags.push(d),
                }
                line.toks = probe.toks;
            }
            Some(Tok::Ident("edge")) => {}
            _ => {
                diags.push(syntax(
                    head_span,
                    "expected one of `gta`, `clocks`, `location`, `edge`",
                ));
                line.pos = line.toks.len(); // consume; second pass skips it
            }
        }
    }

    let name = match decls.name {
        Some((n, _)) => n,
        None => {
            diags.push(syntax(
                SourceSpan { line: 1, column: 1 },
                "missing `gta <name>` header",
            ));
            "unnamed"
        }
    };

    let mut model = Gta::new(name);
    for c in &decls.clocks {
        model.add_clock(*c);
    }
    for l in &decls.locations {
        model.add_location(*l);
    }

    // Second pass: location attributes and edges.
    let mut initial: Option<(LocationId, SourceSpan)> = None;
    for line in &mut lines {
        line.pos = 0;
        match line.peek() {
            Some(Tok::Ident("location")) => {
                line.next();
                let (loc_name, _) = match line.expect_ident("location name") {
                    Ok(ok) => ok,
                    Err(_) => continue, // reported in the first pass
                };
                let q = match model.location_index(loc_name) {
                    Some(q) => q,
                    None => continue, // duplicate or reserved; reported already
                };
                if line.peek() == Some(Tok::Ident("initial")) {
                    let span = line.span_here();
                    line.next();
                    match initial {
                        None => initial = Some((q, span)),
                        Some(_) => diags.push(syntax(span, "more than one `initial` location")),
                    }
                }
                if line.peek() == Some(Tok::Ident("invariant")) {
                    line.next();
                    if let Err(d) = line.expect(Tok::Colon, "`:` after `invariant`") {
                        diags.push(d);
                        continue;
                    }
                    match parse_conjunction(line, &model, &mut diags) {
                        Some(cc) => model.set_invariant(q, cc),
                        None => continue,
                    }
                }
                if let Err(d) = line.expect_end() {
                    diags.push(d);
                }
            }
            Some(Tok::Ident("edge")) => {
                line.next();
                if let Some(t) = parse_edge(line, &model, &mut diags) {
                    model.add_transition(t);
                }
            }
            _ => {} // handled in the first pass
        }
    }

    match initial {
        Some((q, _)) => model.initial = q,
        None => diags.push(syntax(
            SourceSpan { line: 1, column: 1 },
            "no location is marked `initial`",
        )),
    }

    if diags.is_empty() {
        // The parser has checked everything validate() checks except the
        // initial invariant at time zero; map that back to a span.
        if let Err(e) = model.validate() {
            let span = match (&e, initial) {
                (ValidationError::InitialInvariantViolated { .. }, Some((q, _))) => {
                    decls.location_spans.get(q.0).copied().unwrap_or(SourceSpan {
                        line: 1,
                        column: 1,
                    })
                }
                _ => SourceSpan { line: 1, column: 1 },
            };
            diags.push(syntax(span, e.to_string()));
        }
    }

    if diags.is_empty() {
        Ok(model)
    } else {
        diags.sort_by_key(|d| d.span());
        Err(diags)
    }
}

/// Parse `<id> <rel> <int>` or `<id> - <id> <rel> <int>`.
fn parse_atom(
    line: &mut Line<'_>,
    model: &Gta,
    diags: &mut Vec<Diagnostic>,
) -> Option<AtomicConstraint> {
    let resolve = |name: &str, span: SourceSpan, diags: &mut Vec<Diagnostic>| -> Option<ClockId> {
        match model.clock_index(name) {
            Some(c) => Some(c),
            None => {
                diags.push(Diagnostic::UnknownClock {
                    span,
                    name: name.to_owned(),
                });
                None
            }
        }
    };

    let (first, first_span) = match line.expect_ident("clock name") {
        Ok(ok) => ok,
        Err(d) => {
            diags.push(d);
            return None;
        }
    };
    let left = resolve(first, first_span, diags);

    let mut right = None;
    if line.peek() == Some(Tok::Minus) {
        line.next();
        let (second, second_span) = match line.expect_ident("clock name after `-`") {
            Ok(ok) => ok,
            Err(d) => {
                diags.push(d);
                return None;
            }
        };
        if second == first {
            diags.push(syntax(
                second_span,
                format!("difference constraint over a single clock `{second}`"),
            ));
            return None;
        }
        right = Some(resolve(second, second_span, diags));
    }

    let rel_span = line.span_here();
    let rel = match line.next() {
        Some((Tok::Rel(r), _)) => r,
        Some((Tok::NotEqual, _)) => {
            diags.push(Diagnostic::UnsupportedRelation {
                span: rel_span,
                relation: "!=".to_owned(),
            });
            return None;
        }
        Some((Tok::DoubleEqual, _)) => {
            diags.push(syntax(rel_span, "equality is written `=`, not `==`"));
            return None;
        }
        _ => {
            diags.push(syntax(rel_span, "expected a relation (`<`, `<=`, `=`, `>=`, `>`)"));
            return None;
        }
    };

    let const_span = line.span_here();
    let constant = match line.next() {
        Some((Tok::Int(v), _)) => v,
        _ => {
            diags.push(syntax(const_span, "expected a non-negative integer constant"));
            return None;
        }
    };

    match (left, right) {
        (Some(l), None) => Some(AtomicConstraint::Clock {
            clock: l,
            rel,
            constant,
        }),
        (Some(l), Some(Some(r))) => Some(AtomicConstraint::Diff {
            left: l,
            right: r,
            rel,
            constant,
        }),
        _ => None, // unknown clock already reported
    }
}

/// Parse `atom (&& atom)*`; stops before the next clause keyword.
fn parse_conjunction(
    line: &mut Line<'_>,
    model: &Gta,
    diags: &mut Vec<Diagnostic>,
) -> Option<ClockConstraint> {
    let mut cc = ClockConstraint::top();
    loop {
        let atom = parse_atom(line, model, diags)?;
        cc.and(atom);
        if line.peek() == Some(Tok::AndAnd) {
            line.next();
        } else {
            return Some(cc);
        }
    }
}

const EDGE_CLAUSES: [&str; 3] = ["guard", "reset", "locguard"];

fn parse_edge(line: &mut Line<'_>, model: &Gta, diags: &mut Vec<Diagnostic>) -> Option<Transition> {
    let resolve_loc = |name: &str, span: SourceSpan, diags: &mut Vec<Diagnostic>| {
        match model.location_index(name) {
            Some(q) => Some(q),
            None => {
                diags.push(Diagnostic::UnknownLocation {
                    span,
                    name: name.to_owned(),
                });
                None
            }
        }
    };

    let (src, src_span) = match line.expect_ident("source location") {
        Ok(ok) => ok,
        Err(d) => {
            diags.push(d);
            return None;
        }
    };
    if let Err(d) = line.expect(Tok::Arrow, "`->`") {
        diags.push(d);
        return None;
    }
    let (dst, dst_span) = match line.expect_ident("target location") {
        Ok(ok) => ok,
        Err(d) => {
            diags.push(d);
            return None;
        }
    };
    let source = resolve_loc(src, src_span, diags);
    let target = resolve_loc(dst, dst_span, diags);

    let mut guard = ClockConstraint::top();
    let mut resets: Vec<ClockId> = Vec::new();
    let mut locguard = LocGuard::Trivial;
    let mut seen: Vec<&str> = Vec::new();

    while !line.at_end() {
        let clause_span = line.span_here();
        let clause = match line.next() {
            Some((Tok::Ident(k), _)) if EDGE_CLAUSES.contains(&k) => k,
            _ => {
                diags.push(syntax(
                    clause_span,
                    "expected `guard:`, `reset:` or `locguard:`",
                ));
                return None;
            }
        };
        if seen.contains(&clause) {
            diags.push(syntax(clause_span, format!("duplicate `{clause}:` clause")));
            return None;
        }
        seen.push(clause);
        if let Err(d) = line.expect(Tok::Colon, "`:` after clause keyword") {
            diags.push(d);
            return None;
        }
        match clause {
            "guard" => guard = parse_conjunction(line, model, diags)?,
            "reset" => loop {
                let (name, span) = match line.expect_ident("clock name") {
                    Ok(ok) => ok,
                    Err(d) => {
                        diags.push(d);
                        return None;
                    }
                };
                if name == TIME_CLOCK {
                    diags.push(syntax(span, "the global-time clock `t` cannot be reset"));
                } else {
                    match model.clock_index(name) {
                        Some(c) => {
                            if !resets.contains(&c) {
                                resets.push(c);
                            }
                        }
                        None => diags.push(Diagnostic::UnknownClock {
                            span,
                            name: name.to_owned(),
                        }),
                    }
                }
                if line.peek() == Some(Tok::Comma) {
                    line.next();
                } else {
                    break;
                }
            },
            "locguard" => {
                let (name, span) = match line.expect_ident("location name") {
                    Ok(ok) => ok,
                    Err(d) => {
                        diags.push(d);
                        return None;
                    }
                };
                if let Some(q) = resolve_loc(name, span, diags) {
                    locguard = LocGuard::Loc(q);
                }
            }
            _ => unreachable!(),
        }
    }

    Some(Transition {
        source: source?,
        guard,
        resets,
        locguard,
        target: target?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::render::write_gta;

    const RELAY: &str = "\
# a two-location handover gadget
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

    #[test]
    fn parses_the_relay_model() {
        let m = parse_gta(RELAY).expect("parses");
        assert_eq!(m.name, "relay");
        assert_eq!(m.clocks, vec!["x"]);
        assert_eq!(
            m.locations,
            vec!["q_init", "q0", "q1", "q2", "q3"]
        );
        assert_eq!(m.initial, LocationId(0));
        assert_eq!(m.transitions.len(), 5);
        assert_eq!(m.transitions[1].resets, vec![ClockId(0)]);
        assert_eq!(m.transitions[1].locguard, LocGuard::Loc(LocationId(1)));
        assert_eq!(m.transitions[3].locguard, LocGuard::Loc(LocationId(2)));
        assert!(m.invariants[1]
            .atoms
            .iter()
            .any(|a| matches!(a, AtomicConstraint::Clock { rel: Relation::Le, constant: 4, .. })));
        assert_eq!(m.validate(), Ok(()));
    }

    #[test]
    fn round_trips_through_the_writer() {
        let m = parse_gta(RELAY).unwrap();
        let text = write_gta(&m);
        let again = parse_gta(&text).unwrap();
        assert_eq!(m, again);
    }

    #[test]
    fn parses_every_relation_and_difference_atoms() {
        let text = "\
gta rels
clocks a, b
location s initial invariant: a - b <= 3 && b >= 0
edge s -> s guard: a < 1 && a <= 2 && a = 3 && a >= 4 && a > 5 && b - a < 2 reset: a, b
";
        let m = parse_gta(text).expect("parses");
        assert_eq!(m.transitions[0].guard.atoms.len(), 6);
        assert_eq!(m.transitions[0].resets, vec![ClockId(0), ClockId(1)]);
        let again = parse_gta(&write_gta(&m)).unwrap();
        assert_eq!(m, again);
    }

    #[test]
    fn accepts_forward_references_and_any_line_order() {
        let text = "\
edge a -> b locguard: b
gta ooo
location b
clocks x
location a initial
";
        let m = parse_gta(text).expect("parses");
        assert_eq!(m.locations, vec!["b", "a"]);
        assert_eq!(m.initial, LocationId(1));
        assert_eq!(m.transitions[0].locguard, LocGuard::Loc(LocationId(0)));
    }

    #[test]
    fn reports_unknown_clock_with_span() {
        let text = "gta m\nclocks x\nlocation a initial\nedge a -> a guard: y <= 1\n";
        let errs = parse_gta(text).unwrap_err();
        assert_eq!(
            errs,
            vec![Diagnostic::UnknownClock {
                span: SourceSpan { line: 4, column: 20 },
                name: "y".to_owned()
            }]
        );
    }

    #[test]
    fn reports_unknown_location_with_span() {
        let text = "gta m\nlocation a initial\nedge a -> nowhere\n";
        let errs = parse_gta(text).unwrap_err();
        assert_eq!(
            errs,
            vec![Diagnostic::UnknownLocation {
                span: SourceSpan { line: 3, column: 11 },
                name: "nowhere".to_owned()
            }]
        );
    }

    #[test]
    fn rejects_inequality_as_unsupported() {
        let text = "gta m\nclocks x\nlocation a initial\nedge a -> a guard: x != 2\n";
        let errs = parse_gta(text).unwrap_err();
        assert_eq!(
            errs,
            vec![Diagnostic::UnsupportedRelation {
                span: SourceSpan { line: 4, column: 22 },
                relation: "!=".to_owned()
            }]
        );
    }

    #[test]
    fn rejects_double_equals_with_a_hint() {
        let text = "gta m\nclocks x\nlocation a initial\nedge a -> a guard: x == 2\n";
        let errs = parse_gta(text).unwrap_err();
        assert!(matches!(&errs[0], Diagnostic::SyntaxError { message, .. }
            if message.contains("`=`")));
    }

    #[test]
    fn collects_multiple_diagnostics_in_source_order() {
        let text = "\
gta m
clocks x
location a initial invariant: y <= 1
edge a -> missing
edge a -> a guard: x != 0
";
        let errs = parse_gta(text).unwrap_err();
        assert_eq!(errs.len(), 3);
        assert!(matches!(errs[0], Diagnostic::UnknownClock { .. }));
        assert!(matches!(errs[1], Diagnostic::UnknownLocation { .. }));
        assert!(matches!(errs[2], Diagnostic::UnsupportedRelation { .. }));
    }

    #[test]
    fn requires_exactly_one_initial_location() {
        let none = "gta m\nlocation a\n";
        let errs = parse_gta(none).unwrap_err();
        assert!(matches!(&errs[0], Diagnostic::SyntaxError { message, .. }
            if message.contains("initial")));

        let two = "gta m\nlocation a initial\nlocation b initial\n";
        let errs = parse_gta(two).unwrap_err();
        assert!(matches!(&errs[0], Diagnostic::SyntaxError { message, .. }
            if message.contains("more than one")));
    }

    #[test]
    fn reserves_t_for_the_leading_clock_position() {
        let ok = "gta m\nclocks t, x\nlocation a initial\nedge a -> a guard: t >= 4 reset: x\n";
        let m = parse_gta(ok).expect("t as first clock is allowed");
        assert!(m.is_time_augmented());

        let misplaced = "gta m\nclocks x, t\nlocation a initial\n";
        let errs = parse_gta(misplaced).unwrap_err();
        assert!(matches!(&errs[0], Diagnostic::SyntaxError { message, .. }
            if message.contains("reserved")));

        let reset_t = "gta m\nclocks t, x\nlocation a initial\nedge a -> a reset: t\n";
        let errs = parse_gta(reset_t).unwrap_err();
        assert!(matches!(&errs[0], Diagnostic::SyntaxError { message, .. }
            if message.contains("cannot be reset")));

        let loc_t = "gta m\nlocation t initial\n";
        assert!(parse_gta(loc_t).is_err());
    }

    #[test]
    fn rejects_violated_initial_invariant_with_location_span() {
        let text = "gta m\nclocks x\nlocation a initial invariant: x >= 1\n";
        let errs = parse_gta(text).unwrap_err();
        assert_eq!(errs[0].span(), SourceSpan { line: 3, column: 10 });
        assert!(matches!(&errs[0], Diagnostic::SyntaxError { message, .. }
            if message.contains("time zero")));
    }

    #[test]
    fn rejects_duplicates_and_stray_lines() {
        let text = "\
gta m
gta again
clocks x
clocks y
location a initial
location a
frobnicate
";
        let errs = parse_gta(text).unwrap_err();
        assert_eq!(errs.len(), 4);
        let messages: Vec<String> = errs.iter().map(|e| e.to_string()).collect();
        assert!(messages[0].contains("duplicate `gta`"));
        assert!(messages[1].contains("duplicate `clocks`"));
        assert!(messages[2].contains("duplicate location"));
        assert!(messages[3].contains("expected one of"));
    }

    #[test]
    fn rejects_trailing_garbage_and_bad_arrows() {
        let errs = parse_gta("gta m\nlocation a initial extra\n").unwrap_err();
        assert!(errs[0].to_string().contains("unexpected trailing input"));
        let errs = parse_gta("gta m\nlocation a initial\nedge a - a\n").unwrap_err();
        assert!(errs[0].to_string().contains("`->`"));
    }

    #[test]
    fn comments_and_blank_lines_are_ignored_everywhere() {
        let text = "\n# leading\ngta m # trailing comment\n\nclocks x # names\nlocation a initial # the hub\n";
        let m = parse_gta(text).expect("parses");
        assert_eq!(m.name, "m");
        assert_eq!(m.clocks, vec!["x"]);
    }

    #[test]
    fn rejects_degenerate_difference_atoms() {
        let text = "gta m\nclocks x\nlocation a initial\nedge a -> a guard: x - x < 1\n";
        let errs = parse_gta(text).unwrap_err();
        assert!(errs[0].to_string().contains("single clock"));
    }

    #[test]
    fn rejects_oversized_numerals() {
        let text = "gta m\nclocks x\nlocation a initial\nedge a -> a guard: x <= 99999999999999999999\n";
        let errs = parse_gta(text).unwrap_err();
        assert!(errs[0].to_string().contains("too large"));
    }
}
