mod common;

use common::{dtnv, relay_noinv_path, relay_path, write_model, UNFLOODABLE};

fn relay() -> String {
    relay_path().display().to_string()
}

#[test]
fn minreach_prints_an_aligned_table() {
    let (code, out, _) = dtnv(&["minreach", &relay()]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "model relay (horizon 12)\n\
         location  time\n\
         q_init    0\n\
         q0        2\n\
         q1        4\n\
         q2        4\n\
         q3        6\n"
    );
}

#[test]
fn minreach_json_matches_the_documented_schema() {
    let (code, out, _) = dtnv(&["minreach", &relay(), "--json"]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "{\"model\":\"relay\",\"ub\":{\"value\":12,\"strict\":false},\"minreach\":[\
         {\"location\":\"q_init\",\"bound\":0,\"strict\":false},\
         {\"location\":\"q0\",\"bound\":2,\"strict\":false},\
         {\"location\":\"q1\",\"bound\":4,\"strict\":false},\
         {\"location\":\"q2\",\"bound\":4,\"strict\":false},\
         {\"location\":\"q3\",\"bound\":6,\"strict\":false}]}\n"
    );
}

#[test]
fn minreach_witness_lists_transition_firings() {
    let (code, out, _) = dtnv(&["minreach", &relay(), "--witness"]);
    assert_eq!(code, 0);
    assert!(out.contains("witness q3: #3@4 #4@6"), "{out}");
}

#[test]
fn minreach_trace_streams_popped_nodes_to_stderr() {
    let (code, out, err) = dtnv(&["minreach", &relay(), "--trace"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("model relay"), "{out}");
    assert!(err.starts_with("[{"), "{err}");
    assert!(err.contains("\"location\":\"q_init\""), "{err}");
}

#[test]
fn identical_invocations_produce_identical_bytes() {
    let a = dtnv(&["minreach", &relay(), "--json", "--witness"]);
    let b = dtnv(&["minreach", &relay(), "--json", "--witness"]);
    assert_eq!(a, b);
}

#[test]
fn cutoff_depends_on_invariants() {
    let (code, out, _) = dtnv(&["cutoff", &relay(), "-m", "1"]);
    assert_eq!((code, out.as_str()), (0, "4\n"));
    let noinv = relay_noinv_path().display().to_string();
    let (code, out, _) = dtnv(&["cutoff", &noinv, "-m", "1"]);
    assert_eq!((code, out.as_str()), (0, "3\n"));
}

#[test]
fn cutoff_json_names_the_method() {
    let (code, out, _) = dtnv(&["cutoff", &relay(), "-m", "1", "--json"]);
    assert_eq!(code, 0);
    assert!(
        out.starts_with(
            "{\"model\":\"relay\",\"m\":1,\"cutoff\":4,\"method\":\"flooding_certificates\""
        ),
        "{out}"
    );
    let noinv = relay_noinv_path().display().to_string();
    let (_, out, _) = dtnv(&["cutoff", &noinv, "-m", "1", "--json"]);
    assert!(out.contains("\"method\":\"persistent_guards\""), "{out}");
}

#[test]
fn oracle_reports_the_product_size() {
    let (code, out, _) = dtnv(&["oracle", &relay(), "-n", "2", "--json"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("{\"model\":\"relay\",\"n\":2,"), "{out}");
    assert!(out.contains("{\"location\":\"q3\",\"bound\":6,\"strict\":false}"), "{out}");

    let (code, _, err) = dtnv(&["oracle", &relay(), "-n", "9"]);
    assert_eq!(code, 1);
    assert!(err.contains("at most"), "{err}");
}

#[test]
fn floodcheck_verifies_the_relay() {
    let (code, out, _) = dtnv(&["floodcheck", &relay()]);
    assert_eq!(code, 0);
    assert!(out.contains("verified"), "{out}");
    assert!(out.contains("q0"), "{out}");

    let (code, out, _) = dtnv(&["floodcheck", &relay(), "--json"]);
    assert_eq!(code, 0);
    assert!(out.contains("\"status\":\"verified\""), "{out}");
    assert!(out.contains("\"location\":\"q0\",\"width\":2"), "{out}");
    assert!(out.contains("\"location\":\"q1\",\"width\":1"), "{out}");
}

#[test]
fn floodcheck_failure_exits_with_code_two() {
    let (_dir, path) = write_model("gapped.gta", UNFLOODABLE);
    let p = path.display().to_string();
    let (code, out, _) = dtnv(&["floodcheck", &p, "--json"]);
    assert_eq!(code, 2);
    assert!(out.contains("\"status\":\"unverified\""), "{out}");
    assert!(out.contains("\"failures\":["), "{out}");
}

#[test]
fn summary_emits_a_model_the_tool_can_read_back() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("relay_summary.gta");
    let o = out_path.display().to_string();
    let (code, out, _) = dtnv(&["summary", &relay(), "-o", &o]);
    assert_eq!(code, 0);
    assert_eq!(out, "sound\n");
    let text = std::fs::read_to_string(&out_path).unwrap();
    assert!(text.starts_with("# soundness: sound\ngta relay_summary\nclocks t, x\n"), "{text}");
    assert!(text.contains("edge q_init -> q2 guard: t >= 4 reset: x"), "{text}");

    // The emitted summary is a valid model in its own right.
    let (code, _, err) = dtnv(&["minreach", &o]);
    assert_eq!(code, 0, "{err}");
}

#[test]
fn summary_dot_export_is_graphviz() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("relay.dot");
    let o = out_path.display().to_string();
    let (code, _, _) = dtnv(&["summary", &relay(), "-o", &o, "--dot"]);
    assert_eq!(code, 0);
    let text = std::fs::read_to_string(&out_path).unwrap();
    assert!(text.starts_with("digraph relay_summary {"), "{text}");
}

#[test]
fn summary_of_an_unfloodable_model_is_flagged() {
    let (_dir, path) = write_model("gapped.gta", UNFLOODABLE);
    let p = path.display().to_string();
    let dir = tempfile::tempdir().unwrap();
    let o = dir.path().join("out.gta").display().to_string();
    let (code, out, _) = dtnv(&["summary", &p, "-o", &o]);
    assert_eq!(code, 2);
    assert_eq!(out, "unverified\n");
}

#[test]
fn check_queries_bounded_summary_networks() {
    let (code, out, _) = dtnv(&[
        "check", &relay(), "--target", "q3", "--target", "q1", "--copies", "2", "--json",
    ]);
    assert_eq!(code, 0);
    assert!(out.starts_with("{\"model\":\"relay_summary\",\"copies\":2,"), "{out}");
    assert!(out.contains("{\"location\":\"q3\",\"bound\":6,\"strict\":false}"), "{out}");

    let (code, _, err) = dtnv(&["check", &relay(), "--target", "nowhere"]);
    assert_eq!(code, 1);
    assert!(err.contains("nowhere"), "{err}");
}

#[test]
fn generators_emit_deterministic_valid_models() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.gta").display().to_string();
    let b = dir.path().join("b.gta").display().to_string();

    assert_eq!(dtnv(&["gen", "gcs", "3", "--invariants", "-o", &a]).0, 0);
    assert_eq!(dtnv(&["gen", "gcs", "3", "--invariants", "-o", &b]).0, 0);
    assert_eq!(
        std::fs::read_to_string(&a).unwrap(),
        std::fs::read_to_string(&b).unwrap()
    );
    assert_eq!(dtnv(&["minreach", &a]).0, 0);

    assert_eq!(dtnv(&["gen", "star", "4", "-o", &a]).0, 0);
    assert_eq!(dtnv(&["cutoff", &a, "-m", "1"]).1, "5\n");

    assert_eq!(dtnv(&["gen", "random", "7", "--persistent", "-o", &a]).0, 0);
    assert_eq!(dtnv(&["minreach", &a]).0, 0);
}

#[test]
fn unreadable_input_exits_with_an_error() {
    let (code, _, err) = dtnv(&["minreach", "/nonexistent/model.gta"]);
    assert_eq!(code, 1);
    assert!(err.starts_with("error:"), "{err}");
}

#[test]
fn invalid_model_text_lists_diagnostics() {
    let (_dir, path) = write_model("bad.gta", "gta bad\nclocks x\nlocation a initial\nedge a -> nowhere\n");
    let p = path.display().to_string();
    let (code, _, err) = dtnv(&["minreach", &p]);
    assert_eq!(code, 1);
    assert!(err.contains("unknown location"), "{err}");
}
