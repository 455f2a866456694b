//! Exercises the C surface the way a foreign caller would: raw
//! pointers in, status codes out, explicit frees.

use std::ffi::{CStr, CString};
use std::path::Path;
use std::ptr;

use dtnv_ffi::*;

fn last_error() -> String {
    let ptr = dtnv_last_error_message();
    assert!(!ptr.is_null(), "a failing call must record a message");
    unsafe { CStr::from_ptr(ptr) }.to_str().unwrap().to_string()
}

fn parse(text: &str) -> *mut DtnvModel {
    let text = CString::new(text).unwrap();
    let mut model = ptr::null_mut();
    let status = unsafe { dtnv_model_parse(text.as_ptr(), &mut model) };
    assert_eq!(status, DtnvStatus::Ok, "{}", last_error());
    assert!(!model.is_null());
    model
}

fn parse_file(name: &str) -> *mut DtnvModel {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../models")
        .join(name);
    parse(&std::fs::read_to_string(path).unwrap())
}

fn solve(model: *const DtnvModel) -> *mut DtnvMinReach {
    let mut map = ptr::null_mut();
    let status = unsafe { dtnv_minreach_solve(model, &mut map) };
    assert_eq!(status, DtnvStatus::Ok, "{}", last_error());
    assert!(!map.is_null());
    map
}

fn take_string(give: impl FnOnce(*mut *mut std::ffi::c_char) -> DtnvStatus) -> String {
    let mut out = ptr::null_mut();
    let status = give(&mut out);
    assert_eq!(status, DtnvStatus::Ok, "{}", last_error());
    let text = unsafe { CStr::from_ptr(out) }.to_str().unwrap().to_string();
    unsafe { dtnv_string_free(out) };
    text
}

#[test]
fn version_is_a_static_string() {
    let v = unsafe { CStr::from_ptr(dtnv_version()) }.to_str().unwrap();
    assert!(v.contains('.'), "{v}");
}

#[test]
fn parse_solve_and_query_bounds() {
    let model = parse_file("relay.gta");
    let map = solve(model);

    let q3 = CString::new("q3").unwrap();
    let (mut reachable, mut value, mut strict) = (false, 0u64, true);
    let status = unsafe {
        dtnv_minreach_bound(map, q3.as_ptr(), &mut reachable, &mut value, &mut strict)
    };
    assert_eq!(status, DtnvStatus::Ok);
    assert_eq!((reachable, value, strict), (true, 6, false));

    let missing = CString::new("nowhere").unwrap();
    let status = unsafe {
        dtnv_minreach_bound(map, missing.as_ptr(), &mut reachable, &mut value, &mut strict)
    };
    assert_eq!(status, DtnvStatus::InvalidArgument);
    assert!(last_error().contains("unknown location"), "{}", last_error());

    let json = take_string(|out| unsafe { dtnv_minreach_json(map, false, out) });
    assert!(json.contains("\"model\":\"relay\""), "{json}");
    assert!(json.contains("\"ub\":{\"value\":12,\"strict\":false}"), "{json}");

    unsafe {
        dtnv_minreach_free(map);
        dtnv_model_free(model);
    }
}

#[test]
fn model_text_round_trips() {
    let model = parse_file("relay.gta");
    let text = take_string(|out| unsafe { dtnv_model_write(model, out) });
    let again = parse(&text);
    let text2 = take_string(|out| unsafe { dtnv_model_write(again, out) });
    assert_eq!(text, text2);

    let dot = take_string(|out| unsafe { dtnv_model_dot(model, out) });
    assert!(dot.starts_with("digraph"), "{dot}");

    unsafe {
        dtnv_model_free(again);
        dtnv_model_free(model);
    }
}

#[test]
fn summary_and_cutoff_match_the_cli_behavior() {
    let model = parse_file("relay.gta");
    let map = solve(model);

    let mut sound = false;
    let summary = take_string(|out| unsafe { dtnv_summary_build(model, map, &mut sound, out) });
    assert!(sound);
    assert!(summary.starts_with("# soundness: sound\n"), "{summary}");
    // The rendered summary is itself a valid model.
    let reparsed = parse(summary.split_once('\n').unwrap().1);
    unsafe { dtnv_model_free(reparsed) };

    let mut c = 0u64;
    let status = unsafe { dtnv_cutoff(model, map, 1, &mut c) };
    assert_eq!(status, DtnvStatus::Ok, "{}", last_error());
    assert_eq!(c, 4);

    unsafe {
        dtnv_minreach_free(map);
        dtnv_model_free(model);
    }

    let noinv = parse_file("relay_noinv.gta");
    let noinv_map = solve(noinv);
    let status = unsafe { dtnv_cutoff(noinv, noinv_map, 1, &mut c) };
    assert_eq!(status, DtnvStatus::Ok, "{}", last_error());
    assert_eq!(c, 3);
    unsafe {
        dtnv_minreach_free(noinv_map);
        dtnv_model_free(noinv);
    }
}

#[test]
fn mismatched_handles_are_rejected() {
    let relay = parse_file("relay.gta");
    let map = solve(relay);

    let mut star = ptr::null_mut();
    assert_eq!(unsafe { dtnv_gen_star(2, &mut star) }, DtnvStatus::Ok);

    let mut c = 0u64;
    let status = unsafe { dtnv_cutoff(star, map, 1, &mut c) };
    assert_eq!(status, DtnvStatus::ModelMismatch);
    assert!(last_error().contains("relay"), "{}", last_error());

    let mut out = ptr::null_mut();
    let status = unsafe { dtnv_summary_build(star, map, ptr::null_mut(), &mut out) };
    assert_eq!(status, DtnvStatus::ModelMismatch);

    unsafe {
        dtnv_model_free(star);
        dtnv_minreach_free(map);
        dtnv_model_free(relay);
    }
}

#[test]
fn generators_validate_and_are_deterministic() {
    let mut model = ptr::null_mut();
    assert_eq!(unsafe { dtnv_gen_gcs(1, false, &mut model) }, DtnvStatus::InvalidArgument);
    assert_eq!(unsafe { dtnv_gen_star(0, &mut model) }, DtnvStatus::InvalidArgument);

    let mut a = ptr::null_mut();
    let mut b = ptr::null_mut();
    assert_eq!(unsafe { dtnv_gen_random(7, true, &mut a) }, DtnvStatus::Ok);
    assert_eq!(unsafe { dtnv_gen_random(7, true, &mut b) }, DtnvStatus::Ok);
    let ta = take_string(|out| unsafe { dtnv_model_write(a, out) });
    let tb = take_string(|out| unsafe { dtnv_model_write(b, out) });
    assert_eq!(ta, tb);
    unsafe {
        dtnv_model_free(a);
        dtnv_model_free(b);
    }
}

#[test]
fn error_protocol_covers_null_utf8_and_parse_failures() {
    let mut model = ptr::null_mut();
    assert_eq!(
        unsafe { dtnv_model_parse(ptr::null(), &mut model) },
        DtnvStatus::NullArgument
    );
    assert!(last_error().contains("must not be null"));

    let bogus = CString::new([0xFFu8, 0xFE].as_slice()).unwrap();
    assert_eq!(
        unsafe { dtnv_model_parse(bogus.as_ptr(), &mut model) },
        DtnvStatus::InvalidUtf8
    );

    let broken = CString::new("gta broken\nclocks x\nedge a -> b\n").unwrap();
    assert_eq!(
        unsafe { dtnv_model_parse(broken.as_ptr(), &mut model) },
        DtnvStatus::ParseError
    );
    assert!(last_error().contains("model text is invalid"), "{}", last_error());
    assert!(model.is_null(), "failed parse must not hand out a model");

    // Frees tolerate null.
    unsafe {
        dtnv_model_free(ptr::null_mut());
        dtnv_minreach_free(ptr::null_mut());
        dtnv_string_free(ptr::null_mut());
    }
}
