//! C bindings for the `dtnv` timed-network verification library.
//!
//! The API follows the usual handle-and-status-code conventions:
//!
//! * Handles ([`DtnvModel`], [`DtnvMinReach`]) are opaque heap objects.
//!   Every handle returned through an out-pointer is owned by the caller
//!   and must be released with its matching `*_free` function exactly
//!   once. Freeing `NULL` is a no-op.
//! * Strings returned through `char **` out-pointers are NUL-terminated
//!   UTF-8 owned by the caller; release them with [`dtnv_string_free`].
//! * Every fallible function returns a [`DtnvStatus`]. On any status
//!   other than `DTNV_STATUS_OK` the out-pointers are left untouched and
//!   [`dtnv_last_error_message`] returns a human-readable description.
//!   The message is thread-local and valid until the next failing call
//!   on the same thread.
//! * Handles are not internally synchronized. Sharing one across
//!   threads requires external locking; distinct handles are
//!   independent.
//!
//! Panics never unwind across the boundary: they are caught and
//! reported as `DTNV_STATUS_INTERNAL`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::fmt::Write as _;
use std::panic::{catch_unwind, AssertUnwindSafe};

use dtnv::benchgen::{gen_gcs, gen_random, gen_star, RandomLimits};
use dtnv::flooding::{certify_all, cutoff};
use dtnv::minreach::{solve_minreach, MinReachMap};
use dtnv::model::{Gta, LocationId, TimeBound};
use dtnv::parse::parse_gta;
use dtnv::render::{export_dot, write_gta};
use dtnv::report::minreach_report;
use dtnv::summary::{build_summary, Soundness};

/// Status code returned by every fallible function in this API.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DtnvStatus {
    /// The call succeeded.
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// The model text failed to parse.
    ParseError = 3,
    /// A numeric argument was outside its documented range.
    InvalidArgument = 4,
    /// Solving failed, e.g. because the search horizon is unbounded.
    SolveError = 5,
    /// Flooding certification failed, so no cutoff could be produced.
    CertifyError = 6,
    /// The minreach handle was not solved from the given model.
    ModelMismatch = 7,
    /// An internal invariant was violated.
    Internal = 8,
}

/// Opaque handle to a parsed or generated model.
pub struct DtnvModel {
    inner: Gta,
}

/// Opaque handle to the solved minimum reach times of a model.
pub struct DtnvMinReach {
    inner: MinReachMap,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

/// Record `message` for [`dtnv_last_error_message`] and pass `status`
/// through, so call sites read `return fail(status, ...)`.
fn fail(status: DtnvStatus, message: impl std::fmt::Display) -> DtnvStatus {
    let text = CString::new(message.to_string())
        .unwrap_or_else(|_| CString::new("error message contained a NUL byte").unwrap());
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(text));
    status
}

/// Run an FFI body, converting panics into an error status instead of
/// letting them unwind across the C boundary.
fn guarded(body: impl FnOnce() -> DtnvStatus) -> DtnvStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(payload) => {
            let message = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unexpected panic".to_string());
            fail(DtnvStatus::Internal, message)
        }
    }
}

/// # Safety
/// `ptr` must be null or a NUL-terminated string.
unsafe fn read_str<'a>(ptr: *const c_char, what: &str) -> Result<&'a str, DtnvStatus> {
    if ptr.is_null() {
        return Err(fail(
            DtnvStatus::NullArgument,
            format!("{what} must not be null"),
        ));
    }
    CStr::from_ptr(ptr)
        .to_str()
        .map_err(|_| fail(DtnvStatus::InvalidUtf8, format!("{what} must be valid UTF-8")))
}

unsafe fn give_model(model: Gta, out: *mut *mut DtnvModel) -> DtnvStatus {
    if out.is_null() {
        return fail(DtnvStatus::NullArgument, "out must not be null");
    }
    *out = Box::into_raw(Box::new(DtnvModel { inner: model }));
    DtnvStatus::Ok
}

unsafe fn give_string(text: String, out: *mut *mut c_char) -> DtnvStatus {
    if out.is_null() {
        return fail(DtnvStatus::NullArgument, "out must not be null");
    }
    match CString::new(text) {
        Ok(c) => {
            *out = c.into_raw();
            DtnvStatus::Ok
        }
        Err(_) => fail(DtnvStatus::Internal, "produced text contained a NUL byte"),
    }
}

unsafe fn borrow_model<'a>(ptr: *const DtnvModel) -> Result<&'a Gta, DtnvStatus> {
    ptr.as_ref()
        .map(|m| &m.inner)
        .ok_or_else(|| fail(DtnvStatus::NullArgument, "model must not be null"))
}

unsafe fn borrow_minreach<'a>(ptr: *const DtnvMinReach) -> Result<&'a MinReachMap, DtnvStatus> {
    ptr.as_ref()
        .map(|m| &m.inner)
        .ok_or_else(|| fail(DtnvStatus::NullArgument, "minreach must not be null"))
}

/// The minreach handle must describe exactly the model it is paired
/// with; the name and location list pin that down.
fn solved_from(map: &MinReachMap, model: &Gta) -> bool {
    map.model == model.name
        && map.locations.len() == model.locations.len()
        && map
            .locations
            .iter()
            .enumerate()
            .all(|(i, name)| model.location_name(LocationId(i)) == name)
}

/// Library version as a static string; do not free.
#[no_mangle]
pub extern "C" fn dtnv_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Message for the most recent failure on this thread, or null if no
/// call has failed yet. The pointer stays valid until the next failing
/// call on the same thread; do not free it.
#[no_mangle]
pub extern "C" fn dtnv_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map(|c| c.as_ptr())
            .unwrap_or(std::ptr::null())
    })
}

/// Parse a model from its textual format into a new handle.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be a valid
/// pointer to write a handle through.
#[no_mangle]
pub unsafe extern "C" fn dtnv_model_parse(
    text: *const c_char,
    out: *mut *mut DtnvModel,
) -> DtnvStatus {
    guarded(|| {
        let text = match read_str(text, "text") {
            Ok(t) => t,
            Err(status) => return status,
        };
        match parse_gta(text) {
            Ok(model) => give_model(model, out),
            Err(diagnostics) => {
                let mut message = String::from("model text is invalid");
                for d in diagnostics {
                    let _ = write!(message, "\n  {d}");
                }
                fail(DtnvStatus::ParseError, message)
            }
        }
    })
}

/// Generate the guard-chain ring benchmark with `k >= 2` rings, with or
/// without invariants on the guard locations.
///
/// # Safety
/// `out` must be a valid pointer to write a handle through.
#[no_mangle]
pub unsafe extern "C" fn dtnv_gen_gcs(
    k: u32,
    with_invariants: bool,
    out: *mut *mut DtnvModel,
) -> DtnvStatus {
    guarded(|| {
        if k < 2 {
            return fail(DtnvStatus::InvalidArgument, "gcs generation needs k >= 2");
        }
        give_model(gen_gcs(k as usize, with_invariants), out)
    })
}

/// Generate the star benchmark with `k >= 1` branches.
///
/// # Safety
/// `out` must be a valid pointer to write a handle through.
#[no_mangle]
pub unsafe extern "C" fn dtnv_gen_star(k: u32, out: *mut *mut DtnvModel) -> DtnvStatus {
    guarded(|| {
        if k < 1 {
            return fail(DtnvStatus::InvalidArgument, "star generation needs k >= 1");
        }
        give_model(gen_star(k as usize), out)
    })
}

/// Generate a seeded random model; `persistent` restricts generation to
/// models whose guard locations have no invariants.
///
/// # Safety
/// `out` must be a valid pointer to write a handle through.
#[no_mangle]
pub unsafe extern "C" fn dtnv_gen_random(
    seed: u64,
    persistent: bool,
    out: *mut *mut DtnvModel,
) -> DtnvStatus {
    guarded(|| {
        let limits = RandomLimits {
            persistent,
            ..RandomLimits::default()
        };
        give_model(gen_random(seed, &limits), out)
    })
}

/// Release a model handle. Passing null is a no-op.
///
/// # Safety
/// `model` must be null or a handle obtained from this API that has not
/// been freed yet.
#[no_mangle]
pub unsafe extern "C" fn dtnv_model_free(model: *mut DtnvModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

/// Render a model back into its textual format.
///
/// # Safety
/// `model` must be a live handle; `out` must be a valid pointer to
/// write a string through.
#[no_mangle]
pub unsafe extern "C" fn dtnv_model_write(
    model: *const DtnvModel,
    out: *mut *mut c_char,
) -> DtnvStatus {
    guarded(|| match borrow_model(model) {
        Ok(m) => give_string(write_gta(m), out),
        Err(status) => status,
    })
}

/// Render a model as a Graphviz digraph.
///
/// # Safety
/// `model` must be a live handle; `out` must be a valid pointer to
/// write a string through.
#[no_mangle]
pub unsafe extern "C" fn dtnv_model_dot(
    model: *const DtnvModel,
    out: *mut *mut c_char,
) -> DtnvStatus {
    guarded(|| match borrow_model(model) {
        Ok(m) => give_string(export_dot(m), out),
        Err(status) => status,
    })
}

/// Compute the minimum time at which each location becomes reachable in
/// some network of copies of the model.
///
/// # Safety
/// `model` must be a live handle; `out` must be a valid pointer to
/// write a handle through.
#[no_mangle]
pub unsafe extern "C" fn dtnv_minreach_solve(
    model: *const DtnvModel,
    out: *mut *mut DtnvMinReach,
) -> DtnvStatus {
    guarded(|| {
        let m = match borrow_model(model) {
            Ok(m) => m,
            Err(status) => return status,
        };
        if out.is_null() {
            return fail(DtnvStatus::NullArgument, "out must not be null");
        }
        match solve_minreach(m) {
            Ok(map) => {
                *out = Box::into_raw(Box::new(DtnvMinReach { inner: map }));
                DtnvStatus::Ok
            }
            Err(err) => fail(DtnvStatus::SolveError, err),
        }
    })
}

/// Release a minreach handle. Passing null is a no-op.
///
/// # Safety
/// `minreach` must be null or a handle obtained from this API that has
/// not been freed yet.
#[no_mangle]
pub unsafe extern "C" fn dtnv_minreach_free(minreach: *mut DtnvMinReach) {
    if !minreach.is_null() {
        drop(Box::from_raw(minreach));
    }
}

/// Serialize solved minimum reach times as a JSON document, optionally
/// including one minimal-time witness path per reachable location.
///
/// # Safety
/// `minreach` must be a live handle; `out` must be a valid pointer to
/// write a string through.
#[no_mangle]
pub unsafe extern "C" fn dtnv_minreach_json(
    minreach: *const DtnvMinReach,
    witnesses: bool,
    out: *mut *mut c_char,
) -> DtnvStatus {
    guarded(|| {
        let map = match borrow_minreach(minreach) {
            Ok(m) => m,
            Err(status) => return status,
        };
        match serde_json::to_string(&minreach_report(map, witnesses)) {
            Ok(json) => give_string(json, out),
            Err(err) => fail(DtnvStatus::Internal, err),
        }
    })
}

/// Look up the minimum reach time of one location by name. On success
/// `*reachable` says whether the location can be reached at all; when it
/// is true, `*value` and `*strict` describe the bound (`> value` for a
/// strict bound, `>= value` reaching exactly at `value` otherwise).
/// Unreachable locations leave `*value` and `*strict` zeroed.
///
/// # Safety
/// `minreach` must be a live handle; `location` must be a
/// NUL-terminated string; `reachable`, `value`, and `strict` must be
/// valid pointers.
#[no_mangle]
pub unsafe extern "C" fn dtnv_minreach_bound(
    minreach: *const DtnvMinReach,
    location: *const c_char,
    reachable: *mut bool,
    value: *mut u64,
    strict: *mut bool,
) -> DtnvStatus {
    guarded(|| {
        let map = match borrow_minreach(minreach) {
            Ok(m) => m,
            Err(status) => return status,
        };
        let name = match read_str(location, "location") {
            Ok(n) => n,
            Err(status) => return status,
        };
        if reachable.is_null() || value.is_null() || strict.is_null() {
            return fail(DtnvStatus::NullArgument, "out pointers must not be null");
        }
        let Some(ix) = map.locations.iter().position(|l| l == name) else {
            return fail(
                DtnvStatus::InvalidArgument,
                format!("unknown location `{name}`"),
            );
        };
        match map.bounds[ix] {
            TimeBound::Finite { value: v, strict: s } => {
                *reachable = true;
                *value = v;
                *strict = s;
            }
            TimeBound::Infinite => {
                *reachable = false;
                *value = 0;
                *strict = false;
            }
        }
        DtnvStatus::Ok
    })
}

/// Build the summary automaton of a model from its solved minimum reach
/// times and render it, prefixed with a `# soundness:` line. The
/// summary is certified where possible; `*sound` (optional, may be
/// null) reports whether the rendered summary is known to be exact.
///
/// # Safety
/// `model` and `minreach` must be live handles; `out` must be a valid
/// pointer to write a string through.
#[no_mangle]
pub unsafe extern "C" fn dtnv_summary_build(
    model: *const DtnvModel,
    minreach: *const DtnvMinReach,
    sound: *mut bool,
    out: *mut *mut c_char,
) -> DtnvStatus {
    guarded(|| {
        let m = match borrow_model(model) {
            Ok(m) => m,
            Err(status) => return status,
        };
        let map = match borrow_minreach(minreach) {
            Ok(m) => m,
            Err(status) => return status,
        };
        if !solved_from(map, m) {
            return fail(
                DtnvStatus::ModelMismatch,
                format!("minreach was solved from `{}`, not `{}`", map.model, m.name),
            );
        }
        let mut sa = build_summary(m, map);
        if sa.soundness == Soundness::Unverified && certify_all(m, &sa, map).is_ok() {
            sa.soundness = Soundness::Sound;
        }
        let tag = match sa.soundness {
            Soundness::Sound => "sound",
            Soundness::Unverified => "unverified",
        };
        if !sound.is_null() {
            *sound = sa.soundness == Soundness::Sound;
        }
        give_string(format!("# soundness: {tag}\n{}", write_gta(&sa.base)), out)
    })
}

/// Compute a cutoff: a network size such that any reachability property
/// over `m` observed processes that holds in the cutoff-sized network
/// holds in every larger one. Models whose guard locations carry
/// invariants need flooding certificates, so this can fail with
/// `DTNV_STATUS_CERTIFY_ERROR`.
///
/// # Safety
/// `model` and `minreach` must be live handles; `out` must be a valid
/// pointer to write the cutoff through.
#[no_mangle]
pub unsafe extern "C" fn dtnv_cutoff(
    model: *const DtnvModel,
    minreach: *const DtnvMinReach,
    m: u64,
    out: *mut u64,
) -> DtnvStatus {
    guarded(|| {
        let gta = match borrow_model(model) {
            Ok(g) => g,
            Err(status) => return status,
        };
        let map = match borrow_minreach(minreach) {
            Ok(m) => m,
            Err(status) => return status,
        };
        if out.is_null() {
            return fail(DtnvStatus::NullArgument, "out must not be null");
        }
        if !solved_from(map, gta) {
            return fail(
                DtnvStatus::ModelMismatch,
                format!("minreach was solved from `{}`, not `{}`", map.model, gta.name),
            );
        }
        let result = if gta.has_persistent_guards() {
            cutoff(gta, map, None, m)
        } else {
            let sa = build_summary(gta, map);
            match certify_all(gta, &sa, map) {
                Ok(certs) => cutoff(gta, map, Some(&certs), m),
                Err(err) => Err(err),
            }
        };
        match result {
            Ok(c) => {
                *out = c;
                DtnvStatus::Ok
            }
            Err(err) => fail(DtnvStatus::CertifyError, err),
        }
    })
}

/// Release a string returned by this API. Passing null is a no-op.
///
/// # Safety
/// `s` must be null or a string obtained from this API that has not
/// been freed yet.
#[no_mangle]
pub unsafe extern "C" fn dtnv_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
