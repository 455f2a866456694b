#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

/// Repo-level sample model with an expiring invariant on `q0`.
pub fn relay_path() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../models/relay.gta")
}

/// The same relay without the invariant (persistent guards).
pub fn relay_noinv_path() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../models/relay_noinv.gta")
}

/// Runs the `dtnv` binary; returns (exit code, stdout, stderr).
pub fn dtnv(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_dtnv"))
        .args(args)
        .output()
        .expect("dtnv binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

/// Writes model text into a fresh temp directory; keep the guard alive
/// for as long as the path is used.
pub fn write_model(name: &str, text: &str) -> (tempfile::TempDir, PathBuf) {
    let dir = tempfile::tempdir().expect("tempdir");
    let path = dir.path().join(name);
    std::fs::write(&path, text).expect("write model");
    (dir, path)
}

/// A guard location that expires immediately and has no loop back:
/// flooding certification must fail on it.
pub const UNFLOODABLE: &str = "\
gta gapped
clocks x
location a initial
location g invariant: x <= 2
location b
edge a -> g guard: x = 2
edge a -> b locguard: g
";
