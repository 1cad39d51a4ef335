#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub fn core_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core")
}

pub fn template(name: &str) -> PathBuf {
    core_dir().join("templates").join(format!("{name}.daml"))
}

pub fn fixture(rel: &str) -> PathBuf {
    core_dir().join("tests/fixtures").join(rel)
}

pub fn golden(name: &str) -> Vec<u8> {
    std::fs::read(core_dir().join("tests/golden").join(name)).unwrap()
}

/// Runs `damlc` with styling disabled.
pub fn damlc<I, S>(args: I) -> Output
where
    I: IntoIterator<Item = S>,
    S: AsRef<std::ffi::OsStr>,
{
    Command::new(env!("CARGO_BIN_EXE_damlc"))
        .args(args)
        .env("DAMLC_NO_COLOR", "1")
        .output()
        .expect("damlc runs")
}

pub fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

pub fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

pub fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}
