#![allow(dead_code)]

pub mod oracle;

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/corpus")
}

pub fn corpus(name: &str) -> PathBuf {
    corpus_dir().join(name)
}

pub fn golden(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

pub fn read_corpus(name: &str) -> String {
    std::fs::read_to_string(corpus(name)).unwrap()
}

/// Runs the `ool` binary with `args`.
pub fn ool<I, S>(args: I) -> Output
where
    I: IntoIterator<Item = S>,
    S: AsRef<std::ffi::OsStr>,
{
    Command::new(env!("CARGO_BIN_EXE_ool"))
        .args(args)
        .output()
        .expect("ool binary runs")
}

pub fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

pub fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

/// One corpus program and how it is expected to run.
pub struct Case {
    pub file: &'static str,
    pub events: Option<&'static str>,
    pub exit: i32,
    /// Spawned bodies touch disjoint cells and never print concurrently.
    pub race_free: bool,
}

const fn case(file: &'static str, events: Option<&'static str>, exit: i32) -> Case {
    Case {
        file,
        events,
        exit,
        race_free: true,
    }
}

pub const CASES: &[Case] = &[
    case("hello_world.ool", None, 0),
    case("dialog_window_definition.ool", None, 0),
    case("ok_cancel.ool", None, 0),
    case("parallel_execute.ool", None, 0),
    case("sequential_execute.ool", None, 0),
    case("yes_no.ool", Some("yes.evt"), 0),
    case("yes_no.ool", Some("no.evt"), 0),
    case("yes_no.ool", Some("empty.evt"), 0),
    case("inheritance.ool", Some("apply_twice.evt"), 0),
    case("nested_dialogs.ool", Some("details_back_quit.evt"), 0),
    case("outer_similarity.ool", None, 0),
    case("fork_join.ool", None, 0),
    case("arithmetic.ool", None, 0),
    case("empty.ool", None, 0),
    case("user_sequential.ool", None, 0),
    case("conformance_error.ool", None, 1),
];

/// Every `.ool` file in the corpus directory, sorted.
pub fn corpus_programs() -> Vec<String> {
    let mut names: Vec<String> = std::fs::read_dir(corpus_dir())
        .unwrap()
        .filter_map(|e| e.ok())
        .map(|e| e.file_name().to_string_lossy().into_owned())
        .filter(|n| n.ends_with(".ool"))
        .collect();
    names.sort();
    names
}

pub fn run_args(c: &Case) -> Vec<String> {
    let mut args = vec!["run".to_string(), corpus(c.file).display().to_string()];
    if let Some(ev) = c.events {
        args.push("--events".into());
        args.push(corpus(ev).display().to_string());
    }
    args
}
