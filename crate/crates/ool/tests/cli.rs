mod common;

use common::oracle::{hello_parts, ok_cancel_parts, render, yes_no_parts};
use common::{corpus, golden, ool, stderr, stdout};

fn surface_of(out: &str) -> &str {
    out.split_once("--- surface ---\n").expect("surface marker").1
}

#[test]
fn hello_golden_matches_oracle_and_run() {
    let g = golden("hello_world.out");
    assert_eq!(g, format!("--- surface ---\n{}", render("Title", &hello_parts(), 80, 25)));
    let o = ool(["run", corpus("hello_world.ool").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), g);
}

#[test]
fn ok_cancel_golden_matches_oracle_and_run() {
    let g = golden("ok_cancel.out");
    assert_eq!(g, format!("--- surface ---\n{}", render("Title", &ok_cancel_parts(), 80, 25)));
    assert!(g.contains("|[ Cancel ][ Ok ]|"));
    let o = ool(["run", corpus("ok_cancel.ool").to_str().unwrap()]);
    assert_eq!(stdout(&o), g);
}

#[test]
fn yes_no_golden_matches_oracle_and_run() {
    let g = golden("yes_no_yes.out");
    assert_eq!(g, format!("1\n--- surface ---\n{}", render("Title", &yes_no_parts(), 80, 25)));
    let o = ool([
        "run",
        corpus("yes_no.ool").to_str().unwrap(),
        "--events",
        corpus("yes.evt").to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), g);
}

#[test]
fn own_dialog_definition_paints_like_prelude() {
    let o = ool(["run", corpus("dialog_window_definition.ool").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(surface_of(&stdout(&o)), render("Title", &hello_parts(), 80, 25));
}

#[test]
fn dump_goldens() {
    let hello = corpus("hello_world.ool");
    let hello = hello.to_str().unwrap();
    assert_eq!(stdout(&ool(["tokens", hello])), golden("hello_world.tokens"));
    assert_eq!(stdout(&ool(["ast", hello])), golden("hello_world.ast"));
    let seq = corpus("sequential_execute.ool");
    assert_eq!(stdout(&ool(["expand", seq.to_str().unwrap()])), golden("sequential_execute.expand"));
}

#[test]
fn token_lines_have_position_kind_lexeme() {
    // Checked against the source text directly rather than the golden.
    let src = common::read_corpus("hello_world.ool");
    let lines: Vec<&str> = src.lines().collect();
    for t in golden("hello_world.tokens").lines() {
        let mut it = t.splitn(3, ' ');
        let (pos, kind, lexeme) = (it.next().unwrap(), it.next().unwrap(), it.next().unwrap());
        let (l, c) = pos.split_once(':').unwrap();
        let (l, c): (usize, usize) = (l.parse().unwrap(), c.parse().unwrap());
        let rest = &lines[l - 1][c - 1..];
        let written = if kind == "string-literal" { format!("\"{lexeme}\"") } else { lexeme.to_string() };
        assert!(rest.starts_with(&written), "{t}");
    }
}

#[test]
fn check_is_silent_on_success() {
    let o = ool(["check", corpus("hello_world.ool").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert!(o.stderr.is_empty());
}

#[test]
fn conformance_error_exits_one() {
    let path = corpus("conformance_error.ool");
    let o = ool(["check", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let err = stderr(&o);
    assert!(err.starts_with(&format!("{}:4:4: ", path.display())), "{err}");
    assert!(err.contains("get_min_size/2"), "{err}");
}

#[test]
fn runtime_error_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("div.ool");
    std::fs::write(&src, "program d; integer x;\nprint 1;\nx := 4 / (x - x);\nend program d;\n").unwrap();
    let o = ool(["run", src.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stdout(&o), "1\n");
    assert!(stderr(&o).contains("runtime error @3:8: division by zero"), "{}", stderr(&o));
}

#[test]
fn bad_event_file_is_a_runtime_error() {
    let dir = tempfile::tempdir().unwrap();
    let ev = dir.path().join("bad.evt");
    std::fs::write(&ev, "click Yes\n").unwrap();
    let o = ool(["run", corpus("yes_no.ool").to_str().unwrap(), "--events", ev.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains(":1: runtime error"), "{}", stderr(&o));
}

#[test]
fn usage_errors_exit_three() {
    let hello = corpus("hello_world.ool");
    let hello = hello.to_str().unwrap();
    for args in [
        vec!["frobnicate", hello],
        vec!["run"],
        vec!["run", hello, "--bogus"],
        vec!["check", hello, "--events", hello],
        vec!["run", hello, "--surface", "0x5"],
        vec!["run", hello, "--surface", "80"],
        vec!["run", hello, "--prelude", "threads"],
        vec!["run", "/no/such/file.ool"],
    ] {
        assert_eq!(ool(&args).status.code(), Some(3), "{args:?}");
    }
}

#[test]
fn help_exits_zero() {
    let o = ool(["--help"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("--prelude"));
}

#[test]
fn surface_size_and_no_surface() {
    let hello = corpus("hello_world.ool");
    let hello = hello.to_str().unwrap();
    let o = ool(["run", hello, "--surface", "10x3"]);
    assert_eq!(stdout(&o), format!("--- surface ---\n{}", render("Title", &hello_parts(), 10, 3)));
    let o = ool(["run", hello, "--no-surface"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
}

#[test]
fn prelude_variant_does_not_change_diagnostics() {
    for name in ["conformance_error.ool", "hello_world.ool", "fork_join.ool"] {
        let p = corpus(name);
        let p = p.to_str().unwrap();
        let a = ool(["check", p, "--prelude", "parallel"]);
        let b = ool(["check", p, "--prelude", "sequential"]);
        assert_eq!(a.status.code(), b.status.code(), "{name}");
        assert_eq!(a.stderr, b.stderr, "{name}");
    }
}

#[test]
fn warnings_go_to_stderr() {
    let dir = tempfile::tempdir().unwrap();
    let ev = dir.path().join("maybe.evt");
    std::fs::write(&ev, "press Maybe\npress Yes\n").unwrap();
    let o = ool(["run", corpus("yes_no.ool").to_str().unwrap(), "--events", ev.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("1\n"));
    assert!(stderr(&o).contains("warning: "), "{}", stderr(&o));
    assert!(stderr(&o).contains("no button handles press: Maybe"));
}
