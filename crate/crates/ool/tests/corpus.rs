mod common;

use common::{corpus_programs, ool, read_corpus, run_args, CASES};
use ool_core::lexer::tokenize;
use ool_core::syntax::{parse, pretty_print};

#[test]
fn corpus_is_large_enough_and_listed() {
    let programs = corpus_programs();
    assert!(programs.len() >= 12, "{programs:?}");
    for p in &programs {
        assert!(CASES.iter().any(|c| c.file == p), "{p} has no expected outcome");
    }
}

#[test]
fn every_program_round_trips() {
    for name in corpus_programs() {
        let src = read_corpus(&name);
        let tree = parse(&tokenize(&src).unwrap()).unwrap();
        let printed = pretty_print(&tree);
        let again = parse(&tokenize(&printed).unwrap()).unwrap_or_else(|e| panic!("{name}: {e}\n{printed}"));
        assert_eq!(tree, again, "{name}");
        assert_eq!(pretty_print(&again), printed, "{name}");
    }
}

#[test]
fn every_case_exits_as_expected() {
    for c in CASES {
        let o = ool(run_args(c));
        assert_eq!(o.status.code(), Some(c.exit), "{} {:?}: {}", c.file, c.events, common::stderr(&o));
    }
}

#[test]
fn expected_outputs() {
    let cases: &[(&str, Option<&str>, &str)] = &[
        ("yes_no.ool", Some("yes.evt"), "1\n"),
        ("yes_no.ool", Some("no.evt"), "0\n"),
        ("yes_no.ool", Some("empty.evt"), "0\n"),
        ("inheritance.ool", Some("apply_twice.evt"), "2\n"),
        ("nested_dialogs.ool", Some("details_back_quit.evt"), "details opened\ninner closed\nouter closed\n"),
        ("parallel_execute.ool", None, "6\n"),
        ("sequential_execute.ool", None, "1\n2\n3\n"),
        ("user_sequential.ool", None, "1\n2\n3\n"),
        ("fork_join.ool", None, "10\n20\n30\n40\n50\n60\n70\n80\n"),
        ("arithmetic.ool", None, "-19\n4\n8\n-25\n"),
        ("empty.ool", None, ""),
    ];
    for &(file, events, want) in cases {
        let mut args = vec!["run".to_string(), common::corpus(file).display().to_string(), "--no-surface".into()];
        if let Some(ev) = events {
            args.push("--events".into());
            args.push(common::corpus(ev).display().to_string());
        }
        let o = ool(&args);
        assert_eq!(common::stdout(&o), want, "{file} {events:?}");
    }
}

#[test]
fn inheritance_renders_both_buttons() {
    let o = ool(["run", common::corpus("inheritance.ool").to_str().unwrap()]);
    assert!(common::stdout(&o).contains("|[ Apply ][ Cancel ]|"));
}

#[test]
fn outer_similarity_part_is_painted() {
    let o = ool(["run", common::corpus("outer_similarity.ool").to_str().unwrap()]);
    let out = common::stdout(&o);
    assert!(out.contains("|above     |\n|~~~~~~~~~~|\n|below     |"), "{out}");
}
