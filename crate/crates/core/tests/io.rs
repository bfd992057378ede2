mod common;

use common::corpus;
use plcw::io::*;
use plcw::moves::{apply_script, search_equivalence};
use plcw::{are_isomorphic, Error};

const DATA: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../../data");

fn data(name: &str) -> String {
    std::fs::read_to_string(format!("{DATA}/{name}")).unwrap()
}

#[test]
fn every_corpus_complex_round_trips() {
    for (name, k) in corpus() {
        let text = print_complex(&k);
        let back = parse_complex(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(back, k, "{name}");
        assert_eq!(print_complex(&back), text, "{name}");
    }
}

#[test]
fn shorthand_round_trips_for_polygon_complexes() {
    for (name, k) in corpus().into_iter().filter(|(_, k)| k.dimension() <= 2) {
        let Ok(text) = print_shorthand(&k) else {
            continue;
        };
        let back = parse_complex(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert!(are_isomorphic(&back, &k).is_some(), "{name}");
        assert_eq!(print_complex(&back), print_complex(&k), "{name}");
    }
}

#[test]
fn data_files_parse_and_validate() {
    for f in std::fs::read_dir(DATA).unwrap() {
        let path = f.unwrap().path();
        if path.extension().is_some_and(|e| e == "plcw") {
            let k = parse_complex(&std::fs::read_to_string(&path).unwrap()).unwrap();
            assert!(plcw::validate(&k).is_valid(), "{}", path.display());
        }
    }
}

#[test]
fn witness_script_in_data_replays() {
    let a = parse_complex(&data("disk1.plcw")).unwrap();
    let b = parse_complex(&data("disk_radius.plcw")).unwrap();
    let s = parse_script(&data("disk_to_radius.moves"), &a).unwrap();
    assert_eq!(s.len(), 5);
    let (end, _) = apply_script(&a, &s).unwrap();
    assert!(are_isomorphic(&end, &b).is_some());
}

#[test]
fn found_scripts_print_and_parse_back() {
    let a = parse_complex(&data("disk1.plcw")).unwrap();
    let b = parse_complex(&data("disk_radius.plcw")).unwrap();
    let s = search_equivalence(&a, &b, 5).unwrap();
    let text = print_script(&a, &s).unwrap();
    assert_eq!(parse_script(&text, &a).unwrap(), s);
}

#[test]
fn script_labels_and_defaults() {
    let k = parse_complex(&data("pentagon.plcw")).unwrap();
    let s = parse_script(
        "plcw-moves 1\nsplit F plus e0 e1 as A _ chord\nerase chord as \"whole F\"\n",
        &k,
    )
    .unwrap();
    let (end, trace) = apply_script(&k, &s).unwrap();
    assert!(end.find("whole F").is_some());
    let (mid, _) = apply_script(&k, &plcw::moves::MoveScript::new(s.moves[..1].to_vec())).unwrap();
    assert!(mid.find("A").is_some() && mid.find("F-").is_some() && mid.find("chord").is_some());
    assert_eq!(trace.len(), 2);
    let text = print_script(&k, &s).unwrap();
    assert!(text.contains("as A _ chord"), "{text}");
    assert!(text.contains("\"whole F\""), "{text}");
}

fn parse_err(src: &str) -> (usize, usize) {
    match parse_complex(src) {
        Err(Error::Parse { line, col, .. }) => (line, col),
        other => panic!("{other:?}"),
    }
}

#[test]
fn complex_errors_carry_positions() {
    assert_eq!(parse_err("plcw 2\n"), (1, 6));
    assert_eq!(parse_err("nope 1\n"), (1, 1));
    assert_eq!(parse_err("plcw 1\nvertex v\nedge e v w\n").0, 3);
    assert_eq!(
        parse_err("plcw 1\nvertex v\nedge e v v\nface F e x\n"),
        (4, 10)
    );
    assert_eq!(parse_err("plcw 1\ncell 0 0 \"open\n"), (2, 10));
    assert!(matches!(parse_complex(""), Err(Error::Parse { .. })));
}

#[test]
fn script_errors_carry_step_numbers() {
    let k = parse_complex(&data("pentagon.plcw")).unwrap();
    for (src, step) in [
        ("plcw-moves 1\nradial F\nerase nothing\n", 2),
        ("plcw-moves 1\nsplit F plus e0 e2\n", 1),
        ("plcw-moves 1\nwiggle F\n", 1),
    ] {
        match parse_script(src, &k) {
            Err(Error::Step { step: s, .. }) => assert_eq!(s, step, "{src}"),
            other => panic!("{src}: {other:?}"),
        }
    }
}

#[test]
fn comments_and_quotes() {
    let src = "plcw 1 // header\n// a comment line\nvertex \"a b\" \"#1\"\nedge \"x\\\"y\" \"a b\" \"#1\"\n";
    let k = parse_complex(src).unwrap();
    assert!(k.find("a b").is_some() && k.find("#1").is_some() && k.find("x\"y").is_some());
    let again = parse_complex(&print_complex(&k)).unwrap();
    assert_eq!(again, k);
}

#[test]
fn poset_export_lists_every_cell() {
    let k = parse_complex(&data("disk_radius.plcw")).unwrap();
    let dot = face_poset_dot(&k);
    assert!(dot.starts_with("digraph poset {"));
    assert_eq!(dot.matches(" dim=").count(), k.len());
    assert!(dot.contains("rankdir=BT"));
    // b meets w at both ends, and C runs over a twice
    assert!(dot.contains("n3 -> n1 [label=\"2\"];"));
    assert!(dot.contains("n4 -> n2 [label=\"2\"];"));
}
