//! Hand-edited documents that parse but break an invariant.

use plcw::constructions::standard::ngon_disk;
use plcw::io::{parse_complex, print_complex};
use plcw::validate;

fn edited(from: &str, to: &str) -> plcw::Complex {
    let text = print_complex(&ngon_disk(2).unwrap());
    assert!(text.contains(from));
    parse_complex(&text.replacen(from, to, 1)).unwrap()
}

#[test]
fn untouched_document_is_valid() {
    assert!(validate(&edited("cycle 1 1", "cycle 1 1")).is_valid());
}

#[test]
fn cycle_with_a_boundary() {
    let k = edited("  cycle 1 1\n  assign", "  cycle 1 -1\n  assign");
    assert!(!validate(&k).is_valid());
}

#[test]
fn attaching_map_that_does_not_close_up() {
    // both sides of the 2-gon over e0, which runs from v0 to v1 both times
    let k = edited("  assign 0 1 2 3\n", "  assign 0 1 2 2\n");
    let r = validate(&k);
    assert!(!r.is_valid());
    assert!(r.into_result().is_err());
}

#[test]
fn identification_against_orientation() {
    let k = edited(
        "  ident 3 {\n    assign 0 1\n",
        "  ident 3 {\n    assign 1 0\n",
    );
    assert!(!validate(&k).is_valid());
}
