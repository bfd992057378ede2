use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
}

fn plcw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_plcw"))
        .args(args)
        .output()
        .unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn info_on_the_cylinder() {
    let o = plcw(&["info", path(&data("cylinder.plcw"))]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("f = (4, 8, 5, 1)"), "{out}");
    assert!(out.contains("chi = 0"));
    assert!(out.contains("H = (Z, Z, 0, 0)"));
}

#[test]
fn info_shows_the_boundary_multiset() {
    let out = stdout(&plcw(&["info", path(&data("disk_radius.plcw"))]));
    assert!(out.contains("dC = {~a, a, b}"), "{out}");
}

#[test]
fn validate_good_and_bad() {
    let o = plcw(&["validate", path(&data("torus.plcw"))]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "valid");

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.plcw");
    std::fs::write(&bad, "plcw 1\nvertex v\nedge e v w\n").unwrap();
    let o = plcw(&["validate", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
}

#[test]
fn verify_the_witness_script() {
    let (a, s, b) = (
        data("disk1.plcw"),
        data("disk_to_radius.moves"),
        data("disk_radius.plcw"),
    );
    let o = plcw(&["verify", path(&a), path(&s), path(&b)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let o = plcw(&["verify", path(&a), path(&s), path(&data("pentagon.plcw"))]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn apply_writes_a_readable_complex() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("cut.plcw");
    let o = plcw(&[
        "apply",
        path(&data("pentagon.plcw")),
        path(&data("pentagon_chord.moves")),
        "-o",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let info = stdout(&plcw(&["info", out.to_str().unwrap()]));
    assert!(info.contains("f = (5, 6, 2)"), "{info}");
}

#[test]
fn equiv_prints_a_script_that_verifies() {
    let (a, b) = (data("disk1.plcw"), data("disk_radius.plcw"));
    let o = plcw(&["equiv", path(&a), path(&b), "--max-moves", "5"]);
    assert!(o.status.success());
    let script = stdout(&o);
    assert!(script.starts_with("plcw-moves 1\n"));
    assert!(script.lines().count() <= 6);
    let dir = tempfile::tempdir().unwrap();
    let s = dir.path().join("found.moves");
    std::fs::write(&s, &script).unwrap();
    assert!(plcw(&["verify", path(&a), s.to_str().unwrap(), path(&b)])
        .status
        .success());
    let o = plcw(&["equiv", path(&a), path(&b), "--max-moves", "2"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn triangulate_and_constructions() {
    let dir = tempfile::tempdir().unwrap();
    let t = dir.path().join("t.plcw");
    assert!(plcw(&[
        "triangulate",
        path(&data("torus.plcw")),
        "-o",
        t.to_str().unwrap()
    ])
    .status
    .success());
    let info = stdout(&plcw(&["info", t.to_str().unwrap()]));
    assert!(
        info.contains("chi = 0") && info.contains("H = (Z, Z^2, Z)"),
        "{info}"
    );

    let c = stdout(&plcw(&[
        "cone",
        path(&data("pentagon.plcw")),
        "--apex",
        "top",
    ]));
    assert!(c.contains(" top"));
    let j = dir.path().join("j.plcw");
    std::fs::write(
        &j,
        stdout(&plcw(&[
            "join",
            path(&data("disk1.plcw")),
            path(&data("disk1.plcw")),
        ])),
    )
    .unwrap();
    assert!(stdout(&plcw(&["info", j.to_str().unwrap()])).contains("f = (2, 3, 4, 3, 2, 1)"));
    let p = stdout(&plcw(&[
        "product",
        path(&data("disk1.plcw")),
        path(&data("disk1.plcw")),
    ]));
    assert!(p.starts_with("plcw 1\n"));
}

#[test]
fn standard_library_and_poset() {
    let o = plcw(&["standard", "ngon_disk", "3", "--shorthand"]);
    assert!(stdout(&o).contains("face F e0 e1 e2"));
    assert_eq!(plcw(&["standard", "ngon_disk"]).status.code(), Some(2));
    assert_eq!(plcw(&["standard", "klein"]).status.code(), Some(2));
    let dot = stdout(&plcw(&["export-poset", path(&data("two_globe.plcw"))]));
    assert!(dot.starts_with("digraph poset {"));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(plcw(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        plcw(&["info", "/does/not/exist.plcw"]).status.code(),
        Some(2)
    );
}
