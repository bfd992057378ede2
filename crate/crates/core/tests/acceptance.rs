//! One line per acceptance criterion; exits non-zero if any fails.

mod common;

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use common::{betti_oracle, chord, corpus, dd_zero, disk1, simplicial_oracle};
use plcw::algebra::{
    boundary_multiset, boundary_pairing, coherent_orientation, homology, incidence_number,
    HomologyGroup, OrientedCell,
};
use plcw::constructions::standard::*;
use plcw::constructions::{cone, join};
use plcw::moves::{
    apply_move, candidate_moves, elementary_subdivide, erase, radial_subdivide, search_equivalence,
    transport_move_through_join, triangulate, Move, SplitLabels,
};
use plcw::{are_isomorphic, validate, CellId, Complex, FVector};

type Outcome = Result<String, String>;
type Check<'a> = Box<dyn Fn() -> Outcome + 'a>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn valid(name: &str, k: &Complex) -> Result<(), String> {
    let r = validate(k);
    ensure(r.is_valid(), || format!("{name}: {}", r.issues[0]))
}

fn corpus_validates() -> Outcome {
    let cyl = cylinder_s1xixi();
    valid("cylinder", &cyl)?;
    let f = cyl.f_vector();
    ensure(f.0 == [4, 8, 5, 1], || format!("cylinder f = {f}"))?;
    ensure(cyl.euler_characteristic() == 0, || {
        "cylinder chi != 0".into()
    })?;
    for (name, k) in corpus() {
        valid(name, &k)?;
    }
    let m = rectangle_to_annulus();
    ensure(m.is_regular_cellular(), || {
        "rectangle to annulus is not regular cellular".into()
    })?;
    Ok(format!(
        "cylinder f = {f}, chi = 0; {} complexes valid",
        corpus().len()
    ))
}

fn boundary_example() -> Outcome {
    let k = disk_with_radius();
    let (c, a, b) = (
        k.find("C").unwrap(),
        k.find("a").unwrap(),
        k.find("b").unwrap(),
    );
    let got = boundary_multiset(&k, OrientedCell::positive(c)).map_err(|e| e.to_string())?;
    let mut counts: BTreeMap<(CellId, i8), usize> = BTreeMap::new();
    for e in got.entries() {
        *counts.entry((e.cell, e.sign)).or_default() += 1;
    }
    let want = BTreeMap::from([((a, 1), 1), ((a, -1), 1), ((b, 1), 1)]);
    let flipped = BTreeMap::from([((a, 1), 1), ((a, -1), 1), ((b, -1), 1)]);
    ensure(counts == want || counts == flipped, || {
        format!("dC = {}", got.display(&k))
    })?;
    let inc =
        |d| incidence_number(&k, OrientedCell::positive(c), OrientedCell::positive(d)).unwrap();
    ensure(inc(a) == 0, || format!("e(C,a) = {}", inc(a)))?;
    ensure(inc(b).abs() == 1, || format!("e(C,b) = {}", inc(b)))?;
    Ok(format!(
        "dC = {}, e(C,a) = 0, e(C,b) = {}",
        got.display(&k),
        inc(b)
    ))
}

/// Every radial subdivision of a positive-dimensional cell and every
/// candidate split or erasure, applied to every corpus complex.
fn all_moves() -> Vec<(String, Complex, Complex)> {
    let mut out = Vec::new();
    for (name, k) in corpus() {
        let mut moves: Vec<Move> = k
            .ids()
            .filter(|&c| k.dim_of(c) > 0)
            .map(|cell| Move::Radial { cell })
            .collect();
        moves.extend(candidate_moves(&k));
        for m in moves {
            let (r, _) = apply_move(&k, &m).unwrap_or_else(|e| panic!("{name}: {m}: {e}"));
            out.push((format!("{name}: {m}"), k.clone(), r));
        }
    }
    out
}

fn boundary_squared(sweep: &[(String, Complex, Complex)]) -> Outcome {
    let mut checks = 0;
    for (name, k) in corpus() {
        ensure(dd_zero(&k), || format!("{name}: dd != 0"))?;
        checks += 1;
    }
    for (what, _, r) in sweep {
        ensure(dd_zero(r), || format!("{what}: dd != 0"))?;
        checks += 1;
    }
    ensure(checks >= 200, || format!("only {checks} checks"))?;
    Ok(format!("{checks} checks"))
}

fn invariance(sweep: &[(String, Complex, Complex)]) -> Outcome {
    for (what, k, r) in sweep {
        ensure(k.euler_characteristic() == r.euler_characteristic(), || {
            format!("{what}: chi changed")
        })?;
        ensure(homology(k) == homology(r), || {
            format!("{what}: homology changed")
        })?;
        ensure(betti_oracle(r) == betti_oracle(k), || {
            format!("{what}: betti numbers changed")
        })?;
    }
    let mut triangulated = 0;
    for (name, k) in corpus() {
        let (t, _) = triangulate(&k).map_err(|e| format!("{name}: {e}"))?;
        ensure(homology(&t) == homology(&k), || {
            format!("{name}: triangulation changed homology")
        })?;
        triangulated += 1;
    }
    let torus = torus_square_word();
    let want = vec![
        HomologyGroup::free(1),
        HomologyGroup::free(2),
        HomologyGroup::free(1),
    ];
    let (t, _) = triangulate(&torus).map_err(|e| e.to_string())?;
    ensure(homology(&torus) == want && homology(&t) == want, || {
        "torus homology".into()
    })?;
    ensure(betti_oracle(&t) == [1, 2, 1], || {
        "torus betti oracle".into()
    })?;
    Ok(format!(
        "{} moves, {triangulated} triangulations; torus (Z, Z^2, Z) before and after ({} cells)",
        sweep.len(),
        t.len()
    ))
}

fn round_trip() -> Outcome {
    let disks: Vec<(String, Complex)> = (1..=6)
        .map(|n| (format!("{n}-gon"), ngon_disk(n).unwrap()))
        .chain([
            ("one-cell disk".to_string(), disk1()),
            ("disk with radius".to_string(), disk_with_radius()),
            ("folded disk".to_string(), common::folded_disk()),
            ("triangle".to_string(), simplex(2).unwrap()),
        ])
        .collect();
    let labels = SplitLabels {
        equator: Some("equator".into()),
        ..SplitLabels::default()
    };
    let mut n = 0;
    for (name, k) in &disks {
        for m in candidate_moves(k) {
            let Move::Elementary { split, .. } = m else {
                continue;
            };
            let (s, _) =
                elementary_subdivide(k, &split, &labels).map_err(|e| format!("{name}: {e}"))?;
            let c0 = s.find("equator").unwrap();
            let (back, _) = erase(&s, c0, None).map_err(|e| format!("{name}: {e}"))?;
            ensure(are_isomorphic(&back, k).is_some(), || {
                format!("{name}: split {split:?} does not round-trip")
            })?;
            n += 1;
        }
    }
    ensure(n > 0, || "no splits enumerated".into())?;
    Ok(format!("{n} splits on {} disks", disks.len()))
}

fn join_f(a: &FVector, b: &FVector) -> Vec<usize> {
    let n = a.0.len() + b.0.len();
    (0..n)
        .map(|d| {
            let cross: usize = (0..d).map(|i| a.get(i) * b.get(d - 1 - i)).sum();
            a.get(d) + b.get(d) + cross
        })
        .collect()
}

fn counts() -> Outcome {
    let k = ngon_disk(5).unwrap();
    ensure(k.f_vector().0 == [5, 5, 1], || {
        format!("pentagon f = {}", k.f_vector())
    })?;
    let (r, _) = radial_subdivide(&k, k.find("F").unwrap()).map_err(|e| e.to_string())?;
    ensure(r.f_vector().0 == [6, 10, 5], || {
        format!("radial f = {}", r.f_vector())
    })?;
    let small = [
        point(),
        segment(),
        simplex(2).unwrap(),
        circle(),
        ngon_circle(3).unwrap(),
        ngon_disk(4).unwrap(),
        disk1(),
        annulus_with_radius(),
        disk_with_radius(),
        two_globe(),
        common::folded_disk(),
        torus_square_word(),
    ];
    let mut pairs = 0;
    for a in &small {
        let c = cone(a, None);
        let want = join_f(&a.f_vector(), &point().f_vector());
        ensure(c.f_vector().0 == want, || {
            format!("cone over {} has f = {}", a.f_vector(), c.f_vector())
        })?;
        for b in &small {
            let j = join(a, b);
            let want = join_f(&a.f_vector(), &b.f_vector());
            ensure(j.f_vector().0 == want, || {
                format!(
                    "join of {} and {} has f = {}",
                    a.f_vector(),
                    b.f_vector(),
                    j.f_vector()
                )
            })?;
            pairs += 1;
        }
    }
    Ok(format!(
        "pentagon (5,5,1) -> (6,10,5); {} cones, {pairs} joins",
        small.len()
    ))
}

fn witness() -> Outcome {
    let t = Instant::now();
    let s =
        search_equivalence(&disk1(), &disk_with_radius(), 6).ok_or("no script within 6 moves")?;
    ensure(s.len() <= 5, || format!("script has {} moves", s.len()))?;
    Ok(format!("{} moves in {:.2?}", s.len(), t.elapsed()))
}

fn transport() -> Outcome {
    let k = ngon_disk(5).unwrap();
    let (k2, trace) =
        elementary_subdivide(&k, &chord(&k), &SplitLabels::default()).map_err(|e| e.to_string())?;
    let (got, moves) =
        transport_move_through_join(&k, &k2, &trace, &point()).map_err(|e| e.to_string())?;
    let direct = join(&k2, &point());
    ensure(are_isomorphic(&got, &direct).is_some(), || {
        "not isomorphic to the direct join".into()
    })?;
    Ok(format!("{} moves, f = {}", moves.len(), got.f_vector()))
}

/// How often each codimension-one cell is hit by the top cells' models.
fn occurrences(k: &Complex) -> BTreeMap<CellId, usize> {
    let n = k.dimension() as usize;
    let mut out: BTreeMap<CellId, usize> = k.cells_of_dim(n - 1).map(|f| (f, 0)).collect();
    for c in k.cells_of_dim(n) {
        let a = k.attachment(c).unwrap();
        for z in a.model().top_cells() {
            *out.get_mut(&a.assign(z)).unwrap() += 1;
        }
    }
    out
}

fn pairing() -> Outcome {
    let mut notes = Vec::new();
    for (name, k) in [
        ("cylinder", cylinder_s1xixi()),
        ("torus", torus_square_word()),
        ("3-ball", ball_bihemisphere(3)),
    ] {
        let o = coherent_orientation(&k).map_err(|e| format!("{name}: {e}"))?;
        let p = boundary_pairing(&k, &o).map_err(|e| format!("{name}: {e}"))?;
        let occ = occurrences(&k);
        let twice: Vec<CellId> = occ.iter().filter(|e| *e.1 == 2).map(|e| *e.0).collect();
        let once: Vec<CellId> = occ.iter().filter(|e| *e.1 == 1).map(|e| *e.0).collect();
        ensure(twice.len() + once.len() == occ.len(), || {
            format!("{name}: a face occurs more than twice")
        })?;
        let bound: Vec<CellId> = p.boundary.iter().map(|o| o.cell).collect();
        ensure(p.interior == twice && bound == once, || {
            format!("{name}: pairing {p:?}")
        })?;
        notes.push(format!("{name} {}+{}", twice.len(), once.len()));
    }
    Ok(format!("interior+boundary: {}", notes.join(", ")))
}

fn triangulation() -> Outcome {
    let mut cells = 0;
    for (name, k) in corpus() {
        let (t, trace) = triangulate(&k).map_err(|e| format!("{name}: {e}"))?;
        ensure(plcw::moves::is_simplicial(&t), || {
            format!("{name}: not simplicial")
        })?;
        ensure(simplicial_oracle(&t), || format!("{name}: oracle rejects"))?;
        ensure(
            trace
                .steps
                .iter()
                .all(|(m, _)| matches!(m, Move::Radial { .. })),
            || format!("{name}: non-radial move in trace"),
        )?;
        cells += t.len();
    }
    Ok(format!(
        "{} complexes, {cells} simplices in total",
        corpus().len()
    ))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let sweep = all_moves();
    let criteria: Vec<(&str, Check)> = vec![
        ("corpus validates", Box::new(corpus_validates)),
        ("boundary multiset", Box::new(boundary_example)),
        ("boundary squared", Box::new(|| boundary_squared(&sweep))),
        ("move invariance", Box::new(|| invariance(&sweep))),
        ("split and erase round trip", Box::new(round_trip)),
        ("radial, cone and join counts", Box::new(counts)),
        ("search witness", Box::new(witness)),
        ("transport through join", Box::new(transport)),
        ("manifold pairing", Box::new(pairing)),
        ("triangulation", Box::new(triangulation)),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {:>2} PASS {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed in {:.1?}",
        criteria.len() - failed,
        criteria.len(),
        start.elapsed()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
