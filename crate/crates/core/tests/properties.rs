mod common;

use common::{betti_oracle, dd_zero, rank_mod_p};
use plcw::algebra::{betti_numbers, homology, smith_normal_form, Matrix};
use plcw::constructions::standard::*;
use plcw::constructions::PolygonPresentation;
use plcw::io::{parse_complex, print_complex};
use plcw::moves::{apply_move, candidate_moves, radial_subdivide, Move};
use plcw::{are_isomorphic, validate, CellId, Complex};
use proptest::prelude::*;

/// One vertex, `n` loops, and one 2-cell per word over them.
fn one_vertex_surface(n: usize, words: &[Vec<(usize, bool)>]) -> Complex {
    let mut p = PolygonPresentation::new().vertex("v");
    for i in 0..n {
        p = p.edge(&format!("a{i}"), "v", "v");
    }
    for (j, w) in words.iter().enumerate() {
        let letters: Vec<String> = w
            .iter()
            .map(|&(i, inv)| format!("{}a{}", if inv { "-" } else { "" }, i % n))
            .collect();
        p = p.face(&format!("F{j}"), &letters.join(" "));
    }
    p.build().unwrap()
}

fn words() -> impl Strategy<Value = (usize, Vec<Vec<(usize, bool)>>)> {
    (1usize..4).prop_flat_map(|n| {
        let word = prop::collection::vec((0..n, any::<bool>()), 1..6);
        (Just(n), prop::collection::vec(word, 1..3))
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn surfaces_are_valid_with_consistent_homology((n, ws) in words()) {
        let k = one_vertex_surface(n, &ws);
        prop_assert!(validate(&k).is_valid());
        prop_assert!(dd_zero(&k));
        prop_assert_eq!(betti_numbers(&k), betti_oracle(&k));
        prop_assert_eq!(k.euler_characteristic(), 1 - n as i64 + ws.len() as i64);
    }

    #[test]
    fn text_round_trip((n, ws) in words()) {
        let k = one_vertex_surface(n, &ws);
        let back = parse_complex(&print_complex(&k)).unwrap();
        prop_assert_eq!(&back, &k);
        prop_assert!(are_isomorphic(&back, &k).is_some());
    }

    #[test]
    fn random_moves_preserve_invariants((n, ws) in words(), picks in prop::collection::vec(any::<prop::sample::Index>(), 1..4)) {
        let mut k = one_vertex_surface(n, &ws);
        let h = homology(&k);
        for pick in picks {
            let mut moves: Vec<Move> = k.ids().filter(|&c| k.dim_of(c) > 0).map(|cell| Move::Radial { cell }).collect();
            moves.extend(candidate_moves(&k));
            let m = pick.get(&moves).clone();
            k = apply_move(&k, &m).unwrap().0;
            prop_assert!(validate(&k).is_valid(), "{}", m);
            prop_assert!(dd_zero(&k));
            prop_assert_eq!(&homology(&k), &h);
        }
    }

    #[test]
    fn random_moves_on_solids(which in 0usize..3, picks in prop::collection::vec(any::<prop::sample::Index>(), 1..3)) {
        let mut k = [cylinder_s1xixi(), ball_bihemisphere(3), simplex(3).unwrap()][which].clone();
        let h = homology(&k);
        for pick in picks {
            let mut moves: Vec<Move> = k.ids().filter(|&c| k.dim_of(c) > 0).map(|cell| Move::Radial { cell }).collect();
            moves.extend(candidate_moves(&k));
            let m = pick.get(&moves).clone();
            k = apply_move(&k, &m).unwrap().0;
            prop_assert!(validate(&k).is_valid(), "{}", m);
            prop_assert!(dd_zero(&k));
            prop_assert_eq!(&homology(&k), &h);
        }
    }

    #[test]
    fn radial_subdivision_counts(sides in 1usize..9) {
        let k = ngon_disk(sides).unwrap();
        let (r, _) = radial_subdivide(&k, k.find("F").unwrap()).unwrap();
        prop_assert_eq!(r.f_vector().0, vec![sides + 1, 2 * sides, sides]);
    }

    #[test]
    fn isomorphism_ignores_insertion_order(sides in 2usize..7, rot in 0usize..7) {
        // the same polygon with its edges listed from a different start
        let r = rot % sides;
        let mut p = PolygonPresentation::new();
        for i in 0..sides {
            p = p.vertex(&format!("v{i}"));
        }
        for i in (0..sides).map(|i| (i + r) % sides) {
            p = p.edge(&format!("e{i}"), &format!("v{i}"), &format!("v{}", (i + 1) % sides));
        }
        let word: Vec<String> = (0..sides).map(|i| format!("e{}", (i + r) % sides)).collect();
        let k = p.face("F", &word.join(" ")).build().unwrap();
        prop_assert!(are_isomorphic(&k, &ngon_disk(sides).unwrap()).is_some());
        prop_assert!(are_isomorphic(&k, &ngon_disk(sides + 1).unwrap()).is_none());
    }

    #[test]
    fn smith_form_is_a_diagonalisation(rows in prop::collection::vec(prop::collection::vec(-6i64..7, 4), 1..5)) {
        let m = Matrix::from_rows(&rows);
        let s = smith_normal_form(&m);
        prop_assert_eq!(s.left.mul(&m).mul(&s.right), s.normal.clone());
        prop_assert_eq!(s.diagonal.len(), rank_mod_p(rows.clone()));
        for w in s.diagonal.windows(2) {
            prop_assert_eq!(&w[1] % &w[0], 0.into());
        }
    }
}

#[test]
fn vertex_of_a_surface_is_not_erasable() {
    let k = one_vertex_surface(2, &[vec![(0, false), (1, false), (0, true), (1, true)]]);
    assert!(candidate_moves(&k)
        .iter()
        .all(|m| !matches!(m, Move::Erase { cell, .. } if *cell == CellId::new(0))));
}
