mod common;

use common::{betti_oracle, dd_zero};
use plcw::algebra::*;
use plcw::constructions::standard::*;
use plcw::CellId;

#[test]
fn classic_smith_form() {
    let m = Matrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
    let s = smith_normal_form(&m);
    let d: Vec<String> = s.diagonal.iter().map(ToString::to_string).collect();
    assert_eq!(d, ["2", "6", "12"]);
    assert_eq!(s.left.mul(&m).mul(&s.right), s.normal);
}

#[test]
fn homology_of_the_corpus_agrees_with_the_field_oracle() {
    for (name, k) in common::corpus() {
        assert!(boundary_squared_is_zero(&k), "{name}");
        assert!(dd_zero(&k), "{name}");
        assert_eq!(betti_numbers(&k), betti_oracle(&k), "{name}");
    }
}

#[test]
fn known_homology() {
    assert_eq!(
        format_homology(&homology(&torus_square_word())),
        "(Z, Z^2, Z)"
    );
    assert_eq!(
        format_homology(&homology(&sphere_bihemisphere(2))),
        "(Z, 0, Z)"
    );
    assert_eq!(
        format_homology(&homology(&ball_bihemisphere(3))),
        "(Z, 0, 0, 0)"
    );
    assert_eq!(
        format_homology(&homology(&annulus_with_radius())),
        "(Z, Z, 0)"
    );
    assert_eq!(
        format_homology(&homology(&common::folded_disk())),
        "(Z, 0, 0)"
    );
}

#[test]
fn incidences_on_a_loop() {
    let k = circle();
    let (v, e) = (k.find("v").unwrap(), k.find("e").unwrap());
    let n = incidence_number(&k, OrientedCell::positive(e), OrientedCell::positive(v)).unwrap();
    assert_eq!(n, 0);
    let b = boundary_multiset(&k, OrientedCell::positive(e)).unwrap();
    assert_eq!(b.len(), 2);
    assert!(b.to_chain().values().all(|&x| x == 0));
    assert!(boundary_multiset(&k, OrientedCell::positive(v)).is_err());
}

#[test]
fn reversed_cell_reverses_its_boundary() {
    let k = ngon_disk(3).unwrap();
    let f = k.find("F").unwrap();
    let plus = boundary_multiset(&k, OrientedCell::positive(f))
        .unwrap()
        .to_chain();
    let minus = boundary_multiset(&k, OrientedCell::new(f, -1))
        .unwrap()
        .to_chain();
    assert!(plus.iter().all(|(c, x)| minus[c] == -x));
    assert!(plus.values().all(|x| x.abs() == 1));
}

#[test]
fn fundamental_cycles_of_models() {
    let k = two_globe();
    let n = k.find("N").unwrap();
    let model = k.model_of(n);
    let z = fundamental_cycle(model).unwrap();
    assert!(is_cycle(model, &z));
    let mut broken = z.clone();
    let t = model.top_cells().next().unwrap().index();
    broken[t] = -broken[t];
    assert!(!is_cycle(model, &broken));
}

#[test]
fn pairing_rejects_incoherent_orientations() {
    let k = two_globe();
    let mut o = coherent_orientation(&k).unwrap();
    assert!(boundary_pairing(&k, &o).unwrap().boundary.is_empty());
    o[0].1 = -o[0].1;
    assert!(boundary_pairing(&k, &o).is_err());
    assert!(boundary_pairing(&k, &[(CellId::new(0), 1)]).is_err());
}
