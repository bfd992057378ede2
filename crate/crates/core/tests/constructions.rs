mod common;

use common::{betti_oracle, dd_zero};
use plcw::algebra::{format_homology, homology};
use plcw::constructions::standard::*;
use plcw::constructions::*;
use plcw::map::RegularMap;
use plcw::{are_isomorphic, validate, CellMap, Complex};

fn check(k: &Complex) {
    let r = validate(k);
    assert!(r.is_valid(), "{:?}", r.issues);
    assert!(dd_zero(k));
}

#[test]
fn joins_of_simplices_are_simplices() {
    let j = join(&point(), &point());
    check(&j);
    assert!(are_isomorphic(&j, &segment()).is_some());
    let j = join(&segment(), &point());
    assert!(are_isomorphic(&j, &simplex(2).unwrap()).is_some());
    let j = join(&segment(), &segment());
    check(&j);
    assert!(are_isomorphic(&j, &simplex(3).unwrap()).is_some());
}

#[test]
fn join_of_two_zero_spheres_is_a_square_circle() {
    let s0 = sphere_bihemisphere(0);
    let j = join(&s0, &s0);
    check(&j);
    assert!(are_isomorphic(&j, &ngon_circle(4).unwrap()).is_some());
}

#[test]
fn cone_is_join_with_a_point() {
    for k in [circle(), ngon_disk(3).unwrap(), two_globe()] {
        let c = cone(&k, Some("apex"));
        check(&c);
        assert!(c.find("apex").is_some());
        assert!(are_isomorphic(&c, &join(&k, &point())).is_some());
        assert_eq!(betti_oracle(&c)[0], 1);
        assert!(betti_oracle(&c)[1..].iter().all(|&b| b == 0));
    }
}

#[test]
fn product_f_vectors() {
    let ks = [
        point(),
        segment(),
        circle(),
        ngon_disk(3).unwrap(),
        annulus_with_radius(),
    ];
    for a in &ks {
        for b in &ks {
            let p = product(a, b);
            let (fa, fb) = (a.f_vector(), b.f_vector());
            let want: Vec<usize> = (0..fa.0.len() + fb.0.len() - 1)
                .map(|d| (0..=d).map(|i| fa.get(i) * fb.get(d - i)).sum())
                .collect();
            assert_eq!(p.f_vector().0, want);
            assert_eq!(
                p.euler_characteristic(),
                a.euler_characteristic() * b.euler_characteristic()
            );
        }
    }
}

#[test]
fn products_of_standard_pieces() {
    let sq = product(&segment(), &segment());
    check(&sq);
    assert!(are_isomorphic(&sq, &ngon_disk(4).unwrap()).is_some());
    let torus = product(&circle(), &circle());
    check(&torus);
    assert_eq!(betti_oracle(&torus), [1, 2, 1]);
    assert!(are_isomorphic(&torus, &torus_square_word()).is_some());
    let cyl = product(&annulus_with_radius(), &segment());
    check(&cyl);
    assert_eq!(format_homology(&homology(&cyl)), "(Z, Z, 0, 0)");
}

#[test]
fn maps_of_identities_are_identities() {
    let (k, l) = (segment(), circle());
    let (ik, il) = (CellMap::identity(&k), CellMap::identity(&l));
    assert_eq!(
        join_map(&k, &l, &k, &l, &ik, &il),
        CellMap::identity(&join(&k, &l))
    );
    assert_eq!(
        product_map(&k, &l, &k, &l, &ik, &il),
        CellMap::identity(&product(&k, &l))
    );
}

#[test]
fn rectangle_onto_annulus() {
    let m = rectangle_to_annulus();
    assert!(m.is_regular_cellular());
    assert!(!m.is_isomorphism());
    let id = RegularMap::identity(&annulus_with_radius());
    assert!(m.then(&id).unwrap().is_regular_cellular());
}

#[test]
fn presentations() {
    let rp2 = PolygonPresentation::new()
        .vertex("v")
        .edge("a", "v", "v")
        .face("P", "a a")
        .build()
        .unwrap();
    check(&rp2);
    assert_eq!(format_homology(&homology(&rp2)), "(Z, Z/2, 0)");
    let klein = PolygonPresentation::new()
        .vertex("v")
        .edge("a", "v", "v")
        .edge("b", "v", "v")
        .face("K", "a b -a b")
        .build()
        .unwrap();
    check(&klein);
    assert_eq!(format_homology(&homology(&klein)), "(Z, Z + Z/2, 0)");
    let bad = PolygonPresentation::new()
        .vertex("v")
        .edge("a", "v", "w")
        .build();
    assert!(bad.is_err());
    let open = PolygonPresentation::new()
        .vertex("p")
        .vertex("q")
        .edge("a", "p", "q")
        .face("F", "a")
        .build();
    assert!(open.is_err(), "a word must close up");
}

#[test]
fn simplicial_complexes_from_facets() {
    let s =
        simplicial_complex(&[vec![0, 1, 2], vec![0, 2, 3], vec![0, 3, 1], vec![1, 2, 3]]).unwrap();
    check(&s.complex);
    assert_eq!(s.complex.f_vector().0, [4, 6, 4]);
    assert_eq!(betti_oracle(&s.complex), [1, 0, 1]);
    let tet = simplex(3).unwrap();
    assert!(are_isomorphic(&tet.skeleton(2).unwrap(), &s.complex).is_some());
    assert_eq!(simplex_boundary_sphere(2).model().f_vector().0, [3, 3]);
}

#[test]
fn standard_library_is_valid() {
    for name in NAMES {
        for p in [None, Some(0), Some(1), Some(2), Some(3)] {
            if let Ok(k) = standard(name, p) {
                check(&k);
            }
        }
    }
    assert!(standard("nothing", None).is_err());
    assert!(standard("simplex", None).is_err());
    let cyl = cylinder_s1xixi();
    assert_eq!(cyl.f_vector().0, [4, 8, 5, 1]);
    assert_eq!(betti_oracle(&cyl), [1, 1, 0, 0]);
}
