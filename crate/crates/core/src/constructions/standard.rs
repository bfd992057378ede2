//! A library of small complexes, including the pictures from the
//! introductory examples.

use std::sync::Arc;

use super::pair::product;
use super::presentation::PolygonPresentation;
use super::simplicial::simplicial_complex;
use crate::algebra::fundamental_cycle;
use crate::complex::{Attachment, Cell, CellId, Complex, SphereData};
use crate::error::{Error, Result};
use crate::map::{CellMap, RegularMap};

/// Names accepted by [`standard`].
pub const NAMES: &[&str] = &[
    "point",
    "segment",
    "simplex",
    "ball_bihemisphere",
    "sphere_bihemisphere",
    "ngon_disk",
    "ngon_circle",
    "circle",
    "two_globe",
    "annulus_with_radius",
    "disk_with_radius",
    "cylinder_s1xIxI",
    "torus_square_word",
];

/// Looks a library complex up by name; `param` is the dimension or the
/// number of sides where one is needed.
pub fn standard(name: &str, param: Option<usize>) -> Result<Complex> {
    let need = |what: &str| {
        param.ok_or_else(|| Error::Invalid(format!("`{name}` needs a parameter ({what})")))
    };
    match name {
        "point" => Ok(point()),
        "segment" => Ok(segment()),
        "simplex" => simplex(need("dimension")?),
        "ball_bihemisphere" => Ok(ball_bihemisphere(need("dimension")?)),
        "sphere_bihemisphere" => Ok(sphere_bihemisphere(need("dimension")?)),
        "ngon_disk" => ngon_disk(need("number of sides")?),
        "ngon_circle" => ngon_circle(need("number of sides")?),
        "circle" => Ok(circle()),
        "two_globe" => Ok(two_globe()),
        "annulus_with_radius" => Ok(annulus_with_radius()),
        "disk_with_radius" => Ok(disk_with_radius()),
        "cylinder_s1xIxI" => Ok(cylinder_s1xixi()),
        "torus_square_word" => Ok(torus_square_word()),
        _ => Err(Error::Invalid(format!(
            "unknown complex `{name}` (known: {})",
            NAMES.join(", ")
        ))),
    }
}

pub fn point() -> Complex {
    let mut k = Complex::new();
    k.push_raw(Cell::vertex(Some("p".into())));
    k
}

/// An edge `e` from `u` to `v`.
pub fn segment() -> Complex {
    PolygonPresentation::new()
        .vertex("u")
        .vertex("v")
        .edge("e", "u", "v")
        .build()
        .expect("segment")
}

/// The `n`-simplex with all its faces.
pub fn simplex(n: usize) -> Result<Complex> {
    Ok(simplicial_complex(&[(0..=n).collect()])?.complex)
}

/// A circle with one vertex and one loop.
pub fn circle() -> Complex {
    PolygonPresentation::new()
        .vertex("v")
        .edge("e", "v", "v")
        .build()
        .expect("circle")
}

/// A `k`-gon: vertices `v0..`, edges `e0..` with `ei: vi → vi+1`.
pub fn ngon_circle(k: usize) -> Result<Complex> {
    if k == 0 {
        return Err(Error::Invalid("a polygon needs at least one side".into()));
    }
    let mut p = PolygonPresentation::new();
    for i in 0..k {
        p = p.vertex(&format!("v{i}"));
    }
    for i in 0..k {
        p = p.edge(
            &format!("e{i}"),
            &format!("v{i}"),
            &format!("v{}", (i + 1) % k),
        );
    }
    p.build()
}

/// The `k`-gon with its 2-cell `F`, oriented along the edges.
pub fn ngon_disk(k: usize) -> Result<Complex> {
    if k == 0 {
        return Err(Error::Invalid("a polygon needs at least one side".into()));
    }
    let mut p = PolygonPresentation::new();
    for i in 0..k {
        p = p.vertex(&format!("v{i}"));
    }
    for i in 0..k {
        p = p.edge(
            &format!("e{i}"),
            &format!("v{i}"),
            &format!("v{}", (i + 1) % k),
        );
    }
    let word: Vec<String> = (0..k).map(|i| format!("e{i}")).collect();
    p.face("F", &word.join(" ")).build()
}

/// A sphere from two 2-cells glued along a circle of two edges.
pub fn two_globe() -> Complex {
    PolygonPresentation::new()
        .vertex("p")
        .vertex("q")
        .edge("e1", "p", "q")
        .edge("e2", "p", "q")
        .face("N", "e1 -e2")
        .face("S", "e2 -e1")
        .build()
        .expect("two-globe")
}

/// An annulus cut open along a radius: loops `la` at `a` and `lb` at `b`,
/// the radius `ab`, and one 2-cell whose boundary runs over `ab` twice.
pub fn annulus_with_radius() -> Complex {
    PolygonPresentation::new()
        .vertex("a")
        .vertex("b")
        .edge("ab", "a", "b")
        .edge("la", "a", "a")
        .edge("lb", "b", "b")
        .face("F", "la ab -lb -ab")
        .build()
        .expect("annulus")
}

/// A disk whose boundary loop `b` at `w` is joined to the centre `v` by the
/// radius `a`; the 2-cell has boundary `b a ā`.
pub fn disk_with_radius() -> Complex {
    PolygonPresentation::new()
        .vertex("v")
        .vertex("w")
        .edge("a", "w", "v")
        .edge("b", "w", "w")
        .face("C", "b a -a")
        .build()
        .expect("disk with radius")
}

/// The torus from the square word `a b ā b̄`.
pub fn torus_square_word() -> Complex {
    PolygonPresentation::new()
        .vertex("v")
        .edge("a", "v", "v")
        .edge("b", "v", "v")
        .face("T", "a b -a -b")
        .build()
        .expect("torus")
}

/// `S¹ × I × I` as the product of the annulus with a radius and a segment:
/// one 3-cell, five 2-cells, eight edges and four vertices.
pub fn cylinder_s1xixi() -> Complex {
    product(&annulus_with_radius(), &segment())
}

/// `S^n` as two `n`-cells glued along `S^(n-1)`, recursively, down to two
/// points.
pub fn sphere_bihemisphere(n: usize) -> Complex {
    let mut k = Complex::new();
    k.push_raw(Cell::vertex(Some("s0+".into())));
    k.push_raw(Cell::vertex(Some("s0-".into())));
    for d in 1..=n {
        let sphere = Arc::new(oriented(k.clone()));
        let id = CellMap::identity(&k);
        for side in ["+", "-"] {
            k.push_raw(Cell::with_attachment(
                Attachment::from_arc(sphere.clone(), id.clone()),
                Some(format!("s{d}{side}")),
            ));
        }
    }
    k
}

fn oriented(model: Complex) -> SphereData {
    let cycle = fundamental_cycle(&model).expect("bihemisphere spheres are orientable");
    SphereData::from_full(model.without_labels(), cycle)
}

/// `B^n`: the bihemisphere `S^(n-1)` plus one `n`-cell `B`. For `n = 0`
/// a point.
pub fn ball_bihemisphere(n: usize) -> Complex {
    if n == 0 {
        return point();
    }
    let mut k = sphere_bihemisphere(n - 1);
    let sphere = Arc::new(oriented(k.clone()));
    let id = CellMap::identity(&k);
    k.push_raw(Cell::with_attachment(
        Attachment::from_arc(sphere, id),
        Some("B".into()),
    ));
    k
}

/// A rectangle with vertices `a1, a2, b1, b2`, sides `a1a2`, `b1b2`, `a1b1`,
/// `a2b2` and 2-cell `R`.
pub fn rectangle() -> Complex {
    PolygonPresentation::new()
        .vertex("a1")
        .vertex("a2")
        .vertex("b1")
        .vertex("b2")
        .edge("a1a2", "a1", "a2")
        .edge("b1b2", "b1", "b2")
        .edge("a1b1", "a1", "b1")
        .edge("a2b2", "a2", "b2")
        .face("R", "a1a2 a2b2 -b1b2 -a1b1")
        .build()
        .expect("rectangle")
}

/// The rectangle wrapped onto the annulus with a radius: both sides `a1b1`
/// and `a2b2` go to the radius `ab`.
pub fn rectangle_to_annulus() -> RegularMap {
    let src = rectangle();
    let tgt = annulus_with_radius();
    let pairs = [
        ("a1", "a"),
        ("a2", "a"),
        ("b1", "b"),
        ("b2", "b"),
        ("a1a2", "la"),
        ("b1b2", "lb"),
        ("a1b1", "ab"),
        ("a2b2", "ab"),
        ("R", "F"),
    ];
    let mut assign = vec![CellId::new(0); src.len()];
    for (s, t) in pairs {
        assign[src.find(s).unwrap().index()] = tgt.find(t).unwrap();
    }
    RegularMap::from_assignment(src, tgt, &assign).expect("the wrapping map is regular")
}
