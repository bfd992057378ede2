//! Shared corpus and independent oracles for the integration tests.
#![allow(dead_code)]

use plcw::algebra::chain_boundary_matrix;
use plcw::constructions::standard::*;
use plcw::constructions::PolygonPresentation;
use plcw::moves::{elementary_subdivide, radial_subdivide, EquatorSplit, SplitLabels};
use plcw::{CellId, Complex};

/// The disk made of one vertex, one loop and one 2-cell.
pub fn disk1() -> Complex {
    PolygonPresentation::new()
        .vertex("v")
        .edge("e", "v", "v")
        .face("F", "e")
        .build()
        .unwrap()
}

/// A disk whose boundary runs out along `b` and straight back.
pub fn folded_disk() -> Complex {
    PolygonPresentation::new()
        .vertex("p")
        .vertex("q")
        .vertex("r")
        .vertex("m")
        .edge("t", "p", "q")
        .edge("s", "q", "r")
        .edge("l", "p", "r")
        .edge("b", "r", "m")
        .face("Z", "t s b -b -l")
        .build()
        .unwrap()
}

/// The pentagon cut along the chord from `v0` to `v2`.
pub fn pentagon_chord() -> Complex {
    let k = ngon_disk(5).unwrap();
    let split = chord(&k);
    elementary_subdivide(&k, &split, &SplitLabels::default())
        .unwrap()
        .0
}

/// The split of the pentagon's 2-cell with `e0 e1` on the plus side.
pub fn chord(k: &Complex) -> EquatorSplit {
    let f = k.find("F").unwrap();
    let a = k.attachment(f).unwrap();
    let plus = a
        .model()
        .top_cells()
        .filter(|&z| matches!(k.label(a.assign(z)), Some("e0" | "e1")))
        .collect();
    EquatorSplit::new(f, plus)
}

fn radial(k: Complex, name: &str) -> Complex {
    let c = k.resolve(name).unwrap();
    radial_subdivide(&k, c).unwrap().0
}

/// Every complex the tests sweep over, with a name for messages.
pub fn corpus() -> Vec<(&'static str, Complex)> {
    let tet = simplex(3).unwrap();
    let tet_edge = tet.cells_of_dim(1).next().unwrap();
    vec![
        ("point", point()),
        ("segment", segment()),
        ("triangle", simplex(2).unwrap()),
        ("tetrahedron", tet.clone()),
        ("circle", circle()),
        ("triangle circle", ngon_circle(3).unwrap()),
        ("square", ngon_disk(4).unwrap()),
        ("pentagon", ngon_disk(5).unwrap()),
        ("one-cell disk", disk1()),
        ("annulus with radius", annulus_with_radius()),
        ("disk with radius", disk_with_radius()),
        ("two-globe", two_globe()),
        ("folded disk", folded_disk()),
        ("rectangle", rectangle()),
        ("cylinder", cylinder_s1xixi()),
        ("torus", torus_square_word()),
        ("2-sphere", sphere_bihemisphere(2)),
        ("3-ball", ball_bihemisphere(3)),
        ("pentagon chord split", pentagon_chord()),
        ("pentagon radial", radial(ngon_disk(5).unwrap(), "F")),
        ("annulus radial", radial(annulus_with_radius(), "F")),
        (
            "tetrahedron edge radial",
            radial(tet, &tet_edge.to_string()),
        ),
    ]
}

/// The boundary matrix of degree `n` as plain integers.
pub fn boundary_rows(k: &Complex, n: usize) -> Vec<Vec<i64>> {
    let m = chain_boundary_matrix(k, n);
    (0..m.rows.len())
        .map(|i| {
            (0..m.cols.len())
                .map(|j| m.matrix.get(i, j).to_string().parse().unwrap())
                .collect()
        })
        .collect()
}

/// `∂ₙ₋₁ ∂ₙ = 0` by dense multiplication in every degree.
pub fn dd_zero(k: &Complex) -> bool {
    let d = k.dimension();
    (2..=d.max(0) as usize).all(|n| {
        let hi = boundary_rows(k, n);
        let lo = boundary_rows(k, n - 1);
        let cols = k.count_of_dim(n);
        lo.iter().all(|row| {
            (0..cols).all(|j| {
                row.iter()
                    .enumerate()
                    .map(|(m, x)| x * hi[m][j])
                    .sum::<i64>()
                    == 0
            })
        })
    })
}

const P: i64 = 1_000_000_007;

pub fn rank_mod_p(mut rows: Vec<Vec<i64>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    for r in rows.iter_mut() {
        for x in r.iter_mut() {
            *x = x.rem_euclid(P);
        }
    }
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = pow(rows[rank][c], P - 2);
        let pivot = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && row[c] != 0 {
                let f = row[c] * inv % P;
                for (x, p) in row.iter_mut().zip(&pivot).skip(c) {
                    *x = (*x - f * p).rem_euclid(P);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn pow(mut b: i64, mut e: i64) -> i64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % P;
        }
        b = b * b % P;
        e >>= 1;
    }
    r
}

/// Betti numbers by Gaussian elimination over a large prime field.
pub fn betti_oracle(k: &Complex) -> Vec<usize> {
    let d = k.dimension();
    if d < 0 {
        return Vec::new();
    }
    let d = d as usize;
    let ranks: Vec<usize> = (0..=d + 1)
        .map(|n| {
            if n == 0 || n > d {
                0
            } else {
                rank_mod_p(boundary_rows(k, n))
            }
        })
        .collect();
    (0..=d)
        .map(|n| k.count_of_dim(n) - ranks[n] - ranks[n + 1])
        .collect()
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn vertex_set(k: &Complex, c: CellId) -> Vec<CellId> {
    let mut vs: Vec<CellId> = match k.attachment(c) {
        None => vec![c],
        Some(a) => a.model().cells_of_dim(0).map(|v| a.assign(v)).collect(),
    };
    vs.sort();
    vs.dedup();
    vs
}

/// Simpliciality from the face lattice: each closed `d`-cell has exactly
/// `C(d+1, j+1)` faces of dimension `j`, on both the model and the image
/// side, its faces' vertex sets lie inside its own, and no two cells share
/// a vertex set.
pub fn simplicial_oracle(k: &Complex) -> bool {
    let mut sets = std::collections::BTreeSet::new();
    for c in k.ids() {
        let d = k.dim_of(c);
        let vs = vertex_set(k, c);
        if vs.len() != d + 1 || !sets.insert(vs.clone()) {
            return false;
        }
        if d == 0 {
            continue;
        }
        let model = k.model_of(c);
        let faces = k.faces(c).unwrap();
        for j in 0..d {
            let want = binomial(d + 1, j + 1);
            let image = faces
                .iter()
                .filter(|&&f| f != c && k.dim_of(f) == j)
                .count();
            if model.count_of_dim(j) != want || image != want {
                return false;
            }
        }
        if faces
            .iter()
            .any(|&f| vertex_set(k, f).iter().any(|v| !vs.contains(v)))
        {
            return false;
        }
    }
    true
}
