//! Cellular chain complex and integral homology.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use super::orientation::boundary_entries;
use super::snf::{invariant_factors, Matrix, SparseMatrix};
use crate::complex::{CellId, Complex};

/// Boundary matrix with cell labels on rows and columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerMatrix {
    pub rows: Vec<CellId>,
    pub cols: Vec<CellId>,
    pub matrix: Matrix,
}

fn sparse_boundary(k: &Complex, n: usize) -> SparseMatrix {
    let rows = if n == 0 { 0 } else { k.count_of_dim(n - 1) };
    let row_base = if n == 0 {
        0
    } else {
        k.cells_of_dim(n - 1).next().map_or(0, CellId::index)
    };
    let mut m = SparseMatrix::new(rows, k.count_of_dim(n));
    if n == 0 {
        return m;
    }
    for (j, c) in k.cells_of_dim(n).enumerate() {
        for (d, s) in boundary_entries(k, c) {
            m.add(d.index() - row_base, j, s as i64);
        }
    }
    m
}

/// `∂ₙ : Cₙ → Cₙ₋₁`; rows are the `(n-1)`-cells, columns the `n`-cells.
pub fn chain_boundary_matrix(k: &Complex, n: usize) -> IntegerMatrix {
    IntegerMatrix {
        rows: if n == 0 {
            Vec::new()
        } else {
            k.cells_of_dim(n - 1).collect()
        },
        cols: k.cells_of_dim(n).collect(),
        matrix: sparse_boundary(k, n).to_dense(),
    }
}

/// Whether `∂ₙ₋₁ ∘ ∂ₙ = 0` in every degree, checked sparsely.
pub fn boundary_squared_is_zero(k: &Complex) -> bool {
    let d = k.dimension();
    for n in 2..=d.max(0) as usize {
        let hi = sparse_boundary(k, n);
        let lo = sparse_boundary(k, n - 1);
        let mut by_row: Vec<Vec<(usize, i64)>> = vec![Vec::new(); lo.cols];
        for (&(i, j), &x) in &lo.entries {
            by_row[j].push((i, x));
        }
        let mut acc = SparseMatrix::new(lo.rows, hi.cols);
        for (&(mid, j), &x) in &hi.entries {
            for &(i, y) in &by_row[mid] {
                acc.add(i, j, x * y);
            }
        }
        if !acc.entries.is_empty() {
            return false;
        }
    }
    true
}

/// One homology group `Z^betti ⊕ ⊕ Z/tᵢ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomologyGroup {
    pub betti: usize,
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn free(betti: usize) -> Self {
        HomologyGroup {
            betti,
            torsion: Vec::new(),
        }
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.betti {
            0 => {}
            1 => parts.push("Z".to_string()),
            b => parts.push(format!("Z^{b}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Integral homology in degrees `0..=dim K`.
pub fn homology(k: &Complex) -> Vec<HomologyGroup> {
    let d = k.dimension();
    if d < 0 {
        return Vec::new();
    }
    let d = d as usize;
    let factors: Vec<Vec<BigInt>> = (0..=d + 1)
        .map(|n| {
            if n == 0 || n > d {
                Vec::new()
            } else {
                invariant_factors(&sparse_boundary(k, n))
            }
        })
        .collect();
    (0..=d)
        .map(|n| {
            let rank_out = factors[n].len();
            let rank_in = factors[n + 1].len();
            HomologyGroup {
                betti: k.count_of_dim(n) - rank_out - rank_in,
                torsion: factors[n + 1]
                    .iter()
                    .filter(|x| !x.is_one())
                    .cloned()
                    .collect(),
            }
        })
        .collect()
}

/// Betti numbers only.
pub fn betti_numbers(k: &Complex) -> Vec<usize> {
    homology(k).into_iter().map(|h| h.betti).collect()
}

/// Renders a homology list as `(Z, Z^2, Z)`.
pub fn format_homology(h: &[HomologyGroup]) -> String {
    let parts: Vec<String> = h.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}
