//! Pairing of codimension-one cells in an oriented manifold decomposition.
//!
//! Collecting `∂C` over all top cells `C` (oriented coherently), every
//! interior codimension-one cell shows up exactly twice with opposite signs
//! and every boundary cell exactly once.

use std::collections::BTreeMap;

use super::orientation::{boundary_entries, OrientedCell};
use crate::complex::{CellId, Complex};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Pairing {
    /// Cells appearing as `F ∪ F̄`.
    pub interior: Vec<CellId>,
    /// Cells appearing once, with the induced orientation.
    pub boundary: Vec<OrientedCell>,
}

/// Classifies the codimension-one cells given an orientation of every top
/// cell.
pub fn boundary_pairing(k: &Complex, orientation: &[(CellId, i8)]) -> Result<Pairing> {
    let d = k.dimension();
    if d < 1 {
        return Err(Error::Dimension(
            "pairing needs dimension at least 1".into(),
        ));
    }
    let n = d as usize;
    let given: BTreeMap<CellId, i8> = orientation.iter().copied().collect();
    let mut occ: BTreeMap<CellId, Vec<i8>> =
        k.cells_of_dim(n - 1).map(|f| (f, Vec::new())).collect();
    for c in k.cells_of_dim(n) {
        let s = *given
            .get(&c)
            .ok_or_else(|| Error::Invalid(format!("no orientation given for {}", k.name(c))))?;
        for (f, e) in boundary_entries(k, c) {
            occ.get_mut(&f).expect("face of top cell").push(e * s);
        }
    }
    let mut out = Pairing::default();
    for (f, signs) in occ {
        match signs.as_slice() {
            [s] => out.boundary.push(OrientedCell::new(f, *s)),
            [a, b] if a + b == 0 => out.interior.push(f),
            [_, _] => {
                return Err(Error::Invalid(format!(
                    "{} occurs twice with the same orientation (not coherently oriented)",
                    k.name(f)
                )))
            }
            other => {
                return Err(Error::Invalid(format!(
                    "{} occurs {} times (not a manifold decomposition)",
                    k.name(f),
                    other.len()
                )))
            }
        }
    }
    Ok(out)
}

/// A coherent orientation of the top cells of a connected orientable
/// manifold decomposition, anchored at `+1` on the first top cell of each
/// component.
pub fn coherent_orientation(k: &Complex) -> Result<Vec<(CellId, i8)>> {
    let d = k.dimension();
    if d < 1 {
        return Err(Error::Dimension(
            "orientation needs dimension at least 1".into(),
        ));
    }
    let n = d as usize;
    let mut occ: BTreeMap<CellId, Vec<(CellId, i8)>> = BTreeMap::new();
    for c in k.cells_of_dim(n) {
        for (f, e) in boundary_entries(k, c) {
            occ.entry(f).or_default().push((c, e));
        }
    }
    let mut adj: BTreeMap<CellId, Vec<(CellId, i8)>> = BTreeMap::new();
    for (f, list) in &occ {
        match list.as_slice() {
            [_] => {}
            [(a, sa), (b, sb)] => {
                adj.entry(*a).or_default().push((*b, -sa * sb));
                adj.entry(*b).or_default().push((*a, -sa * sb));
            }
            _ => {
                return Err(Error::Invalid(format!(
                    "{} occurs {} times (not a manifold decomposition)",
                    k.name(*f),
                    list.len()
                )))
            }
        }
    }
    let mut x: BTreeMap<CellId, i8> = BTreeMap::new();
    for start in k.cells_of_dim(n) {
        if x.contains_key(&start) {
            continue;
        }
        x.insert(start, 1);
        let mut stack = vec![start];
        while let Some(c) = stack.pop() {
            let sc = x[&c];
            for &(u, rel) in adj.get(&c).map(Vec::as_slice).unwrap_or(&[]) {
                let want = sc * rel;
                match x.get(&u) {
                    None => {
                        x.insert(u, want);
                        stack.push(u);
                    }
                    Some(&s) if s != want => {
                        return Err(Error::Invalid("decomposition is not orientable".into()))
                    }
                    _ => {}
                }
            }
        }
    }
    Ok(x.into_iter().collect())
}
