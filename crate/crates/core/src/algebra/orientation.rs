//! Oriented cells, incidence numbers and boundary multisets.

use std::collections::BTreeMap;
use std::fmt;

use crate::complex::{CellId, Complex};
use crate::error::{Error, Result};
use crate::map::chain_sign;

/// A cell together with a sign relative to its stored orientation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrientedCell {
    pub cell: CellId,
    pub sign: i8,
}

impl OrientedCell {
    pub fn new(cell: CellId, sign: i8) -> Self {
        debug_assert!(sign == 1 || sign == -1);
        OrientedCell { cell, sign }
    }

    pub fn positive(cell: CellId) -> Self {
        OrientedCell { cell, sign: 1 }
    }

    pub fn reversed(self) -> Self {
        OrientedCell {
            cell: self.cell,
            sign: -self.sign,
        }
    }
}

/// Multiset of oriented codimension-one faces. Entries are kept sorted so
/// that equality is multiset equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BoundaryMultiset(Vec<OrientedCell>);

impl BoundaryMultiset {
    pub fn new(mut entries: Vec<OrientedCell>) -> Self {
        entries.sort();
        BoundaryMultiset(entries)
    }

    pub fn entries(&self) -> &[OrientedCell] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Collapses the multiset to a chain: signed count per cell, zeros
    /// dropped.
    pub fn to_chain(&self) -> BTreeMap<CellId, i64> {
        let mut out = BTreeMap::new();
        for e in &self.0 {
            *out.entry(e.cell).or_insert(0) += e.sign as i64;
        }
        out.retain(|_, v| *v != 0);
        out
    }

    /// Renders with labels from `k`, writing `~x` for a reversed cell.
    pub fn display<'a>(&'a self, k: &'a Complex) -> impl fmt::Display + 'a {
        struct D<'a>(&'a BoundaryMultiset, &'a Complex);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{{")?;
                for (i, e) in self.0 .0.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    if e.sign < 0 {
                        write!(f, "~")?;
                    }
                    write!(f, "{}", self.1.name(e.cell))?;
                }
                write!(f, "}}")
            }
        }
        D(self, k)
    }
}

/// One `(face, sign)` entry per top cell of the boundary model of `c`, in
/// model order.
pub(crate) fn boundary_entries(k: &Complex, c: CellId) -> Vec<(CellId, i8)> {
    let Some(att) = k.attachment(c) else {
        return Vec::new();
    };
    let sphere = att.sphere();
    let model = sphere.model();
    model
        .top_cells()
        .map(|b| {
            (
                att.assign(b),
                sphere.coefficient(b) * chain_sign(model, k, att.map(), b),
            )
        })
        .collect()
}

/// `∂C` as a multiset of oriented faces.
pub fn boundary_multiset(k: &Complex, c: OrientedCell) -> Result<BoundaryMultiset> {
    let cell = k.get(c.cell)?;
    if cell.dim() == 0 {
        return Err(Error::VertexCell(c.cell));
    }
    Ok(BoundaryMultiset::new(
        boundary_entries(k, c.cell)
            .into_iter()
            .map(|(d, s)| OrientedCell::new(d, s * c.sign))
            .collect(),
    ))
}

/// Incidence number `ε(C, D)`.
pub fn incidence_number(k: &Complex, c: OrientedCell, d: OrientedCell) -> Result<i64> {
    let dc = k.get(c.cell)?.dim();
    let dd = k.get(d.cell)?.dim();
    if dd + 1 != dc {
        return Err(Error::Dimension(format!(
            "incidence of a {dc}-cell with a {dd}-cell"
        )));
    }
    let sum: i64 = boundary_entries(k, c.cell)
        .into_iter()
        .filter(|(t, _)| *t == d.cell)
        .map(|(_, s)| s as i64)
        .sum();
    Ok(sum * c.sign as i64 * d.sign as i64)
}

/// Boundary of an integral chain of `dim`-cells. For `dim == 0` this is the
/// augmentation, returned under the key `None`.
pub(crate) fn chain_boundary(
    k: &Complex,
    chain: impl IntoIterator<Item = (CellId, i64)>,
) -> BTreeMap<Option<CellId>, i64> {
    let mut out = BTreeMap::new();
    for (c, x) in chain {
        if k.dim_of(c) == 0 {
            *out.entry(None).or_insert(0) += x;
        } else {
            for (d, s) in boundary_entries(k, c) {
                *out.entry(Some(d)).or_insert(0) += x * s as i64;
            }
        }
    }
    out.retain(|_, v| *v != 0);
    out
}

/// Whether the stored cycle of a sphere model has zero boundary.
pub fn is_cycle(model: &Complex, cycle: &[i8]) -> bool {
    chain_boundary(
        model,
        model.top_cells().map(|t| (t, cycle[t.index()] as i64)),
    )
    .is_empty()
}

/// Solves `∂x = 0` with `x ∈ {±1}` on the top cells of a closed model,
/// anchored at `+1` on the first top cell. For a 0-dimensional model the
/// answer is `(+1, -1)` in stored order. Returns a full-length vector
/// (zero off the top dimension).
pub fn fundamental_cycle(model: &Complex) -> Result<Vec<i8>> {
    let d = model.dimension();
    let mut x = vec![0i8; model.len()];
    if d < 0 {
        return Ok(x);
    }
    if d == 0 {
        if model.len() != 2 {
            return Err(Error::Sphere(format!(
                "0-sphere with {} points",
                model.len()
            )));
        }
        x[0] = 1;
        x[1] = -1;
        return Ok(x);
    }
    let tops: Vec<CellId> = model.top_cells().collect();
    let mut occurrences: BTreeMap<CellId, Vec<(CellId, i8)>> = BTreeMap::new();
    for &t in &tops {
        for (f, s) in boundary_entries(model, t) {
            occurrences.entry(f).or_default().push((t, s));
        }
    }
    let mut adjacency: BTreeMap<CellId, Vec<(CellId, i8)>> = BTreeMap::new();
    for (f, occ) in &occurrences {
        if occ.len() != 2 {
            return Err(Error::Sphere(format!(
                "face {f} occurs {} times in the top cells",
                occ.len()
            )));
        }
        let (t1, s1) = occ[0];
        let (t2, s2) = occ[1];
        // x[t1] * s1 + x[t2] * s2 = 0
        let rel = -s1 * s2;
        adjacency.entry(t1).or_default().push((t2, rel));
        adjacency.entry(t2).or_default().push((t1, rel));
    }
    let mut stack = vec![tops[0]];
    x[tops[0].index()] = 1;
    while let Some(t) = stack.pop() {
        for &(u, rel) in adjacency.get(&t).map(Vec::as_slice).unwrap_or(&[]) {
            let want = x[t.index()] * rel;
            if x[u.index()] == 0 {
                x[u.index()] = want;
                stack.push(u);
            } else if x[u.index()] != want {
                return Err(Error::Sphere("model is not orientable".into()));
            }
        }
    }
    if let Some(t) = tops.iter().find(|t| x[t.index()] == 0) {
        return Err(Error::Sphere(format!(
            "top cell {t} is not reached from the anchor"
        )));
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{Attachment, SphereData};

    #[test]
    fn edge_incidences() {
        let mut k = Complex::new();
        let v = k.add_vertex(Some("v")).unwrap();
        let w = k.add_vertex(Some("w")).unwrap();
        let e = k.add_edge(v, w, Some("e")).unwrap();
        let e1 = OrientedCell::positive(e);
        assert_eq!(
            incidence_number(&k, e1, OrientedCell::positive(w)).unwrap(),
            1
        );
        assert_eq!(
            incidence_number(&k, e1, OrientedCell::positive(v)).unwrap(),
            -1
        );
        assert_eq!(
            incidence_number(&k, e1.reversed(), OrientedCell::positive(v)).unwrap(),
            1
        );
        assert_eq!(
            boundary_multiset(&k, e1).unwrap(),
            BoundaryMultiset::new(vec![OrientedCell::new(w, 1), OrientedCell::new(v, -1)])
        );
        assert!(incidence_number(&k, e1, e1).is_err());
        assert!(boundary_multiset(&k, OrientedCell::positive(v)).is_err());
    }

    #[test]
    fn loop_incidence_cancels() {
        let mut k = Complex::new();
        let v = k.add_vertex(None).unwrap();
        let e = k.add_edge(v, v, None).unwrap();
        assert_eq!(
            incidence_number(&k, OrientedCell::positive(e), OrientedCell::positive(v)).unwrap(),
            0
        );
        assert_eq!(
            boundary_multiset(&k, OrientedCell::positive(e))
                .unwrap()
                .len(),
            2
        );
    }

    #[test]
    fn s0_cycle() {
        let s = SphereData::s0();
        assert_eq!(fundamental_cycle(s.model()).unwrap(), vec![1, -1]);
        let _ = Attachment::edge(CellId::new(0), CellId::new(1));
    }
}
