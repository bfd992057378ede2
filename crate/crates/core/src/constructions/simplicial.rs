//! Simplicial complexes given by vertex sets.
//!
//! Every simplex `[v0 < … < vk]` gets the standard boundary model of the
//! `k`-simplex, whose face opposite the `i`-th vertex carries `(-1)^i`. Edges
//! therefore point from the smaller to the larger vertex. Identifications
//! between standard models are identities.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::complex::{Attachment, Cell, CellId, Complex, SphereData};
use crate::error::{Error, Result};
use crate::map::CellMap;

/// A simplicial complex with the cell id of every simplex.
#[derive(Clone, Debug)]
pub struct Simplicial {
    pub complex: Complex,
    pub ids: BTreeMap<Vec<usize>, CellId>,
}

#[derive(Default)]
struct Spheres(Vec<Arc<SphereData>>);

impl Spheres {
    /// Boundary of the standard `k`-simplex (`k ≥ 1`).
    fn get(&mut self, k: usize) -> Arc<SphereData> {
        while self.0.len() < k {
            let j = self.0.len() + 1;
            let sets: Vec<Vec<usize>> = sorted_family((0..=j).collect::<Vec<_>>().as_slice(), j);
            let (model, ids) = self.complex(&sets, false);
            let mut cycle = vec![0i8; model.len()];
            for i in 0..=j {
                let face: Vec<usize> = (0..=j).filter(|&x| x != i).collect();
                cycle[ids[&face].index()] = if i % 2 == 0 { 1 } else { -1 };
            }
            self.0.push(Arc::new(SphereData::from_full(model, cycle)));
        }
        self.0[k - 1].clone()
    }

    /// `sets` must be closed under non-empty subsets and sorted by size,
    /// then lexicographically.
    fn complex(
        &mut self,
        sets: &[Vec<usize>],
        label: bool,
    ) -> (Complex, BTreeMap<Vec<usize>, CellId>) {
        let mut k = Complex::new();
        let mut ids = BTreeMap::new();
        for s in sets {
            let cell = if s.len() == 1 {
                Cell::vertex(label.then(|| format!("v{}", s[0])))
            } else {
                let sphere = self.get(s.len() - 1);
                let model = sphere.model();
                let mut map = CellMap::default();
                for (t, local) in sorted_family(&(0..s.len()).collect::<Vec<_>>(), s.len() - 1)
                    .into_iter()
                    .enumerate()
                {
                    let face: Vec<usize> = local.iter().map(|&i| s[i]).collect();
                    let ident = model
                        .attachment(CellId::new(t))
                        .map(|a| a.sphere().identity());
                    map.push(ids[&face], ident);
                }
                Cell::with_attachment(Attachment::from_arc(sphere, map), None)
            };
            ids.insert(s.clone(), k.push_raw(cell));
        }
        (k, ids)
    }
}

/// Non-empty subsets of `verts` of size at most `max`, in canonical order.
fn sorted_family(verts: &[usize], max: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let n = verts.len();
    for size in 1..=max.min(n) {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            out.push(idx.iter().map(|&i| verts[i]).collect());
            let mut i = size;
            while i > 0 && idx[i - 1] == n - size + i - 1 {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            idx[i - 1] += 1;
            for j in i..size {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    out
}

/// The simplicial complex generated by `facets` (each a list of distinct
/// vertex numbers). Vertices are labelled `v<n>`.
pub fn simplicial_complex(facets: &[Vec<usize>]) -> Result<Simplicial> {
    let mut all: BTreeSet<Vec<usize>> = BTreeSet::new();
    for f in facets {
        let mut f = f.clone();
        f.sort_unstable();
        let len = f.len();
        f.dedup();
        if f.len() != len || f.is_empty() {
            return Err(Error::NotSimplicial(format!(
                "simplex {f:?} must have distinct vertices"
            )));
        }
        all.extend(sorted_family(&f, f.len()));
    }
    let mut sets: Vec<Vec<usize>> = all.into_iter().collect();
    sets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let (complex, ids) = Spheres::default().complex(&sets, true);
    Ok(Simplicial { complex, ids })
}

/// The boundary of the standard `k`-simplex as an oriented sphere model.
pub fn simplex_boundary_sphere(k: usize) -> SphereData {
    (*Spheres::default().get(k)).clone()
}
