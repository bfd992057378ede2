use std::collections::{BTreeMap, BTreeSet};

use super::{fresh, radial_subdivide, MoveTrace};
use crate::complex::{CellId, Complex};
use crate::constructions::{simplex_boundary_sphere, simplicial_complex};
use crate::error::{Error, Result};
use crate::iso::are_isomorphic;

/// The vertices a cell's boundary model sends its model vertices to, in
/// model order and with repetitions. A vertex maps to itself.
pub fn vertex_images(k: &Complex, c: CellId) -> Vec<CellId> {
    match k.attachment(c) {
        None => vec![c],
        Some(a) => a.model().cells_of_dim(0).map(|v| a.assign(v)).collect(),
    }
}

/// The sorted vertex set of every cell, or the first cell that is not an
/// embedded simplex.
fn simplices(k: &Complex) -> std::result::Result<Vec<Vec<CellId>>, String> {
    let mut standard: Vec<Complex> = Vec::new();
    let mut seen = BTreeMap::new();
    let mut out = Vec::with_capacity(k.len());
    for c in k.ids() {
        let d = k.dim_of(c);
        let mut vs = vertex_images(k, c);
        vs.sort();
        vs.dedup();
        if vs.len() != d + 1 || (d > 0 && k.model_of(c).count_of_dim(0) != d + 1) {
            return Err(format!(
                "{} does not have {} distinct vertices",
                k.name(c),
                d + 1
            ));
        }
        if d >= 1 {
            while standard.len() < d {
                standard.push(simplex_boundary_sphere(standard.len() + 1).model().clone());
            }
            if are_isomorphic(k.model_of(c), &standard[d - 1]).is_none() {
                return Err(format!(
                    "the boundary of {} is not that of a simplex",
                    k.name(c)
                ));
            }
        }
        if let Some(other) = seen.insert(vs.clone(), c) {
            return Err(format!(
                "{} and {} span the same vertices",
                k.name(other),
                k.name(c)
            ));
        }
        out.push(vs);
    }
    Ok(out)
}

/// Every `k`-cell has `k + 1` distinct vertices, the boundary model of a
/// `k`-simplex, and no two cells share a vertex set.
pub fn is_simplicial(k: &Complex) -> bool {
    simplices(k).is_ok()
}

/// Two passes of radial subdivision over every cell of positive dimension,
/// in increasing dimension. The result is simplicial.
pub fn triangulate(k: &Complex) -> Result<(Complex, MoveTrace)> {
    let mut cur = k.clone();
    let mut trace = MoveTrace::new();
    for _ in 0..2 {
        let todo: Vec<CellId> = cur.ids().filter(|&c| cur.dim_of(c) > 0).collect();
        let mut pass = MoveTrace::new();
        for c in todo {
            let now = pass.track(c).expect("radial subdivision keeps other cells");
            let (next, t) = radial_subdivide(&cur, now)?;
            cur = next;
            pass.extend(t);
        }
        trace.extend(pass);
    }
    Ok((cur, trace))
}

/// Starring a simplex: the star of `c` is replaced by the join of a new
/// vertex with the boundary of `c` and the link of `c`. Vertices keep their
/// labels; the new vertex is labelled `C/o`.
pub fn stellar_subdivide(t: &Complex, c: CellId) -> Result<Complex> {
    t.get(c)?;
    let sets = simplices(t).map_err(Error::NotSimplicial)?;
    let verts: Vec<CellId> = t.cells_of_dim(0).collect();
    let index: BTreeMap<CellId, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let as_index = |s: &[CellId]| -> BTreeSet<usize> { s.iter().map(|v| index[v]).collect() };
    let star = as_index(&sets[c.index()]);
    let apex = verts.len();
    // Maximal simplices only.
    let all: Vec<BTreeSet<usize>> = sets.iter().map(|s| as_index(s)).collect();
    let maximal = all
        .iter()
        .filter(|a| !all.iter().any(|b| b.len() > a.len() && a.is_subset(b)));
    let mut facets: BTreeSet<Vec<usize>> = BTreeSet::new();
    for a in maximal {
        if !star.is_subset(a) {
            facets.insert(a.iter().copied().collect());
            continue;
        }
        for &v in &star {
            let mut f: Vec<usize> = a.iter().copied().filter(|&x| x != v).collect();
            f.push(apex);
            f.sort();
            facets.insert(f);
        }
    }
    let facets: Vec<Vec<usize>> = facets.into_iter().collect();
    let mut s = simplicial_complex(&facets)?;
    // Restore the vertex labels.
    let mut names: Vec<Option<String>> = verts
        .iter()
        .map(|&v| t.label(v).map(str::to_string))
        .collect();
    names.push(Some(fresh(t, format!("{}/o", t.name(c)))));
    let placed: Vec<(CellId, Option<String>)> = names
        .into_iter()
        .enumerate()
        .filter_map(|(i, n)| s.ids.get(&vec![i]).map(|&id| (id, n)))
        .collect();
    for (id, _) in &placed {
        s.complex.set_label(*id, None);
    }
    for (id, n) in placed {
        s.complex.set_label(id, n);
    }
    Ok(s.complex)
}
