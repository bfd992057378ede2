//! Isomorphism search.
//!
//! Cells are first coloured by an iterated refinement over the face poset
//! (dimension and boundary-model f-vector, then the colours of faces and
//! cofaces). The search assigns vertices in breadth-first order along the
//! 1-skeleton, checking edge multiplicities against the vertices already
//! placed, then higher cells in canonical order. For a positive-dimensional
//! cell the identification of boundary models is forced once the lower
//! cells are placed: only the cell bijection of the model is enumerated.

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, VecDeque};
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::complex::{CellId, Complex};
use crate::map::{check_iso, compose, inverse, CellMap, Isomorphism, RegularMap};

fn hash_of<T: Hash>(t: &T) -> u64 {
    let mut h = DefaultHasher::new();
    t.hash(&mut h);
    h.finish()
}

/// Refined colour of every cell.
pub fn colors(k: &Complex) -> Vec<u64> {
    let mut cofaces: Vec<Vec<CellId>> = vec![Vec::new(); k.len()];
    for x in k.ids() {
        if let Some(att) = k.attachment(x) {
            for &t in att.map().assign_slice() {
                cofaces[t.index()].push(x);
            }
        }
    }
    let mut col: Vec<u64> = k
        .ids()
        .map(|x| {
            let fv = k.attachment(x).map(|a| a.model().f_vector().0);
            hash_of(&(k.dim_of(x), fv))
        })
        .collect();
    for _ in 0..3 {
        let next: Vec<u64> = k
            .ids()
            .map(|x| {
                let mut faces: Vec<u64> = k
                    .attachment(x)
                    .map(|a| {
                        a.map()
                            .assign_slice()
                            .iter()
                            .map(|t| col[t.index()])
                            .collect()
                    })
                    .unwrap_or_default();
                faces.sort_unstable();
                let mut cof: Vec<u64> = cofaces[x.index()].iter().map(|t| col[t.index()]).collect();
                cof.sort_unstable();
                hash_of(&(col[x.index()], faces, cof))
            })
            .collect();
        col = next;
    }
    col
}

/// Isomorphism-invariant fingerprint (equal for isomorphic complexes).
pub fn invariant_hash(k: &Complex) -> u64 {
    let mut c = colors(k);
    c.sort_unstable();
    hash_of(&(k.f_vector(), c))
}

/// Multiplicity of each (cell, face) pair.
type Incidences = BTreeMap<(CellId, CellId), usize>;

struct Search<'a> {
    src: &'a Complex,
    tgt: &'a Complex,
    order: Vec<CellId>,
    candidates: Vec<Vec<CellId>>,
    injective: bool,
    adjacency: Option<(Incidences, Incidences)>,
    assign: Vec<Option<CellId>>,
    ident: Vec<Option<Arc<CellMap>>>,
    used: Vec<bool>,
    found: Option<CellMap>,
}

fn vertex_adjacency(k: &Complex) -> BTreeMap<(CellId, CellId), usize> {
    let mut m = BTreeMap::new();
    for e in k.cells_of_dim(1) {
        let a = k.att(e);
        let (p, q) = (a.assign(CellId::new(0)), a.assign(CellId::new(1)));
        let key = if p <= q { (p, q) } else { (q, p) };
        *m.entry(key).or_insert(0) += 1;
    }
    m
}

fn pair(a: CellId, b: CellId) -> (CellId, CellId) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

impl<'a> Search<'a> {
    fn run(&mut self, i: usize) -> bool {
        if i == self.order.len() {
            let assign = self.assign.iter().map(|a| a.unwrap()).collect();
            self.found = Some(CellMap::new(assign, self.ident.clone()));
            return true;
        }
        let x = self.order[i];
        let cands = self.candidates[x.index()].clone();
        for y in cands {
            if self.injective && self.used[y.index()] {
                continue;
            }
            if self.src.dim_of(x) == 0 {
                if !self.vertex_ok(x, y) {
                    continue;
                }
                self.place(x, y, None);
                if self.run(i + 1) {
                    return true;
                }
                self.unplace(x, y);
                continue;
            }
            if !self.faces_ok(x, y) {
                continue;
            }
            for sigma in model_isos(self.src, self.tgt, x, y, &self.assign, &self.ident) {
                self.place(x, y, Some(Arc::new(sigma)));
                if self.run(i + 1) {
                    return true;
                }
                self.unplace(x, y);
            }
        }
        false
    }

    fn place(&mut self, x: CellId, y: CellId, ident: Option<Arc<CellMap>>) {
        self.assign[x.index()] = Some(y);
        self.ident[x.index()] = ident;
        self.used[y.index()] = true;
    }

    fn unplace(&mut self, x: CellId, y: CellId) {
        self.assign[x.index()] = None;
        self.ident[x.index()] = None;
        self.used[y.index()] = false;
    }

    fn vertex_ok(&self, v: CellId, w: CellId) -> bool {
        let Some((ax, ay)) = &self.adjacency else {
            return true;
        };
        let count =
            |m: &BTreeMap<(CellId, CellId), usize>, a, b| m.get(&pair(a, b)).copied().unwrap_or(0);
        if count(ax, v, v) != count(ay, w, w) {
            return false;
        }
        for u in self.src.cells_of_dim(0) {
            if let Some(hu) = self.assign[u.index()] {
                if count(ax, v, u) != count(ay, w, hu) {
                    return false;
                }
            }
        }
        true
    }

    /// The images of the faces of `x` must be the faces of `y`, as multisets.
    fn faces_ok(&self, x: CellId, y: CellId) -> bool {
        let ax = self.src.att(x);
        let ay = self.tgt.att(y);
        if ax.model().f_vector() != ay.model().f_vector() {
            return false;
        }
        let mut a: Vec<CellId> = ax
            .map()
            .assign_slice()
            .iter()
            .map(|t| self.assign[t.index()].expect("faces are placed first"))
            .collect();
        let mut b = ay.map().assign_slice().to_vec();
        a.sort_unstable();
        b.sort_unstable();
        a == b
    }
}

/// All isomorphisms `σ` of boundary models of `x ∈ src` and `y ∈ tgt` with
/// `h ∘ att(x) = att(y) ∘ σ`, where `h` is a partial map already defined on
/// every face of `x`.
fn model_isos(
    src: &Complex,
    tgt: &Complex,
    x: CellId,
    y: CellId,
    h_assign: &[Option<CellId>],
    h_ident: &[Option<Arc<CellMap>>],
) -> Vec<CellMap> {
    let ax = src.att(x);
    let ay = tgt.att(y);
    let mx = ax.model();
    let my = ay.model();
    let mut want: Vec<Vec<CellId>> = Vec::with_capacity(mx.len());
    for z in mx.ids() {
        let img = h_assign[ax.assign(z).index()].expect("faces are placed first");
        want.push(
            my.cells_of_dim(mx.dim_of(z))
                .filter(|&w| ay.assign(w) == img)
                .collect(),
        );
        if want[z.index()].is_empty() {
            return Vec::new();
        }
    }
    let mut out = Vec::new();
    let mut sigma: Vec<Option<CellId>> = vec![None; mx.len()];
    let mut used = vec![false; my.len()];
    enumerate(mx, my, &want, 0, &mut sigma, &mut used, &mut |s| {
        let assign: Vec<CellId> = s.iter().map(|c| c.unwrap()).collect();
        let mut ident = Vec::with_capacity(mx.len());
        for z in mx.ids() {
            ident.push(mx.attachment(z).map(|za| {
                let w = assign[z.index()];
                let a = ax.assign(z);
                let through = compose(
                    h_ident[a.index()]
                        .as_deref()
                        .expect("faces are placed first"),
                    ax.map().ident(z).unwrap(),
                    za.model(),
                );
                let back = inverse(
                    ay.map().ident(w).unwrap(),
                    my.model_of(w),
                    tgt.model_of(ay.assign(w)),
                );
                Arc::new(compose(&back, &through, za.model()))
            }));
        }
        let cand = CellMap::new(assign, ident);
        if check_iso(mx, my, &cand).is_ok() {
            out.push(cand);
        }
    });
    out
}

fn enumerate(
    mx: &Complex,
    my: &Complex,
    want: &[Vec<CellId>],
    i: usize,
    sigma: &mut Vec<Option<CellId>>,
    used: &mut Vec<bool>,
    visit: &mut dyn FnMut(&[Option<CellId>]),
) {
    if i == mx.len() {
        visit(sigma);
        return;
    }
    let z = CellId::new(i);
    for &w in &want[i] {
        if used[w.index()] {
            continue;
        }
        if let Some(za) = mx.attachment(z) {
            let mut a: Vec<CellId> = za
                .map()
                .assign_slice()
                .iter()
                .map(|t| sigma[t.index()].unwrap())
                .collect();
            let mut b = my.att(w).map().assign_slice().to_vec();
            a.sort_unstable();
            b.sort_unstable();
            if a != b {
                continue;
            }
        }
        sigma[i] = Some(w);
        used[w.index()] = true;
        enumerate(mx, my, want, i + 1, sigma, used, visit);
        sigma[i] = None;
        used[w.index()] = false;
    }
}

fn vertex_order(k: &Complex) -> Vec<CellId> {
    let verts: Vec<CellId> = k.cells_of_dim(0).collect();
    let mut nbrs: BTreeMap<CellId, Vec<CellId>> = BTreeMap::new();
    for e in k.cells_of_dim(1) {
        let a = k.att(e);
        let (p, q) = (a.assign(CellId::new(0)), a.assign(CellId::new(1)));
        nbrs.entry(p).or_default().push(q);
        nbrs.entry(q).or_default().push(p);
    }
    let mut seen = vec![false; k.len()];
    let mut order = Vec::new();
    for &s in &verts {
        if seen[s.index()] {
            continue;
        }
        seen[s.index()] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &u in nbrs.get(&v).map(Vec::as_slice).unwrap_or(&[]) {
                if !seen[u.index()] {
                    seen[u.index()] = true;
                    queue.push_back(u);
                }
            }
        }
    }
    order
}

/// An isomorphism `a → b` if one exists. Deterministic for fixed inputs.
pub fn are_isomorphic(a: &Complex, b: &Complex) -> Option<Isomorphism> {
    if a.f_vector() != b.f_vector() {
        return None;
    }
    let ca = colors(a);
    let cb = colors(b);
    let mut sa = ca.clone();
    let mut sb = cb.clone();
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return None;
    }
    let mut by_color: BTreeMap<u64, Vec<CellId>> = BTreeMap::new();
    for y in b.ids() {
        by_color.entry(cb[y.index()]).or_default().push(y);
    }
    let candidates = a.ids().map(|x| by_color[&ca[x.index()]].clone()).collect();
    let mut order = vertex_order(a);
    order.extend(a.ids().filter(|&x| a.dim_of(x) > 0));
    let mut s = Search {
        src: a,
        tgt: b,
        order,
        candidates,
        injective: true,
        adjacency: Some((vertex_adjacency(a), vertex_adjacency(b))),
        assign: vec![None; a.len()],
        ident: vec![None; a.len()],
        used: vec![false; b.len()],
        found: None,
    };
    s.run(0);
    s.found
        .map(|m| Isomorphism(RegularMap::new(a.clone(), b.clone(), m)))
}

/// Completes a dimension-preserving cell assignment to a regular cellular
/// map by finding compatible identifications, if possible.
pub(crate) fn complete_assignment(
    src: &Complex,
    tgt: &Complex,
    assign: &[CellId],
) -> Option<CellMap> {
    if assign.len() != src.len() {
        return None;
    }
    for x in src.ids() {
        let y = assign[x.index()];
        if !tgt.contains(y) || tgt.dim_of(y) != src.dim_of(x) {
            return None;
        }
    }
    let mut s = Search {
        src,
        tgt,
        order: src.ids().collect(),
        candidates: assign.iter().map(|&y| vec![y]).collect(),
        injective: false,
        adjacency: None,
        assign: vec![None; src.len()],
        ident: vec![None; src.len()],
        used: vec![false; tgt.len()],
        found: None,
    };
    s.run(0);
    s.found
}
