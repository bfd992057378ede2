//! Local pictures of a move.
//!
//! A move replaces some cells of a complex `X` by the interior cells of a
//! small ball complex `D`. The remaining ("fixed") cells of `D` form the
//! boundary of the replaced region and are sent into `X` by a regular map.
//! The same description works inside a boundary model, which is how moves
//! are propagated to cofaces: a move at `x ∈ X` is pulled back along the
//! attaching map of every coface to one move per model cell over `x`.

use std::sync::Arc;

use crate::algebra::{chain_boundary, fundamental_cycle};
use crate::complex::{Attachment, Builder, Cell, CellId, Complex, SphereData};
use crate::constructions::{Ctx, Kind, Layout, Origin};
use crate::error::{Error, Result};
use crate::map::{compose, inverse, CellMap};
use crate::validate::sphere_problem;

/// A move at one place of a complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Site {
    Radial {
        cell: CellId,
    },
    /// `plus` lists top cells of the boundary model of `cell`.
    Split {
        cell: CellId,
        plus: Vec<CellId>,
    },
    /// `hat_plus` is the top cell of the model of `plus` lying over `c0`.
    Erase {
        c0: CellId,
        plus: CellId,
        minus: CellId,
        hat_plus: CellId,
        hat_minus: CellId,
    },
}

impl Site {
    /// The cell identifying the site among the sites of a complex.
    pub fn key(&self) -> CellId {
        match self {
            Site::Radial { cell } | Site::Split { cell, .. } => *cell,
            Site::Erase { c0, .. } => *c0,
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) enum Aux {
    Radial(Layout),
    Split {
        /// Model cells making up the equator, in equator order.
        equator: Vec<CellId>,
        plus: Vec<CellId>,
        minus: Vec<CellId>,
    },
    Erase {
        /// Cell of the glued sphere for each cell of the model of `plus`
        /// (`None` for the erased top cell).
        from_plus: Vec<Option<CellId>>,
        from_minus: Vec<Option<CellId>>,
        /// Origin of each glued-sphere cell: `(true, m)` for plus-side.
        origin: Vec<(bool, CellId)>,
    },
}

/// The ball `D` of a site.
#[derive(Clone, Debug)]
pub(crate) struct Local {
    pub ball: Complex,
    /// For fixed cells of `D`: the cell of `X` and the identification of
    /// boundary models.
    pub fixed: Vec<Option<(CellId, Option<Arc<CellMap>>)>>,
    pub removed: Vec<CellId>,
    /// Removed cell whose orientation the new top cells follow.
    pub primary: CellId,
    /// Per cell of `D`: sign of a new top-dimensional cell relative to
    /// `primary` (zero elsewhere).
    pub rel: Vec<i8>,
    pub aux: Aux,
}

fn point() -> Complex {
    let mut p = Complex::new();
    p.push_raw(Cell::vertex(None));
    p
}

fn fixed_via(att: &Attachment, m: CellId) -> Option<(CellId, Option<Arc<CellMap>>)> {
    Some((att.assign(m), att.map().ident_arc(m).cloned()))
}

pub(crate) fn build_local(x: &Complex, site: &Site) -> Result<Local> {
    match site {
        Site::Radial { cell } => radial_local(x, *cell),
        Site::Split { cell, plus } => split_local(x, *cell, plus),
        Site::Erase {
            c0,
            plus,
            minus,
            hat_plus,
            hat_minus,
        } => erase_local(x, *c0, *plus, *minus, *hat_plus, *hat_minus),
    }
}

fn radial_local(x: &Complex, c: CellId) -> Result<Local> {
    let att = x.attachment(c).ok_or(Error::VertexCell(c))?;
    let m = att.model();
    let (ball, layout) = Ctx::default().build(Kind::Join, &point(), m);
    let mut fixed = vec![None; ball.len()];
    let mut rel = vec![0; ball.len()];
    for (id, o) in layout.origin.iter().enumerate() {
        match *o {
            Origin::Right(z) => fixed[id] = fixed_via(att, z),
            Origin::Pair(_, z) if m.dim_of(z) as isize == m.dimension() => {
                rel[id] = att.sphere().coefficient(z)
            }
            _ => {}
        }
    }
    Ok(Local {
        ball,
        fixed,
        removed: vec![c],
        primary: c,
        rel,
        aux: Aux::Radial(layout),
    })
}

/// Sorted list of the cells in the closure of `tops` inside `m`.
fn closure_of(m: &Complex, tops: &[CellId]) -> Vec<bool> {
    let mut mark = vec![false; m.len()];
    for &t in tops {
        mark[t.index()] = true;
        if let Some(a) = m.attachment(t) {
            for &f in a.map().assign_slice() {
                mark[f.index()] = true;
            }
        }
    }
    mark
}

/// The subcomplex on the marked (closed) cells, with the list of old ids.
pub(crate) fn subcomplex(m: &Complex, mark: &[bool]) -> (Complex, Vec<CellId>) {
    let old: Vec<CellId> = m.ids().filter(|c| mark[c.index()]).collect();
    let mut new_of = vec![None; m.len()];
    for (i, c) in old.iter().enumerate() {
        new_of[c.index()] = Some(CellId::new(i));
    }
    let mut k = Complex::new();
    for &c in &old {
        let mut cell = m.cell(c).clone();
        cell.label = None;
        if let Some(a) = &mut cell.attachment {
            a.map = a
                .map
                .remap_targets(|t| new_of[t.index()].expect("closed subcomplex"));
        }
        k.push_raw(cell);
    }
    (k, old)
}

fn inclusion(m: &Complex, old: &[CellId], target_of: impl Fn(CellId) -> CellId) -> CellMap {
    let mut map = CellMap::default();
    for &c in old {
        map.push(target_of(c), m.attachment(c).map(|a| a.sphere().identity()));
    }
    map
}

pub(crate) fn split_local(x: &Complex, c: CellId, plus: &[CellId]) -> Result<Local> {
    let att = x.attachment(c).ok_or(Error::VertexCell(c))?;
    let n = x.dim_of(c);
    let m = att.model();
    let tops: Vec<CellId> = m.top_cells().collect();
    for p in plus {
        if !tops.contains(p) {
            return Err(Error::Split(format!(
                "{p} is not a top cell of the boundary model"
            )));
        }
    }
    let minus: Vec<CellId> = tops.iter().copied().filter(|t| !plus.contains(t)).collect();
    let mut plus: Vec<CellId> = plus.to_vec();
    plus.sort_unstable();
    plus.dedup();
    if plus.is_empty() || minus.is_empty() {
        return Err(Error::Split("both hemispheres must be non-empty".into()));
    }
    let hp = closure_of(m, &plus);
    let hm = closure_of(m, &minus);
    let em: Vec<bool> = hp.iter().zip(&hm).map(|(a, b)| *a && *b).collect();
    let (e, e_old) = subcomplex(m, &em);
    if e.dimension() != n as isize - 2 {
        return Err(Error::Split(format!(
            "the equator has dimension {}, expected {}",
            e.dimension(),
            n as isize - 2
        )));
    }
    let sphere = att.sphere();
    let e_sphere = if n >= 2 {
        let bd = chain_boundary(m, plus.iter().map(|&t| (t, sphere.coefficient(t) as i64)));
        let mut cycle = vec![0i8; e.len()];
        for (k, v) in bd {
            let k = k.expect("positive dimension");
            match e_old.iter().position(|&o| o == k) {
                Some(i) if e.dim_of(CellId::new(i)) + 2 == n && v.abs() == 1 => cycle[i] = v as i8,
                _ => {
                    return Err(Error::Split(
                        "the hemispheres do not meet along a sphere".into(),
                    ))
                }
            }
        }
        let s = SphereData::from_full(e.clone(), cycle);
        sphere_problem(&s).map_err(|err| Error::Split(format!("equator: {err}")))?;
        Some(Arc::new(s))
    } else {
        None
    };
    let len = m.len();
    let c0 = CellId::new(len);
    let mut b = m.without_labels();
    match &e_sphere {
        Some(s) => b.push_raw(Cell::with_attachment(
            Attachment::from_arc(s.clone(), inclusion(m, &e_old, |t| t)),
            None,
        )),
        None => b.push_raw(Cell::vertex(None)),
    };
    let mut halves = Vec::new();
    for (side, mark) in [(1i8, &hp), (-1i8, &hm)] {
        let (h, h_old) = subcomplex(m, mark);
        let mut model = h.clone();
        let hat = match &e_sphere {
            Some(s) => Cell::with_attachment(
                Attachment::from_arc(
                    s.clone(),
                    inclusion(m, &e_old, |t| {
                        CellId::new(h_old.iter().position(|&o| o == t).unwrap())
                    }),
                ),
                None,
            ),
            None => Cell::vertex(None),
        };
        let hat_id = model.push_raw(hat);
        let mut cycle = vec![0i8; model.len()];
        for (i, &o) in h_old.iter().enumerate() {
            if m.dim_of(o) + 1 == n {
                cycle[i] = sphere.coefficient(o);
            }
        }
        cycle[hat_id.index()] = if n >= 2 {
            -side
        } else {
            let p = h_old[0];
            -sphere.coefficient(p)
        };
        let model_sphere = SphereData::from_full(model, cycle);
        sphere_problem(&model_sphere).map_err(|err| Error::Split(format!("hemisphere: {err}")))?;
        let mut map = inclusion(m, &h_old, |t| t);
        map.push(c0, e_sphere.as_ref().map(|s| s.identity()));
        halves.push((Attachment::new(model_sphere, map), h_old));
    }
    let mut hold = Vec::new();
    for (a, h_old) in halves {
        b.push_raw(Cell::with_attachment(a, None));
        hold.push(h_old);
    }
    let mut fixed = vec![None; b.len()];
    for z in m.ids() {
        fixed[z.index()] = fixed_via(att, z);
    }
    let mut rel = vec![0; b.len()];
    rel[len + 1] = 1;
    rel[len + 2] = 1;
    let minus_old = hold.pop().unwrap();
    let plus_old = hold.pop().unwrap();
    Ok(Local {
        ball: b,
        fixed,
        removed: vec![c],
        primary: c,
        rel,
        aux: Aux::Split {
            equator: e_old,
            plus: plus_old,
            minus: minus_old,
        },
    })
}

/// `j: model(c0) → model(plus)`, the embedding of the closed cell over `c0`.
fn hat_embedding(x: &Complex, cell: CellId, hat: CellId) -> CellMap {
    let att = x.att(cell);
    let m = att.model();
    match m.attachment(hat) {
        None => CellMap::default(),
        Some(ha) => {
            let id = att.map().ident(hat).expect("identification");
            let c0 = att.assign(hat);
            let inv = inverse(id, ha.model(), x.model_of(c0));
            compose(ha.map(), &inv, x.model_of(c0))
        }
    }
}

fn erase_local(
    x: &Complex,
    c0: CellId,
    plus: CellId,
    minus: CellId,
    hat_plus: CellId,
    hat_minus: CellId,
) -> Result<Local> {
    let ap = x.att(plus);
    let am = x.att(minus);
    let (mp, mm) = (ap.model(), am.model());
    let m0 = x
        .attachment(c0)
        .map(|a| a.model().clone())
        .unwrap_or_default();
    let jp = hat_embedding(x, plus, hat_plus);
    let jm = hat_embedding(x, minus, hat_minus);
    for j in [&jp, &jm] {
        let mut seen = j.assign_slice().to_vec();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != j.len() {
            return Err(Error::Erase(
                "the erased cell is not embedded in the boundary of its cofaces".into(),
            ));
        }
    }
    // Glued sphere: plus side without its hat, then the rest of the minus side.
    let mut b = Builder::new();
    let mut from_plus = vec![None; mp.len()];
    let mut from_minus = vec![None; mm.len()];
    let mut origin = Vec::new();
    for z in mp.ids() {
        if z != hat_plus {
            from_plus[z.index()] = Some(CellId::new(origin.len()));
            origin.push((true, z));
        }
    }
    // identification of the minus copy of a glued cell with the plus copy
    let mut glue: Vec<Option<(CellId, Option<Arc<CellMap>>)>> = vec![None; mm.len()];
    for k in m0.ids() {
        let (p, q) = (jp.assign(k), jm.assign(k));
        let ident = m0.attachment(k).map(|ka| {
            let back = inverse(jm.ident(k).unwrap(), ka.model(), mm.model_of(q));
            Arc::new(compose(jp.ident(k).unwrap(), &back, mm.model_of(q)))
        });
        glue[q.index()] = Some((p, ident));
        from_minus[q.index()] = from_plus[p.index()];
    }
    for z in mm.ids() {
        if z != hat_minus && glue[z.index()].is_none() {
            from_minus[z.index()] = Some(CellId::new(origin.len()));
            origin.push((false, z));
        }
    }
    for &(side, z) in &origin {
        let (m, other) = if side {
            (mp, &from_plus)
        } else {
            (mm, &from_minus)
        };
        let mut cell = m.cell(z).clone();
        cell.label = None;
        if let Some(a) = &mut cell.attachment {
            let mut map = CellMap::default();
            for v in a.model().ids() {
                let t = a.map().assign(v);
                let id = a.map().ident_arc(v).cloned();
                let glued = if side { None } else { glue[t.index()].as_ref() };
                match glued {
                    Some((p, g)) => {
                        let ident = match (g, &id) {
                            (Some(g), Some(i)) => {
                                Some(Arc::new(compose(g, i, a.model().model_of(v))))
                            }
                            _ => None,
                        };
                        map.push(from_plus[p.index()].unwrap(), ident);
                    }
                    _ => map.push(other[t.index()].expect("face of a kept cell"), id),
                }
            }
            a.map = map;
        }
        b.push(cell);
    }
    let (g, perm) = b.finish();
    let from_plus: Vec<Option<CellId>> = from_plus
        .iter()
        .map(|o| o.map(|c| perm[c.index()]))
        .collect();
    let from_minus: Vec<Option<CellId>> = from_minus
        .iter()
        .map(|o| o.map(|c| perm[c.index()]))
        .collect();
    let mut sorted_origin = vec![(true, CellId::new(0)); origin.len()];
    for (i, o) in origin.into_iter().enumerate() {
        sorted_origin[perm[i].index()] = o;
    }
    let mut cycle =
        fundamental_cycle(&g).map_err(|e| Error::Erase(format!("glued boundary: {e}")))?;
    let (anchor, want) = mp
        .top_cells()
        .filter(|&t| t != hat_plus)
        .map(|t| (from_plus[t.index()].unwrap(), ap.sphere().coefficient(t)))
        .next()
        .ok_or_else(|| Error::Erase("degenerate cell".into()))?;
    if cycle[anchor.index()] != want {
        cycle.iter_mut().for_each(|c| *c = -*c);
    }
    let sphere = SphereData::from_full(g.clone(), cycle);
    sphere_problem(&sphere).map_err(|e| Error::Erase(format!("glued boundary: {e}")))?;
    let mut fixed = Vec::with_capacity(g.len() + 1);
    for &(side, z) in &sorted_origin {
        fixed.push(if side {
            fixed_via(ap, z)
        } else {
            fixed_via(am, z)
        });
    }
    fixed.push(None);
    let mut ball = g.clone();
    let id = CellMap::identity(&g);
    ball.push_raw(Cell::with_attachment(Attachment::new(sphere, id), None));
    let mut rel = vec![0; ball.len()];
    rel[g.len()] = 1;
    Ok(Local {
        ball,
        fixed,
        removed: vec![c0, plus, minus],
        primary: plus,
        rel,
        aux: Aux::Erase {
            from_plus,
            from_minus,
            origin: sorted_origin,
        },
    })
}

/// The isomorphism `D(a) → D(b)` induced by `f: A → B` when the site `b`
/// is the image of the site `a`.
pub(crate) fn local_iso(
    sa: &Site,
    la: &Local,
    a: &Complex,
    sb: &Site,
    lb: &Local,
    b: &Complex,
    f: &CellMap,
) -> CellMap {
    match (sa, sb, &la.aux, &lb.aux) {
        (Site::Radial { cell: x }, Site::Radial { cell: y }, Aux::Radial(l1), Aux::Radial(l2)) => {
            let h = f.ident(*x).expect("identification");
            let p = point();
            let mut ctx = Ctx::default();
            ctx.map(
                Kind::Join,
                l1,
                la.ball.len(),
                &p,
                a.model_of(*x),
                &p,
                b.model_of(*y),
                &CellMap::vertices(vec![CellId::new(0)]),
                h,
                l2,
            )
        }
        (
            Site::Split { cell: x, .. },
            Site::Split { .. },
            Aux::Split {
                equator: e1,
                plus: p1,
                minus: m1,
            },
            Aux::Split {
                equator: e2,
                plus: p2,
                minus: m2,
            },
        ) => {
            let h = f.ident(*x).expect("identification");
            let m = a.model_of(*x);
            let len = m.len();
            let restrict = |from: &[CellId], to: &[CellId]| {
                let mut map = CellMap::default();
                for &o in from {
                    let t = h.assign(o);
                    let i = to
                        .iter()
                        .position(|&c| c == t)
                        .expect("hemispheres correspond");
                    map.push(CellId::new(i), h.ident_arc(o).cloned());
                }
                map
            };
            let eq = restrict(e1, e2);
            let eq_arc = (len < la.ball.len() && la.ball.dim_of(CellId::new(len)) > 0)
                .then(|| Arc::new(eq.clone()));
            let mut out = CellMap::default();
            for z in m.ids() {
                out.push(h.assign(z), h.ident_arc(z).cloned());
            }
            out.push(CellId::new(len), eq_arc.clone());
            for (from, to, slot) in [(p1, p2, 1), (m1, m2, 2)] {
                let mut r = restrict(from, to);
                r.push(CellId::new(to.len()), eq_arc.clone());
                out.push(CellId::new(len + slot), Some(Arc::new(r)));
            }
            out
        }
        (
            Site::Erase { plus, minus, .. },
            Site::Erase { .. },
            Aux::Erase { origin, .. },
            Aux::Erase {
                from_plus,
                from_minus,
                ..
            },
        ) => {
            let hp = f.ident(*plus).expect("identification");
            let hm = f.ident(*minus).expect("identification");
            let mut g = CellMap::default();
            for &(side, z) in origin {
                let (h, to) = if side {
                    (hp, from_plus)
                } else {
                    (hm, from_minus)
                };
                g.push(
                    to[h.assign(z).index()].expect("glued spheres correspond"),
                    h.ident_arc(z).cloned(),
                );
            }
            let top = CellId::new(lb.ball.len() - 1);
            g.extended(top, Arc::new(g.clone()))
        }
        _ => unreachable!("sites of different kinds"),
    }
}

/// Pulls the sites of `x` back along `att: M → X`: one site of `M` per
/// model cell over a site. Returns `(site, parent index)` pairs.
pub(crate) fn pullback(m: &Complex, att: &CellMap, sites: &[Site]) -> Result<Vec<(Site, usize)>> {
    let mut out = Vec::new();
    for z in m.ids() {
        let t = att.assign(z);
        for (i, s) in sites.iter().enumerate() {
            match s {
                Site::Radial { cell } if *cell == t => out.push((Site::Radial { cell: z }, i)),
                Site::Split { cell, plus } if *cell == t => {
                    let h = att.ident(z).expect("identification");
                    let zm = m.model_of(z);
                    let p = zm
                        .top_cells()
                        .filter(|&w| plus.contains(&h.assign(w)))
                        .collect();
                    out.push((Site::Split { cell: z, plus: p }, i));
                }
                Site::Erase {
                    c0,
                    plus,
                    minus,
                    hat_plus,
                    hat_minus,
                } if *c0 == t => {
                    let mut up = Vec::new();
                    for y in m.cells_of_dim(m.dim_of(z) + 1) {
                        let ya = m.att(y);
                        for w in ya.model().top_cells() {
                            if ya.assign(w) == z {
                                up.push((y, w));
                            }
                        }
                    }
                    let find = |target: CellId, hat: CellId| {
                        up.iter().copied().find(|&(y, w)| {
                            att.assign(y) == target && att.ident(y).unwrap().assign(w) == hat
                        })
                    };
                    match (up.len(), find(*plus, *hat_plus), find(*minus, *hat_minus)) {
                        (2, Some((p, hp)), Some((q, hq))) if p != q => out.push((
                            Site::Erase {
                                c0: z,
                                plus: p,
                                minus: q,
                                hat_plus: hp,
                                hat_minus: hq,
                            },
                            i,
                        )),
                        _ => return Err(Error::Erase(
                            "a higher cell does not meet the erased cell between its two cofaces"
                                .into(),
                        )),
                    }
                }
                _ => {}
            }
        }
    }
    let sides: Vec<CellId> = sites
        .iter()
        .flat_map(|s| match s {
            Site::Erase { plus, minus, .. } => vec![*plus, *minus],
            _ => Vec::new(),
        })
        .collect();
    if !sides.is_empty() {
        let paired = out
            .iter()
            .filter(|(s, _)| matches!(s, Site::Erase { .. }))
            .count();
        let over = m.ids().filter(|&z| sides.contains(&att.assign(z))).count();
        if over != 2 * paired {
            return Err(Error::Erase(
                "a higher cell meets a coface without the erased cell".into(),
            ));
        }
    }
    Ok(out)
}
