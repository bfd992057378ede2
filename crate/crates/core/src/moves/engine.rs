//! Rewriting a complex at a set of sites.
//!
//! Removed cells disappear, the new cells of every local ball are added at
//! the end of their dimension block, and every cell whose attaching map
//! meets a removed cell gets its boundary model rewritten by the pulled-back
//! sites, recursively. Identifications between rewritten models are
//! transported functorially, so the result is again a valid complex.

use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;
use std::sync::Arc;

use super::local::{build_local, local_iso, pullback, Local, Site};
use crate::complex::{Attachment, Builder, Cell, CellId, Complex, SphereData};
use crate::error::{Error, Result};
use crate::map::{compose, CellMap};

/// Where a cell of the rewritten complex comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Source {
    Old(CellId),
    /// Cell `local` of the ball of site `site`.
    New {
        site: usize,
        local: CellId,
    },
}

/// Cell correspondence of one rewrite.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Corr {
    /// Old cell → new cell; `None` for removed cells.
    pub forward: Vec<Option<CellId>>,
    /// New cell → its origin.
    pub origin: Vec<Source>,
    /// The cell at the centre of each site.
    pub sites: Vec<CellId>,
    /// For old cells whose boundary model was rewritten, the correspondence
    /// of the model.
    pub models: BTreeMap<CellId, Corr>,
}

impl Corr {
    pub fn new_cells(&self) -> impl Iterator<Item = CellId> + '_ {
        self.origin
            .iter()
            .enumerate()
            .filter(|(_, s)| matches!(s, Source::New { .. }))
            .map(|(i, _)| CellId::new(i))
    }

    pub fn removed(&self) -> impl Iterator<Item = CellId> + '_ {
        self.forward
            .iter()
            .enumerate()
            .filter(|(_, f)| f.is_none())
            .map(|(i, _)| CellId::new(i))
    }
}

pub(crate) struct Rewrite {
    pub complex: Complex,
    pub corr: Corr,
    pub sites: Vec<Site>,
    pub locals: Vec<Local>,
    new_ids: HashMap<(usize, CellId), CellId>,
    /// For old cells whose boundary model was rewritten.
    models: Vec<Option<Rc<Rewrite>>>,
}

type Labeler<'a> = &'a dyn Fn(usize, CellId) -> Option<String>;

pub(crate) fn rewrite(
    x: &Complex,
    sites: Vec<Site>,
    labels: Option<Labeler<'_>>,
) -> Result<Rewrite> {
    let locals = sites
        .iter()
        .map(|s| build_local(x, s))
        .collect::<Result<Vec<_>>>()?;
    rewrite_with(x, sites, locals, labels)
}

fn rewrite_with(
    x: &Complex,
    sites: Vec<Site>,
    locals: Vec<Local>,
    labels: Option<Labeler<'_>>,
) -> Result<Rewrite> {
    let mut removed = vec![false; x.len()];
    for l in &locals {
        for &r in &l.removed {
            if removed[r.index()] {
                return Err(Error::Invalid(format!("sites overlap at {}", x.name(r))));
            }
            removed[r.index()] = true;
        }
    }
    let mut b = Builder::new();
    let mut origin = Vec::new();
    let mut slot_of_old = vec![None; x.len()];
    for c in x.ids() {
        if !removed[c.index()] {
            slot_of_old[c.index()] = Some(CellId::new(origin.len()));
            origin.push(Source::Old(c));
        }
    }
    let mut slot_of_new = HashMap::new();
    for (s, l) in locals.iter().enumerate() {
        for w in l.ball.ids() {
            if l.fixed[w.index()].is_none() {
                slot_of_new.insert((s, w), CellId::new(origin.len()));
                origin.push(Source::New { site: s, local: w });
            }
        }
    }
    // Slots are builder indices; after sorting they become final ids.
    let mut models: Vec<Option<Rc<Rewrite>>> = vec![None; x.len()];
    let mut cells: Vec<Option<Cell>> = vec![None; origin.len()];
    for c in x.ids() {
        let Some(slot) = slot_of_old[c.index()] else {
            continue;
        };
        let cell = x.cell(c);
        let Some(att) = cell.attachment() else {
            cells[slot.index()] = Some(cell.clone());
            continue;
        };
        let touched = att.map().assign_slice().iter().any(|t| removed[t.index()]);
        let fwd = |t: CellId| slot_of_old[t.index()].expect("kept cell");
        if !touched {
            let mut copy = cell.clone();
            copy.attachment.as_mut().unwrap().map = att.map().remap_targets(fwd);
            cells[slot.index()] = Some(copy);
            continue;
        }
        let model = att.model();
        let pulled = pullback(model, att.map(), &sites)?;
        let mut sub_sites = Vec::new();
        let mut sub_locals = Vec::new();
        let mut lambdas = Vec::new();
        for (site, parent) in pulled {
            let local = build_local(model, &site)?;
            let lambda = local_iso(
                &site,
                &local,
                model,
                &sites[parent],
                &locals[parent],
                x,
                att.map(),
            );
            sub_sites.push(site);
            sub_locals.push(local);
            lambdas.push((parent, lambda));
        }
        let sub = rewrite_with(model, sub_sites, sub_locals, None)?;
        let mut map = CellMap::default();
        let mut cycle = vec![0i8; sub.complex.len()];
        let top = sub.complex.dimension();
        for (u, src) in sub.corr.origin.iter().enumerate() {
            let u = CellId::new(u);
            let is_top = sub.complex.dim_of(u) as isize == top;
            match *src {
                Source::Old(z) => {
                    let t = att.assign(z);
                    let ident = model.attachment(z).map(|_| {
                        let h = att.map().ident_arc(z).unwrap();
                        match (&sub.models[z.index()], &models[t.index()]) {
                            (None, None) => h.clone(),
                            (Some(ra), Some(rb)) => {
                                Arc::new(rewrite_iso(h, ra, model.model_of(z), rb, x.model_of(t)))
                            }
                            _ => unreachable!("rewritten models correspond"),
                        }
                    });
                    map.push(fwd(t), ident);
                    if is_top {
                        cycle[u.index()] = att.sphere().coefficient(z);
                    }
                }
                Source::New { site, local } => {
                    let (parent, lambda) = &lambdas[site];
                    let target = slot_of_new[&(*parent, lambda.assign(local))];
                    map.push(target, lambda.ident_arc(local).cloned());
                    if is_top {
                        let l = &sub.locals[site];
                        cycle[u.index()] =
                            att.sphere().coefficient(l.primary) * l.rel[local.index()];
                    }
                }
            }
        }
        let sphere = SphereData::from_full(sub.complex.clone(), cycle);
        cells[slot.index()] = Some(Cell {
            dim: cell.dim,
            label: cell.label.clone(),
            attachment: Some(Attachment::new(sphere, map)),
        });
        models[c.index()] = Some(Rc::new(sub));
    }
    for (s, l) in locals.iter().enumerate() {
        for w in l.ball.ids() {
            let Some(&slot) = slot_of_new.get(&(s, w)) else {
                continue;
            };
            let src = l.ball.cell(w);
            let mut cell = Cell {
                dim: src.dim,
                label: labels.and_then(|f| f(s, w)),
                attachment: None,
            };
            if let Some(a) = src.attachment() {
                let mut map = CellMap::default();
                for v in a.model().ids() {
                    let t = a.assign(v);
                    let id = a.map().ident_arc(v).cloned();
                    match &l.fixed[t.index()] {
                        Some((target, fid)) => {
                            let slot = slot_of_old[target.index()].ok_or_else(|| {
                                Error::Invalid("a move touches a removed cell".into())
                            })?;
                            let ident = match (fid, id) {
                                (Some(f), Some(i)) => {
                                    Some(Arc::new(compose(f, &i, a.model().model_of(v))))
                                }
                                _ => None,
                            };
                            map.push(slot, ident);
                        }
                        None => map.push(slot_of_new[&(s, t)], id),
                    }
                }
                cell.attachment = Some(Attachment::from_arc(a.sphere_arc().clone(), map));
            }
            cells[slot.index()] = Some(cell);
        }
    }
    for c in cells {
        b.push(c.expect("every slot is filled"));
    }
    let (complex, perm) = b.finish();
    let mut forward = vec![None; x.len()];
    for c in x.ids() {
        forward[c.index()] = slot_of_old[c.index()].map(|s| perm[s.index()]);
    }
    let mut sorted = vec![Source::Old(CellId::new(0)); origin.len()];
    for (i, o) in origin.into_iter().enumerate() {
        sorted[perm[i].index()] = o;
    }
    let new_ids = slot_of_new
        .into_iter()
        .map(|(k, v)| (k, perm[v.index()]))
        .collect();
    Ok(Rewrite {
        complex,
        corr: Corr {
            forward,
            origin: sorted,
            sites: sites.iter().map(Site::key).collect(),
            models: models
                .iter()
                .enumerate()
                .filter_map(|(i, m)| m.as_ref().map(|r| (CellId::new(i), r.corr.clone())))
                .collect(),
        },
        sites,
        locals,
        new_ids,
        models,
    })
}

/// Given an isomorphism `h: A → B` carrying the sites of `ra` onto those of
/// `rb`, the induced isomorphism of the rewritten complexes.
fn rewrite_iso(h: &CellMap, ra: &Rewrite, a: &Complex, rb: &Rewrite, b: &Complex) -> CellMap {
    let by_key: HashMap<CellId, usize> = rb
        .sites
        .iter()
        .enumerate()
        .map(|(i, s)| (s.key(), i))
        .collect();
    let mut iotas: HashMap<usize, (usize, CellMap)> = HashMap::new();
    let mut out = CellMap::default();
    for src in &ra.corr.origin {
        match *src {
            Source::Old(w) => {
                let t = h.assign(w);
                let target = rb.corr.forward[t.index()].expect("kept cells correspond");
                let ident = a.attachment(w).map(|_| {
                    let hi = h.ident_arc(w).unwrap();
                    match (&ra.models[w.index()], &rb.models[t.index()]) {
                        (None, None) => hi.clone(),
                        (Some(x), Some(y)) => {
                            Arc::new(rewrite_iso(hi, x, a.model_of(w), y, b.model_of(t)))
                        }
                        _ => unreachable!("rewritten models correspond"),
                    }
                });
                out.push(target, ident);
            }
            Source::New { site, local } => {
                let (s2, iota) = iotas.entry(site).or_insert_with(|| {
                    let s2 = by_key[&h.assign(ra.sites[site].key())];
                    let iota = local_iso(
                        &ra.sites[site],
                        &ra.locals[site],
                        a,
                        &rb.sites[s2],
                        &rb.locals[s2],
                        b,
                        h,
                    );
                    (s2, iota)
                });
                let target = rb.new_ids[&(*s2, iota.assign(local))];
                out.push(target, iota.ident_arc(local).cloned());
            }
        }
    }
    out
}
