use std::collections::BTreeMap;

use super::{
    apply_move, elementary_subdivide, erase, Corr, EquatorSplit, Move, MoveTrace, Source,
    SplitLabels,
};
use crate::complex::{CellId, Complex};
use crate::constructions::{Ctx, Kind, Origin};
use crate::error::{Error, Result};
use crate::iso::are_isomorphic;

/// Which part of the closed cell `C` a model cell of `∂(C * D)` lies over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Part {
    Empty,
    /// A cell of `∂C`, or `C` itself.
    Cell(CellId),
    Plus,
    Minus,
    Zero,
}

impl From<Origin> for Part {
    fn from(o: Origin) -> Self {
        match o {
            Origin::Left(x) | Origin::Pair(x, _) => Part::Cell(x),
            Origin::Right(_) => Part::Empty,
        }
    }
}

/// Carries the model tags of tracked cells through one move.
fn retag(
    prev: &Complex,
    tags: BTreeMap<CellId, Vec<Part>>,
    corr: &Corr,
) -> BTreeMap<CellId, Vec<Part>> {
    tags.into_iter()
        .filter_map(|(x, t)| {
            let y = corr.forward[x.index()]?;
            let Some(mc) = corr.models.get(&x) else {
                return Some((y, t));
            };
            let model = prev.model_of(x);
            let new = mc
                .origin
                .iter()
                .map(|src| match *src {
                    Source::Old(z) => t[z.index()],
                    Source::New { site, local } => {
                        let z0 = mc.sites[site];
                        match local.index() - model.model_of(z0).len() {
                            0 => Part::Zero,
                            1 => Part::Plus,
                            _ => Part::Minus,
                        }
                    }
                })
                .collect();
            Some((y, new))
        })
        .collect()
}

/// Transports a sequence of elementary subdivisions and erasures on `k`
/// (ending at `k2`) to the join with `l`: each split of `C` becomes splits
/// of `C` and then of every `C * D` in increasing dimension of `D`; each
/// erasure of `C0` becomes erasures of every `C0 * D` in decreasing
/// dimension and then of `C0`. The result ends at a complex isomorphic to
/// `k2 * l`.
pub fn transport_move_through_join(
    k: &Complex,
    k2: &Complex,
    m: &MoveTrace,
    l: &Complex,
) -> Result<(Complex, MoveTrace)> {
    let mut ctx = Ctx::default();
    let mut ki = k.clone();
    let mut cur = ctx.build(Kind::Join, k, l).0;
    let mut out = MoveTrace::new();
    for (step, (mv, _)) in m.steps.iter().enumerate() {
        let fail = |e: Error| Error::Step {
            step: step + 1,
            source: Box::new(e),
        };
        let (next_k, _) = apply_move(&ki, mv).map_err(fail)?;
        let (j, layout) = ctx.build(Kind::Join, &ki, l);
        let phi = are_isomorphic(&j, &cur)
            .ok_or_else(|| Error::Invalid("transported complex is not a join".into()))?;
        let phi = phi.map();
        let mut local = MoveTrace::new();
        let apply = |cur: &mut Complex, local: &mut MoveTrace, r: Result<(Complex, MoveTrace)>| {
            let (next, t) = r.map_err(fail)?;
            *cur = next;
            local.extend(t);
            Ok::<_, Error>(())
        };
        match mv {
            Move::Elementary { split, .. } => {
                let c = split.cell;
                let sa = ki.attachment(c).map(|a| a.sphere_arc().clone());
                let mut tags = BTreeMap::new();
                for d in l.ids() {
                    let x = layout.pair(c, d);
                    let sb = l.attachment(d).map(|a| a.sphere_arc().clone());
                    let origins = ctx.model_origins(Kind::Join, sa.as_ref(), sb.as_ref());
                    let iota = phi.ident(x).expect("pair cells have boundaries");
                    let mut t = vec![Part::Empty; origins.len()];
                    for (z, o) in origins.into_iter().enumerate() {
                        t[iota.assign(CellId::new(z)).index()] = o.into();
                    }
                    tags.insert(phi.assign(x), t);
                }
                let left = layout.left[c.index()];
                let iota = phi.ident(left).expect("split cells have boundaries");
                let plus: Vec<CellId> = split.plus.iter().map(|&t| iota.assign(t)).collect();
                let prev = cur.clone();
                let r = elementary_subdivide(
                    &cur,
                    &EquatorSplit::new(phi.assign(left), plus),
                    &SplitLabels::default(),
                );
                apply(&mut cur, &mut local, r)?;
                tags = retag(&prev, tags, &local.steps.last().unwrap().1);
                for d in l.ids() {
                    let x = local
                        .track(phi.assign(layout.pair(c, d)))
                        .expect("pair cells persist");
                    let t = &tags[&x];
                    let plus: Vec<CellId> = cur
                        .model_of(x)
                        .top_cells()
                        .filter(|z| match t[z.index()] {
                            Part::Plus => true,
                            Part::Cell(y) => split.plus.contains(&y),
                            _ => false,
                        })
                        .collect();
                    let prev = cur.clone();
                    let r = elementary_subdivide(
                        &cur,
                        &EquatorSplit::new(x, plus),
                        &SplitLabels::default(),
                    );
                    apply(&mut cur, &mut local, r)?;
                    tags = retag(&prev, tags, &local.steps.last().unwrap().1);
                }
            }
            Move::Erase { cell, .. } => {
                for d in l.ids().rev() {
                    let x = local
                        .track(phi.assign(layout.pair(*cell, d)))
                        .expect("pair cells persist");
                    let r = erase(&cur, x, None);
                    apply(&mut cur, &mut local, r)?;
                }
                let x = local
                    .track(phi.assign(layout.left[cell.index()]))
                    .expect("cells persist");
                let r = erase(&cur, x, None);
                apply(&mut cur, &mut local, r)?;
            }
            Move::Radial { .. } => {
                return Err(fail(Error::Invalid(
                    "only elementary subdivisions and erasures are transported".into(),
                )))
            }
        }
        out.extend(local);
        ki = next_k;
    }
    if are_isomorphic(&ki, k2).is_none() {
        return Err(Error::Invalid(
            "the trace does not end at the given complex".into(),
        ));
    }
    Ok((cur, out))
}
