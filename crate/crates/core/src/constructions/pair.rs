//! Joins and products, with their induced maps.
//!
//! The boundary model of a join cell `A * B` is `∂(cl A * cl B)`, built by
//! the same procedure applied to the closed cells, and likewise for `A × B`.
//! Everything here is a deterministic function of the boundary spheres of
//! the factors, so the identifications of induced maps can be rebuilt from
//! identifications of the factors.
//!
//! Orientation: `∂(A * B) = ∂A * B + (-1)^(p+1) A * ∂B` with the augmented
//! boundary of a vertex (so `∂(a * x) = x - a * ∂x` and an edge `a * v`
//! points towards `v`), and `∂(A × B) = ∂A × B + (-1)^p A × ∂B`, where
//! `p = dim A`.

use std::collections::HashMap;
use std::rc::Rc;
use std::sync::Arc;

use crate::algebra::fundamental_cycle;
use crate::complex::{Attachment, Builder, Cell, CellId, Complex, SphereData};
use crate::map::CellMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub(crate) enum Kind {
    Join,
    Product,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Origin {
    Left(CellId),
    Right(CellId),
    Pair(CellId, CellId),
}

/// Where the cells of a join or product came from.
#[derive(Clone, Debug, Default)]
pub(crate) struct Layout {
    pub left: Vec<CellId>,
    pub right: Vec<CellId>,
    pub pairs: Vec<CellId>,
    pub cols: usize,
    pub origin: Vec<Origin>,
}

impl Layout {
    pub fn pair(&self, a: CellId, b: CellId) -> CellId {
        self.pairs[a.index() * self.cols + b.index()]
    }
}

struct Built {
    layout: Layout,
    sphere: Arc<SphereData>,
}

type Key = (Kind, usize, usize);

/// Per-call memo of boundary models of pair cells, keyed by the factor
/// spheres. The stored `Arc`s keep the keys alive.
/// Oriented models of the two factors, and the built pair.
type Entry = (Option<Arc<SphereData>>, Option<Arc<SphereData>>, Rc<Built>);

#[derive(Default)]
pub(crate) struct Ctx {
    memo: HashMap<Key, Entry>,
}

fn key(s: Option<&Arc<SphereData>>) -> usize {
    s.map_or(0, |a| Arc::as_ptr(a) as usize)
}

/// The closed cell bounded by `s` (a point for `None`).
pub(crate) fn ball(s: Option<&Arc<SphereData>>) -> Complex {
    match s {
        None => {
            let mut k = Complex::new();
            k.push_raw(Cell::vertex(None));
            k
        }
        Some(s) => {
            let mut k = s.model().without_labels();
            k.push_raw(Cell::with_attachment(
                Attachment::from_arc(s.clone(), CellMap::identity(s.model())),
                None,
            ));
            k
        }
    }
}

/// `cl(h)`: an identification of boundary models extended over the top cell.
fn ball_map(h: Option<&CellMap>, target_len: usize) -> CellMap {
    match h {
        None => CellMap::vertices(vec![CellId::new(0)]),
        Some(h) => h.extended(CellId::new(target_len - 1), Arc::new(h.clone())),
    }
}

impl Ctx {
    fn sphere_entry(
        &mut self,
        kind: Kind,
        a: Option<&Arc<SphereData>>,
        b: Option<&Arc<SphereData>>,
    ) -> Rc<Built> {
        let k = (kind, key(a), key(b));
        if let Some((_, _, built)) = self.memo.get(&k) {
            return built.clone();
        }
        let x = ball(a);
        let y = ball(b);
        let top = (CellId::new(x.len() - 1), CellId::new(y.len() - 1));
        let (model, layout) = self.build_skipping(kind, &x, &y, Some(top));
        let mut cycle = fundamental_cycle(&model).expect("join and product boundaries are spheres");
        let top_y = CellId::new(y.len() - 1);
        let (anchor, sign) = match (kind, a) {
            (Kind::Join, None) => (layout.right[top_y.index()], 1),
            (Kind::Product, None) => {
                let s = b.expect("a product of two vertices is a vertex");
                let t = s.model().top_cells().next().unwrap();
                (layout.pair(CellId::new(0), t), s.coefficient(t))
            }
            (_, Some(s)) => {
                let t = s.model().top_cells().next().unwrap();
                (layout.pair(t, top_y), s.coefficient(t))
            }
        };
        if cycle[anchor.index()] != sign {
            for c in &mut cycle {
                *c = -*c;
            }
        }
        let built = Rc::new(Built {
            layout,
            sphere: Arc::new(SphereData::from_full(model, cycle)),
        });
        self.memo.insert(k, (a.cloned(), b.cloned(), built.clone()));
        built
    }

    /// `K * L` or `K × L` with its layout.
    pub(crate) fn build(&mut self, kind: Kind, k: &Complex, l: &Complex) -> (Complex, Layout) {
        self.build_skipping(kind, k, l, None)
    }

    /// As [`Ctx::build`], leaving out one pair cell (which must have no
    /// cofaces). Its slot in the layout is unusable.
    fn build_skipping(
        &mut self,
        kind: Kind,
        k: &Complex,
        l: &Complex,
        skip: Option<(CellId, CellId)>,
    ) -> (Complex, Layout) {
        let (nk, nl) = (k.len(), l.len());
        let singles = kind == Kind::Join;
        let base = if singles { nk + nl } else { 0 };
        let tmp = Layout {
            left: if singles {
                (0..nk).map(CellId::new).collect()
            } else {
                Vec::new()
            },
            right: if singles {
                (nk..nk + nl).map(CellId::new).collect()
            } else {
                Vec::new()
            },
            pairs: {
                let mut next = base;
                (0..nk * nl)
                    .map(|i| {
                        let (a, b) = (CellId::new(i / nl.max(1)), CellId::new(i % nl.max(1)));
                        if skip == Some((a, b)) {
                            CellId::new(u32::MAX as usize)
                        } else {
                            next += 1;
                            CellId::new(next - 1)
                        }
                    })
                    .collect()
            },
            cols: nl,
            origin: Vec::new(),
        };
        let mut origin = Vec::new();
        let mut b = Builder::new();
        let mut labels = Vec::new();
        if singles {
            for (side, src, ids) in [(0, k, &tmp.left), (1, l, &tmp.right)] {
                for c in src.ids() {
                    let cell = src.cell(c);
                    let mut copy = Cell {
                        dim: cell.dim,
                        label: None,
                        attachment: cell.attachment.clone(),
                    };
                    if let Some(att) = &mut copy.attachment {
                        att.map = att.map.remap_targets(|t| ids[t.index()]);
                    }
                    b.push(copy);
                    labels.push(cell.label.clone());
                    origin.push(if side == 0 {
                        Origin::Left(c)
                    } else {
                        Origin::Right(c)
                    });
                }
            }
        }
        for a in k.ids() {
            let (ca, fa) = k.closure(a);
            for bb in l.ids() {
                if skip == Some((a, bb)) {
                    continue;
                }
                let dim = k.dim_of(a) + l.dim_of(bb) + usize::from(singles);
                let label = match (k.label(a), l.label(bb)) {
                    (Some(x), Some(y)) if kind == Kind::Join => Some(format!("{x}*{y}")),
                    (Some(x), Some(y)) => Some(format!("{x}x{y}")),
                    _ => None,
                };
                labels.push(label);
                origin.push(Origin::Pair(a, bb));
                if dim == 0 {
                    b.push(Cell::vertex(None));
                    continue;
                }
                let sa = k.attachment(a).map(|x| x.sphere_arc().clone());
                let sb = l.attachment(bb).map(|x| x.sphere_arc().clone());
                let built = self.sphere_entry(kind, sa.as_ref(), sb.as_ref());
                let (cb, gb) = l.closure(bb);
                let n = built.sphere.model().len();
                let map = self.induced(kind, &built.layout, n, &ca, &cb, k, l, &fa, &gb, &tmp);
                b.push(Cell {
                    dim,
                    label: None,
                    attachment: Some(Attachment::from_arc(built.sphere.clone(), map)),
                });
            }
        }
        let (mut out, perm) = b.finish();
        let p = |c: &CellId| perm[c.index()];
        let layout = Layout {
            left: tmp.left.iter().map(p).collect(),
            right: tmp.right.iter().map(p).collect(),
            pairs: tmp
                .pairs
                .iter()
                .map(|c| if c.index() < perm.len() { p(c) } else { *c })
                .collect(),
            cols: nl,
            origin: {
                let mut o = vec![Origin::Left(CellId::new(0)); origin.len()];
                for (i, x) in origin.into_iter().enumerate() {
                    o[perm[i].index()] = x;
                }
                o
            },
        };
        for (i, l) in labels.into_iter().enumerate() {
            if let Some(l) = l {
                if out.find(&l).is_none() {
                    out.set_label(perm[i], Some(l));
                }
            }
        }
        (out, layout)
    }

    /// The map `f * g` (or `f × g`) on the first `n` cells of a join or
    /// product of `x` and `y` (described by `src`), into the join or
    /// product of `k` and `l` described by `tgt`.
    #[allow(clippy::too_many_arguments)]
    fn induced(
        &mut self,
        kind: Kind,
        src: &Layout,
        n: usize,
        x: &Complex,
        y: &Complex,
        k: &Complex,
        l: &Complex,
        f: &CellMap,
        g: &CellMap,
        tgt: &Layout,
    ) -> CellMap {
        let mut out = CellMap::default();
        for o in &src.origin[..n] {
            match *o {
                Origin::Left(a) => out.push(
                    tgt.left[f.assign(a).index()],
                    f.ident(a).map(|h| Arc::new(h.clone())),
                ),
                Origin::Right(b) => out.push(
                    tgt.right[g.assign(b).index()],
                    g.ident(b).map(|h| Arc::new(h.clone())),
                ),
                Origin::Pair(a, b) => {
                    let (fa, gb) = (f.assign(a), g.assign(b));
                    let target = tgt.pair(fa, gb);
                    let dim = x.dim_of(a) + y.dim_of(b) + usize::from(kind == Kind::Join);
                    let ident = (dim > 0).then(|| {
                        Arc::new(self.sphere_iso(
                            kind,
                            x.attachment(a).map(|t| t.sphere_arc()),
                            y.attachment(b).map(|t| t.sphere_arc()),
                            k.attachment(fa).map(|t| t.sphere_arc()),
                            l.attachment(gb).map(|t| t.sphere_arc()),
                            f.ident(a),
                            g.ident(b),
                        ))
                    });
                    out.push(target, ident);
                }
            }
        }
        out
    }

    /// The identification of boundary models of `A * B → A' * B'` induced
    /// by identifications `ha`, `hb` of the factors' boundary models.
    #[allow(clippy::too_many_arguments)]
    pub(crate) fn sphere_iso(
        &mut self,
        kind: Kind,
        a: Option<&Arc<SphereData>>,
        b: Option<&Arc<SphereData>>,
        a2: Option<&Arc<SphereData>>,
        b2: Option<&Arc<SphereData>>,
        ha: Option<&CellMap>,
        hb: Option<&CellMap>,
    ) -> CellMap {
        let src = self.sphere_entry(kind, a, b);
        let tgt = self.sphere_entry(kind, a2, b2);
        let (x, y, x2, y2) = (ball(a), ball(b), ball(a2), ball(b2));
        let fa = ball_map(ha, x2.len());
        let gb = ball_map(hb, y2.len());
        let n = src.sphere.model().len();
        self.induced(
            kind,
            &src.layout,
            n,
            &x,
            &y,
            &x2,
            &y2,
            &fa,
            &gb,
            &tgt.layout,
        )
    }

    /// Where the cells of the boundary model of a pair cell with factor
    /// boundaries `a` and `b` come from, in terms of the closed factors.
    pub(crate) fn model_origins(
        &mut self,
        kind: Kind,
        a: Option<&Arc<SphereData>>,
        b: Option<&Arc<SphereData>>,
    ) -> Vec<Origin> {
        self.sphere_entry(kind, a, b).layout.origin.clone()
    }

    /// `f * g` or `f × g` between built joins or products.
    #[allow(clippy::too_many_arguments)]
    pub(crate) fn map(
        &mut self,
        kind: Kind,
        src: &Layout,
        n: usize,
        k: &Complex,
        l: &Complex,
        k2: &Complex,
        l2: &Complex,
        f: &CellMap,
        g: &CellMap,
        tgt: &Layout,
    ) -> CellMap {
        self.induced(kind, src, n, k, l, k2, l2, f, g, tgt)
    }
}

/// The join `K * L`: the cells of `K`, the cells of `L` and a cell `A * B`
/// of dimension `dim A + dim B + 1` for every pair.
pub fn join(k: &Complex, l: &Complex) -> Complex {
    Ctx::default().build(Kind::Join, k, l).0
}

/// The product `K × L`: a cell `A × B` of dimension `dim A + dim B` for
/// every pair.
pub fn product(k: &Complex, l: &Complex) -> Complex {
    Ctx::default().build(Kind::Product, k, l).0
}

/// The cone `a * K` over a new apex vertex.
pub fn cone(k: &Complex, apex: Option<&str>) -> Complex {
    let mut point = Complex::new();
    point.push_raw(Cell::vertex(apex.map(str::to_string)));
    join(&point, k)
}

/// The map `f * g : K * L → K' * L'` induced by regular maps `f: K → K'`
/// and `g: L → L'`.
pub fn join_map(
    k: &Complex,
    l: &Complex,
    k2: &Complex,
    l2: &Complex,
    f: &CellMap,
    g: &CellMap,
) -> CellMap {
    induced_map(Kind::Join, k, l, k2, l2, f, g)
}

/// The map `f × g : K × L → K' × L'`.
pub fn product_map(
    k: &Complex,
    l: &Complex,
    k2: &Complex,
    l2: &Complex,
    f: &CellMap,
    g: &CellMap,
) -> CellMap {
    induced_map(Kind::Product, k, l, k2, l2, f, g)
}

fn induced_map(
    kind: Kind,
    k: &Complex,
    l: &Complex,
    k2: &Complex,
    l2: &Complex,
    f: &CellMap,
    g: &CellMap,
) -> CellMap {
    let mut ctx = Ctx::default();
    let (src, ls) = ctx.build(kind, k, l);
    let (_, lt) = ctx.build(kind, k2, l2);
    ctx.map(kind, &ls, src.len(), k, l, k2, l2, f, g, &lt)
}
