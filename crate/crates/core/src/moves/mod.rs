//! Radial and elementary subdivisions, erasures, triangulation, stellar
//! subdivision, move scripts and a bounded search for move sequences.
//!
//! Every move rewrites the complex locally and propagates the change into
//! the boundary models of all cells above it, so the cells around the move
//! persist while their boundary presentations are refined. Each returns the
//! new complex together with a [`Corr`] relating old and new cell ids.

mod engine;
mod join;
mod local;
mod script;
mod search;
mod triangulate;

use std::fmt;

use engine::rewrite;
pub use engine::{Corr, Source};
pub use join::transport_move_through_join;
use local::Site;
pub use script::{apply_script, verify_script, MoveScript};
pub use search::{candidate_moves, search_equivalence};
pub use triangulate::{is_simplicial, stellar_subdivide, triangulate, vertex_images};

use crate::complex::{CellId, Complex};
use crate::constructions::Origin;
use crate::error::{Error, Result};

/// A partition of the top cells of the boundary model of an `n`-cell into
/// two hemispheres. The equator is the set of model cells lying in the
/// closure of both.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquatorSplit {
    pub cell: CellId,
    /// Top cells of the boundary model going to the `+` side.
    pub plus: Vec<CellId>,
}

impl EquatorSplit {
    pub fn new(cell: CellId, plus: Vec<CellId>) -> Self {
        EquatorSplit { cell, plus }
    }

    /// The top cells of the boundary model not in `plus`.
    pub fn minus(&self, k: &Complex) -> Vec<CellId> {
        k.model_of(self.cell)
            .top_cells()
            .filter(|t| !self.plus.contains(t))
            .collect()
    }

    /// Checks the split without applying it.
    pub fn check(&self, k: &Complex) -> Result<()> {
        k.get(self.cell)?;
        local::split_local(k, self.cell, &self.plus).map(|_| ())
    }

    /// The equator as a complex.
    pub fn equator(&self, k: &Complex) -> Result<Complex> {
        k.get(self.cell)?;
        let m = k
            .attachment(self.cell)
            .ok_or(Error::VertexCell(self.cell))?
            .model();
        let mark = |tops: &[CellId]| {
            let mut v = vec![false; m.len()];
            for &t in tops {
                v[t.index()] = true;
                if let Some(a) = m.attachment(t) {
                    for &f in a.map().assign_slice() {
                        v[f.index()] = true;
                    }
                }
            }
            v
        };
        let p = mark(&self.plus);
        let q = mark(&self.minus(k));
        let both: Vec<bool> = p.iter().zip(&q).map(|(a, b)| *a && *b).collect();
        Ok(local::subcomplex(m, &both).0)
    }
}

/// Labels for the cells created by an elementary subdivision.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SplitLabels {
    pub plus: Option<String>,
    pub minus: Option<String>,
    pub equator: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Move {
    Radial {
        cell: CellId,
    },
    Elementary {
        split: EquatorSplit,
        labels: SplitLabels,
    },
    Erase {
        cell: CellId,
        label: Option<String>,
    },
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::Radial { cell } => write!(f, "radial {cell}"),
            Move::Elementary { split, .. } => {
                write!(f, "split {} plus", split.cell)?;
                for p in &split.plus {
                    write!(f, " {p}")?;
                }
                Ok(())
            }
            Move::Erase { cell, .. } => write!(f, "erase {cell}"),
        }
    }
}

/// An ordered record of moves with the cell correspondence of each.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MoveTrace {
    pub steps: Vec<(Move, Corr)>,
}

impl MoveTrace {
    pub fn new() -> Self {
        Self::default()
    }

    fn single(m: Move, corr: Corr) -> Self {
        MoveTrace {
            steps: vec![(m, corr)],
        }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn extend(&mut self, other: MoveTrace) {
        self.steps.extend(other.steps);
    }

    /// The moves alone, replayable with [`apply_script`].
    pub fn script(&self) -> MoveScript {
        MoveScript {
            moves: self.steps.iter().map(|(m, _)| m.clone()).collect(),
        }
    }

    /// Where an initial cell ends up, if it survives every step.
    pub fn track(&self, c: CellId) -> Option<CellId> {
        self.steps.iter().try_fold(c, |c, (_, corr)| {
            corr.forward.get(c.index()).copied().flatten()
        })
    }
}

fn named(k: &Complex, c: CellId) -> Option<&str> {
    k.label(c)
}

/// `base`, primed until it is unused in `k`.
fn fresh(k: &Complex, base: String) -> String {
    let mut l = base;
    while k.find(&l).is_some() {
        l.push('\'');
    }
    l
}

/// Replaces the cell `c` by the cone over its boundary model. The apex is
/// labelled `C/o`, where `C` is the label of `c` or its id `#n`; when `c`
/// has a label the cone over model cell `i` is labelled `C/i`.
pub fn radial_subdivide(k: &Complex, c: CellId) -> Result<(Complex, MoveTrace)> {
    k.get(c)?;
    if k.dim_of(c) == 0 {
        return Err(Error::VertexCell(c));
    }
    let name = k.name(c);
    let labelled = named(k, c).is_some();
    let site = Site::Radial { cell: c };
    let local = local::build_local(k, &site)?;
    let local::Aux::Radial(layout) = &local.aux else {
        unreachable!("radial sites build cones")
    };
    let labels: Vec<Option<String>> = layout
        .origin
        .iter()
        .map(|o| match o {
            Origin::Left(_) => Some(fresh(k, format!("{name}/o"))),
            Origin::Pair(_, z) if labelled => Some(fresh(k, format!("{name}/{}", z.index()))),
            _ => None,
        })
        .collect();
    let labeler = |_: usize, w: CellId| labels.get(w.index()).cloned().flatten();
    let rw = rewrite(k, vec![site], Some(&labeler))?;
    Ok((
        rw.complex,
        MoveTrace::single(Move::Radial { cell: c }, rw.corr),
    ))
}

/// Splits `split.cell` into `C+`, `C-` and the separating cell `C0`. Unset
/// labels default to `C+`, `C-`, `C0` when the cell has the label `C`,
/// primed if already taken.
pub fn elementary_subdivide(
    k: &Complex,
    split: &EquatorSplit,
    labels: &SplitLabels,
) -> Result<(Complex, MoveTrace)> {
    k.get(split.cell)?;
    let c = split.cell;
    if k.dim_of(c) == 0 {
        return Err(Error::VertexCell(c));
    }
    let name = named(k, c).map(str::to_string);
    let pick = |given: &Option<String>, suffix: &str| {
        given
            .clone()
            .or_else(|| name.as_ref().map(|n| fresh(k, format!("{n}{suffix}"))))
    };
    let chosen = [
        pick(&labels.equator, "0"),
        pick(&labels.plus, "+"),
        pick(&labels.minus, "-"),
    ];
    for l in chosen.iter().flatten() {
        if k.find(l).is_some_and(|x| x != c) {
            return Err(Error::DuplicateLabel(l.clone()));
        }
    }
    let site = Site::Split {
        cell: c,
        plus: split.plus.clone(),
    };
    let base = k.model_of(c).len();
    let labeler = |_: usize, w: CellId| {
        w.index()
            .checked_sub(base)
            .and_then(|i| chosen.get(i).cloned().flatten())
    };
    let rw = rewrite(k, vec![site], Some(&labeler))?;
    let m = Move::Elementary {
        split: split.clone(),
        labels: labels.clone(),
    };
    Ok((rw.complex, MoveTrace::single(m, rw.corr)))
}

/// Finds the two cofaces of `c0` and the model cells over it.
fn erase_site(k: &Complex, c0: CellId) -> Result<Site> {
    let n = k.dim_of(c0) + 1;
    let mut occ = Vec::new();
    for y in k.cells_of_dim(n) {
        let a = k.att(y);
        for t in a.model().top_cells() {
            if a.assign(t) == c0 {
                occ.push((y, t));
            }
        }
    }
    for y in k.ids().filter(|&y| k.dim_of(y) > n) {
        let a = k.att(y);
        let direct = a.model().ids().any(|t| a.assign(t) == c0);
        let via = a
            .model()
            .ids()
            .any(|t| occ.iter().any(|(p, _)| a.assign(t) == *p));
        if direct && !via {
            return Err(Error::Erase(format!(
                "{} meets {} outside its cofaces",
                k.name(y),
                k.name(c0)
            )));
        }
    }
    match occ.as_slice() {
        [(p, hp), (q, hq)] if p != q => Ok(Site::Erase {
            c0,
            plus: *p,
            minus: *q,
            hat_plus: *hp,
            hat_minus: *hq,
        }),
        [(p, _), (q, _)] if p == q => Err(Error::Erase(format!(
            "{} occurs twice in the boundary of {}",
            k.name(c0),
            k.name(*p)
        ))),
        _ => Err(Error::Erase(format!(
            "{} lies on {} top-dimensional cofaces (need exactly two)",
            k.name(c0),
            occ.len()
        ))),
    }
}

/// Whether `erase(k, c0, _)` succeeds. The cheap local test comes first;
/// conditions on higher cofaces only show up in the full rewrite.
fn erasable(k: &Complex, c0: CellId) -> bool {
    erase_site(k, c0).is_ok_and(|site| local::build_local(k, &site).is_ok())
        && erase(k, c0, None).is_ok()
}

/// Inverse of an elementary subdivision: merges the two cofaces `C+`, `C-`
/// of `c0` into one cell. The merged cell is labelled `label`, else `L`
/// when the cofaces are labelled `L+` and `L-`, else `C+~C-`, primed if
/// already taken.
pub fn erase(k: &Complex, c0: CellId, label: Option<&str>) -> Result<(Complex, MoveTrace)> {
    k.get(c0)?;
    let site = erase_site(k, c0)?;
    let Site::Erase { plus, minus, .. } = site else {
        unreachable!()
    };
    let merged = match (label, named(k, plus), named(k, minus)) {
        (Some(l), _, _) => Some(l.to_string()),
        (None, Some(p), Some(m)) => {
            let base = match (p.strip_suffix('+'), m.strip_suffix('-')) {
                (Some(a), Some(b)) if a == b => a.to_string(),
                _ => format!("{p}~{m}"),
            };
            let taken = |l: &str| {
                k.find(l)
                    .is_some_and(|x| x != plus && x != minus && x != c0)
            };
            let mut l = base;
            while taken(&l) {
                l.push('\'');
            }
            Some(l)
        }
        _ => None,
    };
    if let Some(l) = &merged {
        if k.find(l)
            .is_some_and(|x| x != plus && x != minus && x != c0)
        {
            return Err(Error::DuplicateLabel(l.clone()));
        }
    }
    let top_local = {
        let l = local::build_local(k, &site)?;
        CellId::new(l.ball.len() - 1)
    };
    let labeler = |_: usize, w: CellId| if w == top_local { merged.clone() } else { None };
    let rw = rewrite(k, vec![site], Some(&labeler))?;
    let m = Move::Erase {
        cell: c0,
        label: label.map(str::to_string),
    };
    Ok((rw.complex, MoveTrace::single(m, rw.corr)))
}

/// Applies one move.
pub fn apply_move(k: &Complex, m: &Move) -> Result<(Complex, MoveTrace)> {
    match m {
        Move::Radial { cell } => radial_subdivide(k, *cell),
        Move::Elementary { split, labels } => elementary_subdivide(k, split, labels),
        Move::Erase { cell, label } => erase(k, *cell, label.as_deref()),
    }
}
