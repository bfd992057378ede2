//! Regular cellular maps.
//!
//! A [`CellMap`] sends every cell of a source complex to a cell of the same
//! dimension in a target complex and, for each source cell `x` of positive
//! dimension, carries an isomorphism (itself a `CellMap`) from the boundary
//! model of `x` onto the boundary model of its image. The map is regular when
//! these identifications are compatible with the attaching maps:
//!
//! ```text
//! f ∘ att(x) = att(f(x)) ∘ ident(x)
//! ```
//!
//! as maps of complexes, recursively.

use std::sync::Arc;

use crate::complex::{CellId, Complex};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CellMap {
    assign: Vec<CellId>,
    ident: Vec<Option<Arc<CellMap>>>,
}

impl CellMap {
    pub fn new(assign: Vec<CellId>, ident: Vec<Option<Arc<CellMap>>>) -> Self {
        assert_eq!(assign.len(), ident.len());
        CellMap { assign, ident }
    }

    /// A map from a 0-dimensional complex.
    pub fn vertices(assign: Vec<CellId>) -> Self {
        let n = assign.len();
        CellMap {
            assign,
            ident: vec![None; n],
        }
    }

    pub fn len(&self) -> usize {
        self.assign.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assign.is_empty()
    }

    pub fn assign(&self, c: CellId) -> CellId {
        self.assign[c.index()]
    }

    pub fn assign_slice(&self) -> &[CellId] {
        &self.assign
    }

    pub fn ident(&self, c: CellId) -> Option<&CellMap> {
        self.ident[c.index()].as_deref()
    }

    pub(crate) fn ident_arc(&self, c: CellId) -> Option<&Arc<CellMap>> {
        self.ident[c.index()].as_ref()
    }

    pub(crate) fn push(&mut self, target: CellId, ident: Option<Arc<CellMap>>) {
        self.assign.push(target);
        self.ident.push(ident);
    }

    pub(crate) fn extended(&self, target: CellId, ident: Arc<CellMap>) -> CellMap {
        let mut m = self.clone();
        m.push(target, Some(ident));
        m
    }

    /// Same identifications, targets renamed by `f`.
    pub fn remap_targets(&self, f: impl Fn(CellId) -> CellId) -> CellMap {
        CellMap {
            assign: self.assign.iter().map(|&c| f(c)).collect(),
            ident: self.ident.clone(),
        }
    }

    /// Precomposition with a cell renaming of the source: entry `i` of the
    /// result is entry `cells[i]` of `self`.
    pub fn restrict(&self, cells: &[CellId]) -> CellMap {
        CellMap {
            assign: cells.iter().map(|&c| self.assign[c.index()]).collect(),
            ident: cells
                .iter()
                .map(|&c| self.ident[c.index()].clone())
                .collect(),
        }
    }

    /// The identity map of `k`.
    pub fn identity(k: &Complex) -> CellMap {
        CellMap {
            assign: k.ids().collect(),
            ident: k
                .ids()
                .map(|c| k.attachment(c).map(|a| a.sphere().identity()))
                .collect(),
        }
    }

    pub fn is_bijective(&self, target_len: usize) -> bool {
        if self.assign.len() != target_len {
            return false;
        }
        let mut seen = vec![false; target_len];
        for &c in &self.assign {
            if c.index() >= target_len || seen[c.index()] {
                return false;
            }
            seen[c.index()] = true;
        }
        true
    }
}

/// `g ∘ f`, where `f` is a map out of `src`.
pub fn compose(g: &CellMap, f: &CellMap, src: &Complex) -> CellMap {
    let mut out = CellMap::default();
    for x in src.ids() {
        let a = f.assign(x);
        let ident = src.attachment(x).map(|att| {
            let fi = f
                .ident(x)
                .expect("identification of a positive-dimensional cell");
            let gi = g
                .ident(a)
                .expect("identification of a positive-dimensional cell");
            Arc::new(compose(gi, fi, att.model()))
        });
        out.push(g.assign(a), ident);
    }
    out
}

/// Inverse of an isomorphism `f: src → tgt`.
pub fn inverse(f: &CellMap, src: &Complex, tgt: &Complex) -> CellMap {
    let n = tgt.len();
    let mut assign = vec![CellId::new(0); n];
    let mut ident = vec![None; n];
    for x in src.ids() {
        let y = f.assign(x);
        assign[y.index()] = x;
        if let Some(att) = src.attachment(x) {
            let fi = f
                .ident(x)
                .expect("identification of a positive-dimensional cell");
            ident[y.index()] = Some(Arc::new(inverse(fi, att.model(), tgt.model_of(y))));
        }
    }
    CellMap { assign, ident }
}

/// Sign of the chain map induced by `f` on the cell `x`: `+1` when the
/// identification carries the fundamental cycle of the boundary of `x` to
/// that of `f(x)`, `-1` otherwise. Vertices map with sign `+1`.
pub fn chain_sign(src: &Complex, tgt: &Complex, f: &CellMap, x: CellId) -> i8 {
    let Some(att) = src.attachment(x) else {
        return 1;
    };
    let y = f.assign(x);
    let h = f
        .ident(x)
        .expect("identification of a positive-dimensional cell");
    let s_src = att.sphere();
    let s_tgt = tgt.sphere_of(y);
    let t = s_src
        .model()
        .top_cells()
        .next()
        .expect("sphere models are non-empty");
    let t_img = h.assign(t);
    s_src.coefficient(t) * s_tgt.coefficient(t_img) * chain_sign(s_src.model(), s_tgt.model(), h, t)
}

/// Checks that `f` is a regular cellular map `src → tgt`. On failure the
/// message names the offending cell path.
pub fn check_regular(src: &Complex, tgt: &Complex, f: &CellMap) -> std::result::Result<(), String> {
    if f.len() != src.len() {
        return Err(format!(
            "map has {} entries for {} source cells",
            f.len(),
            src.len()
        ));
    }
    for x in src.ids() {
        let y = f.assign(x);
        if !tgt.contains(y) {
            return Err(format!("{x}: image {y} does not exist"));
        }
        if src.dim_of(x) != tgt.dim_of(y) {
            return Err(format!(
                "{x}: dimension {} sent to {y} of dimension {}",
                src.dim_of(x),
                tgt.dim_of(y)
            ));
        }
        let Some(att_x) = src.attachment(x) else {
            continue;
        };
        let Some(h) = f.ident(x) else {
            return Err(format!("{x}: missing identification"));
        };
        let att_y = tgt.att(y);
        check_iso(att_x.model(), att_y.model(), h).map_err(|e| format!("{x}/{e}"))?;
        let lhs = compose(f, att_x.map(), att_x.model());
        let rhs = compose(att_y.map(), h, att_x.model());
        if lhs != rhs {
            return Err(format!(
                "{x}: identification with {y} is incompatible with the attaching maps"
            ));
        }
    }
    Ok(())
}

pub fn check_iso(src: &Complex, tgt: &Complex, f: &CellMap) -> std::result::Result<(), String> {
    if !f.is_bijective(tgt.len()) || src.len() != tgt.len() {
        return Err("identification is not a bijection".into());
    }
    check_regular(src, tgt, f)
}

/// A regular cellular map together with its source and target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularMap {
    pub source: Complex,
    pub target: Complex,
    pub map: CellMap,
}

impl RegularMap {
    pub fn new(source: Complex, target: Complex, map: CellMap) -> Self {
        RegularMap {
            source,
            target,
            map,
        }
    }

    pub fn identity(k: &Complex) -> Self {
        RegularMap::new(k.clone(), k.clone(), CellMap::identity(k))
    }

    /// Builds a regular map from a dimension-preserving cell assignment,
    /// searching for compatible identifications of boundary models.
    pub fn from_assignment(source: Complex, target: Complex, assign: &[CellId]) -> Result<Self> {
        let map = crate::iso::complete_assignment(&source, &target, assign).ok_or_else(|| {
            Error::Attachment("no compatible identifications for this assignment".into())
        })?;
        Ok(RegularMap::new(source, target, map))
    }

    pub fn is_regular_cellular(&self) -> bool {
        check_regular(&self.source, &self.target, &self.map).is_ok()
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &RegularMap) -> Result<RegularMap> {
        if self.target != other.source {
            return Err(Error::Invalid("maps are not composable".into()));
        }
        Ok(RegularMap::new(
            self.source.clone(),
            other.target.clone(),
            compose(&other.map, &self.map, &self.source),
        ))
    }

    pub fn is_isomorphism(&self) -> bool {
        self.source.len() == self.target.len()
            && self.map.is_bijective(self.target.len())
            && self.is_regular_cellular()
    }
}

/// A regular map that is a bijection on cells with isomorphisms as
/// identifications.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isomorphism(pub RegularMap);

impl Isomorphism {
    pub fn map(&self) -> &CellMap {
        &self.0.map
    }

    pub fn source(&self) -> &Complex {
        &self.0.source
    }

    pub fn target(&self) -> &Complex {
        &self.0.target
    }

    pub fn inverse(&self) -> Isomorphism {
        Isomorphism(RegularMap::new(
            self.0.target.clone(),
            self.0.source.clone(),
            inverse(&self.0.map, &self.0.source, &self.0.target),
        ))
    }

    pub fn then(&self, other: &Isomorphism) -> Result<Isomorphism> {
        Ok(Isomorphism(self.0.then(&other.0)?))
    }
}

/// Whether an isomorphism of sphere models carries the stored cycle of
/// `src` to the stored cycle of `tgt` (`+1`) or to its negative (`-1`).
pub fn orientation_sign(
    src: &crate::complex::SphereData,
    tgt: &crate::complex::SphereData,
    f: &CellMap,
) -> i8 {
    let t = src
        .model()
        .top_cells()
        .next()
        .expect("sphere models are non-empty");
    src.coefficient(t) * tgt.coefficient(f.assign(t)) * chain_sign(src.model(), tgt.model(), f, t)
}
