//! The recursive data model.
//!
//! A [`Complex`] is a graded table of cells. Every cell of positive dimension
//! carries an [`Attachment`]: a PLCW model of its boundary sphere
//! ([`SphereData`], which also stores the orientation as a fundamental
//! cycle) together with a regular cellular map ([`CellMap`]) from that model
//! into the lower skeleton of the ambient complex.
//!
//! Cells are kept in canonical order: by dimension, then by insertion order.
//! A [`CellId`] is the position of a cell in that order, so ids are stable
//! under read-only queries but rewrites renumber them (every rewrite returns
//! a correspondence).

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::map::CellMap;

/// Identifier of a cell inside one [`Complex`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CellId(pub(crate) u32);

impl CellId {
    pub fn new(index: usize) -> Self {
        CellId(index as u32)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for CellId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Cell counts per dimension.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct FVector(pub Vec<usize>);

impl FVector {
    pub fn euler_characteristic(&self) -> i64 {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &n)| if i % 2 == 0 { n as i64 } else { -(n as i64) })
            .sum()
    }

    pub fn get(&self, dim: usize) -> usize {
        self.0.get(dim).copied().unwrap_or(0)
    }
}

impl fmt::Display for FVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, n) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{n}")?;
        }
        write!(f, ")")
    }
}

/// A PLCW model of the boundary sphere of a cell together with its stored
/// orientation.
///
/// `cycle` is indexed by model cell id; it is `±1` on top-dimensional cells
/// of the model and `0` elsewhere.
#[derive(Clone, Debug)]
pub struct SphereData {
    pub(crate) model: Complex,
    pub(crate) cycle: Vec<i8>,
    id_cache: OnceLock<Arc<CellMap>>,
}

impl PartialEq for SphereData {
    fn eq(&self, other: &Self) -> bool {
        self.cycle == other.cycle && self.model == other.model
    }
}

impl Eq for SphereData {}

impl SphereData {
    /// Pairs a model with cycle coefficients on its top cells (in canonical
    /// order). No validation happens here; see [`crate::validate`].
    pub fn new(model: Complex, top_coefficients: &[i8]) -> Self {
        let mut cycle = vec![0; model.len()];
        for (c, &s) in model.top_cells().zip(top_coefficients) {
            cycle[c.index()] = s;
        }
        SphereData::from_full(model, cycle)
    }

    pub(crate) fn from_full(model: Complex, cycle: Vec<i8>) -> Self {
        debug_assert_eq!(model.len(), cycle.len());
        SphereData {
            model,
            cycle,
            id_cache: OnceLock::new(),
        }
    }

    /// The zero-sphere: two points, the first carrying `+1`.
    pub fn s0() -> Self {
        let mut model = Complex::new();
        model.push_raw(Cell::vertex(None));
        model.push_raw(Cell::vertex(None));
        SphereData::from_full(model, vec![1, -1])
    }

    pub fn model(&self) -> &Complex {
        &self.model
    }

    /// Dimension of the sphere (one less than the cell it bounds).
    pub fn dimension(&self) -> isize {
        self.model.dimension()
    }

    pub fn coefficient(&self, c: CellId) -> i8 {
        self.cycle[c.index()]
    }

    pub fn cycle(&self) -> &[i8] {
        &self.cycle
    }

    /// The same model with the opposite orientation.
    pub fn negated(&self) -> Self {
        SphereData::from_full(self.model.clone(), self.cycle.iter().map(|s| -s).collect())
    }

    /// Identity map of the model (cached).
    pub fn identity(&self) -> Arc<CellMap> {
        self.id_cache
            .get_or_init(|| Arc::new(CellMap::identity(&self.model)))
            .clone()
    }
}

/// Attaching data of a positive-dimensional cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Attachment {
    pub(crate) sphere: Arc<SphereData>,
    pub(crate) map: CellMap,
}

impl Attachment {
    pub fn new(sphere: SphereData, map: CellMap) -> Self {
        Attachment {
            sphere: Arc::new(sphere),
            map,
        }
    }

    pub(crate) fn from_arc(sphere: Arc<SphereData>, map: CellMap) -> Self {
        Attachment { sphere, map }
    }

    /// An edge from `tail` to `head`.
    pub fn edge(tail: CellId, head: CellId) -> Self {
        Attachment::new(SphereData::s0(), CellMap::vertices(vec![head, tail]))
    }

    pub fn sphere(&self) -> &SphereData {
        &self.sphere
    }

    pub(crate) fn sphere_arc(&self) -> &Arc<SphereData> {
        &self.sphere
    }

    pub fn model(&self) -> &Complex {
        &self.sphere.model
    }

    pub fn map(&self) -> &CellMap {
        &self.map
    }

    pub fn assign(&self, model_cell: CellId) -> CellId {
        self.map.assign(model_cell)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub(crate) dim: usize,
    pub(crate) label: Option<String>,
    pub(crate) attachment: Option<Attachment>,
}

impl Cell {
    pub fn vertex(label: Option<String>) -> Self {
        Cell {
            dim: 0,
            label,
            attachment: None,
        }
    }

    pub fn with_attachment(attachment: Attachment, label: Option<String>) -> Self {
        let dim = (attachment.sphere.dimension() + 1) as usize;
        Cell {
            dim,
            label,
            attachment: Some(attachment),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn attachment(&self) -> Option<&Attachment> {
        self.attachment.as_ref()
    }
}

/// A finite PLCW complex.
#[derive(Clone, Debug)]
pub struct Complex {
    cells: Vec<Cell>,
    // dim_start[d]..dim_start[d + 1] is the block of d-cells
    dim_start: Vec<usize>,
    labels: HashMap<String, CellId>,
}

impl PartialEq for Complex {
    fn eq(&self, other: &Self) -> bool {
        self.cells == other.cells
    }
}

impl Eq for Complex {}

impl Default for Complex {
    fn default() -> Self {
        Complex::new()
    }
}

impl Complex {
    pub fn new() -> Self {
        Complex {
            cells: Vec::new(),
            dim_start: vec![0],
            labels: HashMap::new(),
        }
    }

    /// `-1` for the empty complex.
    pub fn dimension(&self) -> isize {
        self.dim_start.len() as isize - 2
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains(&self, c: CellId) -> bool {
        c.index() < self.cells.len()
    }

    pub fn cell(&self, c: CellId) -> &Cell {
        &self.cells[c.index()]
    }

    pub fn get(&self, c: CellId) -> Result<&Cell> {
        self.cells.get(c.index()).ok_or(Error::UnknownCell(c))
    }

    pub fn dim_of(&self, c: CellId) -> usize {
        self.cells[c.index()].dim
    }

    /// All cells in canonical order.
    pub fn ids(&self) -> impl DoubleEndedIterator<Item = CellId> + ExactSizeIterator {
        (0..self.cells.len()).map(CellId::new)
    }

    pub fn cells_of_dim(&self, dim: usize) -> impl DoubleEndedIterator<Item = CellId> {
        let range = if dim + 1 < self.dim_start.len() {
            self.dim_start[dim]..self.dim_start[dim + 1]
        } else {
            0..0
        };
        range.map(CellId::new)
    }

    pub fn count_of_dim(&self, dim: usize) -> usize {
        if dim + 1 < self.dim_start.len() {
            self.dim_start[dim + 1] - self.dim_start[dim]
        } else {
            0
        }
    }

    /// Cells of the highest dimension.
    pub fn top_cells(&self) -> impl DoubleEndedIterator<Item = CellId> {
        let d = self.dimension();
        let dim = if d < 0 { usize::MAX } else { d as usize };
        self.cells_of_dim(dim)
    }

    pub fn label(&self, c: CellId) -> Option<&str> {
        self.cells[c.index()].label.as_deref()
    }

    pub fn find(&self, label: &str) -> Option<CellId> {
        self.labels.get(label).copied()
    }

    /// Resolves a label, or a raw id written as `#n`.
    pub fn resolve(&self, name: &str) -> Result<CellId> {
        if let Some(c) = self.find(name) {
            return Ok(c);
        }
        if let Some(rest) = name.strip_prefix('#') {
            if let Ok(i) = rest.parse::<usize>() {
                let c = CellId::new(i);
                return if self.contains(c) {
                    Ok(c)
                } else {
                    Err(Error::UnknownCell(c))
                };
            }
        }
        Err(Error::UnknownLabel(name.to_string()))
    }

    /// The label of a cell, or `#id` when it has none.
    pub fn name(&self, c: CellId) -> String {
        match self.label(c) {
            Some(l) => l.to_string(),
            None => c.to_string(),
        }
    }

    pub fn attachment(&self, c: CellId) -> Option<&Attachment> {
        self.cells[c.index()].attachment.as_ref()
    }

    pub(crate) fn att(&self, c: CellId) -> &Attachment {
        self.cells[c.index()]
            .attachment
            .as_ref()
            .expect("positive-dimensional cell")
    }

    /// Boundary model of a positive-dimensional cell.
    pub fn model_of(&self, c: CellId) -> &Complex {
        &self.att(c).sphere.model
    }

    pub fn sphere_of(&self, c: CellId) -> &SphereData {
        &self.att(c).sphere
    }

    /// The stored pullback decomposition of the boundary of `c`.
    pub fn pullback(&self, c: CellId) -> Result<&SphereData> {
        let cell = self.get(c)?;
        match &cell.attachment {
            Some(a) => Ok(&a.sphere),
            None => Err(Error::VertexCell(c)),
        }
    }

    pub fn f_vector(&self) -> FVector {
        FVector(
            (0..self.dim_start.len().saturating_sub(1))
                .map(|d| self.count_of_dim(d))
                .collect(),
        )
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector().euler_characteristic()
    }

    /// Adds a vertex and returns its id. Vertices are placed at the end of
    /// the 0-cell block; higher cells are renumbered if present.
    pub fn add_vertex(&mut self, label: Option<&str>) -> Result<CellId> {
        self.check_label(label)?;
        Ok(self.insert(Cell::vertex(label.map(str::to_string))))
    }

    /// Attaches a new cell along `attachment`, after checking the sphere
    /// model and the regularity of the attaching map.
    pub fn add_cell(&mut self, attachment: Attachment, label: Option<&str>) -> Result<CellId> {
        self.check_label(label)?;
        crate::validate::check_attachment(self, &attachment)?;
        Ok(self.insert(Cell::with_attachment(attachment, label.map(str::to_string))))
    }

    /// Convenience: an edge from `tail` to `head`.
    pub fn add_edge(&mut self, tail: CellId, head: CellId, label: Option<&str>) -> Result<CellId> {
        self.add_cell(Attachment::edge(tail, head), label)
    }

    fn check_label(&self, label: Option<&str>) -> Result<()> {
        if let Some(l) = label {
            if self.labels.contains_key(l) {
                return Err(Error::DuplicateLabel(l.to_string()));
            }
        }
        Ok(())
    }

    /// Inserts at the end of the cell's dimension block, renumbering any
    /// higher-dimensional cells.
    pub(crate) fn insert(&mut self, cell: Cell) -> CellId {
        let d = cell.dim;
        if d + 2 > self.dim_start.len() {
            let last = *self.dim_start.last().unwrap();
            self.dim_start.resize(d + 2, last);
        }
        let pos = self.dim_start[d + 1];
        if pos == self.cells.len() {
            self.cells.push(cell);
        } else {
            let shift = |c: CellId| {
                if c.index() >= pos {
                    CellId::new(c.index() + 1)
                } else {
                    c
                }
            };
            for later in &mut self.cells[pos..] {
                if let Some(att) = &mut later.attachment {
                    att.map = att.map.remap_targets(shift);
                }
            }
            self.cells.insert(pos, cell);
        }
        for s in &mut self.dim_start[d + 1..] {
            *s += 1;
        }
        self.rebuild_labels();
        CellId::new(pos)
    }

    /// Appends a cell without reordering; the caller guarantees that the
    /// dimension is at least that of the last cell.
    pub(crate) fn push_raw(&mut self, cell: Cell) -> CellId {
        let d = cell.dim;
        debug_assert!(self.cells.last().is_none_or(|l| l.dim <= d));
        if d + 2 > self.dim_start.len() {
            let last = *self.dim_start.last().unwrap();
            self.dim_start.resize(d + 2, last);
        }
        self.dim_start[d + 1] += 1;
        if let Some(l) = &cell.label {
            self.labels.insert(l.clone(), CellId::new(self.cells.len()));
        }
        self.cells.push(cell);
        CellId::new(self.cells.len() - 1)
    }

    fn rebuild_labels(&mut self) {
        self.labels = self
            .cells
            .iter()
            .enumerate()
            .filter_map(|(i, c)| c.label.clone().map(|l| (l, CellId::new(i))))
            .collect();
    }

    pub(crate) fn set_label(&mut self, c: CellId, label: Option<String>) {
        self.cells[c.index()].label = label;
        self.rebuild_labels();
    }

    /// Drops every label.
    pub fn without_labels(&self) -> Complex {
        let mut k = self.clone();
        for c in &mut k.cells {
            c.label = None;
        }
        k.labels.clear();
        k
    }

    /// Cells of dimension at most `k`, attachments untouched.
    pub fn skeleton(&self, k: usize) -> Result<Complex> {
        let d = self.dimension();
        if d < 0 || k as isize > d {
            return Err(Error::Dimension(format!(
                "skeleton {k} of a complex of dimension {d}"
            )));
        }
        let mut out = Complex::new();
        for c in self.ids() {
            if self.dim_of(c) <= k {
                out.push_raw(self.cell(c).clone());
            }
        }
        Ok(out)
    }

    /// Cells hit by the attaching map of `c`, recursively (the proper faces).
    pub fn faces(&self, c: CellId) -> Result<BTreeSet<CellId>> {
        self.get(c)?;
        let mut out = BTreeSet::new();
        if let Some(att) = self.attachment(c) {
            for m in att.model().ids() {
                out.insert(att.assign(m));
            }
        }
        Ok(out)
    }

    /// Cells having `c` as a proper face.
    pub fn cofaces(&self, c: CellId) -> Result<BTreeSet<CellId>> {
        self.get(c)?;
        let d = self.dim_of(c);
        let mut out = BTreeSet::new();
        for x in self.ids() {
            if self.dim_of(x) > d {
                let att = self.att(x);
                if att.map.assign_slice().contains(&c) {
                    out.insert(x);
                }
            }
        }
        Ok(out)
    }

    /// Cells whose attaching map hits `c` in a top model cell, i.e. the
    /// cofaces of codimension one, each listed once.
    pub fn direct_cofaces(&self, c: CellId) -> Vec<CellId> {
        let d = self.dim_of(c);
        self.cells_of_dim(d + 1)
            .filter(|&x| {
                let att = self.att(x);
                att.model().top_cells().any(|t| att.assign(t) == c)
            })
            .collect()
    }

    /// The closed cell `c` as a complex (its boundary model plus one top
    /// cell), with the characteristic map into `self`.
    pub fn closure(&self, c: CellId) -> (Complex, CellMap) {
        match self.attachment(c) {
            None => {
                let mut ball = Complex::new();
                ball.push_raw(Cell::vertex(None));
                (ball, CellMap::vertices(vec![c]))
            }
            Some(att) => {
                let model = att.model();
                let mut ball = model.without_labels();
                let id = CellMap::identity(model);
                ball.push_raw(Cell::with_attachment(
                    Attachment::from_arc(att.sphere.clone(), id.clone()),
                    None,
                ));
                let map = att.map.extended(c, Arc::new(id));
                (ball, map)
            }
        }
    }
}

/// Collects cells in arbitrary order (attachments referring to builder
/// indices) and sorts them into canonical order on [`Builder::finish`].
#[derive(Default)]
pub(crate) struct Builder {
    cells: Vec<Cell>,
}

impl Builder {
    pub fn new() -> Self {
        Builder { cells: Vec::new() }
    }

    pub fn push(&mut self, cell: Cell) -> CellId {
        self.cells.push(cell);
        CellId::new(self.cells.len() - 1)
    }

    /// Returns the complex and the map from builder index to final id.
    pub fn finish(self) -> (Complex, Vec<CellId>) {
        let mut order: Vec<usize> = (0..self.cells.len()).collect();
        order.sort_by_key(|&i| self.cells[i].dim);
        let mut perm = vec![CellId::new(0); self.cells.len()];
        for (new, &old) in order.iter().enumerate() {
            perm[old] = CellId::new(new);
        }
        let mut slots: Vec<Option<Cell>> = self.cells.into_iter().map(Some).collect();
        let mut k = Complex::new();
        for &old in &order {
            let mut cell = slots[old].take().unwrap();
            if let Some(att) = &mut cell.attachment {
                att.map = att.map.remap_targets(|c| perm[c.index()]);
            }
            k.push_raw(cell);
        }
        (k, perm)
    }
}
