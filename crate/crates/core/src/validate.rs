//! Structural validation.
//!
//! Sphere recognition is exact for models of dimension 0, 1 and 2 (the
//! boundaries of cells of dimension at most 3). Higher-dimensional models
//! are only checked to be closed, connected, orientable pseudo-manifolds with
//! the Euler characteristic and integral homology of a sphere; the report
//! records when such a partial check was used.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use crate::algebra::{boundary_entries, homology, is_cycle, HomologyGroup};
use crate::complex::{Attachment, Complex, SphereData};
use crate::error::{Error, Result};
use crate::map::check_regular;

/// Highest sphere dimension recognised exactly.
pub const EXACT_SPHERE_DIM: isize = 2;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Issue {
    pub path: String,
    pub message: String,
}

impl fmt::Display for Issue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.path, self.message)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub issues: Vec<Issue>,
    /// Largest dimension of a boundary model met while validating.
    pub max_model_dim: isize,
    /// Whether every boundary model was recognised exactly.
    pub exact: bool,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.issues.is_empty()
    }

    pub fn into_result(self) -> Result<()> {
        match self.issues.first() {
            None => Ok(()),
            Some(i) => Err(Error::Invalid(i.to_string())),
        }
    }
}

struct Validator {
    seen: HashSet<usize>,
    report: ValidationReport,
}

/// Re-checks every invariant of `k`, recursively through all boundary
/// models.
pub fn validate(k: &Complex) -> ValidationReport {
    let mut v = Validator {
        seen: HashSet::new(),
        report: ValidationReport {
            issues: Vec::new(),
            max_model_dim: -1,
            exact: true,
        },
    };
    v.complex(k, "");
    v.report
}

impl Validator {
    fn issue(&mut self, path: String, message: impl Into<String>) {
        self.report.issues.push(Issue {
            path,
            message: message.into(),
        });
    }

    fn complex(&mut self, k: &Complex, prefix: &str) {
        for c in k.ids() {
            let path = format!("{prefix}{}", k.name(c));
            let cell = k.cell(c);
            let Some(att) = cell.attachment() else {
                if cell.dim() != 0 {
                    self.issue(path, "positive-dimensional cell without attachment");
                }
                continue;
            };
            if att.sphere().dimension() + 1 != cell.dim() as isize {
                self.issue(path.clone(), "boundary model has the wrong dimension");
                continue;
            }
            self.sphere(att.sphere_arc(), &path);
            if let Err(e) = check_regular(att.model(), k, att.map()) {
                self.issue(path.clone(), format!("attaching map: {e}"));
            }
            for m in att.model().ids() {
                let t = att.assign(m);
                if k.contains(t) && k.dim_of(t) >= cell.dim() {
                    self.issue(
                        path.clone(),
                        "attaching map reaches a cell of equal or higher dimension",
                    );
                }
            }
        }
    }

    fn sphere(&mut self, s: &Arc<SphereData>, path: &str) {
        let key = Arc::as_ptr(s) as usize;
        if !self.seen.insert(key) {
            return;
        }
        let d = s.dimension();
        self.report.max_model_dim = self.report.max_model_dim.max(d);
        if d > EXACT_SPHERE_DIM {
            self.report.exact = false;
        }
        self.complex(s.model(), &format!("{path}/"));
        if let Err(e) = sphere_problem(s) {
            self.issue(path.to_string(), e);
        }
    }
}

/// Checks a new attachment against `k` (used by `add_cell`).
pub(crate) fn check_attachment(k: &Complex, att: &Attachment) -> Result<()> {
    let report = validate(att.model());
    if let Some(i) = report.issues.first() {
        return Err(Error::Sphere(format!("model: {i}")));
    }
    sphere_problem(att.sphere()).map_err(Error::Sphere)?;
    check_regular(att.model(), k, att.map()).map_err(Error::Attachment)
}

/// Recognises `s` as an oriented sphere (exactly up to dimension 2).
pub fn sphere_problem(s: &SphereData) -> std::result::Result<(), String> {
    let m = s.model();
    let d = m.dimension();
    if s.cycle().len() != m.len() {
        return Err("cycle has the wrong length".into());
    }
    for c in m.ids() {
        let x = s.coefficient(c);
        let top = m.dim_of(c) as isize == d;
        if top && x != 1 && x != -1 {
            return Err(format!("cycle coefficient {x} on top cell {c}"));
        }
        if !top && x != 0 {
            return Err(format!("cycle coefficient on non-top cell {c}"));
        }
    }
    if d < 0 {
        return Err("empty boundary model".into());
    }
    if d == 0 {
        if m.len() != 2 {
            return Err(format!("0-sphere model with {} points", m.len()));
        }
        if s.coefficient(m.ids().next().unwrap()) + s.coefficient(m.ids().nth(1).unwrap()) != 0 {
            return Err("0-sphere cycle is not a fundamental cycle".into());
        }
        return Ok(());
    }
    closed_pseudomanifold(m)?;
    if !is_cycle(m, s.cycle()) {
        return Err("stored orientation is not a cycle".into());
    }
    let chi = m.euler_characteristic();
    let expected = if d % 2 == 0 { 2 } else { 0 };
    if chi != expected {
        return Err(format!("Euler characteristic {chi}, expected {expected}"));
    }
    if d == 2 && !vertex_links_connected(m) {
        return Err("a vertex link is not a single circle".into());
    }
    if d > EXACT_SPHERE_DIM {
        let h = homology(m);
        for (i, g) in h.iter().enumerate() {
            let want = if i == 0 || i as isize == d { 1 } else { 0 };
            if *g != HomologyGroup::free(want) {
                return Err(format!("H_{i} = {g}, not that of a sphere"));
            }
        }
    }
    Ok(())
}

/// Connected, every codimension-one cell in exactly two top-cell slots.
pub(crate) fn closed_pseudomanifold(m: &Complex) -> std::result::Result<(), String> {
    if !is_connected(m) {
        return Err("model is not connected".into());
    }
    let d = m.dimension();
    if d < 1 {
        return Ok(());
    }
    let mut count = vec![0usize; m.len()];
    for t in m.top_cells() {
        for (f, _) in boundary_entries(m, t) {
            count[f.index()] += 1;
        }
    }
    for f in m.cells_of_dim(d as usize - 1) {
        if count[f.index()] != 2 {
            return Err(format!(
                "cell {f} lies {} times on top cells (expected 2)",
                count[f.index()]
            ));
        }
    }
    Ok(())
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra] = rb;
        }
    }
}

pub fn is_connected(m: &Complex) -> bool {
    if m.is_empty() {
        return true;
    }
    let mut uf = UnionFind::new(m.len());
    for c in m.ids() {
        if let Some(att) = m.attachment(c) {
            for &t in att.map().assign_slice() {
                uf.union(c.index(), t.index());
            }
        }
    }
    let r = uf.find(0);
    (1..m.len()).all(|i| uf.find(i) == r)
}

/// For a 2-dimensional model: the corners around every vertex form one
/// cycle.
fn vertex_links_connected(m: &Complex) -> bool {
    let edges: Vec<_> = m.cells_of_dim(1).collect();
    let first_edge = edges.first().map_or(0, |e| e.index());
    let node = |e: usize, end: usize| (e - first_edge) * 2 + end;
    let mut uf = UnionFind::new(edges.len() * 2);
    for t in m.cells_of_dim(2) {
        let att = m.att(t);
        let circle = att.model();
        for p in circle.cells_of_dim(0) {
            let mut ends = Vec::new();
            for z in circle.cells_of_dim(1) {
                let za = circle.att(z);
                for k in za.model().ids() {
                    if za.assign(k) == p {
                        let e = att.assign(z);
                        let h = att.map().ident(z).expect("edge identification");
                        ends.push(node(e.index(), h.assign(k).index()));
                    }
                }
            }
            if ends.len() != 2 {
                return false;
            }
            uf.union(ends[0], ends[1]);
        }
    }
    for v in m.cells_of_dim(0) {
        let mut root = None;
        for &e in &edges {
            let ea = m.att(e);
            for k in ea.model().ids() {
                if ea.assign(k) == v {
                    let r = uf.find(node(e.index(), k.index()));
                    match root {
                        None => root = Some(r),
                        Some(r0) if r0 != r => return false,
                        _ => {}
                    }
                }
            }
        }
    }
    true
}
