//! Polygon presentations: vertices, directed edges and 2-cells given by
//! cyclic words in the edges.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::complex::{Attachment, Cell, CellId, Complex, SphereData};
use crate::error::{Error, Result};
use crate::map::CellMap;

/// One letter of a face word: an edge traversed forwards or backwards.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Letter {
    pub edge: String,
    pub inverse: bool,
}

impl Letter {
    pub fn parse(s: &str) -> Letter {
        match s.strip_prefix('-') {
            Some(e) => Letter {
                edge: e.to_string(),
                inverse: true,
            },
            None => Letter {
                edge: s.to_string(),
                inverse: false,
            },
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverse {
            write!(f, "-")?;
        }
        write!(f, "{}", self.edge)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PolygonPresentation {
    pub vertices: Vec<String>,
    /// `(name, tail, head)`.
    pub edges: Vec<(String, String, String)>,
    /// `(name, word)`; the word is read cyclically.
    pub faces: Vec<(String, Vec<Letter>)>,
}

impl PolygonPresentation {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn vertex(mut self, name: &str) -> Self {
        self.vertices.push(name.to_string());
        self
    }

    pub fn edge(mut self, name: &str, tail: &str, head: &str) -> Self {
        self.edges
            .push((name.to_string(), tail.to_string(), head.to_string()));
        self
    }

    /// A face from a space-separated word, `-x` meaning `x` reversed.
    pub fn face(mut self, name: &str, word: &str) -> Self {
        self.faces.push((
            name.to_string(),
            word.split_whitespace().map(Letter::parse).collect(),
        ));
        self
    }

    pub fn build(&self) -> Result<Complex> {
        from_polygon_presentation(self)
    }
}

/// The circle model traversed by a word of length `n`: vertices `p0..pn-1`,
/// edges `mi: pi → pi+1`, all with coefficient `+1`.
fn circle_model(n: usize) -> Arc<SphereData> {
    let mut m = Complex::new();
    for _ in 0..n {
        m.push_raw(Cell::vertex(None));
    }
    for i in 0..n {
        let tail = CellId::new(i);
        let head = CellId::new((i + 1) % n);
        m.push_raw(Cell::with_attachment(Attachment::edge(tail, head), None));
    }
    Arc::new(SphereData::new(m, &vec![1; n]))
}

pub fn from_polygon_presentation(p: &PolygonPresentation) -> Result<Complex> {
    let mut k = Complex::new();
    for v in &p.vertices {
        k.add_vertex(Some(v))?;
    }
    let mut ends: BTreeMap<&str, (CellId, CellId)> = BTreeMap::new();
    for (name, tail, head) in &p.edges {
        let t = k
            .find(tail)
            .ok_or_else(|| Error::UnknownLabel(tail.clone()))?;
        let h = k
            .find(head)
            .ok_or_else(|| Error::UnknownLabel(head.clone()))?;
        k.add_edge(t, h, Some(name))?;
        ends.insert(name, (t, h));
    }
    let forward = Arc::new(CellMap::vertices(vec![CellId::new(0), CellId::new(1)]));
    let backward = Arc::new(CellMap::vertices(vec![CellId::new(1), CellId::new(0)]));
    for (name, word) in &p.faces {
        if word.is_empty() {
            return Err(Error::Presentation(format!(
                "face {name} has an empty word"
            )));
        }
        let mut steps = Vec::new();
        for l in word {
            let (t, h) = *ends
                .get(l.edge.as_str())
                .ok_or_else(|| Error::UnknownLabel(l.edge.clone()))?;
            let e = k.find(&l.edge).unwrap();
            steps.push(if l.inverse {
                (e, h, t, true)
            } else {
                (e, t, h, false)
            });
        }
        let n = steps.len();
        for i in 0..n {
            let (_, _, end, _) = steps[i];
            let (_, start, _, _) = steps[(i + 1) % n];
            if end != start {
                return Err(Error::Presentation(format!(
                    "face {name}: {} does not start where {} ends",
                    word[(i + 1) % n],
                    word[i]
                )));
            }
        }
        let mut assign: Vec<CellId> = steps.iter().map(|s| s.1).collect();
        let mut ident = vec![None; n];
        for &(e, _, _, inv) in &steps {
            assign.push(e);
            ident.push(Some(if inv {
                backward.clone()
            } else {
                forward.clone()
            }));
        }
        let att = Attachment::from_arc(circle_model(n), CellMap::new(assign, ident));
        k.add_cell(att, Some(name))?;
    }
    Ok(k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_must_compose() {
        let p = PolygonPresentation::new()
            .vertex("u")
            .vertex("v")
            .edge("e", "u", "v")
            .face("F", "e e");
        assert!(matches!(p.build(), Err(Error::Presentation(_))));
    }

    #[test]
    fn unknown_edge() {
        let p = PolygonPresentation::new().vertex("u").face("F", "x");
        assert!(matches!(p.build(), Err(Error::UnknownLabel(_))));
    }
}
