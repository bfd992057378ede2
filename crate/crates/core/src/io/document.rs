use std::fmt::Write as _;
use std::sync::Arc;

use super::{int, quote, Cursor, Line};
use crate::complex::{Attachment, Cell, CellId, Complex, SphereData};
use crate::constructions::{Letter, PolygonPresentation};
use crate::error::{Error, Result};
use crate::map::CellMap;

/// Reads a `plcw 1` document, full or shorthand. Only the structure is
/// checked here; run [`crate::validate`] on the result for the rest.
pub fn parse_complex(src: &str) -> Result<Complex> {
    let mut cur = Cursor::new(src)?;
    cur.header("plcw")?;
    match cur.peek() {
        Some(l) if l.is(0, "vertex") || l.is(0, "edge") || l.is(0, "face") => shorthand(&mut cur),
        _ => {
            let k = body(&mut cur, false)?;
            if let Some(l) = cur.next() {
                return Err(l.err(0, "unexpected `}`"));
            }
            Ok(k)
        }
    }
}

fn shorthand(cur: &mut Cursor) -> Result<Complex> {
    let mut p = PolygonPresentation::new();
    let mut lines = Vec::new();
    while let Some(l) = cur.next() {
        match l.word(0) {
            Some("vertex") if l.toks.len() >= 2 => {
                for t in &l.toks[1..] {
                    p.vertices.push(t.text.clone());
                }
            }
            Some("edge") if l.toks.len() == 4 => {
                p.edges.push((
                    l.toks[1].text.clone(),
                    l.toks[2].text.clone(),
                    l.toks[3].text.clone(),
                ));
            }
            Some("face") if l.toks.len() >= 3 => {
                let word = l.toks[2..].iter().map(|t| Letter::parse(&t.text)).collect();
                p.faces.push((l.toks[1].text.clone(), word));
            }
            Some("vertex") => return Err(l.err(1, "expected `vertex NAME...`")),
            Some("edge") => {
                return Err(l.err(l.toks.len().min(4), "expected `edge NAME TAIL HEAD`"))
            }
            Some("face") => return Err(l.err(l.toks.len(), "expected `face NAME LETTER...`")),
            _ => return Err(l.err(0, "expected `vertex`, `edge` or `face`")),
        }
        lines.push(l);
    }
    // Point errors at the statement that introduced the offending name.
    p.build().map_err(|e| {
        let name = match &e {
            Error::UnknownLabel(n) | Error::DuplicateLabel(n) => Some(n.clone()),
            _ => None,
        };
        let at = name.and_then(|n| {
            lines.iter().find_map(|l| {
                l.toks
                    .iter()
                    .position(|t| t.text == n || t.text.strip_prefix('-') == Some(n.as_str()))
                    .map(|i| (l, i))
            })
        });
        let (l, i) = match at {
            Some(x) => x,
            None => match lines.iter().find(|l| l.is(0, "face")) {
                Some(l) => (l, 1),
                None => return e,
            },
        };
        l.err(i, e.to_string())
    })
}

/// Cell statements up to a closing `}` (when `nested`) or the end.
fn body(cur: &mut Cursor, nested: bool) -> Result<Complex> {
    let mut k = Complex::new();
    loop {
        let Some(l) = cur.peek() else {
            if nested {
                return Err(cur.eof("missing `}`"));
            }
            return Ok(k);
        };
        if l.is(0, "}") && l.toks.len() == 1 {
            if nested {
                cur.next();
            }
            return Ok(k);
        }
        let l = cur.next().unwrap();
        if !l.is(0, "cell") {
            return Err(l.err(0, "expected `cell`"));
        }
        let id: usize = int(&l, 1, "a cell id")?;
        if id != k.len() {
            return Err(l.err(1, format!("expected cell id {}", k.len())));
        }
        let dim: usize = int(&l, 2, "a dimension")?;
        if let Some(last) = k.ids().last() {
            if k.dim_of(last) > dim {
                return Err(l.err(2, "cells must be listed by increasing dimension"));
            }
        }
        let mut i = 3;
        let label = match l.toks.get(i) {
            Some(t) if t.quoted || t.text != "{" => {
                i += 1;
                Some(t.text.clone())
            }
            _ => None,
        };
        if let Some(lb) = &label {
            if k.find(lb).is_some() {
                return Err(l.err(3, format!("duplicate label `{lb}`")));
            }
        }
        let opens = l.is(i, "{");
        if l.toks.len() > i + usize::from(opens) {
            return Err(l.err(i + usize::from(opens), "unexpected token"));
        }
        let cell = match (dim, opens) {
            (0, false) => Cell::vertex(label),
            (0, true) => return Err(l.err(i, "a vertex has no attachment")),
            (_, false) => return Err(l.err(l.toks.len(), "expected `{` opening the attachment")),
            (_, true) => {
                let att = attachment(cur, &k, &l, dim)?;
                Cell::with_attachment(att, label)
            }
        };
        k.push_raw(cell);
    }
}

fn attachment(cur: &mut Cursor, k: &Complex, head: &Line, dim: usize) -> Result<Attachment> {
    let l = cur.next().ok_or_else(|| cur.eof("expected `sphere {`"))?;
    if !(l.is(0, "sphere") && l.is(1, "{") && l.toks.len() == 2) {
        return Err(l.err(0, "expected `sphere {`"));
    }
    let model = body(cur, true)?;
    if model.dimension() + 1 != dim as isize {
        return Err(head.err(
            2,
            format!("boundary model has dimension {}", model.dimension()),
        ));
    }
    let l = cur.next().ok_or_else(|| cur.eof("expected `cycle`"))?;
    if !l.is(0, "cycle") {
        return Err(l.err(0, "expected `cycle`"));
    }
    let tops = model.top_cells().count();
    if l.toks.len() - 1 != tops {
        return Err(l.err(
            l.toks.len().min(tops + 1),
            format!("expected {tops} coefficients"),
        ));
    }
    let mut cycle = Vec::with_capacity(tops);
    for i in 1..l.toks.len() {
        match l.word(i) {
            Some("1") => cycle.push(1),
            Some("-1") => cycle.push(-1),
            _ => return Err(l.err(i, "a coefficient is 1 or -1")),
        }
    }
    let map = map_body(cur, &model, k)?;
    let l = cur.next().ok_or_else(|| cur.eof("missing `}`"))?;
    if !(l.is(0, "}") && l.toks.len() == 1) {
        return Err(l.err(0, "expected `}`"));
    }
    Ok(Attachment::from_arc(
        Arc::new(SphereData::new(model, &cycle)),
        map,
    ))
}

/// `assign …` then one `ident Z { … }` per positive-dimensional cell of
/// `src`, in order.
fn map_body(cur: &mut Cursor, src: &Complex, tgt: &Complex) -> Result<CellMap> {
    let l = cur.next().ok_or_else(|| cur.eof("expected `assign`"))?;
    if !l.is(0, "assign") {
        return Err(l.err(0, "expected `assign`"));
    }
    if l.toks.len() - 1 != src.len() {
        return Err(l.err(
            l.toks.len().min(src.len() + 1),
            format!("expected {} targets", src.len()),
        ));
    }
    let mut assign = Vec::with_capacity(src.len());
    for (i, z) in src.ids().enumerate() {
        let t: usize = int(&l, i + 1, "a cell id")?;
        if t >= tgt.len() {
            return Err(l.err(i + 1, format!("no cell {t}")));
        }
        if tgt.dim_of(CellId::new(t)) != src.dim_of(z) {
            return Err(l.err(i + 1, "target has a different dimension"));
        }
        assign.push(CellId::new(t));
    }
    let mut ident = vec![None; src.len()];
    for z in src.ids().filter(|&z| src.dim_of(z) > 0) {
        let l = cur
            .next()
            .ok_or_else(|| cur.eof(&format!("expected `ident {} {{`", z.index())))?;
        if !(l.is(0, "ident") && l.is(2, "{") && l.toks.len() == 3) {
            return Err(l.err(0, format!("expected `ident {} {{`", z.index())));
        }
        if int::<usize>(&l, 1, "a cell id")? != z.index() {
            return Err(l.err(1, format!("expected `ident {}`", z.index())));
        }
        let m = map_body(cur, src.model_of(z), tgt.model_of(assign[z.index()]))?;
        let l = cur.next().ok_or_else(|| cur.eof("missing `}`"))?;
        if !(l.is(0, "}") && l.toks.len() == 1) {
            return Err(l.err(0, "expected `}`"));
        }
        ident[z.index()] = Some(Arc::new(m));
    }
    Ok(CellMap::new(assign, ident))
}

/// The canonical full document.
pub fn print_complex(k: &Complex) -> String {
    let mut out = String::from("plcw 1\n");
    write_body(&mut out, k, 0);
    out
}

fn pad(out: &mut String, depth: usize) {
    for _ in 0..depth {
        out.push_str("  ");
    }
}

fn write_body(out: &mut String, k: &Complex, depth: usize) {
    for c in k.ids() {
        pad(out, depth);
        write!(out, "cell {} {}", c.index(), k.dim_of(c)).unwrap();
        if let Some(l) = k.label(c) {
            write!(out, " {}", quote(l)).unwrap();
        }
        let Some(a) = k.attachment(c) else {
            out.push('\n');
            continue;
        };
        out.push_str(" {\n");
        pad(out, depth + 1);
        out.push_str("sphere {\n");
        write_body(out, a.model(), depth + 2);
        pad(out, depth + 1);
        out.push_str("}\n");
        pad(out, depth + 1);
        out.push_str("cycle");
        for t in a.model().top_cells() {
            write!(out, " {}", a.sphere().coefficient(t)).unwrap();
        }
        out.push('\n');
        write_map(out, a.model(), a.map(), depth + 1);
        pad(out, depth);
        out.push_str("}\n");
    }
}

fn write_map(out: &mut String, src: &Complex, m: &CellMap, depth: usize) {
    pad(out, depth);
    out.push_str("assign");
    for t in m.assign_slice() {
        write!(out, " {}", t.index()).unwrap();
    }
    out.push('\n');
    for z in src.ids().filter(|&z| src.dim_of(z) > 0) {
        pad(out, depth);
        writeln!(out, "ident {} {{", z.index()).unwrap();
        write_map(
            out,
            src.model_of(z),
            m.ident(z).expect("positive cells carry identifications"),
            depth + 1,
        );
        pad(out, depth);
        out.push_str("}\n");
    }
}

/// The shorthand document of a labelled complex of dimension at most two
/// built from a polygon presentation. Fails when the shorthand would not
/// expand back to exactly `k`.
pub fn print_shorthand(k: &Complex) -> Result<String> {
    if k.dimension() > 2 {
        return Err(Error::Invalid(
            "shorthand covers dimensions up to two".into(),
        ));
    }
    let name = |c: CellId| {
        k.label(c)
            .map(str::to_string)
            .ok_or_else(|| Error::Invalid(format!("cell {c} has no label")))
    };
    let mut p = PolygonPresentation::new();
    for v in k.cells_of_dim(0) {
        p.vertices.push(name(v)?);
    }
    for e in k.cells_of_dim(1) {
        let a = k.att(e);
        p.edges.push((
            name(e)?,
            name(a.assign(CellId::new(1)))?,
            name(a.assign(CellId::new(0)))?,
        ));
    }
    for f in k.cells_of_dim(2) {
        p.faces.push((name(f)?, word(k, f)?));
    }
    let rebuilt = p.build()?;
    if print_complex(&rebuilt) != print_complex(k) {
        return Err(Error::Invalid("the complex is not in polygon form".into()));
    }
    let mut out = String::from("plcw 1\n");
    for v in &p.vertices {
        writeln!(out, "vertex {}", quote(v)).unwrap();
    }
    for (e, t, h) in &p.edges {
        writeln!(out, "edge {} {} {}", quote(e), quote(t), quote(h)).unwrap();
    }
    for (f, w) in &p.faces {
        write!(out, "face {}", quote(f)).unwrap();
        for l in w {
            write!(out, " {}", quote(&l.to_string())).unwrap();
        }
        out.push('\n');
    }
    Ok(out)
}

/// Reads the boundary word of a 2-cell by walking its circle model along
/// the fundamental cycle, starting at the first model edge.
fn word(k: &Complex, f: CellId) -> Result<Vec<Letter>> {
    let a = k.att(f);
    let m = a.model();
    let edges: Vec<CellId> = m.cells_of_dim(1).collect();
    let ends = |e: CellId| {
        let ea = m.att(e);
        let (head, tail) = (ea.assign(CellId::new(0)), ea.assign(CellId::new(1)));
        if a.sphere().coefficient(e) > 0 {
            (tail, head)
        } else {
            (head, tail)
        }
    };
    let mut used = vec![false; m.len()];
    let mut out = Vec::new();
    let mut e = edges[0];
    for _ in 0..edges.len() {
        used[e.index()] = true;
        let end_in_model = if a.sphere().coefficient(e) > 0 { 0 } else { 1 };
        let id = a.map().ident(e).expect("edges carry identifications");
        let target = a.assign(e);
        out.push(Letter {
            edge: k
                .label(target)
                .map(str::to_string)
                .ok_or_else(|| Error::Invalid(format!("cell {target} has no label")))?,
            inverse: id.assign(CellId::new(end_in_model)) != CellId::new(0),
        });
        let here = ends(e).1;
        match edges
            .iter()
            .find(|&&x| !used[x.index()] && ends(x).0 == here)
        {
            Some(&x) => e = x,
            None => break,
        }
    }
    if out.len() != edges.len() {
        return Err(Error::Invalid(format!(
            "the boundary of {} is not a single circle",
            k.name(f)
        )));
    }
    Ok(out)
}
