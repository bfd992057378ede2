use std::fmt::Write as _;

use super::{quote, Cursor, Line};
use crate::complex::{CellId, Complex};
use crate::error::{Error, Result};
use crate::moves::{apply_move, EquatorSplit, Move, MoveScript, SplitLabels};

/// Reads a `plcw-moves 1` script against the complex it starts from. Names
/// are resolved step by step, each in the result of the moves before it;
/// resolution and move failures are reported with the step number.
///
/// ```text
/// radial CELL
/// split CELL plus TOP... [as PLUS MINUS EQUATOR]
/// erase CELL [as LABEL]
/// ```
///
/// `CELL` is a label or `#id`. A `TOP` is `@i` for top cell `i` of the
/// boundary model, or the name of a cell covered by exactly one top cell.
/// `_` keeps a default label.
pub fn parse_script(src: &str, k: &Complex) -> Result<MoveScript> {
    let mut cur = Cursor::new(src)?;
    cur.header("plcw-moves")?;
    let mut k = k.clone();
    let mut moves = Vec::new();
    while let Some(l) = cur.next() {
        let step = moves.len() + 1;
        let m = record(&l, &k).map_err(|e| Error::Step {
            step,
            source: Box::new(e),
        })?;
        let (next, _) = apply_move(&k, &m).map_err(|e| Error::Step {
            step,
            source: Box::new(located(&l, e)),
        })?;
        k = next;
        moves.push(m);
    }
    Ok(MoveScript::new(moves))
}

fn located(l: &Line, e: Error) -> Error {
    match e {
        Error::Parse { .. } => e,
        e => l.err(1, e.to_string()),
    }
}

fn cell(l: &Line, i: usize, k: &Complex) -> Result<CellId> {
    let t = l.toks.get(i).ok_or_else(|| l.err(i, "expected a cell"))?;
    let found = if t.quoted {
        k.find(&t.text)
            .ok_or_else(|| Error::UnknownLabel(t.text.clone()))
    } else {
        k.resolve(&t.text)
    };
    found.map_err(|e| l.err(i, e.to_string()))
}

fn optional(l: &Line, i: usize) -> Option<String> {
    l.toks
        .get(i)
        .filter(|t| t.quoted || t.text != "_")
        .map(|t| t.text.clone())
}

fn record(l: &Line, k: &Complex) -> Result<Move> {
    match l.word(0) {
        _ if l.toks[0].quoted => Err(l.err(0, "expected `radial`, `split` or `erase`")),
        Some("radial") => {
            if l.toks.len() != 2 {
                return Err(l.err(2.min(l.toks.len()), "expected `radial CELL`"));
            }
            Ok(Move::Radial {
                cell: cell(l, 1, k)?,
            })
        }
        Some("erase") => {
            let c = cell(l, 1, k)?;
            let label = match l.toks.len() {
                2 => None,
                4 if l.is(2, "as") => optional(l, 3),
                _ => return Err(l.err(2, "expected `erase CELL [as LABEL]`")),
            };
            Ok(Move::Erase { cell: c, label })
        }
        Some("split") => {
            let c = cell(l, 1, k)?;
            if !l.is(2, "plus") {
                return Err(l.err(2, "expected `plus`"));
            }
            let end = (3..l.toks.len())
                .find(|&i| l.is(i, "as"))
                .unwrap_or(l.toks.len());
            let model = k
                .attachment(c)
                .ok_or_else(|| l.err(1, format!("{} is a vertex", k.name(c))))?;
            let tops: Vec<CellId> = model.model().top_cells().collect();
            let mut plus = Vec::new();
            for i in 3..end {
                let t = &l.toks[i];
                let top = match t.text.strip_prefix('@').filter(|_| !t.quoted) {
                    Some(_) => {
                        let idx: usize = t.text[1..]
                            .parse()
                            .map_err(|_| l.err(i, "expected `@` and a model cell id"))?;
                        let z = CellId::new(idx);
                        if !tops.contains(&z) {
                            return Err(l.err(
                                i,
                                format!("@{idx} is not a top cell of the boundary model"),
                            ));
                        }
                        z
                    }
                    None => {
                        let target = cell(l, i, k)?;
                        let hits: Vec<CellId> = tops
                            .iter()
                            .copied()
                            .filter(|&z| model.assign(z) == target)
                            .collect();
                        match hits.as_slice() {
                            [z] => *z,
                            [] => {
                                return Err(l.err(i, format!("{} is not on the boundary", t.text)))
                            }
                            _ => {
                                return Err(l.err(
                                    i,
                                    format!("{} covers several top cells; use @id", t.text),
                                ))
                            }
                        }
                    }
                };
                if plus.contains(&top) {
                    return Err(l.err(i, "listed twice"));
                }
                plus.push(top);
            }
            let labels = if end < l.toks.len() {
                if l.toks.len() != end + 4 {
                    return Err(l.err(end + 1, "expected `as PLUS MINUS EQUATOR`"));
                }
                SplitLabels {
                    plus: optional(l, end + 1),
                    minus: optional(l, end + 2),
                    equator: optional(l, end + 3),
                }
            } else {
                SplitLabels::default()
            };
            Ok(Move::Elementary {
                split: EquatorSplit::new(c, plus),
                labels,
            })
        }
        _ => Err(l.err(0, "expected `radial`, `split` or `erase`")),
    }
}

fn name(k: &Complex, c: CellId) -> String {
    match k.label(c) {
        Some(l) => quote(l),
        None => c.to_string(),
    }
}

/// Writes a script that starts at `k`, naming cells by label where they
/// have one. Fails if a move does not apply.
pub fn print_script(k: &Complex, script: &MoveScript) -> Result<String> {
    let mut out = String::from("plcw-moves 1\n");
    let mut k = k.clone();
    for (i, m) in script.moves.iter().enumerate() {
        match m {
            Move::Radial { cell } => writeln!(out, "radial {}", name(&k, *cell)).unwrap(),
            Move::Erase { cell, label } => {
                write!(out, "erase {}", name(&k, *cell)).unwrap();
                if let Some(l) = label {
                    write!(out, " as {}", quote(l)).unwrap();
                }
                out.push('\n');
            }
            Move::Elementary { split, labels } => {
                write!(out, "split {} plus", name(&k, split.cell)).unwrap();
                let a = k
                    .attachment(split.cell)
                    .ok_or(Error::VertexCell(split.cell))?;
                for &z in &split.plus {
                    let t = a.assign(z);
                    let once = a.model().top_cells().filter(|&y| a.assign(y) == t).count() == 1;
                    match k.label(t) {
                        Some(l) if once => write!(out, " {}", quote(l)).unwrap(),
                        _ => write!(out, " @{}", z.index()).unwrap(),
                    }
                }
                if labels != &SplitLabels::default() {
                    let show = |x: &Option<String>| x.as_deref().map_or("_".to_string(), quote);
                    write!(
                        out,
                        " as {} {} {}",
                        show(&labels.plus),
                        show(&labels.minus),
                        show(&labels.equator)
                    )
                    .unwrap();
                }
                out.push('\n');
            }
        }
        k = apply_move(&k, m)
            .map_err(|e| Error::Step {
                step: i + 1,
                source: Box::new(e),
            })?
            .0;
    }
    Ok(out)
}
