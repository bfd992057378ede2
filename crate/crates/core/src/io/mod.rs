//! Text formats: complexes (`plcw 1`), move scripts (`plcw-moves 1`) and
//! face-poset export in Graphviz DOT.
//!
//! Both formats are line based. A line holds one statement of
//! whitespace-separated tokens; `//` starts a comment, and tokens may be
//! double-quoted (with `\"` and `\\` escapes) to carry spaces or reserved
//! characters. Blocks open with `{` at the end of a line and close with a
//! line holding only `}`.

mod document;
mod dot;
mod script;

pub use document::{parse_complex, print_complex, print_shorthand};
pub use dot::face_poset_dot;
pub use script::{parse_script, print_script};

use crate::error::{Error, Result};

#[derive(Clone, Debug)]
struct Tok {
    col: usize,
    text: String,
    quoted: bool,
}

#[derive(Clone, Debug)]
struct Line {
    no: usize,
    toks: Vec<Tok>,
}

impl Line {
    fn word(&self, i: usize) -> Option<&str> {
        self.toks.get(i).map(|t| t.text.as_str())
    }

    /// The keyword at `i`, ignoring quoted tokens.
    fn is(&self, i: usize, kw: &str) -> bool {
        self.toks.get(i).is_some_and(|t| !t.quoted && t.text == kw)
    }

    fn err(&self, i: usize, msg: impl Into<String>) -> Error {
        let col = self.toks.get(i).or(self.toks.last()).map_or(1, |t| {
            if i >= self.toks.len() {
                t.col + t.text.len()
            } else {
                t.col
            }
        });
        Error::Parse {
            line: self.no,
            col,
            msg: msg.into(),
        }
    }
}

fn lex(src: &str) -> Result<Vec<Line>> {
    let mut out = Vec::new();
    for (i, raw) in src.lines().enumerate() {
        let no = i + 1;
        let mut toks = Vec::new();
        let chars: Vec<(usize, char)> = raw.char_indices().collect();
        let mut j = 0;
        while j < chars.len() {
            let (pos, ch) = chars[j];
            if ch.is_whitespace() {
                j += 1;
                continue;
            }
            let col = raw[..pos].chars().count() + 1;
            if ch == '/' && chars.get(j + 1).is_some_and(|c| c.1 == '/') {
                break;
            }
            if ch == '"' {
                let mut text = String::new();
                j += 1;
                loop {
                    match chars.get(j) {
                        None => {
                            return Err(Error::Parse {
                                line: no,
                                col,
                                msg: "unterminated string".into(),
                            })
                        }
                        Some((_, '"')) => break,
                        Some((_, '\\')) => {
                            match chars.get(j + 1) {
                                Some((_, c @ ('"' | '\\'))) => text.push(*c),
                                _ => {
                                    return Err(Error::Parse {
                                        line: no,
                                        col: col + text.chars().count() + 1,
                                        msg: "bad escape".into(),
                                    })
                                }
                            }
                            j += 1;
                        }
                        Some((_, c)) => text.push(*c),
                    }
                    j += 1;
                }
                j += 1;
                toks.push(Tok {
                    col,
                    text,
                    quoted: true,
                });
                continue;
            }
            let start = j;
            while j < chars.len() && !chars[j].1.is_whitespace() && chars[j].1 != '"' {
                j += 1;
            }
            let end = chars.get(j).map_or(raw.len(), |c| c.0);
            toks.push(Tok {
                col,
                text: raw[chars[start].0..end].to_string(),
                quoted: false,
            });
        }
        if !toks.is_empty() {
            out.push(Line { no, toks });
        }
    }
    Ok(out)
}

/// A token as it must be written to read back unchanged.
fn quote(s: &str) -> String {
    let plain = !s.is_empty()
        && !s.starts_with('#')
        && !s.starts_with('@')
        && !s.contains("//")
        && s != "{"
        && s != "}"
        && !matches!(s, "_" | "as" | "plus")
        && !s
            .chars()
            .any(|c| c.is_whitespace() || c == '"' || c == '\\');
    if plain {
        s.to_string()
    } else {
        let mut out = String::from("\"");
        for c in s.chars() {
            if c == '"' || c == '\\' {
                out.push('\\');
            }
            out.push(c);
        }
        out.push('"');
        out
    }
}

struct Cursor {
    lines: Vec<Line>,
    pos: usize,
    /// Line number just past the end, for errors at end of input.
    end: usize,
}

impl Cursor {
    fn new(src: &str) -> Result<Self> {
        let lines = lex(src)?;
        Ok(Cursor {
            end: src.lines().count() + 1,
            lines,
            pos: 0,
        })
    }

    fn next(&mut self) -> Option<Line> {
        let l = self.lines.get(self.pos).cloned();
        self.pos += 1;
        l
    }

    fn peek(&self) -> Option<&Line> {
        self.lines.get(self.pos)
    }

    fn eof(&self, msg: &str) -> Error {
        Error::Parse {
            line: self.end,
            col: 1,
            msg: format!("unexpected end of input: {msg}"),
        }
    }

    /// Reads the version header `magic VERSION`.
    fn header(&mut self, magic: &str) -> Result<Line> {
        let l = self
            .next()
            .ok_or_else(|| self.eof(&format!("expected `{magic} 1`")))?;
        if !l.is(0, magic) {
            return Err(l.err(0, format!("expected `{magic}` header")));
        }
        match l.word(1) {
            Some("1") => Ok(l),
            Some(v) => Err(l.err(1, format!("unsupported version `{v}`"))),
            None => Err(l.err(1, "missing version")),
        }
    }
}

fn int<T: std::str::FromStr>(l: &Line, i: usize, what: &str) -> Result<T> {
    l.word(i)
        .and_then(|w| w.parse().ok())
        .ok_or_else(|| l.err(i, format!("expected {what}")))
}
