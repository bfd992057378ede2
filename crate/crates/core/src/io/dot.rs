use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::complex::Complex;

/// The face poset as a Graphviz digraph: one node per cell, ranked by
/// dimension, and an arrow from each cell to every codimension-one face,
/// labelled with the number of times the face occurs when above one.
pub fn face_poset_dot(k: &Complex) -> String {
    let mut out = String::from("digraph poset {\n  rankdir=BT;\n");
    let esc = |s: &str| s.replace('\\', "\\\\").replace('"', "\\\"");
    for c in k.ids() {
        writeln!(
            out,
            "  n{} [label=\"{}\" dim={}];",
            c.index(),
            esc(&k.name(c)),
            k.dim_of(c)
        )
        .unwrap();
    }
    for d in 0..=k.dimension().max(0) as usize {
        let ids: Vec<String> = k
            .cells_of_dim(d)
            .map(|c| format!("n{}", c.index()))
            .collect();
        if !ids.is_empty() {
            writeln!(out, "  {{ rank=same; {} }}", ids.join("; ")).unwrap();
        }
    }
    for c in k.ids() {
        let Some(a) = k.attachment(c) else { continue };
        let mut faces: BTreeMap<usize, usize> = BTreeMap::new();
        for t in a.model().top_cells() {
            *faces.entry(a.assign(t).index()).or_default() += 1;
        }
        for (f, n) in faces {
            if n > 1 {
                writeln!(out, "  n{} -> n{f} [label=\"{n}\"];", c.index()).unwrap();
            } else {
                writeln!(out, "  n{} -> n{f};", c.index()).unwrap();
            }
        }
    }
    out.push_str("}\n");
    out
}
