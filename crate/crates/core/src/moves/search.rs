//! Breadth-first search for short sequences of elementary subdivisions and
//! erasures, with visited complexes deduplicated up to isomorphism.

use std::collections::{HashMap, VecDeque};

use super::{apply_move, erasable, EquatorSplit, Move, MoveScript, SplitLabels};
use crate::complex::{CellId, Complex};
use crate::iso::{are_isomorphic, invariant_hash};

/// Largest number of top cells in a boundary model whose splits are
/// enumerated.
const MAX_SPLIT_TOPS: usize = 12;

/// Every elementary subdivision and erasure applicable to `k`. Each split
/// is listed once, with the first top cell of the model on the `+` side.
pub fn candidate_moves(k: &Complex) -> Vec<Move> {
    let mut out = Vec::new();
    for c in k.ids().filter(|&c| k.dim_of(c) > 0) {
        let tops: Vec<CellId> = k.model_of(c).top_cells().collect();
        if tops.len() < 2 || tops.len() > MAX_SPLIT_TOPS {
            continue;
        }
        let rest = tops.len() - 1;
        for mask in 0..(1u32 << rest) - 1 {
            let mut plus = vec![tops[0]];
            plus.extend(
                (0..rest)
                    .filter(|i| mask & (1 << i) != 0)
                    .map(|i| tops[i + 1]),
            );
            let split = EquatorSplit::new(c, plus);
            if split.check(k).is_ok() {
                out.push(Move::Elementary {
                    split,
                    labels: SplitLabels::default(),
                });
            }
        }
    }
    for c in k.ids() {
        if erasable(k, c) {
            out.push(Move::Erase {
                cell: c,
                label: None,
            });
        }
    }
    out
}

/// Lower bound on the number of moves between `a` and `b`: every move
/// changes exactly two entries of the f-vector by one.
fn distance_bound(a: &Complex, b: &Complex) -> usize {
    let (fa, fb) = (a.f_vector(), b.f_vector());
    let n = fa.0.len().max(fb.0.len());
    let total: usize = (0..n).map(|d| fa.get(d).abs_diff(fb.get(d))).sum();
    total.div_ceil(2)
}

/// A shortest script of at most `max_moves` elementary subdivisions and
/// erasures taking `k` to a complex isomorphic to `l`, if one exists. `None`
/// only means the budget ran out.
pub fn search_equivalence(k: &Complex, l: &Complex, max_moves: usize) -> Option<MoveScript> {
    if are_isomorphic(k, l).is_some() {
        return Some(MoveScript::default());
    }
    let mut seen: HashMap<u64, Vec<Complex>> = HashMap::new();
    let mut visit = |c: &Complex| {
        let bucket = seen.entry(invariant_hash(c)).or_default();
        if bucket.iter().any(|o| are_isomorphic(o, c).is_some()) {
            false
        } else {
            bucket.push(c.clone());
            true
        }
    };
    visit(k);
    let mut queue = VecDeque::from([(k.clone(), Vec::<Move>::new())]);
    while let Some((cur, path)) = queue.pop_front() {
        if path.len() >= max_moves {
            continue;
        }
        for m in candidate_moves(&cur) {
            let Ok((next, _)) = apply_move(&cur, &m) else {
                continue;
            };
            let left = max_moves - path.len() - 1;
            if distance_bound(&next, l) > left || !visit(&next) {
                continue;
            }
            let mut p = path.clone();
            p.push(m);
            if are_isomorphic(&next, l).is_some() {
                return Some(MoveScript::new(p));
            }
            queue.push_back((next, p));
        }
    }
    None
}
