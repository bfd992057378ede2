use super::{apply_move, Move, MoveTrace};
use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::iso::are_isomorphic;

/// A sequence of moves, each resolved against the result of the previous.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MoveScript {
    pub moves: Vec<Move>,
}

impl MoveScript {
    pub fn new(moves: Vec<Move>) -> Self {
        MoveScript { moves }
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }
}

impl FromIterator<Move> for MoveScript {
    fn from_iter<I: IntoIterator<Item = Move>>(iter: I) -> Self {
        MoveScript {
            moves: iter.into_iter().collect(),
        }
    }
}

/// Applies the moves in order. A failing move is reported with its
/// 1-based step number.
pub fn apply_script(k: &Complex, script: &MoveScript) -> Result<(Complex, MoveTrace)> {
    let mut cur = k.clone();
    let mut trace = MoveTrace::new();
    for (i, m) in script.moves.iter().enumerate() {
        let (next, t) = apply_move(&cur, m).map_err(|e| Error::Step {
            step: i + 1,
            source: Box::new(e),
        })?;
        cur = next;
        trace.extend(t);
    }
    Ok((cur, trace))
}

/// Whether the script applies and ends at a complex isomorphic to
/// `expected`.
pub fn verify_script(k: &Complex, script: &MoveScript, expected: &Complex) -> bool {
    apply_script(k, script).is_ok_and(|(end, _)| are_isomorphic(&end, expected).is_some())
}
