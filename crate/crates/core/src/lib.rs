//! Polyhedral (PL) CW complexes with regular cellular attaching maps.
//!
//! A [`Complex`] is a finite sequence of cells. Every positive-dimensional
//! cell carries a boundary model (a complex recognised as an oriented
//! sphere) and a regular cellular map into the cells of lower dimension.
//! Cells are addressed by [`CellId`], their index in canonical order
//! (by dimension, then insertion).

pub mod algebra;
pub mod complex;
pub mod constructions;
pub mod error;
pub mod io;
pub mod iso;
pub mod map;
pub mod moves;
pub mod validate;

pub use complex::{Attachment, Cell, CellId, Complex, FVector, SphereData};
pub use error::{Error, Result};
pub use iso::{are_isomorphic, invariant_hash};
pub use map::{CellMap, Isomorphism, RegularMap};
pub use validate::{validate, ValidationReport};

#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
mod readme {}

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/complexes.md")]
    mod complexes {}
    #[doc = include_str!("../../../book/src/homology.md")]
    mod homology {}
    #[doc = include_str!("../../../book/src/moves.md")]
    mod moves {}
    #[doc = include_str!("../../../book/src/joins.md")]
    mod joins {}
    #[doc = include_str!("../../../book/src/formats.md")]
    mod formats {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
