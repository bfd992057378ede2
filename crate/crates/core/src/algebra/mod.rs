//! Orientations, incidence numbers, boundary multisets, the cellular chain
//! complex and integral homology.

mod homology;
mod orientation;
mod pairing;
pub mod snf;

pub use homology::{
    betti_numbers, boundary_squared_is_zero, chain_boundary_matrix, format_homology, homology,
    HomologyGroup, IntegerMatrix,
};
pub(crate) use orientation::{boundary_entries, chain_boundary};
pub use orientation::{
    boundary_multiset, fundamental_cycle, incidence_number, is_cycle, BoundaryMultiset,
    OrientedCell,
};
pub use pairing::{boundary_pairing, coherent_orientation, Pairing};
pub use snf::{smith_normal_form, Matrix, SmithForm};
