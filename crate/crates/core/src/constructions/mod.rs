//! Products, joins, cones and a library of standard complexes.

mod pair;
mod presentation;
mod simplicial;
pub mod standard;

pub use pair::{cone, join, join_map, product, product_map};
pub(crate) use pair::{Ctx, Kind, Layout, Origin};
pub use presentation::{from_polygon_presentation, Letter, PolygonPresentation};
pub use simplicial::{simplex_boundary_sphere, simplicial_complex, Simplicial};
pub use standard::standard;
