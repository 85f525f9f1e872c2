//! Conflict-free (CF) and k-CF coloring for hypergraphs and geometric
//! intersection graphs: circle graphs, grounded L-shapes, L-shapes, frames
//! and strings.
//!
//! Every algorithm returns a [`Coloring`] that can be checked with
//! [`verify_k_cf`] against the neighborhood hypergraph of the input.

pub mod circle;
mod consecutive;
pub mod error;
pub mod framework;
pub mod geometry;
pub mod grounded;
pub mod hypergraph;
pub mod instances;
pub mod oracle;
pub mod pattern;
pub mod weak;

pub use error::{Error, Result};
pub use hypergraph::{
    degeneracy_color, degeneracy_order, neighborhood_hypergraph, verify_k_cf, verify_k_weak,
    Coloring, Graph, Hypergraph,
};
