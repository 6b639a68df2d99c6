//! Quasitoric pairs: simple polytopes with characteristic matrices.

mod combinatorial;
mod pair;
mod polytope;
mod realize;

pub use combinatorial::{CombinatorialPolytope, PolytopeVertex};
pub use pair::QuasitoricPair;
pub use polytope::{Enumeration, HPolytope};
pub use realize::{
    add_pairs, add_pairs_traced, bridge_pair, realize_dim1, realize_dim2, tetrahedron_fixture,
    tetrahedron_labels, AddCase, AddOutcome,
};
