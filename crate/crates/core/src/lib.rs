pub mod corpus;
pub mod error;
pub mod exterior;
pub mod graph;
pub mod io;
pub mod lattice;
pub mod localization;
pub mod quasitoric;
pub mod search;

pub use error::{Error, ErrorKind, Result};
pub use exterior::{CommutativeFixedPointData, ExteriorPolynomial, Monomial};
pub use graph::{AxialReport, Connectivity, Dart, Sign, TorusGraph};
pub use lattice::{LatticeVector, Side};
pub use localization::{GenusCertificate, LaurentPoly, LaurentRational, VertexData};
pub use quasitoric::{CombinatorialPolytope, HPolytope, QuasitoricPair};
pub use search::{min_support_search, MinSupportReport};
