//! Localization checks for the fixed-point genus formula.

pub mod genus;
pub mod laurent;

pub use genus::{
    draw_generic_xi, genus_at_one, genus_series, genus_series_by_gcd, laurent_check, specialize,
    vertex_data, vertex_data_from_polynomial, GenusCertificate, OrderValue, PoleCancellation,
    Specialization, VertexData, DEFAULT_ORDER,
};
pub use laurent::{Cyclotomics, LaurentPoly, LaurentRational};
