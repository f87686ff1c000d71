//! The Cayley structure on R^8 and its irreducible-component projections.

mod structure;
mod topology;
mod torsion;

pub use structure::{
    cayley_form, check_admissible, conjugate_by_hodge, dual_component_transport,
    AdmissibilityReport, CayleyStructure,
};
pub use topology::{lawson_condition, TopologicalData};
pub use torsion::{cayley_corollary_check, characteristic_torsion_lcp, lee_form, TorsionResult};
