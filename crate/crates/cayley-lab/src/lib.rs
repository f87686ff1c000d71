//! cayley-lab: exact exterior algebra for the Cayley 4-form on R^8.
//!
//! The crate builds the standard Cayley 4-form, certifies its algebraic
//! invariants, projects forms onto the irreducible components of the induced
//! structure group action, computes Lee forms and characteristic torsion,
//! classifies structures by their torsion type, and scans an SU(3)-product
//! ansatz for the locally conformal locus. All core arithmetic is exact
//! (arbitrary-precision rationals); an `f64` mode exists for
//! angle-parameterized sweeps.
//!
//! Start from [`spin7::CayleyStructure`] for the reference structure, or run
//! the examples: each major capability has one runnable example under
//! `examples/`.

pub mod cedga;
pub mod cli;
mod error;
pub mod exterior;
pub mod spin7;

pub use error::{Error, Result};
pub use exterior::{KForm, Monomial, Rational, Scalar, Vector};
