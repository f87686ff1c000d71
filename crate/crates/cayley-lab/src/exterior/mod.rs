//! Exact sparse exterior algebra over an oriented orthonormal frame.
//!
//! Wedge products, the Hodge star, interior products, musical isomorphisms
//! and exact linear algebra over spaces of forms. All operations are pure and
//! all values immutable; everything may be shared freely across threads.

pub mod form;
pub mod monomial;
pub mod operator;
pub mod scalar;
pub mod vector;

pub use form::{interior, KForm};
pub use monomial::{binomial, Monomial, MAX_DIMENSION};
pub use operator::{FormOperator, Matrix};
pub use scalar::{parse_rational, CoeffRepr, Rational, Scalar};
pub use vector::{sharp, Vector};
