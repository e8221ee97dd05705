//! Exact computation of representation-dimension upper bounds for bound
//! quiver algebras, and constructive transfer of approximation resolutions
//! and generators between socle-equivalent selfinjective algebras.
//!
//! Conventions used throughout:
//! - vectors are rows and modules act on the right, so a morphism is a
//!   matrix applied on the right of a coordinate row;
//! - paths compose left to right: in the monomial `a*b`, arrow `a` is
//!   traversed first;
//! - all arithmetic is exact, over GF(p) or over the rationals.

pub mod error;
pub mod field;
pub mod matrix;
pub mod par;
pub mod algebra;
pub mod approx;
pub mod decomp;
pub mod endo;
pub mod poly;
pub mod quiver;
pub mod rep;
pub mod transfer;

pub use error::{Error, Result};
pub use field::{FieldSpec, Scalar};
pub use matrix::Matrix;
