//! Finite-field towers, linearized polynomials, Rédei polynomials and
//! F_q-linear sets over small fields.

pub mod error;
pub mod explore;
pub mod fields;
pub mod linearized;
pub mod linset;
pub mod poly;
pub mod redei;
pub mod report;
pub mod sample;
pub mod spread;

pub use error::{Error, Result};
pub use fields::{Elem, FieldCtx, Subspace};
pub use linearized::LinPoly;
pub use poly::Poly;
