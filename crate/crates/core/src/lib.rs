//! Computer algebra for skew (Ore) polynomial rings over finite fields, with
//! skew polycyclic codes, designed-distance certificates, and code-family
//! equivalence classification on top.

// elimination loops all over this crate read better with explicit indices
#![allow(clippy::needless_range_loop)]

pub mod bounds;
pub mod code;
pub mod equiv;
pub mod error;
pub mod field;
pub mod frame;
pub mod skew;

pub use error::{Error, Result};
pub use field::{FieldAutomorphism, FieldElement, FiniteField, SubfieldEmbedding, FIELD_SIZE_CAP};
pub use skew::SkewPoly;
