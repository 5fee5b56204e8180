//! Exact arithmetic: Q/Z, cyclotomic numbers, finite fields and matrices over them.

pub mod arith;
pub mod cyc;
pub mod field;
pub mod matrix;
pub mod unity;

pub use cyc::Cyc;
pub use field::{field, field_of_order, FieldSpec, Fq};
pub use matrix::FqMat;
pub use unity::{unity, UnityClass};
