//! Exact linear algebra over the rationals and finite fields.

mod field;
mod matrix;

pub use field::{is_prime, AnyField, ExtField, Field, FieldSpec, PrimeField, Rationals, MAX_PRIME};
pub use matrix::{quotient_complement, Echelon, ExactMatrix};
