pub mod cli;
pub mod conelattice;
pub mod divisor;
pub mod error;
pub mod exactla;
pub mod presentation;
pub mod ratapprox;
pub mod twopoint;

pub use error::{Error, Result};
