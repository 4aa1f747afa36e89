//! Unit-memory convolutional codes obtained by splitting the generator
//! matrices of one-point algebraic geometry codes, together with exact and
//! bounded verification of their parameters.

pub mod ag_code;
pub mod convolutional;
pub mod dump;
pub mod error;
pub mod field;
pub mod linear_code;
pub mod matrix;
pub mod pipeline;
pub mod poly;

pub use error::{Error, Result};
