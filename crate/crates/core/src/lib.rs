//! Nested orthogonal arrays, nested difference matrices, and nested
//! space-filling designs built from them.
//!
//! Every construction is checked by an independent brute-force verifier
//! before it is handed back.

pub mod algebra;
pub mod arrays;
pub mod catalog;
pub mod cli;
pub mod constructions;
pub mod error;
pub mod io;
pub mod mixed;
pub mod nsfd;
pub mod registry;

pub use error::{Error, Result};
