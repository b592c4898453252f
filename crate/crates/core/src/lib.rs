//! Exact computation of the top-degree part of Jack characters, their
//! Kerov–Lassalle polynomials, and an independent Jack-polynomial oracle to
//! check them against.

pub mod analysis;
pub mod cache;
pub mod error;
pub mod exact;
pub mod functionals;
pub mod jackref;
pub mod maps;
pub mod topdegree;
pub mod verify;
pub mod young;

pub use error::{Error, Result};
