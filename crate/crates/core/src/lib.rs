//! Exact equivariant Schubert calculus through nil-Hecke rings and their duals, for finite
//! root data of every type, crystallographic or not.

pub mod cli;
pub mod connective;
pub mod error;
pub mod fraction;
pub mod poly;
pub mod ring;
pub mod rootdata;
pub mod selftest;
pub mod smoothness;
pub mod structconst;
pub mod twisted;
pub mod weyl;

pub use error::{Error, Result};
