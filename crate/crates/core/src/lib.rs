//! Multihomomorphism posets of small graphs, their order complexes and integral homology,
//! the flip action on `mhom(K2, H)`, and polymorphism search for identity systems.

pub mod dichotomy;
pub mod error;
pub mod graph;
pub mod mhom;
pub mod polysearch;
pub mod poset;
pub mod topology;

pub use error::{Error, Result};
