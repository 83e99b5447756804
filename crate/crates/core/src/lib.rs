//! Invariant orders on magmas, quandles and groups.
//!
//! - [`magma`], [`quandle`], [`product`]: finite tables, quandle constructions
//!   and table-level obstructions.
//! - [`order`]: verification, propagation and enumeration of left, right and
//!   bi-invariant total orders on finite magmas.
//! - [`chi`]: the bit-vector encoding of orders and its text format.
//! - [`groups`]: exact arithmetic on infinite groups, balls, and conjugation
//!   quandle obstructions.
//! - [`cone`]: positive-cone closures, extension search and certificates.
//! - [`corpus`]: exhaustive small magmas and quandles, and small groups.

pub mod chi;
pub mod cone;
pub mod corpus;
pub mod error;
pub mod groups;
pub mod magma;
pub mod order;
pub mod product;
pub mod quandle;

pub use error::{Error, Result};
