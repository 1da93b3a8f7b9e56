//! Exact computational tools for geometric transitions of Calabi–Yau threefolds.
//!
//! The crate is layered bottom-up:
//!
//! - [`poly`]: sparse polynomials with coefficients in `Q` or a number field.
//! - [`groebner`]: reduced Gröbner bases and zero-dimensional ideal analytics.
//! - [`singularity`]: singular loci, node certificates, Milnor and Tyurina numbers.
//! - [`transition`]: invariant tables, consistency findings and simplicity verdicts.
//! - [`web`]: the graph of deformation classes and transitions between them.

pub mod error;
pub mod groebner;
pub(crate) mod keyvalue;
pub mod poly;
pub mod singularity;
pub mod transition;
pub mod web;

pub use error::{Error, Result};
