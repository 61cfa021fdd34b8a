//! Ehrhart quasi-polynomials of rationally translated rational polytopes,
//! organised by the cells of the toric arrangement of the facet normals.

pub mod cells;
pub mod cli;
pub mod counting;
pub mod error;
pub mod exact;
pub mod fixtures;
pub mod hilbert;
pub mod io;
pub mod linalg;
pub mod polytope;
pub mod quasipoly;
pub mod svg;
pub mod theorems;
pub mod translate;

pub use error::{Error, Result};
