//! Superpolynomials of knots: Laurent polynomials in `a, q, t`, torus knot
//! formulas, dot-diagram complexes and their `d_N` homologies.

pub mod check;
pub mod complex;
pub mod dataset;
pub mod error;
pub mod laurent;
pub mod linalg;
pub mod render;
pub mod stable;
pub mod structchecks;
pub mod torus;

pub use error::{Error, Result};
pub use laurent::{Exp, Poly3};
