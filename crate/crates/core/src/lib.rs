//! Computational toolkit for earthquakes, shear coordinates and
//! Fenchel-Nielsen gluing on hyperbolic surfaces.

// Negated float comparisons are used on purpose: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod conjugacy;
pub mod error;
pub mod hyp;
pub mod lamination;
pub mod par;
pub mod surface;
pub mod transport;
pub mod triangle;

pub use error::{Error, Result};
