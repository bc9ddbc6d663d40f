//! Generalized minimum distance functions of standard graded quotients
//! `R = S/I` over small prime fields.

pub mod codes;
pub mod error;
pub mod gmd;
pub mod groebner;
pub mod hilbert;
pub mod linalg;
pub mod poly;
pub mod schemes;
pub mod simplicial;

pub use error::{Error, Result};
