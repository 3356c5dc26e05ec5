//! Computer algebra over finite fields for graded modules on projective
//! space and the five-dimensional quadric.

pub mod bbw;
pub mod beilinson;
pub mod chow;
pub mod error;
pub mod gb;
pub mod module;
pub mod numeric;
pub mod ring;
pub mod sheafcoh;

pub use error::{Error, Result};
