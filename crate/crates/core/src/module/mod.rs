//! Finitely presented graded modules over polynomial and hypersurface rings.

mod graded;
mod homs;
mod matrix;
mod ops;
mod pushforward;
mod resolution;

pub use graded::{check_complex, histogram, image, kernel, minimal_columns, subquotient, syzygies, GradedModule};
pub use homs::{double_dual, dual, ext, hom};
pub use matrix::GradedMatrix;
pub use resolution::{free_resolution, hilbert_polynomial, BettiTable, Resolution};
pub use ops::{
    determinant, extension_module, frobenius_pullback, minors_ideal, pullback_module, saturation_classes, section_extension,
    sym2, tensor, wedge2, Extension,
};
pub use pushforward::pushforward_presentation;

#[cfg(test)]
mod tests;
