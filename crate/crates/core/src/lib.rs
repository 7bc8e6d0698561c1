//! Multiplierless 32-point approximate DFT, the 1024-point radix-32
//! transforms built from it, arithmetic cost models and filter-bank analysis.

pub mod adft32;
pub mod analysis;
pub mod complexity;
pub mod counting;
pub mod dft;
pub mod error;
pub mod io;
pub mod matrix;
pub mod radix32;
pub mod sparse;

pub use adft32::{adft32_apply, adft32_matrix, Adft32};
pub use analysis::{BeamPattern, FrequencyGrid, RowErrorStats, SideLobeReport, SnrReport};
pub use complexity::{CircuitReport, ComplexityReport, CostModel};
pub use dft::{dft_direct, dft_matrix, fft_radix2, idft_direct, ifft_radix2};
pub use error::{Error, Result};
pub use matrix::DenseMatrix;
pub use radix32::{transform_1024, transform_matrix, TransformSpec, Variant};
pub use sparse::{Coeff, SparseFactor};
