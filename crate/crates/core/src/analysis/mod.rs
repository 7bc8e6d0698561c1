//! Filter-bank, side-lobe, SNR and beam-pattern analysis of the 1024-point
//! transforms.

mod beam;
mod filterbank;
mod grid;
mod sidelobe;
mod snr;

pub use beam::{
    beam_pattern, beam_patterns, beam_patterns_from_matrix, default_angle_grid, BeamPattern,
    DEFAULT_ANGLE_POINTS,
};
pub use filterbank::{
    filterbank_error, filterbank_error_matrices, quantile, RowErrorStats, ERROR_FLOOR_DB,
};
pub use grid::{dtft, row_response, FrequencyGrid, DEFAULT_GRID_POINTS};
pub use sidelobe::{
    row_side_lobe, worst_side_lobe, worst_side_lobe_matrix, RowSideLobe, SideLobeReport,
};
pub use snr::{evenly_spaced_bins, snr_monte_carlo, SnrReport};

pub(crate) fn db20(x: f64) -> f64 {
    20.0 * x.log10()
}
