use rayon::prelude::*;

use super::db20;
use super::grid::{row_response, FrequencyGrid};
use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;
use crate::radix32::{transform_matrix, TransformSpec, Variant};

/// Reported errors never go below this level.
pub const ERROR_FLOOR_DB: f64 = -60.0;

/// Row-wise frequency-response error of an approximate transform.
#[derive(Debug, Clone, PartialEq)]
pub struct RowErrorStats {
    pub frequencies: Vec<f64>,
    pub lower_envelope: Vec<f64>,
    pub q1: Vec<f64>,
    pub q2: Vec<f64>,
    pub q3: Vec<f64>,
    pub upper_envelope: Vec<f64>,
    /// Peak error of each row over the grid, in dB.
    pub row_peak_db: Vec<f64>,
    pub min_db: f64,
    pub mean_db: f64,
    pub max_db: f64,
}

/// Linear-interpolation quantile of sorted data (`h = (n-1)·p`).
pub fn quantile(sorted: &[f64], p: f64) -> f64 {
    let n = sorted.len();
    if n == 0 {
        return f64::NAN;
    }
    let h = (n - 1) as f64 * p.clamp(0.0, 1.0);
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

pub fn filterbank_error(spec: TransformSpec, grid: &FrequencyGrid) -> Result<RowErrorStats> {
    let approx = transform_matrix(spec)?;
    let exact = transform_matrix(TransformSpec {
        variant: Variant::Exact,
        ..spec
    })?;
    filterbank_error_matrices(&approx, &exact, grid)
}

/// Error of every row of `approx` against the same row of `exact`, in dB
/// relative to the exact row's peak response.
pub fn filterbank_error_matrices(
    approx: &DenseMatrix,
    exact: &DenseMatrix,
    grid: &FrequencyGrid,
) -> Result<RowErrorStats> {
    if approx.size() != exact.size() {
        return Err(Error::DimensionMismatch(approx.size(), exact.size()));
    }
    if approx.size() == 0 {
        return Err(Error::ZeroSize);
    }
    let g = grid.count();
    let per_row: Vec<Vec<f64>> = (0..exact.size())
        .into_par_iter()
        .map(|r| {
            let he = row_response(exact.row(r), grid);
            let ha = row_response(approx.row(r), grid);
            let peak = he.iter().map(|v| v.norm()).fold(0.0, f64::max);
            he.iter()
                .zip(&ha)
                .map(|(e, a)| db20((a - e).norm() / peak).max(ERROR_FLOOR_DB))
                .collect()
        })
        .collect();

    let row_peak_db: Vec<f64> = per_row
        .iter()
        .map(|e| e.iter().copied().fold(f64::NEG_INFINITY, f64::max))
        .collect();

    let columns: Vec<[f64; 5]> = (0..g)
        .into_par_iter()
        .map(|i| {
            let mut col: Vec<f64> = per_row.iter().map(|e| e[i]).collect();
            col.sort_by(f64::total_cmp);
            [
                col[0],
                quantile(&col, 0.25),
                quantile(&col, 0.5),
                quantile(&col, 0.75),
                col[col.len() - 1],
            ]
        })
        .collect();

    let pick = |j: usize| columns.iter().map(|c| c[j]).collect::<Vec<_>>();
    let rows = row_peak_db.len() as f64;
    Ok(RowErrorStats {
        frequencies: grid.points(),
        lower_envelope: pick(0),
        q1: pick(1),
        q2: pick(2),
        q3: pick(3),
        upper_envelope: pick(4),
        min_db: row_peak_db.iter().copied().fold(f64::INFINITY, f64::min),
        mean_db: row_peak_db.iter().sum::<f64>() / rows,
        max_db: row_peak_db
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max),
        row_peak_db,
    })
}
