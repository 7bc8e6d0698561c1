use num_complex::Complex64;
use rayon::prelude::*;

use super::db20;
use super::grid::{dtft, row_response, FrequencyGrid};
use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;
use crate::radix32::{transform_matrix, TransformSpec};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RowSideLobe {
    /// Worst side lobe relative to the main-lobe peak, in dB.
    pub level_db: f64,
    pub peak_frequency: f64,
    pub side_lobe_frequency: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SideLobeReport {
    pub per_row_db: Vec<f64>,
    pub worst_db: f64,
    pub worst_row: usize,
}

pub fn worst_side_lobe(spec: TransformSpec, grid: &FrequencyGrid) -> Result<SideLobeReport> {
    worst_side_lobe_matrix(&transform_matrix(spec)?, grid)
}

pub fn worst_side_lobe_matrix(m: &DenseMatrix, grid: &FrequencyGrid) -> Result<SideLobeReport> {
    if m.size() == 0 {
        return Err(Error::ZeroSize);
    }
    let per_row_db: Vec<f64> = (0..m.size())
        .into_par_iter()
        .map(|r| row_side_lobe(m.row(r), grid).level_db)
        .collect();
    let (worst_row, worst_db) = per_row_db
        .iter()
        .copied()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .expect("at least one row");
    Ok(SideLobeReport {
        per_row_db,
        worst_db,
        worst_row,
    })
}

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Maximises `f` on `[a, b]`, assuming it is unimodal there.
fn golden_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while b - a > tol {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}

/// Side-lobe level of one row. The main lobe runs from the global peak out
/// to the first local minimum on each side; everything else is side lobe.
/// Both peaks are refined on the continuous response within one grid step.
pub fn row_side_lobe(row: &[Complex64], grid: &FrequencyGrid) -> RowSideLobe {
    let mag: Vec<f64> = row_response(row, grid).iter().map(|v| v.norm()).collect();
    let g = mag.len();
    let p = (0..g)
        .max_by(|&a, &b| mag[a].total_cmp(&mag[b]))
        .expect("grid is nonempty");

    let wrap = grid.is_full_period();
    let prev = |i: usize| {
        if i == 0 {
            wrap.then_some(g - 1)
        } else {
            Some(i - 1)
        }
    };
    let next = |i: usize| {
        if i + 1 == g {
            wrap.then_some(0)
        } else {
            Some(i + 1)
        }
    };

    let mut in_main = vec![false; g];
    in_main[p] = true;
    let mut i = p;
    while let Some(j) = prev(i) {
        if in_main[j] || mag[j] >= mag[i] {
            break;
        }
        in_main[j] = true;
        i = j;
    }
    let mut i = p;
    while let Some(j) = next(i) {
        if in_main[j] || mag[j] >= mag[i] {
            break;
        }
        in_main[j] = true;
        i = j;
    }

    let side = (0..g)
        .filter(|&i| !in_main[i])
        .max_by(|&a, &b| mag[a].total_cmp(&mag[b]));

    let h = grid.step();
    let abs_h = |w: f64| dtft(row, w).norm();
    let tol = h * 1e-6;
    let (wp, peak) = golden_max(abs_h, grid.point(p) - h, grid.point(p) + h, tol);
    let peak = peak.max(mag[p]);
    match side {
        None => RowSideLobe {
            level_db: f64::NEG_INFINITY,
            peak_frequency: wp,
            side_lobe_frequency: f64::NAN,
        },
        Some(s) => {
            let (ws, level) = golden_max(abs_h, grid.point(s) - h, grid.point(s) + h, tol);
            let level = level.max(mag[s]);
            RowSideLobe {
                level_db: db20(level / peak),
                peak_frequency: wp,
                side_lobe_frequency: ws,
            }
        }
    }
}
