use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::dft::fft_in_place;
use crate::error::{Error, Result};

pub const DEFAULT_GRID_POINTS: usize = 8192;

/// Uniformly spaced angular frequencies.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyGrid {
    start: f64,
    step: f64,
    count: usize,
    full_period: bool,
}

impl FrequencyGrid {
    /// `count` points covering `[-π, π)`.
    pub fn uniform(count: usize) -> Result<Self> {
        if count == 0 {
            return Err(Error::EmptyGrid);
        }
        Ok(Self {
            start: -PI,
            step: 2.0 * PI / count as f64,
            count,
            full_period: true,
        })
    }

    /// `count` points covering `[lo, hi)`.
    pub fn span(lo: f64, hi: f64, count: usize) -> Result<Self> {
        if count == 0 {
            return Err(Error::EmptyGrid);
        }
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::Parse(format!("invalid frequency span [{lo}, {hi})")));
        }
        Ok(Self {
            start: lo,
            step: (hi - lo) / count as f64,
            count,
            full_period: false,
        })
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn point(&self, i: usize) -> f64 {
        self.start + self.step * i as f64
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.count).map(|i| self.point(i)).collect()
    }

    pub fn is_full_period(&self) -> bool {
        self.full_period
    }
}

impl Default for FrequencyGrid {
    fn default() -> Self {
        Self::uniform(DEFAULT_GRID_POINTS).expect("nonzero")
    }
}

/// `H(ω) = Σ c_n e^{-jωn}` at a single frequency.
pub fn dtft(row: &[Complex64], omega: f64) -> Complex64 {
    let step = Complex64::from_polar(1.0, -omega);
    let mut w = Complex64::new(1.0, 0.0);
    let mut acc = Complex64::new(0.0, 0.0);
    for (n, &c) in row.iter().enumerate() {
        if n % 64 == 0 {
            w = Complex64::from_polar(1.0, -omega * n as f64);
        }
        acc += c * w;
        w *= step;
    }
    acc
}

/// Frequency response of one transform row viewed as an FIR filter.
pub fn row_response(row: &[Complex64], grid: &FrequencyGrid) -> Vec<Complex64> {
    let g = grid.count();
    if grid.is_full_period() && g.is_power_of_two() {
        // On ω_i = -π + 2πi/G the sum is a length-G DFT of c_n·(-1)^n.
        let mut buf = vec![Complex64::new(0.0, 0.0); g];
        for (n, &c) in row.iter().enumerate() {
            let v = if n % 2 == 0 { c } else { -c };
            buf[n % g] += v;
        }
        fft_in_place(&mut buf, false);
        buf
    } else {
        direct_response(row, grid)
    }
}

fn direct_response(row: &[Complex64], grid: &FrequencyGrid) -> Vec<Complex64> {
    (0..grid.count())
        .into_par_iter()
        .map(|i| dtft(row, grid.point(i)))
        .collect()
}
