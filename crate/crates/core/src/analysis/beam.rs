use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;
use crate::radix32::{Radix32Transform, TransformSpec, Variant, BLOCK_LEN};

pub const DEFAULT_ANGLE_POINTS: usize = 4096;

/// Array response of one output bin of a transform driving a half-wavelength
/// uniform linear array.
#[derive(Debug, Clone, PartialEq)]
pub struct BeamPattern {
    pub variant: Variant,
    pub bin: usize,
    pub angles: Vec<f64>,
    /// Gain per angle, divided by the exact transform's peak gain.
    pub gain: Vec<Complex64>,
}

impl BeamPattern {
    pub fn magnitude(&self) -> Vec<f64> {
        self.gain.iter().map(|g| g.norm()).collect()
    }

    /// Angle with the largest gain magnitude.
    pub fn peak_angle(&self) -> f64 {
        let i = (0..self.gain.len())
            .max_by(|&a, &b| self.gain[a].norm().total_cmp(&self.gain[b].norm()))
            .expect("nonempty pattern");
        self.angles[i]
    }
}

/// `count` angles spanning `[-π/2, π/2]` inclusive.
pub fn default_angle_grid(count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![0.0],
        _ => (0..count)
            .map(|i| -FRAC_PI_2 + PI * i as f64 / (count - 1) as f64)
            .collect(),
    }
}

fn steering(theta: f64, n: usize) -> Vec<Complex64> {
    let phase = PI * theta.sin();
    (0..n)
        .map(|i| Complex64::from_polar(1.0, phase * i as f64))
        .collect()
}

fn check_inputs(bins: &[usize], angles: &[f64], n: usize) -> Result<()> {
    if bins.is_empty() {
        return Err(Error::EmptyBins);
    }
    if let Some(&k) = bins.iter().find(|&&k| k >= n) {
        return Err(Error::BinOutOfRange { bin: k, n });
    }
    if angles.is_empty() {
        return Err(Error::EmptyGrid);
    }
    if angles.iter().any(|a| !a.is_finite()) {
        return Err(Error::NonFinite);
    }
    Ok(())
}

fn normalizer(n: usize) -> f64 {
    (n as f64).sqrt()
}

pub fn beam_pattern(spec: TransformSpec, bin: usize, angles: &[f64]) -> Result<BeamPattern> {
    Ok(beam_patterns(spec, &[bin], angles)?.remove(0))
}

/// Beam patterns of several bins; one transform per angle serves all of them.
pub fn beam_patterns(
    spec: TransformSpec,
    bins: &[usize],
    angles: &[f64],
) -> Result<Vec<BeamPattern>> {
    check_inputs(bins, angles, BLOCK_LEN)?;
    let t = Radix32Transform::new(spec)?;
    let scale = normalizer(BLOCK_LEN);
    let outputs: Vec<Vec<Complex64>> = angles
        .par_iter()
        .map(|&theta| {
            let y = t.apply(&steering(theta, BLOCK_LEN)).expect("valid length");
            bins.iter().map(|&k| y[k] / scale).collect()
        })
        .collect();
    Ok(collect_patterns(spec.variant, bins, angles, &outputs))
}

/// Same as [`beam_patterns`] from an explicit transform matrix.
pub fn beam_patterns_from_matrix(
    variant: Variant,
    m: &DenseMatrix,
    bins: &[usize],
    angles: &[f64],
) -> Result<Vec<BeamPattern>> {
    let n = m.size();
    check_inputs(bins, angles, n)?;
    let scale = normalizer(n);
    let outputs: Vec<Vec<Complex64>> = angles
        .par_iter()
        .map(|&theta| {
            let a = steering(theta, n);
            bins.iter()
                .map(|&k| {
                    m.row(k)
                        .iter()
                        .zip(&a)
                        .map(|(c, v)| c * v)
                        .sum::<Complex64>()
                        / scale
                })
                .collect()
        })
        .collect();
    Ok(collect_patterns(variant, bins, angles, &outputs))
}

fn collect_patterns(
    variant: Variant,
    bins: &[usize],
    angles: &[f64],
    outputs: &[Vec<Complex64>],
) -> Vec<BeamPattern> {
    bins.iter()
        .enumerate()
        .map(|(j, &bin)| BeamPattern {
            variant,
            bin,
            angles: angles.to_vec(),
            gain: outputs.iter().map(|o| o[j]).collect(),
        })
        .collect()
}
