use std::f64::consts::PI;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::radix32::{Radix32Transform, TransformSpec, Variant, BLOCK_LEN};

const CHUNK: usize = 256;

#[derive(Debug, Clone, PartialEq)]
pub struct SnrReport {
    pub variant: Variant,
    pub bins: Vec<usize>,
    pub snr_exact_db: Vec<f64>,
    pub snr_variant_db: Vec<f64>,
    /// `snr_exact_db - snr_variant_db` per bin.
    pub degradation_db: Vec<f64>,
    pub worst_degradation_db: f64,
    pub mean_degradation_db: f64,
    pub min_variant_db: f64,
    pub replicates: usize,
    pub noise_variance: f64,
    pub seed: u64,
}

/// `count` bins spread evenly over the 1024 outputs, starting at 0.
pub fn evenly_spaced_bins(count: usize) -> Vec<usize> {
    let count = count.clamp(1, BLOCK_LEN);
    (0..count).map(|i| i * BLOCK_LEN / count).collect()
}

/// Running sums of the noise component at each bin.
#[derive(Clone)]
struct Moments {
    sum: Vec<Complex64>,
    sum_sq: Vec<f64>,
}

impl Moments {
    fn new(n: usize) -> Self {
        Self {
            sum: vec![Complex64::new(0.0, 0.0); n],
            sum_sq: vec![0.0; n],
        }
    }

    fn push(&mut self, y: &[Complex64], bins: &[usize]) {
        for (j, &k) in bins.iter().enumerate() {
            self.sum[j] += y[k];
            self.sum_sq[j] += y[k].norm_sqr();
        }
    }

    fn merge(&mut self, other: &Moments) {
        for j in 0..self.sum.len() {
            self.sum[j] += other.sum[j];
            self.sum_sq[j] += other.sum_sq[j];
        }
    }

    /// SNR in dB of `signal + noise` for each bin.
    fn snr_db(&self, signal: &[Complex64], r: usize) -> Vec<f64> {
        let rf = r as f64;
        (0..self.sum.len())
            .map(|j| {
                let mean_noise = self.sum[j] / rf;
                let var = (self.sum_sq[j] - self.sum[j].norm_sqr() / rf) / (rf - 1.0);
                10.0 * ((signal[j] + mean_noise).norm_sqr() / var).log10()
            })
            .collect()
    }
}

fn noise_vector(seed: u64, replicate: u64, dist: &Normal<f64>) -> Vec<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(replicate);
    (0..BLOCK_LEN)
        .map(|_| Complex64::new(dist.sample(&mut rng), dist.sample(&mut rng)))
        .collect()
}

/// Monte-Carlo SNR of each requested bin for a complex exponential at that
/// bin in white complex Gaussian noise of total variance `noise_var`.
///
/// Both the exact transform and the variant see the same noise realisations.
/// Replicate `r` draws its noise from stream `r` of a generator seeded with
/// `seed`, so results do not depend on thread count.
pub fn snr_monte_carlo(
    spec: TransformSpec,
    bins: &[usize],
    replicates: usize,
    noise_var: f64,
    seed: u64,
) -> Result<SnrReport> {
    if bins.is_empty() {
        return Err(Error::EmptyBins);
    }
    if let Some(&k) = bins.iter().find(|&&k| k >= BLOCK_LEN) {
        return Err(Error::BinOutOfRange {
            bin: k,
            n: BLOCK_LEN,
        });
    }
    if replicates < 2 {
        return Err(Error::TooFewReplicates(replicates));
    }
    if !(noise_var.is_finite() && noise_var > 0.0) {
        return Err(Error::InvalidNoiseVariance(noise_var));
    }

    let exact = Radix32Transform::new(TransformSpec {
        variant: Variant::Exact,
        ..spec
    })?;
    let approx = Radix32Transform::new(spec)?;

    // The transforms are linear, so the signal and noise parts are separable.
    let signals: Vec<(Complex64, Complex64)> = bins
        .par_iter()
        .map(|&k| {
            let s: Vec<Complex64> = (0..BLOCK_LEN)
                .map(|n| {
                    Complex64::from_polar(
                        1.0,
                        2.0 * PI * ((n * k) % BLOCK_LEN) as f64 / BLOCK_LEN as f64,
                    )
                })
                .collect();
            let e = exact.apply(&s).expect("valid length");
            let a = approx.apply(&s).expect("valid length");
            (e[k], a[k])
        })
        .collect();

    let dist = Normal::new(0.0, (noise_var / 2.0).sqrt()).expect("positive deviation");
    let chunks: Vec<(Moments, Moments)> = (0..replicates.div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| {
            let mut me = Moments::new(bins.len());
            let mut ma = Moments::new(bins.len());
            for r in c * CHUNK..((c + 1) * CHUNK).min(replicates) {
                let w = noise_vector(seed, r as u64, &dist);
                me.push(&exact.apply(&w).expect("valid length"), bins);
                ma.push(&approx.apply(&w).expect("valid length"), bins);
            }
            (me, ma)
        })
        .collect();

    let mut me = Moments::new(bins.len());
    let mut ma = Moments::new(bins.len());
    for (e, a) in &chunks {
        me.merge(e);
        ma.merge(a);
    }

    let sig_e: Vec<_> = signals.iter().map(|s| s.0).collect();
    let sig_a: Vec<_> = signals.iter().map(|s| s.1).collect();
    let snr_exact_db = me.snr_db(&sig_e, replicates);
    let snr_variant_db = ma.snr_db(&sig_a, replicates);
    let degradation_db: Vec<f64> = snr_exact_db
        .iter()
        .zip(&snr_variant_db)
        .map(|(e, a)| e - a)
        .collect();

    Ok(SnrReport {
        variant: spec.variant,
        bins: bins.to_vec(),
        worst_degradation_db: degradation_db
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max),
        mean_degradation_db: degradation_db.iter().sum::<f64>() / bins.len() as f64,
        min_variant_db: snr_variant_db.iter().copied().fold(f64::INFINITY, f64::min),
        snr_exact_db,
        snr_variant_db,
        degradation_db,
        replicates,
        noise_variance: noise_var,
        seed,
    })
}
