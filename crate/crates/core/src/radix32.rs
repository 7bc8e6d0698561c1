//! 1024-point transforms composed from 32-point kernels.
//!
//! Every variant evaluates
//! `X = vec( [Ω ∘ (K_row · invvec(x)ᵀ)] · K_colᵀ )`
//! where `Ω` holds the exact twiddles `ω_1024^{m·n}` and each kernel is either
//! the unitary 32-point DFT or the scaled 32-point approximation.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::adft32::Adft32;
use crate::dft::{ensure_finite, fft_radix2, root_of_unity};
use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;

pub const RADIX: usize = 32;
pub const BLOCK_LEN: usize = RADIX * RADIX;

/// Which 32-point kernel runs on each side of the twiddle stage.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Exact,
    Alg1,
    Alg2,
    Alg3,
}

impl Variant {
    pub const ALL: [Variant; 4] = [Variant::Exact, Variant::Alg1, Variant::Alg2, Variant::Alg3];
    pub const APPROXIMATE: [Variant; 3] = [Variant::Alg1, Variant::Alg2, Variant::Alg3];

    pub fn name(self) -> &'static str {
        match self {
            Variant::Exact => "exact",
            Variant::Alg1 => "alg1",
            Variant::Alg2 => "alg2",
            Variant::Alg3 => "alg3",
        }
    }

    /// `(row kernel, column kernel)`.
    pub fn kernels(self) -> (KernelKind, KernelKind) {
        use KernelKind::{Approximate, Exact};
        match self {
            Variant::Exact => (Exact, Exact),
            Variant::Alg1 => (Approximate, Approximate),
            Variant::Alg2 => (Approximate, Exact),
            Variant::Alg3 => (Exact, Approximate),
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "exact" | "dft" => Ok(Variant::Exact),
            "alg1" => Ok(Variant::Alg1),
            "alg2" => Ok(Variant::Alg2),
            "alg3" => Ok(Variant::Alg3),
            other => Err(Error::Parse(format!("unknown variant `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelKind {
    Exact,
    Approximate,
}

impl KernelKind {
    fn apply(self, adft: &Adft32, x: &[Complex64]) -> Result<Vec<Complex64>> {
        match self {
            KernelKind::Exact => fft_radix2(x),
            KernelKind::Approximate => adft.apply(x),
        }
    }

    /// Dense 32×32 matrix of the kernel.
    pub fn matrix(self, adft: &Adft32) -> DenseMatrix {
        match self {
            KernelKind::Exact => crate::dft::dft_matrix(RADIX).expect("32 > 0"),
            KernelKind::Approximate => adft.matrix(),
        }
    }
}

/// Transform selector. The block length is fixed at 1024.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransformSpec {
    pub variant: Variant,
    pub size: usize,
}

impl TransformSpec {
    pub fn new(variant: Variant) -> Self {
        Self {
            variant,
            size: BLOCK_LEN,
        }
    }
}

impl From<Variant> for TransformSpec {
    fn from(v: Variant) -> Self {
        Self::new(v)
    }
}

/// Where a [`SignalMatrix`] sits in the pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Layout {
    Time,
    Intermediate,
    Output,
}

/// A 32×32 complex grid, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SignalMatrix {
    data: Vec<Complex64>,
    pub layout: Layout,
}

impl SignalMatrix {
    pub fn zeros(layout: Layout) -> Self {
        Self {
            data: vec![Complex64::new(0.0, 0.0); BLOCK_LEN],
            layout,
        }
    }

    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.data[r * RADIX + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Complex64) {
        self.data[r * RADIX + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Complex64] {
        &self.data[r * RADIX..(r + 1) * RADIX]
    }
}

/// Column-major reshape of a length-N² vector into an N×N grid:
/// entry `(i, c) = x[c·N + i]`. Only N = 32 produces a [`SignalMatrix`];
/// use [`invvec_general`] for other sizes.
pub fn invvec(x: &[Complex64]) -> Result<SignalMatrix> {
    let n = square_side(x.len())?;
    if n != RADIX {
        return Err(Error::LengthMismatch {
            expected: BLOCK_LEN,
            actual: x.len(),
        });
    }
    let mut m = SignalMatrix::zeros(Layout::Time);
    for c in 0..n {
        for i in 0..n {
            m.set(i, c, x[c * n + i]);
        }
    }
    Ok(m)
}

/// Column-major reshape for any perfect-square length; returns rows.
pub fn invvec_general(x: &[Complex64]) -> Result<Vec<Vec<Complex64>>> {
    let n = square_side(x.len())?;
    Ok((0..n)
        .map(|i| (0..n).map(|c| x[c * n + i]).collect())
        .collect())
}

fn square_side(len: usize) -> Result<usize> {
    if len == 0 {
        return Err(Error::ZeroSize);
    }
    let n = (len as f64).sqrt().round() as usize;
    if n * n == len {
        Ok(n)
    } else {
        Err(Error::NotPerfectSquare(len))
    }
}

/// Column-major flatten; the inverse of [`invvec`].
pub fn vec(m: &SignalMatrix) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); BLOCK_LEN];
    for c in 0..RADIX {
        for r in 0..RADIX {
            out[c * RADIX + r] = m.get(r, c);
        }
    }
    out
}

/// The 32×32 grid of exact twiddles `ω_1024^{m·n}`.
#[derive(Debug, Clone)]
pub struct TwiddleMatrix {
    entries: Vec<Complex64>,
    trivial: Vec<bool>,
}

impl TwiddleMatrix {
    pub fn get(&self, m: usize, n: usize) -> Complex64 {
        self.entries[m * RADIX + n]
    }

    /// True where the twiddle equals 1 (`m·n ≡ 0 mod 1024`).
    pub fn is_trivial(&self, m: usize, n: usize) -> bool {
        self.trivial[m * RADIX + n]
    }

    pub fn trivial_count(&self) -> usize {
        self.trivial.iter().filter(|&&t| t).count()
    }

    pub fn nontrivial_count(&self) -> usize {
        BLOCK_LEN - self.trivial_count()
    }
}

pub fn twiddle_matrix() -> TwiddleMatrix {
    let mut entries = Vec::with_capacity(BLOCK_LEN);
    let mut trivial = Vec::with_capacity(BLOCK_LEN);
    for m in 0..RADIX {
        for n in 0..RADIX {
            let e = (m * n) % BLOCK_LEN;
            trivial.push(e == 0);
            entries.push(if e == 0 {
                Complex64::new(1.0, 0.0)
            } else {
                root_of_unity(BLOCK_LEN, e)
            });
        }
    }
    TwiddleMatrix { entries, trivial }
}

/// A ready-to-run 1024-point transform for one variant.
#[derive(Debug, Clone)]
pub struct Radix32Transform {
    variant: Variant,
    twiddles: TwiddleMatrix,
    adft: &'static Adft32,
}

impl Radix32Transform {
    pub fn new(spec: TransformSpec) -> Result<Self> {
        if spec.size != BLOCK_LEN {
            return Err(Error::LengthMismatch {
                expected: BLOCK_LEN,
                actual: spec.size,
            });
        }
        Ok(Self {
            variant: spec.variant,
            twiddles: twiddle_matrix(),
            adft: Adft32::standard(),
        })
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn apply(&self, x: &[Complex64]) -> Result<Vec<Complex64>> {
        if x.len() != BLOCK_LEN {
            return Err(Error::LengthMismatch {
                expected: BLOCK_LEN,
                actual: x.len(),
            });
        }
        ensure_finite(x)?;
        let (row_kernel, col_kernel) = self.variant.kernels();
        let m = invvec(x)?;

        // Inner stage: column c of K_row·Mᵀ is K_row applied to row c of M.
        let mut inner = SignalMatrix::zeros(Layout::Intermediate);
        for c in 0..RADIX {
            let y = row_kernel.apply(self.adft, m.row(c))?;
            for (r, v) in y.into_iter().enumerate() {
                inner.set(r, c, v * self.twiddles.get(r, c));
            }
        }

        // Outer stage: row r of Y·K_colᵀ is K_col applied to row r of Y.
        let mut out = SignalMatrix::zeros(Layout::Output);
        for r in 0..RADIX {
            let z = col_kernel.apply(self.adft, inner.row(r))?;
            for (c, v) in z.into_iter().enumerate() {
                out.set(r, c, v);
            }
        }
        Ok(vec(&out))
    }

    /// Dense 1024×1024 matrix; column `c` is the response to `δ[c]`.
    pub fn matrix(&self) -> DenseMatrix {
        let columns: Vec<Vec<Complex64>> = (0..BLOCK_LEN)
            .into_par_iter()
            .map(|c| {
                let mut delta = vec![Complex64::new(0.0, 0.0); BLOCK_LEN];
                delta[c] = Complex64::new(1.0, 0.0);
                self.apply(&delta).expect("impulse has the right length")
            })
            .collect();
        DenseMatrix::from_columns(&columns).expect("square by construction")
    }
}

pub fn transform_1024(x: &[Complex64], spec: TransformSpec) -> Result<Vec<Complex64>> {
    Radix32Transform::new(spec)?.apply(x)
}

pub fn transform_matrix(spec: TransformSpec) -> Result<DenseMatrix> {
    Ok(Radix32Transform::new(spec)?.matrix())
}
