//! Sparse factors with coefficients restricted to `{+1, -1, +j, -j}`.
//!
//! A factor is applied to complex data held as a pair of real lanes. Every
//! coefficient is realised by lane routing and sign selection, so the only
//! arithmetic a factor performs is lane addition and subtraction. The
//! evaluation is generic over the lane type: `f64` for numerics, `i64` for
//! exact Gaussian-integer products, and an instrumented type for counting.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;

/// Scalar type a factor can be evaluated over. Note the absence of `Mul`.
pub trait Lane: Copy + Add<Output = Self> + Sub<Output = Self> + Neg<Output = Self> {}

impl<T> Lane for T where T: Copy + Add<Output = T> + Sub<Output = T> + Neg<Output = T> {}

/// A complex value split into real and imaginary lanes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CxLane<T> {
    pub re: T,
    pub im: T,
}

impl<T> CxLane<T> {
    pub fn new(re: T, im: T) -> Self {
        Self { re, im }
    }
}

impl From<Complex64> for CxLane<f64> {
    fn from(v: Complex64) -> Self {
        Self::new(v.re, v.im)
    }
}

impl From<CxLane<f64>> for Complex64 {
    fn from(v: CxLane<f64>) -> Self {
        Complex64::new(v.re, v.im)
    }
}

/// One of the four unit coefficients allowed in a sparse factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Coeff {
    PlusOne,
    MinusOne,
    PlusJ,
    MinusJ,
}

impl Coeff {
    pub fn to_complex(self) -> Complex64 {
        match self {
            Coeff::PlusOne => Complex64::new(1.0, 0.0),
            Coeff::MinusOne => Complex64::new(-1.0, 0.0),
            Coeff::PlusJ => Complex64::new(0.0, 1.0),
            Coeff::MinusJ => Complex64::new(0.0, -1.0),
        }
    }

    /// Parses an exact unit value; anything else is rejected.
    pub fn from_complex(v: Complex64) -> Option<Self> {
        [Coeff::PlusOne, Coeff::MinusOne, Coeff::PlusJ, Coeff::MinusJ]
            .into_iter()
            .find(|c| c.to_complex() == v)
    }

    pub fn is_real(self) -> bool {
        matches!(self, Coeff::PlusOne | Coeff::MinusOne)
    }

    /// `coeff · v` using sign flips and lane swaps only.
    pub fn scale<T: Lane>(self, v: CxLane<T>) -> CxLane<T> {
        match self {
            Coeff::PlusOne => v,
            Coeff::MinusOne => CxLane::new(-v.re, -v.im),
            Coeff::PlusJ => CxLane::new(-v.im, v.re),
            Coeff::MinusJ => CxLane::new(v.im, -v.re),
        }
    }

    /// `acc + coeff · v`, two lane additions/subtractions.
    pub fn accumulate<T: Lane>(self, acc: CxLane<T>, v: CxLane<T>) -> CxLane<T> {
        match self {
            Coeff::PlusOne => CxLane::new(acc.re + v.re, acc.im + v.im),
            Coeff::MinusOne => CxLane::new(acc.re - v.re, acc.im - v.im),
            Coeff::PlusJ => CxLane::new(acc.re - v.im, acc.im + v.re),
            Coeff::MinusJ => CxLane::new(acc.re + v.im, acc.im - v.re),
        }
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Coeff::PlusOne => "+1",
            Coeff::MinusOne => "-1",
            Coeff::PlusJ => "+j",
            Coeff::MinusJ => "-j",
        })
    }
}

/// A square sparse matrix whose rows each hold a few unit coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseFactor {
    label: String,
    size: usize,
    rows: Vec<Vec<(usize, Coeff)>>,
}

impl SparseFactor {
    /// Validates that every row is non-empty, every column index is in range
    /// and no column repeats within a row.
    pub fn new(label: impl Into<String>, rows: Vec<Vec<(usize, Coeff)>>) -> Result<Self> {
        let label = label.into();
        let size = rows.len();
        if size == 0 {
            return Err(Error::ZeroSize);
        }
        for (r, row) in rows.iter().enumerate() {
            if row.is_empty() {
                return Err(Error::InvalidFactor {
                    label,
                    reason: format!("row {r} is empty"),
                });
            }
            for (i, &(c, _)) in row.iter().enumerate() {
                if c >= size {
                    return Err(Error::InvalidFactor {
                        label,
                        reason: format!("row {r} references column {c} of {size}"),
                    });
                }
                if row[..i].iter().any(|&(other, _)| other == c) {
                    return Err(Error::InvalidFactor {
                        label,
                        reason: format!("row {r} repeats column {c}"),
                    });
                }
            }
        }
        Ok(Self { label, size, rows })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            label: format!("I{n}"),
            size: n,
            rows: (0..n).map(|i| vec![(i, Coeff::PlusOne)]).collect(),
        }
    }

    /// Block-diagonal composition; the blocks' sizes must sum to the result's.
    pub fn block_diag(label: impl Into<String>, blocks: &[SparseFactor]) -> Result<Self> {
        let mut rows = Vec::with_capacity(blocks.iter().map(|b| b.size).sum());
        let mut offset = 0;
        for b in blocks {
            for row in &b.rows {
                rows.push(row.iter().map(|&(c, k)| (c + offset, k)).collect());
            }
            offset += b.size;
        }
        Self::new(label, rows)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn rows(&self) -> &[Vec<(usize, Coeff)>] {
        &self.rows
    }

    pub fn rows_mut(&mut self) -> &mut Vec<Vec<(usize, Coeff)>> {
        &mut self.rows
    }

    /// `(row, col, coeff)` for every nonzero, in row order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, Coeff)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |&(c, k)| (r, c, k)))
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn max_row_nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_real(&self) -> bool {
        self.entries().all(|(_, _, k)| k.is_real())
    }

    /// Real additions needed to apply the factor to one complex vector: a row
    /// with `m` terms costs `m - 1` additions on each of the two lanes.
    pub fn complex_add_cost(&self) -> usize {
        self.rows.iter().map(|r| 2 * (r.len() - 1)).sum()
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let mut m = DenseMatrix::zeros(self.size);
        for (r, c, k) in self.entries() {
            m[(r, c)] = k.to_complex();
        }
        m
    }

    /// Applies the factor using additions, subtractions and lane swaps only.
    ///
    /// Each row starts from a `+1` term when it has one, so a sign flip is
    /// only needed for rows without any `+1` coefficient.
    pub fn apply<T: Lane>(&self, x: &[CxLane<T>]) -> Result<Vec<CxLane<T>>> {
        if x.len() != self.size {
            return Err(Error::LengthMismatch {
                expected: self.size,
                actual: x.len(),
            });
        }
        Ok(self.rows.iter().map(|row| eval_row(row, x)).collect())
    }
}

fn eval_row<T: Lane>(row: &[(usize, Coeff)], x: &[CxLane<T>]) -> CxLane<T> {
    let start = row
        .iter()
        .position(|&(_, k)| k == Coeff::PlusOne)
        .unwrap_or(0);
    let (c0, k0) = row[start];
    let mut acc = k0.scale(x[c0]);
    for (i, &(c, k)) in row.iter().enumerate() {
        if i != start {
            acc = k.accumulate(acc, x[c]);
        }
    }
    acc
}

/// The `t × t` butterfly block: identity and counter-identity halves, with a
/// pass-through centre row when `t` is odd.
///
/// Row `i < h` computes `x[i] + x[t-1-i]`; the lower half computes
/// `x[t-1-r] - x[r]` for row `r`.
pub fn build_b(t: usize) -> Result<SparseFactor> {
    if t == 0 {
        return Err(Error::ZeroSize);
    }
    let h = t / 2;
    let mut rows = Vec::with_capacity(t);
    for i in 0..h {
        rows.push(vec![(i, Coeff::PlusOne), (t - 1 - i, Coeff::PlusOne)]);
    }
    if t % 2 == 1 {
        rows.push(vec![(h, Coeff::PlusOne)]);
    }
    for r in t - h..t {
        rows.push(vec![(t - 1 - r, Coeff::PlusOne), (r, Coeff::MinusOne)]);
    }
    SparseFactor::new(format!("B{t}"), rows)
}
