//! The multiplierless 32-point approximate DFT as an eight-factor sparse product.
//!
//! `F̂ = s · W7·W6·W5·W4·W3·W2·W1·W0`, where W0..W6 are real with `±1`
//! coefficients, W7 also uses `±j`, and `s` is a single real output scale.
//! Block-structured factors are assembled from [`build_b`] blocks; the
//! irregular blocks are literal tables below.

use num_complex::Complex64;
use once_cell::sync::Lazy;

use crate::counting::{OpCounter, OpCounts};
use crate::dft::{dft_matrix, ensure_finite};
use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;
use crate::sparse::{build_b, Coeff, CxLane, Lane, SparseFactor};

use Coeff::{MinusJ as NJ, MinusOne as N, PlusJ as J, PlusOne as P};

pub const ADFT_SIZE: usize = 32;
pub const FACTOR_COUNT: usize = 8;

/// Most nonzeros any factor row may hold (the Z2 and Z3 blocks use three).
pub const MAX_ROW_TERMS: usize = 3;

static Z1: [&[(usize, Coeff)]; 16] = [
    &[(0, P), (12, P)],
    &[(1, P)],
    &[(2, P)],
    &[(3, P)],
    &[(4, P), (8, P)],
    &[(5, P)],
    &[(6, P)],
    &[(7, P)],
    &[(4, P), (8, N)],
    &[(9, P)],
    &[(10, P)],
    &[(11, P)],
    &[(0, P), (12, N)],
    &[(13, P)],
    &[(14, P)],
    &[(15, P)],
];
static Z2: [&[(usize, Coeff)]; 17] = [
    &[(0, P)],
    &[(1, N), (15, P)],
    &[(2, P)],
    &[(3, P), (9, P)],
    &[(4, P), (6, P), (8, P)],
    &[(5, P), (7, P)],
    &[(4, P), (6, N)],
    &[(5, P), (7, N)],
    &[(4, P), (8, N)],
    &[(3, P), (9, N)],
    &[(10, P)],
    &[(11, P), (13, P)],
    &[(12, P), (14, P), (16, P)],
    &[(11, P), (13, N)],
    &[(12, P), (14, N)],
    &[(1, P), (15, P)],
    &[(12, P), (16, N)],
];
static Z3: [&[(usize, Coeff)]; 15] = [
    &[(0, P), (4, P), (6, N)],
    &[(1, P)],
    &[(2, P), (3, P)],
    &[(2, P), (3, N)],
    &[(0, P), (4, N)],
    &[(5, P)],
    &[(0, P), (6, P)],
    &[(7, P)],
    &[(8, P), (12, P), (14, N)],
    &[(9, P)],
    &[(10, P), (13, P)],
    &[(11, P)],
    &[(8, P), (12, N)],
    &[(10, P), (13, N)],
    &[(8, P), (14, P)],
];
static W6_INNER: [&[(usize, Coeff)]; 16] = [
    &[(0, P), (13, P)],
    &[(1, P), (8, P)],
    &[(2, N), (7, P)],
    &[(3, P)],
    &[(4, P)],
    &[(5, P), (6, P)],
    &[(5, P), (6, N)],
    &[(2, P), (7, P)],
    &[(1, P), (8, N)],
    &[(9, P), (10, P)],
    &[(9, P), (10, N)],
    &[(11, P)],
    &[(12, P), (15, P)],
    &[(0, P), (13, N)],
    &[(14, P)],
    &[(12, P), (15, N)],
];
static W7: [&[(usize, Coeff)]; 32] = [
    &[(0, P)],
    &[(19, NJ), (27, P)],
    &[(6, P), (10, NJ)],
    &[(23, NJ), (28, N)],
    &[(3, P), (13, J)],
    &[(17, NJ), (25, P)],
    &[(5, N), (9, NJ)],
    &[(16, N), (22, NJ)],
    &[(2, P), (15, NJ)],
    &[(21, NJ), (29, N)],
    &[(8, P), (12, NJ)],
    &[(24, NJ), (26, N)],
    &[(4, N), (14, J)],
    &[(18, NJ), (31, N)],
    &[(7, P), (11, J)],
    &[(20, NJ), (30, N)],
    &[(1, P)],
    &[(20, J), (30, N)],
    &[(7, P), (11, NJ)],
    &[(18, J), (31, N)],
    &[(4, N), (14, NJ)],
    &[(24, J), (26, N)],
    &[(8, P), (12, J)],
    &[(21, J), (29, N)],
    &[(2, P), (15, J)],
    &[(16, N), (22, J)],
    &[(5, N), (9, J)],
    &[(17, J), (25, P)],
    &[(3, P), (13, NJ)],
    &[(23, J), (28, N)],
    &[(6, P), (10, J)],
    &[(19, J), (27, P)],
];

fn table(label: &str, rows: &[&[(usize, Coeff)]]) -> SparseFactor {
    SparseFactor::new(label, rows.iter().map(|r| r.to_vec()).collect())
        .expect("literal factor tables are well formed")
}

fn b(t: usize) -> SparseFactor {
    build_b(t).expect("t > 0")
}

fn one() -> SparseFactor {
    SparseFactor::identity(1)
}

/// W1 = [[I16, diag(0, I15)], [diag(0, I15), diag(1, -I15)]].
fn w1() -> SparseFactor {
    let mut rows = Vec::with_capacity(ADFT_SIZE);
    rows.push(vec![(0, P)]);
    for i in 1..16 {
        rows.push(vec![(i, P), (16 + i, P)]);
    }
    rows.push(vec![(16, P)]);
    for i in 1..16 {
        rows.push(vec![(i, P), (16 + i, N)]);
    }
    SparseFactor::new("W1", rows).expect("W1 layout")
}

/// Returns factor `W_k` of the 32-point approximation.
pub fn build_w(k: usize) -> Result<SparseFactor> {
    let label = format!("W{k}");
    let blocks = match k {
        0 => vec![b(17), b(15)],
        1 => return Ok(w1()),
        2 => vec![b(9), b(7), SparseFactor::identity(16)],
        3 => vec![b(5), one(), b(3), one(), b(3), b(3), table("Z1", &Z1)],
        4 => vec![b(3), b(2), b(4), b(4), b(2), table("Z2", &Z2)],
        5 => vec![b(2), SparseFactor::identity(15), table("Z3", &Z3)],
        6 => vec![SparseFactor::identity(16), table("W6 inner", &W6_INNER)],
        7 => return Ok(table("W7", &W7)),
        _ => return Err(Error::FactorIndex(k)),
    };
    let f = SparseFactor::block_diag(label, &blocks)?;
    debug_assert_eq!(f.size(), ADFT_SIZE);
    Ok(f)
}

/// Block sizes used to assemble each block-diagonal factor (W1 and W7 are
/// single blocks).
pub fn block_sizes(k: usize) -> Result<Vec<usize>> {
    Ok(match k {
        0 => vec![17, 15],
        1 => vec![32],
        2 => vec![9, 7, 16],
        3 => vec![5, 1, 3, 1, 3, 3, Z1.len()],
        4 => vec![3, 2, 4, 4, 2, Z2.len()],
        5 => vec![2, 15, Z3.len()],
        6 => vec![16, W6_INNER.len()],
        7 => vec![W7.len()],
        _ => return Err(Error::FactorIndex(k)),
    })
}

/// Real-coefficient-valued scale that best fits `approx` to `exact` in the
/// Frobenius norm: `Re(tr(approxᴴ·exact)) / ‖approx‖²`.
pub fn best_fit_scale(approx: &DenseMatrix, exact: &DenseMatrix) -> Result<f64> {
    if approx.size() != exact.size() {
        return Err(Error::DimensionMismatch(approx.size(), exact.size()));
    }
    let energy: f64 = approx.as_slice().iter().map(|v| v.norm_sqr()).sum();
    if energy == 0.0 {
        return Err(Error::ZeroMatrix);
    }
    let cross: f64 = approx
        .as_slice()
        .iter()
        .zip(exact.as_slice())
        .map(|(a, e)| (a.conj() * e).re)
        .sum();
    Ok(cross / energy)
}

/// The eight-factor chain plus its output scale.
#[derive(Debug, Clone)]
pub struct Adft32 {
    factors: Vec<SparseFactor>,
    output_scale: f64,
}

static STANDARD: Lazy<Adft32> = Lazy::new(|| {
    let factors = (0..FACTOR_COUNT)
        .map(|k| build_w(k).expect("k in range"))
        .collect();
    Adft32::from_factors(factors).expect("standard factors are valid")
});

impl Adft32 {
    /// The standard factorisation, with the scale fitted against the unitary
    /// 32-point DFT. Built once and shared.
    pub fn standard() -> &'static Adft32 {
        &STANDARD
    }

    /// Validates a factor chain and fits its output scale.
    ///
    /// Checks: eight 32×32 factors, 1..=3 terms per row, real coefficients in
    /// W0..W6, and a nonzero determinant for every factor.
    pub fn from_factors(factors: Vec<SparseFactor>) -> Result<Self> {
        if factors.len() != FACTOR_COUNT {
            return Err(Error::InvalidFactor {
                label: "chain".into(),
                reason: format!("expected {FACTOR_COUNT} factors, got {}", factors.len()),
            });
        }
        for (k, f) in factors.iter().enumerate() {
            let bad = |reason: String| Error::InvalidFactor {
                label: f.label().to_string(),
                reason,
            };
            if f.size() != ADFT_SIZE {
                return Err(bad(format!("size {} instead of {ADFT_SIZE}", f.size())));
            }
            if f.max_row_nnz() > MAX_ROW_TERMS {
                return Err(bad(format!("a row holds {} terms", f.max_row_nnz())));
            }
            if k < FACTOR_COUNT - 1 && !f.is_real() {
                return Err(bad("imaginary coefficient in a real stage".into()));
            }
            if f.to_dense().determinant().norm() == 0.0 {
                return Err(bad("singular factor".into()));
            }
        }
        let mut adft = Self {
            factors,
            output_scale: 1.0,
        };
        adft.output_scale = best_fit_scale(&adft.unscaled_matrix(), &dft_matrix(ADFT_SIZE)?)?;
        Ok(adft)
    }

    pub fn factors(&self) -> &[SparseFactor] {
        &self.factors
    }

    pub fn output_scale(&self) -> f64 {
        self.output_scale
    }

    /// Runs the factor chain W0 first, W7 last, with no scaling.
    pub fn apply_chain<T: Lane>(&self, x: &[CxLane<T>]) -> Result<Vec<CxLane<T>>> {
        let mut v = x.to_vec();
        for f in &self.factors {
            v = f.apply(&v)?;
        }
        Ok(v)
    }

    /// Scaled approximate transform of a length-32 vector.
    pub fn apply(&self, x: &[Complex64]) -> Result<Vec<Complex64>> {
        if x.len() != ADFT_SIZE {
            return Err(Error::LengthMismatch {
                expected: ADFT_SIZE,
                actual: x.len(),
            });
        }
        ensure_finite(x)?;
        let lanes: Vec<CxLane<f64>> = x.iter().map(|&v| v.into()).collect();
        let s = self.output_scale;
        Ok(self
            .apply_chain(&lanes)?
            .into_iter()
            .map(|v| Complex64::new(v.re * s, v.im * s))
            .collect())
    }

    /// Dense unscaled product by left-folding the dense factors.
    pub fn unscaled_matrix(&self) -> DenseMatrix {
        self.factors
            .iter()
            .fold(DenseMatrix::identity(ADFT_SIZE), |acc, f| {
                f.to_dense().matmul(&acc).expect("32x32 factors")
            })
    }

    /// `output_scale · W7···W0` as a dense matrix.
    pub fn matrix(&self) -> DenseMatrix {
        let mut m = self.unscaled_matrix().scaled(self.output_scale);
        m.normalization = self.output_scale;
        m
    }

    /// Unscaled product evaluated exactly over the Gaussian integers by
    /// pushing each identity column through the chain. Row-major `(re, im)`.
    pub fn gaussian_integer_product(&self) -> Vec<(i64, i64)> {
        let mut out = vec![(0i64, 0i64); ADFT_SIZE * ADFT_SIZE];
        for c in 0..ADFT_SIZE {
            let col: Vec<CxLane<i64>> = (0..ADFT_SIZE)
                .map(|i| CxLane::new(i64::from(i == c), 0))
                .collect();
            let y = self.apply_chain(&col).expect("length 32");
            for (r, v) in y.into_iter().enumerate() {
                out[r * ADFT_SIZE + c] = (v.re, v.im);
            }
        }
        out
    }

    /// Instrumented run of the chain on `x`: total counts plus the additions
    /// spent in each factor.
    pub fn count_operations(&self, x: &[Complex64]) -> Result<(OpCounts, Vec<u64>)> {
        if x.len() != ADFT_SIZE {
            return Err(Error::LengthMismatch {
                expected: ADFT_SIZE,
                actual: x.len(),
            });
        }
        let ctr = OpCounter::new();
        let mut v: Vec<CxLane<_>> = x
            .iter()
            .map(|s| CxLane::new(ctr.value(s.re), ctr.value(s.im)))
            .collect();
        let mut per_factor = Vec::with_capacity(FACTOR_COUNT);
        let mut before = 0;
        for f in &self.factors {
            v = f.apply(&v)?;
            let now = ctr.counts().adds;
            per_factor.push(now - before);
            before = now;
        }
        Ok((ctr.counts(), per_factor))
    }
}

/// Dense scaled 32-point approximate DFT matrix.
pub fn adft32_matrix() -> DenseMatrix {
    Adft32::standard().matrix()
}

/// Applies the standard scaled 32-point approximation.
pub fn adft32_apply(x: &[Complex64]) -> Result<Vec<Complex64>> {
    Adft32::standard().apply(x)
}
