//! Exact DFT references: the dense unitary matrix, the direct O(N²) sum, and
//! a radix-2 decimation-in-time FFT.
//!
//! All transforms use the unitary convention
//! `X[k] = (1/sqrt(N)) Σ x[n]·ω_N^{nk}` with `ω_N = exp(-j2π/N)`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;

/// `ω_n^e` with the exponent reduced modulo `n` before evaluating sin/cos.
pub fn root_of_unity(n: usize, exponent: usize) -> Complex64 {
    let e = exponent % n;
    Complex64::from_polar(1.0, -2.0 * PI * e as f64 / n as f64)
}

fn roots_table(n: usize) -> Vec<Complex64> {
    (0..n).map(|e| root_of_unity(n, e)).collect()
}

pub(crate) fn ensure_finite(x: &[Complex64]) -> Result<()> {
    if x.iter().all(|v| v.re.is_finite() && v.im.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite)
    }
}

/// The unitary `n × n` DFT matrix, entry `(k, m) = ω_n^{km} / sqrt(n)`.
pub fn dft_matrix(n: usize) -> Result<DenseMatrix> {
    if n == 0 {
        return Err(Error::ZeroSize);
    }
    let roots = roots_table(n);
    let s = 1.0 / (n as f64).sqrt();
    let data = (0..n)
        .flat_map(|k| {
            let roots = &roots;
            (0..n).map(move |m| roots[(k * m) % n] * s)
        })
        .collect();
    let mut m = DenseMatrix::from_row_major(n, data)?;
    m.normalization = s;
    Ok(m)
}

fn direct(x: &[Complex64], inverse: bool) -> Result<Vec<Complex64>> {
    let n = x.len();
    if n == 0 {
        return Err(Error::ZeroSize);
    }
    ensure_finite(x)?;
    let roots = roots_table(n);
    let s = 1.0 / (n as f64).sqrt();
    Ok((0..n)
        .map(|k| {
            let acc: Complex64 = x
                .iter()
                .enumerate()
                .map(|(i, &v)| {
                    let w = roots[(i * k) % n];
                    v * if inverse { w.conj() } else { w }
                })
                .sum();
            acc * s
        })
        .collect())
}

/// Direct evaluation of the forward DFT. This is the oracle every fast path
/// is checked against.
pub fn dft_direct(x: &[Complex64]) -> Result<Vec<Complex64>> {
    direct(x, false)
}

/// Direct evaluation of the inverse DFT.
pub fn idft_direct(x: &[Complex64]) -> Result<Vec<Complex64>> {
    direct(x, true)
}

/// Unnormalised in-place iterative radix-2 DIT FFT. `buf.len()` must be a
/// power of two.
pub(crate) fn fft_in_place(buf: &mut [Complex64], inverse: bool) {
    let n = buf.len();
    if n <= 1 {
        return;
    }
    let bits = n.trailing_zeros();
    for i in 0..n {
        let j = i.reverse_bits() >> (usize::BITS - bits);
        if i < j {
            buf.swap(i, j);
        }
    }
    let roots = roots_table(n);
    let mut len = 2;
    while len <= n {
        let half = len / 2;
        let stride = n / len;
        for start in (0..n).step_by(len) {
            for k in 0..half {
                let w = roots[k * stride];
                let w = if inverse { w.conj() } else { w };
                let a = buf[start + k];
                let b = buf[start + k + half] * w;
                buf[start + k] = a + b;
                buf[start + k + half] = a - b;
            }
        }
        len <<= 1;
    }
}

fn radix2(x: &[Complex64], inverse: bool) -> Result<Vec<Complex64>> {
    let n = x.len();
    if n == 0 {
        return Err(Error::ZeroSize);
    }
    if !n.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(n));
    }
    ensure_finite(x)?;
    let mut buf = x.to_vec();
    fft_in_place(&mut buf, inverse);
    let s = 1.0 / (n as f64).sqrt();
    buf.iter_mut().for_each(|v| *v *= s);
    Ok(buf)
}

/// Unitary radix-2 decimation-in-time FFT.
pub fn fft_radix2(x: &[Complex64]) -> Result<Vec<Complex64>> {
    radix2(x, false)
}

/// Unitary inverse of [`fft_radix2`].
pub fn ifft_radix2(x: &[Complex64]) -> Result<Vec<Complex64>> {
    radix2(x, true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn close(a: &[Complex64], b: &[Complex64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).norm() <= tol)
    }

    #[test]
    fn dft_matrix_small_sizes() {
        let m1 = dft_matrix(1).unwrap();
        assert_eq!(m1[(0, 0)], c(1.0, 0.0));

        let m2 = dft_matrix(2).unwrap();
        let h = 1.0 / 2f64.sqrt();
        let expected = [c(h, 0.0), c(h, 0.0), c(h, 0.0), c(-h, 0.0)];
        assert!(close(m2.as_slice(), &expected, 1e-15));
        assert!(matches!(dft_matrix(0), Err(Error::ZeroSize)));
    }

    #[test]
    fn dft_matrix_is_unitary() {
        for n in [2, 4, 8, 16, 32] {
            assert!(dft_matrix(n).unwrap().unitarity_error() < 1e-10, "n = {n}");
        }
    }

    #[test]
    fn impulse_and_dc() {
        let n = 32;
        let mut delta = vec![c(0.0, 0.0); n];
        delta[0] = c(1.0, 0.0);
        let x = dft_direct(&delta).unwrap();
        let s = 1.0 / (n as f64).sqrt();
        assert!(x.iter().all(|v| (v - c(s, 0.0)).norm() < 1e-15));

        let ones = vec![c(1.0, 0.0); n];
        let x = dft_direct(&ones).unwrap();
        assert!((x[0] - c((n as f64).sqrt(), 0.0)).norm() < 1e-12);
        assert!(x[1..].iter().all(|v| v.norm() < 1e-12));
    }

    #[test]
    fn complex_exponential_lands_in_one_bin() {
        let n = 32;
        let x: Vec<_> = (0..n)
            .map(|i| Complex64::from_polar(1.0, 2.0 * PI * (i * 5) as f64 / n as f64))
            .collect();
        let spec = dft_direct(&x).unwrap();
        assert!((spec[5].norm() - (n as f64).sqrt()).abs() < 1e-10);
        for (k, v) in spec.iter().enumerate() {
            if k != 5 {
                assert!(v.norm() <= 1e-10, "bin {k}: {}", v.norm());
            }
        }
    }

    #[test]
    fn inverse_of_dc() {
        let n = 16;
        let mut big = vec![c(0.0, 0.0); n];
        big[0] = c((n as f64).sqrt(), 0.0);
        let x = idft_direct(&big).unwrap();
        assert!(x.iter().all(|v| (v - c(1.0, 0.0)).norm() < 1e-12));
    }

    #[test]
    fn ramp_round_trip() {
        let ramp: Vec<_> = (0..32).map(|i| c(i as f64, 0.0)).collect();
        let back = idft_direct(&dft_direct(&ramp).unwrap()).unwrap();
        assert!(close(&back, &ramp, 1e-10 * 31.0));
    }

    #[test]
    fn fft_two_point() {
        let y = fft_radix2(&[c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        let h = 1.0 / 2f64.sqrt();
        assert!(close(&y, &[c(h, 0.0), c(h, 0.0)], 1e-15));
    }

    #[test]
    fn fft_rejects_bad_lengths() {
        assert!(matches!(
            fft_radix2(&[c(1.0, 0.0); 12]),
            Err(Error::NotPowerOfTwo(12))
        ));
        assert!(matches!(fft_radix2(&[]), Err(Error::ZeroSize)));
        assert!(matches!(
            fft_radix2(&[c(f64::NAN, 0.0), c(0.0, 0.0)]),
            Err(Error::NonFinite)
        ));
    }

    #[test]
    fn fft_inverse_round_trip() {
        let x: Vec<_> = (0..64)
            .map(|i| c((i as f64).sin(), (i as f64 * 0.3).cos()))
            .collect();
        let back = ifft_radix2(&fft_radix2(&x).unwrap()).unwrap();
        assert!(close(&back, &x, 1e-12));
    }
}
