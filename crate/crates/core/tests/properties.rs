use adft_core::adft32::Adft32;
use adft_core::radix32::{invvec, vec, Radix32Transform, Variant};
use adft_core::{dft_direct, fft_radix2, idft_direct, DenseMatrix};
use num_complex::Complex64;
use proptest::prelude::*;

fn cvec(len: usize) -> impl Strategy<Value = Vec<Complex64>> {
    prop::collection::vec((-1e3..1e3f64, -1e3..1e3f64), len).prop_map(|v| {
        v.into_iter()
            .map(|(re, im)| Complex64::new(re, im))
            .collect()
    })
}

fn norm(x: &[Complex64]) -> f64 {
    x.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
}

fn max_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn fft_matches_direct(x in cvec(32)) {
        let fast = fft_radix2(&x).unwrap();
        let slow = dft_direct(&x).unwrap();
        prop_assert!(max_diff(&fast, &slow) <= 1e-10 * norm(&x).max(1.0));
    }

    #[test]
    fn direct_round_trip(x in cvec(16)) {
        let back = idft_direct(&dft_direct(&x).unwrap()).unwrap();
        prop_assert!(max_diff(&back, &x) <= 1e-10 * norm(&x).max(1.0));
    }

    #[test]
    fn parseval(x in cvec(64)) {
        let y = fft_radix2(&x).unwrap();
        let (ex, ey) = (norm(&x), norm(&y));
        prop_assert!((ex - ey).abs() <= 1e-12 * ex.max(1.0));
    }

    #[test]
    fn adft32_is_linear(x in cvec(32), y in cvec(32), a in -4.0..4.0f64, b in -4.0..4.0f64) {
        let t = Adft32::standard();
        let mixed: Vec<_> = x.iter().zip(&y).map(|(p, q)| p * a + q * Complex64::new(0.0, b)).collect();
        let lhs = t.apply(&mixed).unwrap();
        let tx = t.apply(&x).unwrap();
        let ty = t.apply(&y).unwrap();
        let rhs: Vec<_> = tx.iter().zip(&ty).map(|(p, q)| p * a + q * Complex64::new(0.0, b)).collect();
        prop_assert!(max_diff(&lhs, &rhs) <= 1e-9 * (norm(&x) + norm(&y)).max(1.0));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn vec_invvec_round_trip(x in cvec(1024)) {
        prop_assert_eq!(vec(&invvec(&x).unwrap()), x);
    }

    #[test]
    fn radix32_matches_dense_matrix(x in cvec(1024), v in 0usize..4) {
        let variant = Variant::ALL[v];
        let t = Radix32Transform::new(variant.into()).unwrap();
        let y = t.apply(&x).unwrap();
        let k = 37 * (v + 1);
        // One row of the dense matrix, built from impulse responses.
        let row: Vec<Complex64> = (0..1024)
            .map(|c| {
                let mut d = vec![Complex64::new(0.0, 0.0); 1024];
                d[c] = Complex64::new(1.0, 0.0);
                t.apply(&d).unwrap()[k]
            })
            .collect();
        let dot: Complex64 = row.iter().zip(&x).map(|(r, s)| r * s).sum();
        prop_assert!((dot - y[k]).norm() <= 1e-9 * norm(&x).max(1.0));
    }
}

#[test]
fn dense_and_chain_agree_on_basis_vectors() {
    let t = Adft32::standard();
    let m: DenseMatrix = t.matrix();
    for c in 0..32 {
        let mut e = vec![Complex64::new(0.0, 0.0); 32];
        e[c] = Complex64::new(1.0, 0.0);
        let y = t.apply(&e).unwrap();
        assert!(max_diff(&y, &m.column(c)) < 1e-14);
    }
}
