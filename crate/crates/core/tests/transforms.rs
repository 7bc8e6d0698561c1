use adft_core::adft32::{best_fit_scale, build_w, Adft32};
use adft_core::analysis::{filterbank_error_matrices, FrequencyGrid};
use adft_core::radix32::{transform_matrix, Variant};
use adft_core::sparse::{build_b, SparseFactor};
use adft_core::{adft32_apply, dft_matrix, transform_1024, Error};
use approx::assert_relative_eq;
use num_complex::Complex64;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn adft32_dc_and_impulse() {
    let s = Adft32::standard().output_scale();
    assert_relative_eq!(s, 0.1487770266882631, epsilon = 1e-12);

    let y = adft32_apply(&[c(1.0, 0.0); 32]).unwrap();
    assert_relative_eq!(y[0].re, 32.0 * s, epsilon = 1e-12);
    assert!(y[1..].iter().all(|v| v.norm() < 1e-12));

    let mut d = vec![c(0.0, 0.0); 32];
    d[0] = c(1.0, 0.0);
    let y = adft32_apply(&d).unwrap();
    assert!(y.iter().all(|v| (v - c(s, 0.0)).norm() < 1e-12));
}

#[test]
fn adft32_rejects_bad_input() {
    assert!(matches!(
        adft32_apply(&[c(0.0, 0.0); 31]),
        Err(Error::LengthMismatch {
            expected: 32,
            actual: 31
        })
    ));
    let mut x = vec![c(0.0, 0.0); 32];
    x[4] = c(f64::INFINITY, 0.0);
    assert!(matches!(adft32_apply(&x), Err(Error::NonFinite)));
}

#[test]
fn product_is_symmetric_and_tracks_dft_bins() {
    let t = Adft32::standard();
    let p = t.unscaled_matrix();
    assert_eq!(p.max_abs_diff(&p.transpose()).unwrap(), 0.0);

    // Every row correlates best with the DFT row of the same index.
    let f = dft_matrix(32).unwrap();
    for r in 0..32 {
        let best = (0..32)
            .max_by(|&a, &b| {
                let da: Complex64 = p
                    .row(r)
                    .iter()
                    .zip(f.row(a))
                    .map(|(x, y)| x * y.conj())
                    .sum();
                let db: Complex64 = p
                    .row(r)
                    .iter()
                    .zip(f.row(b))
                    .map(|(x, y)| x * y.conj())
                    .sum();
                da.norm().total_cmp(&db.norm())
            })
            .unwrap();
        assert_eq!(best, r);
    }
}

#[test]
fn worst_row_error_of_the_32_point_kernel() {
    let grid = FrequencyGrid::uniform(8192).unwrap();
    let s = filterbank_error_matrices(
        &Adft32::standard().matrix(),
        &dft_matrix(32).unwrap(),
        &grid,
    )
    .unwrap();
    assert!((s.max_db - -12.09).abs() < 0.01, "{}", s.max_db);
}

#[test]
fn factor_determinants() {
    let expected = [32768.0, 32768.0, 128.0, 128.0, 18432.0, 72.0, 64.0, 32768.0];
    for (k, &d) in expected.iter().enumerate() {
        let det = build_w(k).unwrap().to_dense().determinant().norm();
        assert_relative_eq!(det, d, max_relative = 1e-9);
    }
}

#[test]
fn b_blocks_square_to_twice_identity() {
    for t in 2..=17 {
        let b = build_b(t).unwrap().to_dense();
        let sq = b.matmul(&b).unwrap();
        for i in 0..t {
            for j in 0..t {
                let centre = t % 2 == 1 && i == t / 2;
                let want = if i != j {
                    0.0
                } else if centre {
                    1.0
                } else {
                    2.0
                };
                assert_eq!(sq[(i, j)], c(want, 0.0), "B{t} ({i}, {j})");
            }
        }
    }
}

#[test]
fn from_factors_rejects_complex_early_stage() {
    let mut factors: Vec<SparseFactor> = (0..8).map(|k| build_w(k).unwrap()).collect();
    factors.swap(0, 7);
    assert!(matches!(
        Adft32::from_factors(factors),
        Err(Error::InvalidFactor { .. })
    ));
    let short: Vec<SparseFactor> = (0..7).map(|k| build_w(k).unwrap()).collect();
    assert!(Adft32::from_factors(short).is_err());
}

#[test]
fn best_fit_scale_is_the_least_squares_optimum() {
    let a = Adft32::standard().unscaled_matrix();
    let f = dft_matrix(32).unwrap();
    let s = best_fit_scale(&a, &f).unwrap();
    let err = |k: f64| {
        a.scaled(k)
            .as_slice()
            .iter()
            .zip(f.as_slice())
            .map(|(x, y)| (x - y).norm_sqr())
            .sum::<f64>()
    };
    assert!(err(s) < err(s * 1.001) && err(s) < err(s * 0.999));
}

#[test]
fn exact_1024_is_the_unitary_dft() {
    let x: Vec<_> = (0..1024).map(|n| c((n as f64 * 0.01).sin(), 0.0)).collect();
    let y = transform_1024(&x, Variant::Exact.into()).unwrap();
    let e: f64 = x.iter().map(|v| v.norm_sqr()).sum();
    let ey: f64 = y.iter().map(|v| v.norm_sqr()).sum();
    assert_relative_eq!(e, ey, max_relative = 1e-12);

    // Single tone at bin 5 lands in bin 5 only.
    let tone: Vec<_> = (0..1024)
        .map(|n| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * (5 * n) as f64 / 1024.0))
        .collect();
    let y = transform_1024(&tone, Variant::Exact.into()).unwrap();
    assert_relative_eq!(y[5].norm(), 32.0, epsilon = 1e-9);
    assert!(y.iter().enumerate().all(|(k, v)| k == 5 || v.norm() < 1e-9));
}

#[test]
fn alg3_is_the_transpose_of_alg2() {
    let t2 = transform_matrix(Variant::Alg2.into()).unwrap();
    let t3 = transform_matrix(Variant::Alg3.into()).unwrap();
    assert!(t3.max_abs_diff(&t2.transpose()).unwrap() < 1e-12);
}

#[test]
fn approximations_keep_dc_exact() {
    let ones = vec![c(1.0, 0.0); 1024];
    let s = Adft32::standard().output_scale();
    for (v, dc) in [
        (Variant::Alg1, (32.0 * s).powi(2)),
        (Variant::Alg2, 32.0 * s * 32f64.sqrt()),
    ] {
        let y = transform_1024(&ones, v.into()).unwrap();
        assert_relative_eq!(y[0].re, dc, max_relative = 1e-12);
        assert!(y[1..].iter().all(|z| z.norm() < 1e-9), "{v}");
    }
}
