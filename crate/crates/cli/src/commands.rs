use anyhow::Context;
use clap::ValueEnum;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use adft_core::adft32::{block_sizes, build_w, Adft32, FACTOR_COUNT, MAX_ROW_TERMS};
use adft_core::analysis::{
    beam_patterns, default_angle_grid, filterbank_error, snr_monte_carlo, worst_side_lobe,
    FrequencyGrid,
};
use adft_core::complexity::{
    circuit_complexity, count_instrumented_with, count_sequential, reference, CostModel,
};
use adft_core::io;
use adft_core::radix32::{invvec, transform_matrix, twiddle_matrix, vec, Variant};
use adft_core::sparse::{Coeff, SparseFactor};
use adft_core::{dft_direct, dft_matrix, fft_radix2, transform_1024};

use crate::config::{Format, RunConfig};
use crate::output::{write_atomic, write_json, write_json_lines};
use crate::Failure;

fn announce(path: &std::path::Path) {
    println!("wrote {}", path.display());
}

pub fn gen_matrix(cfg: &RunConfig, factors: bool, dense: bool) -> Result<(), Failure> {
    let dir = &cfg.out_dir;
    if factors {
        if cfg.variant == Variant::Exact {
            let m = dft_matrix(32).map_err(anyhow::Error::from)?;
            announce(&write_atomic(dir, "dft32.csv", |w| {
                Ok(io::write_matrix(&m, w)?)
            })?);
        } else {
            for f in Adft32::standard().factors() {
                let name = format!("{}.csv", f.label());
                announce(&write_atomic(dir, &name, |w| Ok(io::write_factor(f, w)?))?);
            }
        }
    }
    if dense {
        let m = transform_matrix(cfg.variant.into()).map_err(anyhow::Error::from)?;
        let name = format!("{}_1024.csv", cfg.variant);
        announce(&write_atomic(dir, &name, |w| Ok(io::write_matrix(&m, w)?))?);
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CheckGroup {
    /// Fast paths against the direct DFT.
    Oracle,
    /// Instrumented operation counts of the 32-point approximation.
    Counts,
    /// Sequential operation counts for every variant.
    Complexity,
    /// Circuit counts for every variant.
    Circuits,
    /// Reshaping, twiddle counts, block sizes and integer closure.
    Structure,
}

struct Check {
    name: String,
    pass: bool,
    detail: String,
}

fn check(name: &str, pass: bool, detail: impl Into<String>) -> Check {
    Check {
        name: name.to_string(),
        pass,
        detail: detail.into(),
    }
}

/// W7 with one extra coefficient in the first row that has room for it.
fn corrupted_w7() -> SparseFactor {
    let w7 = build_w(7).expect("W7");
    let mut rows = w7.rows().to_vec();
    let r = rows
        .iter()
        .position(|row| row.len() < MAX_ROW_TERMS)
        .expect("a row below the term limit");
    let col = (0..32)
        .find(|c| rows[r].iter().all(|(used, _)| used != c))
        .expect("a free column");
    rows[r].push((col, Coeff::PlusOne));
    SparseFactor::new("W7", rows).expect("valid layout")
}

fn oracle_checks(out: &mut Vec<Check>) {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut random = |n: usize| -> Vec<Complex64> {
        (0..n)
            .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect()
    };
    let rel = |a: &[Complex64], b: &[Complex64]| {
        let num: f64 = a.iter().zip(b).map(|(x, y)| (x - y).norm_sqr()).sum();
        let den: f64 = b.iter().map(|y| y.norm_sqr()).sum();
        (num / den).sqrt()
    };

    let mut worst: f64 = 0.0;
    for _ in 0..10 {
        let x = random(32);
        worst = worst.max(rel(&fft_radix2(&x).unwrap(), &dft_direct(&x).unwrap()));
    }
    out.push(check(
        "oracle fft32",
        worst < 1e-12,
        format!("relative error {worst:.2e}"),
    ));

    let mut worst: f64 = 0.0;
    for _ in 0..5 {
        let x = random(1024);
        let fast = transform_1024(&x, Variant::Exact.into()).unwrap();
        worst = worst.max(rel(&fast, &dft_direct(&x).unwrap()));
    }
    out.push(check(
        "oracle exact 1024",
        worst < 1e-9,
        format!("relative error {worst:.2e}"),
    ));
}

fn count_checks(adft: &Adft32, out: &mut Vec<Check>) {
    match count_instrumented_with(adft, &[Complex64::new(0.0, 0.0); 32]) {
        Ok(c) => {
            let expected = reference::ADFT32_FACTOR_ADDS.to_vec();
            out.push(check(
                "adft32 adds",
                c.adds == reference::ADFT32_ADDS && c.mults == 0,
                format!("{} adds, {} mults", c.adds, c.mults),
            ));
            out.push(check(
                "adft32 per-factor adds",
                c.per_factor_adds == expected,
                format!("{:?}", c.per_factor_adds),
            ));
        }
        Err(e) => out.push(check("adft32 adds", false, e.to_string())),
    }
}

fn complexity_checks(out: &mut Vec<Check>) {
    for (v, want) in [
        (Variant::Alg1, reference::ALG1),
        (Variant::Alg2, reference::ALG2),
        (Variant::Alg3, reference::ALG3),
        (Variant::Exact, reference::RADIX2_1024),
    ] {
        let r = count_sequential(v.into(), CostModel::PAPER);
        out.push(check(
            &format!("sequential {v}"),
            (r.real_mults, r.real_adds) == (want.mults, want.adds),
            format!("({}, {})", r.real_mults, r.real_adds),
        ));
    }
}

fn circuit_checks(out: &mut Vec<Check>) {
    for (v, want) in [
        (Variant::Alg1, (96, 856)),
        (Variant::Alg2, (174, 906)),
        (Variant::Alg3, (174, 906)),
        (Variant::Exact, (252, 956)),
    ] {
        let r = circuit_complexity(v.into());
        let got = (r.multiplier_circuits, r.adder_circuits);
        let mut detail = format!("{got:?}");
        if r.disagrees_with_table() {
            detail.push_str(&format!(", table lists {:?}", r.paper_table_values));
        }
        out.push(check(&format!("circuits {v}"), got == want, detail));
    }
}

fn structure_checks(adft: &Adft32, out: &mut Vec<Check>) {
    let x: Vec<Complex64> = (0..1024)
        .map(|i| Complex64::new(i as f64, -(i as f64)))
        .collect();
    let round_trip = invvec(&x).map(|m| vec(&m) == x).unwrap_or(false);
    out.push(check("vec/invvec round trip", round_trip, ""));

    let tw = twiddle_matrix();
    out.push(check(
        "twiddle counts",
        (tw.trivial_count(), tw.nontrivial_count()) == (63, 961),
        format!(
            "{} trivial, {} nontrivial",
            tw.trivial_count(),
            tw.nontrivial_count()
        ),
    ));

    let sums: Vec<usize> = (0..FACTOR_COUNT)
        .map(|k| block_sizes(k).map(|b| b.iter().sum()).unwrap_or(0))
        .collect();
    out.push(check(
        "block sizes",
        sums.iter().all(|&s| s == 32),
        format!("{sums:?}"),
    ));

    let ints = adft.gaussian_integer_product();
    let closed = ints
        .iter()
        .all(|&(re, im)| re.abs() <= 1 && im.abs() <= 1 && (re, im) != (0, 0));
    out.push(check(
        "integer closure",
        closed,
        "entries in {±1, ±j, ±1±j}",
    ));
}

pub fn verify(only: &[CheckGroup], corrupt_w7: bool) -> Result<(), Failure> {
    let selected = |g: CheckGroup| only.is_empty() || only.contains(&g);
    let adft = if corrupt_w7 {
        let mut factors: Vec<SparseFactor> = Adft32::standard().factors().to_vec();
        factors[7] = corrupted_w7();
        Adft32::from_factors(factors).context("corrupted chain")?
    } else {
        Adft32::standard().clone()
    };

    let mut checks = Vec::new();
    if selected(CheckGroup::Oracle) {
        oracle_checks(&mut checks);
    }
    if selected(CheckGroup::Counts) {
        count_checks(&adft, &mut checks);
    }
    if selected(CheckGroup::Complexity) {
        complexity_checks(&mut checks);
    }
    if selected(CheckGroup::Circuits) {
        circuit_checks(&mut checks);
    }
    if selected(CheckGroup::Structure) {
        structure_checks(&adft, &mut checks);
    }

    for c in &checks {
        let status = if c.pass { "PASS" } else { "FAIL" };
        if c.detail.is_empty() {
            println!("{status} {}", c.name);
        } else {
            println!("{status} {}: {}", c.name, c.detail);
        }
    }
    let failed: Vec<String> = checks
        .iter()
        .filter(|c| !c.pass)
        .map(|c| format!("{}: {}", c.name, c.detail))
        .collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Invariant(failed))
    }
}

pub fn complexity(cfg: &RunConfig, count_trivial: bool) -> Result<(), Failure> {
    let model = CostModel {
        complex_mult_scheme: cfg.cost_model,
        count_trivial_twiddles: count_trivial,
    };
    let reports: Vec<_> = Variant::ALL
        .iter()
        .map(|&v| count_sequential(v.into(), model))
        .collect();
    let circuits: Vec<_> = Variant::ALL
        .iter()
        .map(|&v| circuit_complexity(v.into()))
        .collect();
    for r in &reports {
        println!("{}", serde_json::to_string(r).map_err(anyhow::Error::from)?);
    }
    let dir = &cfg.out_dir;
    let name = format!("complexity_{}.jsonl", model.complex_mult_scheme);
    announce(&write_json_lines(dir, &name, &reports)?);
    announce(&write_json_lines(dir, "circuits.jsonl", &circuits)?);
    Ok(())
}

#[derive(Serialize)]
struct FilterbankSummary {
    variant: Variant,
    grid_size: usize,
    min_db: f64,
    mean_db: f64,
    max_db: f64,
    worst_side_lobe_db: f64,
    worst_side_lobe_row: usize,
}

fn error_records(s: &adft_core::RowErrorStats) -> Vec<io::ErrorRecord> {
    (0..s.frequencies.len())
        .map(|i| io::ErrorRecord {
            frequency: s.frequencies[i],
            lower: s.lower_envelope[i],
            q1: s.q1[i],
            q2: s.q2[i],
            q3: s.q3[i],
            upper: s.upper_envelope[i],
        })
        .collect()
}

pub fn filterbank(cfg: &RunConfig) -> Result<(), Failure> {
    let grid = FrequencyGrid::uniform(cfg.grid_size)
        .map_err(|e| Failure::Usage(anyhow::anyhow!("--grid: {e}")))?;
    let spec = cfg.variant.into();
    let stats = filterbank_error(spec, &grid).map_err(anyhow::Error::from)?;
    let lobes = worst_side_lobe(spec, &grid).map_err(anyhow::Error::from)?;
    let dir = &cfg.out_dir;
    let stem = format!("filterbank_{}", cfg.variant);
    let path = match cfg.format {
        Format::Csv => write_atomic(dir, &format!("{stem}.csv"), |w| {
            Ok(io::write_error_stats(&stats, w)?)
        })?,
        Format::Json => write_json(dir, &format!("{stem}.json"), &error_records(&stats))?,
    };
    announce(&path);
    let summary = FilterbankSummary {
        variant: cfg.variant,
        grid_size: cfg.grid_size,
        min_db: stats.min_db,
        mean_db: stats.mean_db,
        max_db: stats.max_db,
        worst_side_lobe_db: lobes.worst_db,
        worst_side_lobe_row: lobes.worst_row,
    };
    announce(&write_json(dir, &format!("{stem}_summary.json"), &summary)?);
    println!(
        "{}",
        serde_json::to_string(&summary).map_err(anyhow::Error::from)?
    );
    Ok(())
}

#[derive(Serialize)]
struct SnrSummary {
    variant: Variant,
    bins: usize,
    replicates: usize,
    seed: u64,
    noise_variance: f64,
    worst_degradation_db: f64,
    mean_degradation_db: f64,
    min_variant_db: f64,
}

pub fn snr(cfg: &RunConfig, bins: &[usize], noise_var: f64) -> Result<(), Failure> {
    use adft_core::Error;
    let report = snr_monte_carlo(
        cfg.variant.into(),
        bins,
        cfg.replicates,
        noise_var,
        cfg.seed,
    )
    .map_err(|e| match e {
        Error::EmptyBins
        | Error::BinOutOfRange { .. }
        | Error::TooFewReplicates(_)
        | Error::InvalidNoiseVariance(_) => Failure::Usage(e.into()),
        other => Failure::Runtime(other.into()),
    })?;
    let dir = &cfg.out_dir;
    let stem = format!("snr_{}", cfg.variant);
    let path = match cfg.format {
        Format::Csv => write_atomic(dir, &format!("{stem}.csv"), |w| {
            Ok(io::write_snr(&report, w)?)
        })?,
        Format::Json => {
            let records: Vec<io::SnrRecord> = (0..report.bins.len())
                .map(|j| io::SnrRecord {
                    bin: report.bins[j],
                    snr_exact_db: report.snr_exact_db[j],
                    snr_variant_db: report.snr_variant_db[j],
                    degradation_db: report.degradation_db[j],
                })
                .collect();
            write_json(dir, &format!("{stem}.json"), &records)?
        }
    };
    announce(&path);
    let summary = SnrSummary {
        variant: cfg.variant,
        bins: report.bins.len(),
        replicates: report.replicates,
        seed: report.seed,
        noise_variance: report.noise_variance,
        worst_degradation_db: report.worst_degradation_db,
        mean_degradation_db: report.mean_degradation_db,
        min_variant_db: report.min_variant_db,
    };
    println!(
        "{}",
        serde_json::to_string(&summary).map_err(anyhow::Error::from)?
    );
    Ok(())
}

pub fn beams(cfg: &RunConfig, bins: &[usize], angles: usize) -> Result<(), Failure> {
    if angles == 0 {
        return Err(Failure::Usage(anyhow::anyhow!("--angles must be positive")));
    }
    let grid = default_angle_grid(angles);
    let patterns = beam_patterns(cfg.variant.into(), bins, &grid).map_err(anyhow::Error::from)?;
    for p in &patterns {
        let stem = format!("beam_{}_{}", cfg.variant, p.bin);
        let path = match cfg.format {
            Format::Csv => write_atomic(&cfg.out_dir, &format!("{stem}.csv"), |w| {
                Ok(io::write_beam(p, w)?)
            })?,
            Format::Json => {
                let records: Vec<io::BeamRecord> = p
                    .angles
                    .iter()
                    .zip(&p.gain)
                    .map(|(&a, g)| io::BeamRecord {
                        angle_rad: a,
                        gain_re: g.re,
                        gain_im: g.im,
                        gain_abs: g.norm(),
                    })
                    .collect();
                write_json(&cfg.out_dir, &format!("{stem}.json"), &records)?
            }
        };
        announce(&path);
    }
    Ok(())
}
