//! CSV readers and writers for matrices, factors and analysis reports.
//!
//! Floats are written with 17 significant digits so that every value reads
//! back bit-for-bit.

use std::io::{Read, Write};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::analysis::{BeamPattern, RowErrorStats, SnrReport};
use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;
use crate::sparse::{Coeff, SparseFactor};

fn fmt_f(v: f64) -> String {
    format!("{v:.16e}")
}

#[derive(Debug, Serialize, Deserialize)]
struct EntryRecord {
    row: usize,
    col: usize,
    re: f64,
    im: f64,
}

/// Writes every entry of a dense matrix as `row,col,re,im`.
pub fn write_matrix<W: Write>(m: &DenseMatrix, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["row", "col", "re", "im"])?;
    for r in 0..m.size() {
        for c in 0..m.size() {
            let v = m[(r, c)];
            w.write_record([r.to_string(), c.to_string(), fmt_f(v.re), fmt_f(v.im)])?;
        }
    }
    w.flush()?;
    Ok(())
}

/// Writes the nonzero entries of a sparse factor as `row,col,re,im`.
pub fn write_factor<W: Write>(f: &SparseFactor, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["row", "col", "re", "im"])?;
    for (r, c, coeff) in f.entries() {
        let v = coeff.to_complex();
        w.write_record([r.to_string(), c.to_string(), fmt_f(v.re), fmt_f(v.im)])?;
    }
    w.flush()?;
    Ok(())
}

fn read_entries<R: Read>(input: R) -> Result<Vec<EntryRecord>> {
    let mut rdr = csv::Reader::from_reader(input);
    rdr.deserialize().map(|r| r.map_err(Error::from)).collect()
}

/// Reads a dense `n × n` matrix; absent entries are zero.
pub fn read_matrix<R: Read>(input: R, n: usize) -> Result<DenseMatrix> {
    let mut m = DenseMatrix::zeros(n);
    for e in read_entries(input)? {
        if e.row >= n || e.col >= n {
            return Err(Error::Parse(format!(
                "entry ({}, {}) outside {n}×{n}",
                e.row, e.col
            )));
        }
        m[(e.row, e.col)] = Complex64::new(e.re, e.im);
    }
    Ok(m)
}

pub fn read_factor<R: Read>(input: R, label: &str, n: usize) -> Result<SparseFactor> {
    let mut rows = vec![Vec::new(); n];
    for e in read_entries(input)? {
        if e.row >= n {
            return Err(Error::Parse(format!("row {} outside size {n}", e.row)));
        }
        let coeff = Coeff::from_complex(Complex64::new(e.re, e.im)).ok_or_else(|| {
            Error::Parse(format!("coefficient {}+{}j is not ±1 or ±j", e.re, e.im))
        })?;
        rows[e.row].push((e.col, coeff));
    }
    SparseFactor::new(label, rows)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorRecord {
    pub frequency: f64,
    pub lower: f64,
    pub q1: f64,
    pub q2: f64,
    pub q3: f64,
    pub upper: f64,
}

pub fn write_error_stats<W: Write>(s: &RowErrorStats, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["frequency", "lower", "q1", "q2", "q3", "upper"])?;
    for i in 0..s.frequencies.len() {
        w.write_record(
            [
                s.frequencies[i],
                s.lower_envelope[i],
                s.q1[i],
                s.q2[i],
                s.q3[i],
                s.upper_envelope[i],
            ]
            .map(fmt_f),
        )?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_error_stats<R: Read>(input: R) -> Result<Vec<ErrorRecord>> {
    let mut rdr = csv::Reader::from_reader(input);
    rdr.deserialize().map(|r| r.map_err(Error::from)).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SnrRecord {
    pub bin: usize,
    pub snr_exact_db: f64,
    pub snr_variant_db: f64,
    pub degradation_db: f64,
}

pub fn write_snr<W: Write>(r: &SnrReport, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["bin", "snr_exact_db", "snr_variant_db", "degradation_db"])?;
    for (j, &bin) in r.bins.iter().enumerate() {
        w.write_record([
            bin.to_string(),
            fmt_f(r.snr_exact_db[j]),
            fmt_f(r.snr_variant_db[j]),
            fmt_f(r.degradation_db[j]),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_snr<R: Read>(input: R) -> Result<Vec<SnrRecord>> {
    let mut rdr = csv::Reader::from_reader(input);
    rdr.deserialize().map(|r| r.map_err(Error::from)).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BeamRecord {
    pub angle_rad: f64,
    pub gain_re: f64,
    pub gain_im: f64,
    pub gain_abs: f64,
}

pub fn write_beam<W: Write>(b: &BeamPattern, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["angle_rad", "gain_re", "gain_im", "gain_abs"])?;
    for (a, g) in b.angles.iter().zip(&b.gain) {
        w.write_record([*a, g.re, g.im, g.norm()].map(fmt_f))?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_beam<R: Read>(input: R) -> Result<Vec<BeamRecord>> {
    let mut rdr = csv::Reader::from_reader(input);
    rdr.deserialize().map(|r| r.map_err(Error::from)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_round_trip_is_exact() {
        let m = crate::dft::dft_matrix(8).unwrap();
        let mut buf = Vec::new();
        write_matrix(&m, &mut buf).unwrap();
        let back = read_matrix(buf.as_slice(), 8).unwrap();
        assert_eq!(back.as_slice(), m.as_slice());
    }

    #[test]
    fn factor_round_trip() {
        let f = crate::sparse::build_b(5).unwrap();
        let mut buf = Vec::new();
        write_factor(&f, &mut buf).unwrap();
        let back = read_factor(buf.as_slice(), "B5", 5).unwrap();
        assert_eq!(back.rows(), f.rows());
    }

    #[test]
    fn rejects_foreign_coefficients() {
        let csv = "row,col,re,im\n0,0,0.5,0\n";
        assert!(read_factor(csv.as_bytes(), "X", 1).is_err());
        let csv = "row,col,re,im\n3,0,1,0\n";
        assert!(read_matrix(csv.as_bytes(), 2).is_err());
        assert!(read_matrix("row,col\n0,x\n".as_bytes(), 2).is_err());
    }
}
