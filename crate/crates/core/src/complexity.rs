//! Real-arithmetic cost accounting for the 32- and 1024-point transforms and
//! the time-multiplexed circuit model.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::adft32::Adft32;
use crate::error::{Error, Result};
use crate::radix32::{twiddle_matrix, TransformSpec, Variant, RADIX};

/// How one complex-by-complex product is charged.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ComplexMultScheme {
    /// 3 real multiplications, 5 real additions.
    #[serde(rename = "Gauss_3M5A")]
    Gauss3M5A,
    /// 4 real multiplications, 2 real additions.
    #[serde(rename = "Direct_4M2A")]
    Direct4M2A,
    /// 3 real multiplications, 3 real additions.
    #[serde(rename = "Paper_3M3A")]
    Paper3M3A,
}

impl ComplexMultScheme {
    /// `(mults, adds)` for one general complex product.
    pub fn cost(self) -> Cost {
        match self {
            ComplexMultScheme::Gauss3M5A => Cost::new(3, 5),
            ComplexMultScheme::Direct4M2A => Cost::new(4, 2),
            ComplexMultScheme::Paper3M3A => Cost::new(3, 3),
        }
    }
}

impl FromStr for ComplexMultScheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "gauss" | "gauss_3m5a" => Ok(ComplexMultScheme::Gauss3M5A),
            "direct" | "direct_4m2a" => Ok(ComplexMultScheme::Direct4M2A),
            "paper" | "paper_3m3a" => Ok(ComplexMultScheme::Paper3M3A),
            other => Err(Error::Parse(format!("unknown cost model `{other}`"))),
        }
    }
}

impl fmt::Display for ComplexMultScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ComplexMultScheme::Gauss3M5A => "Gauss_3M5A",
            ComplexMultScheme::Direct4M2A => "Direct_4M2A",
            ComplexMultScheme::Paper3M3A => "Paper_3M3A",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CostModel {
    pub complex_mult_scheme: ComplexMultScheme,
    /// Charge multiplications by 1 and -j at full price.
    pub count_trivial_twiddles: bool,
}

impl CostModel {
    pub const PAPER: CostModel = CostModel {
        complex_mult_scheme: ComplexMultScheme::Paper3M3A,
        count_trivial_twiddles: false,
    };
    pub const GAUSS: CostModel = CostModel {
        complex_mult_scheme: ComplexMultScheme::Gauss3M5A,
        count_trivial_twiddles: false,
    };
    pub const DIRECT: CostModel = CostModel {
        complex_mult_scheme: ComplexMultScheme::Direct4M2A,
        count_trivial_twiddles: false,
    };
}

impl Default for CostModel {
    fn default() -> Self {
        Self::PAPER
    }
}

/// A pair of real operation counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Cost {
    pub mults: u64,
    pub adds: u64,
}

impl Cost {
    pub const fn new(mults: u64, adds: u64) -> Self {
        Self { mults, adds }
    }

    pub const fn times(self, k: u64) -> Self {
        Self::new(self.mults * k, self.adds * k)
    }
}

impl std::ops::Add for Cost {
    type Output = Cost;
    fn add(self, rhs: Cost) -> Cost {
        Cost::new(self.mults + rhs.mults, self.adds + rhs.adds)
    }
}

impl std::iter::Sum for Cost {
    fn sum<I: Iterator<Item = Cost>>(iter: I) -> Cost {
        iter.fold(Cost::default(), |a, b| a + b)
    }
}

/// Published reference counts, `(mults, adds)`.
pub mod reference {
    use super::Cost;

    pub const RADIX2_1024: Cost = Cost::new(10248, 30728);
    pub const SPLIT_RADIX_1024: Cost = Cost::new(7172, 27652);
    pub const WINOGRAD_1024: Cost = Cost::new(10248, 30728);
    pub const ALG1: Cost = Cost::new(2883, 25155);
    pub const ALG2: Cost = Cost::new(5699, 27075);
    pub const ALG3: Cost = Cost::new(5699, 27075);
    pub const DFT32: Cost = Cost::new(88, 408);
    pub const ADFT32_ADDS: u64 = 348;
    pub const ADFT32_FACTOR_ADDS: [u64; 8] = [60, 60, 28, 28, 60, 28, 24, 60];
}

fn twiddle_cost(exponent: usize, n: usize, model: CostModel) -> Cost {
    let e = exponent % n;
    let trivial = e == 0 || (n >= 4 && e == n / 4);
    let eighth = n >= 8 && e.is_multiple_of(n / 8) && (e / (n / 8)) % 2 == 1;
    if model.count_trivial_twiddles {
        model.complex_mult_scheme.cost()
    } else if trivial {
        Cost::default()
    } else if eighth {
        Cost::new(2, 2)
    } else {
        model.complex_mult_scheme.cost()
    }
}

/// Cost of a radix-2 decimation-in-time FFT of length `n`, counted per
/// butterfly: four real additions plus the twiddle product. Twiddles `1` and
/// `-j` are free, odd multiples of `ω^{n/8}` cost two multiplications and two
/// additions, all others are charged by the model's scheme.
pub fn radix2_cost(n: usize, model: CostModel) -> Result<Cost> {
    if n == 0 {
        return Err(Error::ZeroSize);
    }
    if !n.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(n));
    }
    let mut total = Cost::default();
    let mut len = 2;
    while len <= n {
        let half = len / 2;
        let groups = (n / len) as u64;
        for k in 0..half {
            let tw = twiddle_cost(k * (n / len), n, model);
            total = total + (tw + Cost::new(0, 4)).times(groups);
        }
        len <<= 1;
    }
    Ok(total)
}

fn twiddle_stage_cost(model: CostModel) -> Cost {
    let tw = twiddle_matrix();
    let charged = if model.count_trivial_twiddles {
        tw.trivial_count() + tw.nontrivial_count()
    } else {
        tw.nontrivial_count()
    };
    model.complex_mult_scheme.cost().times(charged as u64)
}

fn adft32_cost() -> Cost {
    let adds = Adft32::standard()
        .factors()
        .iter()
        .map(|f| f.complex_add_cost() as u64)
        .sum();
    Cost::new(0, adds)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexityReport {
    pub variant: Variant,
    pub real_mults: u64,
    pub real_adds: u64,
    pub paper_reference_mults: u64,
    pub paper_reference_adds: u64,
    pub convention: CostModel,
}

/// Sequential operation count of one 1024-point transform.
///
/// Approximate variants run 32 kernels per stage plus the twiddle stage. The
/// exact transform is costed as a full 1024-point radix-2 FFT.
pub fn count_sequential(spec: TransformSpec, model: CostModel) -> ComplexityReport {
    let dft32 = radix2_cost(RADIX, model).expect("32 is a power of two");
    let adft = adft32_cost();
    let tw = twiddle_stage_cost(model);
    let lanes = RADIX as u64;
    let (cost, paper) = match spec.variant {
        Variant::Exact => (
            radix2_cost(spec.size, model).expect("1024 is a power of two"),
            reference::RADIX2_1024,
        ),
        Variant::Alg1 => (adft.times(2 * lanes) + tw, reference::ALG1),
        Variant::Alg2 => (dft32.times(lanes) + adft.times(lanes) + tw, reference::ALG2),
        Variant::Alg3 => (adft.times(lanes) + dft32.times(lanes) + tw, reference::ALG3),
    };
    ComplexityReport {
        variant: spec.variant,
        real_mults: cost.mults,
        real_adds: cost.adds,
        paper_reference_mults: paper.mults,
        paper_reference_adds: paper.adds,
        convention: model,
    }
}

/// Observed counts from one instrumented 32-point approximate transform.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstrumentedCount {
    pub mults: u64,
    pub adds: u64,
    pub per_factor_adds: Vec<u64>,
}

/// Runs the standard 32-point approximation on counting scalars. Fails if any
/// multiplication is observed.
pub fn count_instrumented_adft32() -> Result<InstrumentedCount> {
    count_instrumented_with(Adft32::standard(), &[Complex64::new(0.0, 0.0); RADIX])
}

/// Instrumented count for an arbitrary factor chain and input.
pub fn count_instrumented_with(adft: &Adft32, x: &[Complex64]) -> Result<InstrumentedCount> {
    let (counts, per_factor_adds) = adft.count_operations(x)?;
    if counts.mults != 0 {
        return Err(Error::MultiplicationObserved(counts.mults));
    }
    Ok(InstrumentedCount {
        mults: counts.mults,
        adds: counts.adds,
        per_factor_adds,
    })
}

/// Per-block circuit counts of the time-multiplexed architecture.
pub mod circuit_blocks {
    use super::Cost;

    /// 32 parallel Gauss complex multipliers.
    pub const TWIDDLE: Cost = Cost::new(96, 160);
    pub const ADFT32: Cost = Cost::new(0, 348);
    pub const DFT32: Cost = Cost::new(78, 398);
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CircuitReport {
    pub variant: Variant,
    pub multiplier_circuits: u64,
    pub adder_circuits: u64,
    pub paper_table_values: (u64, u64),
}

impl CircuitReport {
    /// True when the composed count differs from the published table.
    pub fn disagrees_with_table(&self) -> bool {
        (self.multiplier_circuits, self.adder_circuits) != self.paper_table_values
    }
}

/// Multiplier and adder circuits for one row kernel, one twiddle block and
/// one column kernel.
pub fn circuit_complexity(spec: TransformSpec) -> CircuitReport {
    use circuit_blocks::{ADFT32, DFT32, TWIDDLE};
    let (blocks, table) = match spec.variant {
        Variant::Exact => (DFT32 + TWIDDLE + DFT32, (252, 959)),
        Variant::Alg1 => (ADFT32 + TWIDDLE + ADFT32, (96, 856)),
        Variant::Alg2 => (ADFT32 + TWIDDLE + DFT32, (174, 906)),
        Variant::Alg3 => (DFT32 + TWIDDLE + ADFT32, (174, 906)),
    };
    CircuitReport {
        variant: spec.variant,
        multiplier_circuits: blocks.mults,
        adder_circuits: blocks.adds,
        paper_table_values: table,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn radix2_reference_counts() {
        assert_eq!(
            radix2_cost(32, CostModel::PAPER).unwrap(),
            Cost::new(88, 408)
        );
        assert_eq!(
            radix2_cost(1024, CostModel::PAPER).unwrap(),
            Cost::new(10248, 30728)
        );
        assert!(radix2_cost(48, CostModel::PAPER).is_err());
        assert_eq!(radix2_cost(1, CostModel::PAPER).unwrap(), Cost::default());
    }

    #[test]
    fn radix2_closed_forms() {
        for log in 3..=12u32 {
            let n = 1u64 << log;
            let c = radix2_cost(n as usize, CostModel::PAPER).unwrap();
            assert_eq!(c.mults, 3 * n * log as u64 / 2 + 8 - 5 * n);
            assert_eq!(c.adds, 7 * n * log as u64 / 2 + 8 - 5 * n);
        }
    }

    #[test]
    fn counting_trivial_twiddles_costs_more() {
        let model = CostModel {
            count_trivial_twiddles: true,
            ..CostModel::PAPER
        };
        assert_eq!(radix2_cost(32, model).unwrap(), Cost::new(240, 560));
        let r = count_sequential(Variant::Alg1.into(), model);
        assert_eq!(r.real_mults, 3072);
    }

    #[test]
    fn gauss_alg1() {
        let r = count_sequential(Variant::Alg1.into(), CostModel::GAUSS);
        assert_eq!((r.real_mults, r.real_adds), (2883, 27077));
    }

    #[test]
    fn alg2_and_alg3_match_under_all_models() {
        for m in [CostModel::PAPER, CostModel::GAUSS, CostModel::DIRECT] {
            let a = count_sequential(Variant::Alg2.into(), m);
            let b = count_sequential(Variant::Alg3.into(), m);
            assert_eq!((a.real_mults, a.real_adds), (b.real_mults, b.real_adds));
        }
    }

    #[test]
    fn model_names_parse() {
        assert_eq!(
            "paper".parse::<ComplexMultScheme>().unwrap(),
            ComplexMultScheme::Paper3M3A
        );
        assert_eq!(
            "Gauss_3M5A".parse::<ComplexMultScheme>().unwrap(),
            ComplexMultScheme::Gauss3M5A
        );
        assert!("karatsuba".parse::<ComplexMultScheme>().is_err());
    }

    #[test]
    fn exact_circuit_disagrees_with_table() {
        let r = circuit_complexity(Variant::Exact.into());
        assert_eq!((r.multiplier_circuits, r.adder_circuits), (252, 956));
        assert!(r.disagrees_with_table());
        assert!(!circuit_complexity(Variant::Alg2.into()).disagrees_with_table());
    }
}
