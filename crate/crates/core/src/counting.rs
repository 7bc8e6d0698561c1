//! Instrumented scalar for counting real operations during a single evaluation.

use std::cell::Cell;
use std::ops::{Add, Mul, Neg, Sub};

/// Call-local operation tally. Not `Sync`; each evaluation owns its counter.
#[derive(Debug, Default)]
pub struct OpCounter {
    adds: Cell<u64>,
    mults: Cell<u64>,
    negations: Cell<u64>,
}

/// Snapshot of an [`OpCounter`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct OpCounts {
    /// Additions and subtractions of two real values.
    pub adds: u64,
    pub mults: u64,
    /// Sign flips. Free in hardware; tracked separately, never as additions.
    pub negations: u64,
}

impl OpCounter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn counts(&self) -> OpCounts {
        OpCounts {
            adds: self.adds.get(),
            mults: self.mults.get(),
            negations: self.negations.get(),
        }
    }

    pub fn value(&self, v: f64) -> Counted<'_> {
        Counted {
            value: v,
            counter: self,
        }
    }

    fn bump(cell: &Cell<u64>) {
        cell.set(cell.get() + 1);
    }
}

/// A real value that records every arithmetic operation applied to it.
#[derive(Debug, Clone, Copy)]
pub struct Counted<'a> {
    pub value: f64,
    counter: &'a OpCounter,
}

impl<'a> Add for Counted<'a> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        OpCounter::bump(&self.counter.adds);
        Counted {
            value: self.value + rhs.value,
            counter: self.counter,
        }
    }
}

impl<'a> Sub for Counted<'a> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        OpCounter::bump(&self.counter.adds);
        Counted {
            value: self.value - rhs.value,
            counter: self.counter,
        }
    }
}

impl<'a> Neg for Counted<'a> {
    type Output = Self;
    fn neg(self) -> Self {
        OpCounter::bump(&self.counter.negations);
        Counted {
            value: -self.value,
            counter: self.counter,
        }
    }
}

impl<'a> Mul for Counted<'a> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        OpCounter::bump(&self.counter.mults);
        Counted {
            value: self.value * rhs.value,
            counter: self.counter,
        }
    }
}
