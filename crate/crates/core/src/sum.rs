//! Compensated floating-point accumulation.
//!
//! Two accumulators share the [`Accumulate`] trait: [`NeumaierSum`], a
//! Kahan-style running sum with a separate correction term, and
//! [`DoubleDouble`], which keeps a renormalised (hi, lo) pair and behaves like
//! roughly 106-bit arithmetic for additions.

use std::iter::Sum;
use std::ops::AddAssign;

/// Which accumulator the prime table uses for θ prefixes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SumMode {
    #[default]
    Compensated,
    DoubleDouble,
}

pub trait Accumulate: Default + AddAssign<f64> {
    /// `(value, correction)`; the represented sum is `value + correction`.
    fn parts(&self) -> (f64, f64);

    fn value(&self) -> f64 {
        let (v, c) = self.parts();
        v + c
    }
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

#[inline]
fn fast_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct NeumaierSum {
    sum: f64,
    comp: f64,
}

impl NeumaierSum {
    pub fn new() -> Self {
        Self::default()
    }
}

impl AddAssign<f64> for NeumaierSum {
    #[inline]
    fn add_assign(&mut self, rhs: f64) {
        let t = self.sum + rhs;
        if self.sum.abs() >= rhs.abs() {
            self.comp += (self.sum - t) + rhs;
        } else {
            self.comp += (rhs - t) + self.sum;
        }
        self.sum = t;
    }
}

impl Accumulate for NeumaierSum {
    fn parts(&self) -> (f64, f64) {
        (self.sum, self.comp)
    }
}

impl Sum<f64> for NeumaierSum {
    fn sum<I: Iterator<Item = f64>>(iter: I) -> Self {
        let mut acc = Self::new();
        for v in iter {
            acc += v;
        }
        acc
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct DoubleDouble {
    hi: f64,
    lo: f64,
}

impl DoubleDouble {
    pub fn new() -> Self {
        Self::default()
    }
}

impl AddAssign<f64> for DoubleDouble {
    #[inline]
    fn add_assign(&mut self, rhs: f64) {
        let (s, e) = two_sum(self.hi, rhs);
        let (hi, lo) = fast_two_sum(s, e + self.lo);
        self.hi = hi;
        self.lo = lo;
    }
}

impl Accumulate for DoubleDouble {
    fn parts(&self) -> (f64, f64) {
        (self.hi, self.lo)
    }
}

/// Compensated sum of an iterator of terms.
pub fn compensated_sum<I: IntoIterator<Item = f64>>(terms: I) -> f64 {
    terms.into_iter().sum::<NeumaierSum>().value()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_lost_small_terms() {
        let mut naive = 1.0f64;
        let mut k = NeumaierSum::new();
        let mut dd = DoubleDouble::new();
        k += 1.0;
        dd += 1.0;
        for _ in 0..1_000_000 {
            naive += 1e-16;
            k += 1e-16;
            dd += 1e-16;
        }
        assert_eq!(naive, 1.0);
        assert!((k.value() - (1.0 + 1e-10)).abs() < 1e-22);
        assert!((dd.value() - (1.0 + 1e-10)).abs() < 1e-22);
    }

    #[test]
    fn cancelling_terms() {
        // Neumaier's motivating case; plain Kahan returns 0 here.
        let s = compensated_sum([1.0, 1e100, 1.0, -1e100]);
        assert_eq!(s, 2.0);
    }

    #[test]
    fn double_double_parts_are_normalised() {
        let mut dd = DoubleDouble::new();
        for v in [0.1, 0.2, 0.3, 1e-20] {
            dd += v;
        }
        let (hi, lo) = dd.parts();
        assert_eq!(hi + lo, hi);
    }
}
