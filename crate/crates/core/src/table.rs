//! Sieve-backed prime table with exact π(x) and compensated θ(x).

use crate::error::{domain, Error, Result};
use crate::sieve;
use crate::sum::{Accumulate, DoubleDouble, NeumaierSum, SumMode};

/// Largest limit accepted by [`build_table`] unless a config raises it.
pub const DEFAULT_LIMIT_CAP: u64 = 100_000_000;

/// Hard ceiling: primes are handled as `u64` but the sieve's index space and
/// the on-disk cache assume limits below 2³².
pub const MAX_LIMIT_CAP: u64 = u32::MAX as u64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TableConfig {
    pub sum_mode: SumMode,
    pub limit_cap: u64,
}

impl Default for TableConfig {
    fn default() -> Self {
        Self {
            sum_mode: SumMode::Compensated,
            limit_cap: DEFAULT_LIMIT_CAP,
        }
    }
}

/// Ordered primes up to `limit` with θ prefix sums.
///
/// `theta_prefix[i]` holds `Σ_{j ≤ i} log p_j` as a `(value, correction)` pair;
/// the prefix of π is implicit (`π(p_i) = i + 1`). Immutable once built.
#[derive(Debug, Clone, PartialEq)]
pub struct PrimeTable {
    limit: u64,
    primes: Vec<u64>,
    theta_prefix: Vec<(f64, f64)>,
}

/// Build a table with the default configuration.
pub fn build_table(limit: u64) -> Result<PrimeTable> {
    build_table_with(limit, &TableConfig::default())
}

pub fn build_table_with(limit: u64, config: &TableConfig) -> Result<PrimeTable> {
    if limit < 2 {
        return domain(format!("sieve limit must be at least 2, got {limit}"));
    }
    let cap = config.limit_cap.min(MAX_LIMIT_CAP);
    if limit > cap {
        return Err(Error::Capacity { limit, cap });
    }
    let primes = sieve::primes_up_to(limit);
    Ok(PrimeTable::from_primes(limit, primes, config.sum_mode))
}

fn theta_prefix_of<A: Accumulate>(primes: &[u64]) -> Vec<(f64, f64)> {
    let mut acc = A::default();
    primes
        .iter()
        .map(|&p| {
            acc += (p as f64).ln();
            acc.parts()
        })
        .collect()
}

impl PrimeTable {
    /// Assemble a table from an already validated ascending prime list.
    pub(crate) fn from_primes(limit: u64, primes: Vec<u64>, mode: SumMode) -> Self {
        let theta_prefix = match mode {
            SumMode::Compensated => theta_prefix_of::<NeumaierSum>(&primes),
            SumMode::DoubleDouble => theta_prefix_of::<DoubleDouble>(&primes),
        };
        Self {
            limit,
            primes,
            theta_prefix,
        }
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    /// π at the `i`-th prime.
    pub fn pi_prefix(&self, i: usize) -> u64 {
        debug_assert!(i < self.primes.len());
        i as u64 + 1
    }

    /// θ at the `i`-th prime as a `(value, correction)` pair.
    pub fn theta_prefix(&self, i: usize) -> (f64, f64) {
        self.theta_prefix[i]
    }

    /// θ at the `i`-th prime, correction folded in.
    pub fn theta_at_index(&self, i: usize) -> f64 {
        let (v, c) = self.theta_prefix[i];
        v + c
    }

    /// Number of primes `≤ x`, after range checks.
    pub(crate) fn count_le(&self, x: f64) -> Result<usize> {
        if x.is_nan() || x < 0.0 {
            return domain(format!("x must be a nonnegative real, got {x}"));
        }
        if x > self.limit as f64 {
            return Err(Error::OutOfRange {
                x,
                limit: self.limit,
            });
        }
        if x < 2.0 {
            return Ok(0);
        }
        let n = x.floor() as u64;
        Ok(self.primes.partition_point(|&p| p <= n))
    }

    /// Exact prime count `π(x)`.
    pub fn pi(&self, x: f64) -> Result<u64> {
        self.count_le(x).map(|c| c as u64)
    }

    /// Chebyshev's θ(x) = Σ_{p ≤ x} log p, natural logs.
    ///
    /// Each term is a correctly rounded `ln` (≤ 1 ulp) and the sum is
    /// compensated, so the absolute error stays below roughly
    /// `2 · ε · θ(x)` plus the per-term rounding `π(x) · ε · log x`.
    pub fn theta(&self, x: f64) -> Result<f64> {
        Ok(match self.count_le(x)? {
            0 => 0.0,
            k => self.theta_at_index(k - 1),
        })
    }

    /// Primes `p` with `lo < p ≤ hi`, ascending.
    pub fn primes_in(&self, lo: f64, hi: f64) -> Result<&[u64]> {
        if lo.is_nan() {
            return domain("lower end of interval is NaN");
        }
        let end = self.count_le(hi)?;
        let start = if lo < 2.0 {
            0
        } else {
            let n = lo.floor() as u64;
            self.primes.partition_point(|&p| p <= n)
        };
        Ok(if start >= end {
            &[]
        } else {
            &self.primes[start..end]
        })
    }

    /// A forward-only cursor for ascending query sequences.
    pub fn cursor(&self) -> PrimeCursor<'_> {
        PrimeCursor {
            table: self,
            count: 0,
        }
    }
}

/// Steps through ascending `x` values, maintaining π(x) and θ(x) in amortised
/// O(1) per query.
#[derive(Debug, Clone)]
pub struct PrimeCursor<'a> {
    table: &'a PrimeTable,
    count: usize,
}

impl<'a> PrimeCursor<'a> {
    /// Cursor positioned at `x` (binary search), for starting a scan chunk.
    pub fn starting_at(table: &'a PrimeTable, x: f64) -> Result<Self> {
        Ok(Self {
            table,
            count: table.count_le(x)?,
        })
    }

    /// Moves to `x`, which must not be smaller than the previous query.
    /// Returns `(π(x), θ(x))`.
    pub fn advance_to(&mut self, x: f64) -> Result<(u64, f64)> {
        if x > self.table.limit as f64 {
            return Err(Error::OutOfRange {
                x,
                limit: self.table.limit,
            });
        }
        let primes = &self.table.primes;
        while self.count < primes.len() && (primes[self.count] as f64) <= x {
            self.count += 1;
        }
        debug_assert!(self.count == 0 || primes[self.count - 1] as f64 <= x);
        let theta = match self.count {
            0 => 0.0,
            k => self.table.theta_at_index(k - 1),
        };
        Ok((self.count as u64, theta))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(n: u64) -> PrimeTable {
        build_table(n).unwrap()
    }

    #[test]
    fn small_tables() {
        assert_eq!(table(10).primes(), &[2, 3, 5, 7]);
        assert_eq!(table(2).primes(), &[2]);
    }

    #[test]
    fn limit_errors() {
        assert!(matches!(build_table(1), Err(Error::Domain(_))));
        assert!(matches!(build_table(0), Err(Error::Domain(_))));
        let cfg = TableConfig {
            limit_cap: 1000,
            ..TableConfig::default()
        };
        assert!(matches!(
            build_table_with(1001, &cfg),
            Err(Error::Capacity { limit: 1001, cap: 1000 })
        ));
    }

    #[test]
    fn pi_examples() {
        let t = table(10_000);
        assert_eq!(t.pi(1.5).unwrap(), 0);
        assert_eq!(t.pi(0.0).unwrap(), 0);
        assert_eq!(t.pi(10.0).unwrap(), 4);
        assert_eq!(t.pi(10.9).unwrap(), 4);
        assert_eq!(t.pi(11.0).unwrap(), 5);
        assert_eq!(t.pi(10_000.0).unwrap(), 1229);
    }

    #[test]
    fn out_of_range_is_an_error() {
        let t = table(100);
        assert!(matches!(t.pi(100.5), Err(Error::OutOfRange { .. })));
        assert!(matches!(t.theta(101.0), Err(Error::OutOfRange { .. })));
        assert!(matches!(t.primes_in(0.0, 200.0), Err(Error::OutOfRange { .. })));
        assert!(matches!(t.pi(-1.0), Err(Error::Domain(_))));
        assert!(matches!(t.pi(f64::NAN), Err(Error::Domain(_))));
    }

    #[test]
    fn theta_examples() {
        let t = table(100);
        assert_eq!(t.theta(1.99).unwrap(), 0.0);
        assert_eq!(t.theta(2.0).unwrap(), 2f64.ln());
        let want = 210f64.ln();
        assert!((t.theta(10.0).unwrap() - want).abs() < 4.0 * f64::EPSILON * want);
        assert!((want - 5.347108).abs() < 1e-6);
    }

    #[test]
    fn primes_in_examples() {
        let t = table(100);
        assert_eq!(t.primes_in(10.0, 20.0).unwrap(), &[11, 13, 17, 19]);
        assert!(t.primes_in(7.0, 7.0).unwrap().is_empty());
        assert_eq!(t.primes_in(0.0, 2.0).unwrap(), &[2]);
        assert!(t.primes_in(30.0, 20.0).unwrap().is_empty());
        assert_eq!(t.primes_in(6.5, 7.0).unwrap(), &[7]);
    }

    #[test]
    fn double_double_mode_agrees() {
        let a = table(100_000);
        let b = build_table_with(
            100_000,
            &TableConfig {
                sum_mode: SumMode::DoubleDouble,
                ..TableConfig::default()
            },
        )
        .unwrap();
        let (ta, tb) = (a.theta(1e5).unwrap(), b.theta(1e5).unwrap());
        assert!((ta - tb).abs() <= 2.0 * f64::EPSILON * ta);
    }

    #[test]
    fn cursor_tracks_binary_search() {
        let t = table(1000);
        let mut cur = t.cursor();
        let mut x = 0.0;
        while x <= 1000.0 {
            let (pi, th) = cur.advance_to(x).unwrap();
            assert_eq!(pi, t.pi(x).unwrap());
            assert_eq!(th, t.theta(x).unwrap());
            x += 0.37;
        }
        let mut c = PrimeCursor::starting_at(&t, 500.0).unwrap();
        assert_eq!(c.advance_to(600.0).unwrap().0, t.pi(600.0).unwrap());
    }
}
