//! Exact replay of the even-integer counting argument.
//!
//! For odd `x`, the numbers `p·2^α ≤ x` (`p` prime, `α ≥ 1`) are distinct
//! even integers below `x`, so there are at most `(x−1)/2` of them. For each
//! prime the count is `⌊log₂(x/p)⌋`, computed here by integer doubling.

use std::fmt;

use crate::error::{domain, Result};
use crate::sum::{Accumulate, NeumaierSum};
use crate::table::PrimeTable;

/// Largest `k ≥ 0` with `p·2^k ≤ x`.
pub fn floor_log2_ratio(x: u64, p: u64) -> Result<u32> {
    if p < 1 || p > x {
        return domain(format!("need 1 ≤ p ≤ x, got p = {p}, x = {x}"));
    }
    let half = x / 2;
    let mut m = p;
    let mut k = 0;
    // 2m ≤ x  ⇔  m ≤ ⌊x/2⌋
    while m <= half {
        m *= 2;
        k += 1;
    }
    Ok(k)
}

/// The counting argument's quantities at one odd `x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CountingChain {
    pub x: u64,
    pub pi_x: u64,
    pub theta_x: f64,
    /// `(x−1)/2`
    pub evens_available: u64,
    /// `Σ_{p≤x} ⌊log₂(x/p)⌋`, integer arithmetic only.
    pub s_exact: u64,
    /// Same sum with the `p = 2` term replaced by `⌊log₂ x⌋`, i.e. counting the
    /// pure powers `2, 4, …` as their own sequence. Always `s_exact + 1`.
    pub s_pow2_variant: u64,
    /// `Σ_{p≤x} {log(x/p)/log 2}`
    pub frac_sum: f64,
    /// `Σ_{p≤x} log(x/p)/log 2`
    pub value_sum: f64,
}

fn check_odd(x: u64, table: &PrimeTable) -> Result<()> {
    if x < 3 || x.is_multiple_of(2) {
        return domain(format!("the counting argument needs odd x ≥ 3, got {x}"));
    }
    if x > table.limit() {
        return Err(crate::Error::OutOfRange {
            x: x as f64,
            limit: table.limit(),
        });
    }
    Ok(())
}

pub fn counting_chain(x: u64, table: &PrimeTable) -> Result<CountingChain> {
    check_odd(x, table)?;
    let xf = x as f64;
    let primes = table.primes_in(0.0, xf)?;
    let mut s_exact = 0u64;
    let mut value_sum = NeumaierSum::new();
    let mut frac_sum = NeumaierSum::new();
    for &p in primes {
        let k = floor_log2_ratio(x, p)?;
        let v = (xf / p as f64).log2();
        s_exact += k as u64;
        value_sum += v;
        frac_sum += v - k as f64;
    }
    let s_pow2_variant = s_exact - floor_log2_ratio(x, 2)? as u64 + floor_log2_ratio(x, 1)? as u64;
    Ok(CountingChain {
        x,
        pi_x: primes.len() as u64,
        theta_x: table.theta(xf)?,
        evens_available: (x - 1) / 2,
        s_exact,
        s_pow2_variant,
        frac_sum: frac_sum.value(),
        value_sum: value_sum.value(),
    })
}

/// `Σ_{p≤x} ⌊log₂(x/p)⌋` via `Σ_{k≥1} π(⌊x/2^k⌋)`: each pair `(p, k)` with
/// `p·2^k ≤ x` is counted once on either side. Integer arithmetic only, and
/// O(log x) table lookups instead of one doubling loop per prime.
pub fn floor_sum_by_halving(x: u64, table: &PrimeTable) -> Result<u64> {
    if x > table.limit() {
        return Err(crate::Error::OutOfRange {
            x: x as f64,
            limit: table.limit(),
        });
    }
    let primes = table.primes();
    let mut total = 0u64;
    let mut m = x / 2;
    while m >= 2 {
        total += primes.partition_point(|&p| p <= m) as u64;
        m /= 2;
    }
    Ok(total)
}

/// One inequality `lhs ≥ rhs` of the chain.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainLink {
    pub name: &'static str,
    pub lhs: f64,
    pub rhs: f64,
    pub tolerance: f64,
    pub holds: bool,
}

impl ChainLink {
    fn new(name: &'static str, lhs: f64, rhs: f64, tolerance: f64) -> Self {
        Self {
            name,
            lhs,
            rhs,
            tolerance,
            holds: lhs >= rhs - tolerance,
        }
    }

    pub fn margin(&self) -> f64 {
        self.lhs - self.rhs
    }
}

impl fmt::Display for ChainLink {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<22} {} ≥ {}  margin {}  [{}]",
            self.name,
            self.lhs,
            self.rhs,
            self.margin(),
            if self.holds { "holds" } else { "FAILS" }
        )
    }
}

/// Evaluate every link of the chain at odd `x`.
///
/// Integer links compare exactly; floating links allow `1e-9·π(x)`.
pub fn verify_proof_chain(x: u64, table: &PrimeTable) -> Result<Vec<ChainLink>> {
    let c = counting_chain(x, table)?;
    let tol = 1e-9 * c.pi_x as f64;
    let ln2 = 2f64.ln();
    let xf = x as f64;
    let half = 0.5 * (xf - 1.0) * ln2;
    let pi = c.pi_x as f64;
    let theta = c.theta_x;
    let ceiling = crate::bounds::bound_theorem1_ceiling(xf, theta)?.value;
    let sharp = crate::bounds::bound_theorem1_sharp(xf, theta)?;

    Ok(vec![
        ChainLink::new("evens ≥ floor sum", c.evens_available as f64, c.s_exact as f64, 0.0),
        ChainLink::new(
            "evens ≥ pow2 variant",
            c.evens_available as f64,
            c.s_pow2_variant as f64,
            0.0,
        ),
        ChainLink::new(
            "floor sum ≥ value − frac",
            c.s_exact as f64,
            c.value_sum - c.frac_sum,
            tol,
        ),
        ChainLink::new(
            "scaled by log 2",
            half + ln2 * c.frac_sum,
            pi * xf.ln() - theta,
            tol,
        ),
        ChainLink::new(
            "with fractional parts",
            (half + ln2 * c.frac_sum + theta) / xf.ln(),
            pi,
            tol,
        ),
        ChainLink::new("sharp form", sharp, pi, 0.0),
        ChainLink::new("ceiling form", ceiling, pi, 0.0),
    ])
}
