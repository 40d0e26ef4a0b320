//! Li(x) by adaptive quadrature, and the two prime integrals
//! `∫₂ˣ θ(t)/(t log²t) dt` and `∫₂ˣ π(t)/t dt` evaluated piecewise in closed
//! form. Between consecutive primes π and θ are constant, so each piece has an
//! elementary antiderivative:
//!
//! ```text
//! ∫ₐᵇ C/(t log²t) dt = C·(1/log a − 1/log b) = C·log(b/a)/(log a · log b)
//! ∫ₐᵇ C/t dt         = C·log(b/a)
//! ```
//!
//! `log(b/a)` is taken as `ln_1p((b − a)/a)`, which keeps full relative
//! accuracy for short pieces.

use crate::error::{domain, Result};
use crate::sum::{Accumulate, NeumaierSum};
use crate::table::PrimeTable;

pub const DEFAULT_LI_TOL: f64 = 1e-10;

/// Recursion depth cap for adaptive Simpson.
pub const MAX_DEPTH: u32 = 60;

/// Rounding-bound multiplier: error ≤ `ROUNDING_C · n · ε · |value|`.
const ROUNDING_C: f64 = 4.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    PiecewiseExact,
    AdaptiveQuadrature,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegralValue {
    pub value: f64,
    pub abs_error_bound: f64,
    pub method: Method,
}

fn rounding_bound(pieces: usize, value: f64) -> f64 {
    ROUNDING_C * pieces.max(1) as f64 * f64::EPSILON * value.abs()
}

#[inline]
fn inv_log(t: f64) -> f64 {
    1.0 / t.ln()
}

#[derive(Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

/// Adaptive Simpson for `f` on `[a, b]`. Returns the Richardson-corrected
/// value, the summed error estimate, and the number of accepted panels.
fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> (f64, f64, usize) {
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let root = Panel {
        a,
        b,
        fa,
        fm,
        fb,
        whole: simpson(a, b, fa, fm, fb),
    };
    let mut value = NeumaierSum::new();
    let mut err = 0.0;
    let mut panels = 0;
    // Explicit stack; left halves are processed first so the sum runs left to right.
    let mut stack = vec![(root, tol, 0u32)];
    while let Some((p, eps, depth)) = stack.pop() {
        let m = 0.5 * (p.a + p.b);
        let lm = 0.5 * (p.a + m);
        let rm = 0.5 * (m + p.b);
        let (flm, frm) = (f(lm), f(rm));
        let left = simpson(p.a, m, p.fa, flm, p.fm);
        let right = simpson(m, p.b, p.fm, frm, p.fb);
        let delta = left + right - p.whole;
        if depth >= MAX_DEPTH || delta.abs() <= 15.0 * eps || m <= p.a || m >= p.b {
            value += left + right + delta / 15.0;
            err += delta.abs() / 15.0;
            panels += 1;
        } else {
            let half = 0.5 * eps;
            stack.push((
                Panel {
                    a: m,
                    b: p.b,
                    fa: p.fm,
                    fm: frm,
                    fb: p.fb,
                    whole: right,
                },
                half,
                depth + 1,
            ));
            stack.push((
                Panel {
                    a: p.a,
                    b: m,
                    fa: p.fa,
                    fm: flm,
                    fb: p.fm,
                    whole: left,
                },
                half,
                depth + 1,
            ));
        }
    }
    (value.value(), err, panels)
}

/// `∫ₐᵇ dt/log t` for `2 ≤ a ≤ b`.
pub fn li_between(a: f64, b: f64, tol: f64) -> Result<IntegralValue> {
    if !(a >= 2.0) || !(b >= a) {
        return domain(format!("Li segment needs 2 ≤ a ≤ b, got [{a}, {b}]"));
    }
    if !(tol > 0.0) {
        return domain(format!("tolerance must be positive, got {tol}"));
    }
    if a == b {
        return Ok(IntegralValue {
            value: 0.0,
            abs_error_bound: 0.0,
            method: Method::AdaptiveQuadrature,
        });
    }
    let (value, est, panels) = adaptive_simpson(&inv_log, a, b, tol);
    Ok(IntegralValue {
        value,
        abs_error_bound: est + rounding_bound(panels, value),
        method: Method::AdaptiveQuadrature,
    })
}

/// `Li(x) = ∫₂ˣ dt/log t`.
pub fn li(x: f64, tol: f64) -> Result<IntegralValue> {
    if !(x >= 2.0) {
        return domain(format!("Li(x) needs x ≥ 2, got {x}"));
    }
    li_between(2.0, x, tol)
}

/// Li along an ascending sequence of points, integrating only the new
/// segment at each step.
#[derive(Debug, Clone)]
pub struct LiStepper {
    at: f64,
    acc: NeumaierSum,
    err: f64,
    tol: f64,
}

impl LiStepper {
    /// Per-segment tolerance used by scans.
    pub const SEGMENT_TOL: f64 = 1e-13;

    pub fn new(tol: f64) -> Self {
        Self {
            at: 2.0,
            acc: NeumaierSum::new(),
            err: 0.0,
            tol,
        }
    }

    /// Start at `x` with one full quadrature.
    pub fn starting_at(x: f64, tol: f64) -> Result<Self> {
        let v = li(x, tol)?;
        let mut acc = NeumaierSum::new();
        acc += v.value;
        Ok(Self {
            at: x,
            acc,
            err: v.abs_error_bound,
            tol,
        })
    }

    /// `Li(x)` for `x` not below the previous point.
    pub fn advance_to(&mut self, x: f64) -> Result<f64> {
        if x > self.at {
            let seg = li_between(self.at, x, self.tol)?;
            self.acc += seg.value;
            self.err += seg.abs_error_bound;
            self.at = x;
        } else if x < self.at {
            return domain(format!("LiStepper moved backwards: {x} < {}", self.at));
        }
        Ok(self.acc.value())
    }

    pub fn error_bound(&self) -> f64 {
        self.err
    }
}

fn check_x(x: f64, table: &PrimeTable) -> Result<usize> {
    if !(x >= 2.0) {
        return domain(format!("prime integrals need x ≥ 2, got {x}"));
    }
    table.count_le(x)
}

/// `log(b/a)` for `0 < a ≤ b`.
#[inline]
fn log_ratio(a: f64, b: f64) -> f64 {
    ((b - a) / a).ln_1p()
}

/// `1/log a − 1/log b` for `1 < a ≤ b`.
#[inline]
fn inv_log_diff(a: f64, b: f64) -> f64 {
    log_ratio(a, b) / (a.ln() * b.ln())
}

/// Sums `f(count, a, b)` over the pieces of `[lo, hi]` on which π is constant;
/// `count` is the number of primes `≤ a`. Returns the sum and the piece count.
fn piecewise<F>(lo: f64, hi: f64, table: &PrimeTable, f: F) -> Result<(f64, usize)>
where
    F: Fn(usize, f64, f64) -> f64,
{
    if !(lo >= 2.0) || !(hi >= lo) {
        return domain(format!("prime integrals need 2 ≤ a ≤ b, got [{lo}, {hi}]"));
    }
    let start = table.count_le(lo)?;
    let inner = table.primes_in(lo, hi)?;
    let mut acc = NeumaierSum::new();
    let mut a = lo;
    let mut count = start;
    for &p in inner {
        let b = p as f64;
        acc += f(count, a, b);
        a = b;
        count += 1;
    }
    acc += f(count, a, hi);
    Ok((acc.value(), inner.len() + 1))
}

fn theta_before(table: &PrimeTable, count: usize) -> f64 {
    match count {
        0 => 0.0,
        k => table.theta_at_index(k - 1),
    }
}

/// `∫ₐᵇ θ(t)/(t log²t) dt` for `2 ≤ a ≤ b`, summed piece by piece.
pub fn theta_integral_between(a: f64, b: f64, table: &PrimeTable) -> Result<IntegralValue> {
    let (value, n) = piecewise(a, b, table, |count, lo, hi| {
        theta_before(table, count) * inv_log_diff(lo, hi)
    })?;
    Ok(IntegralValue {
        value,
        abs_error_bound: rounding_bound(n, value),
        method: Method::PiecewiseExact,
    })
}

/// `∫ₐᵇ π(t)/t dt` for `2 ≤ a ≤ b`, summed piece by piece.
pub fn pi_integral_between(a: f64, b: f64, table: &PrimeTable) -> Result<IntegralValue> {
    let (value, n) = piecewise(a, b, table, |count, lo, hi| count as f64 * log_ratio(lo, hi))?;
    Ok(IntegralValue {
        value,
        abs_error_bound: rounding_bound(n, value),
        method: Method::PiecewiseExact,
    })
}

/// `∫₂ˣ θ(t)/(t log²t) dt`.
pub fn theta_integral(x: f64, table: &PrimeTable) -> Result<IntegralValue> {
    theta_integral_between(2.0, x, table)
}

/// `∫₂ˣ π(t)/t dt`.
pub fn pi_integral(x: f64, table: &PrimeTable) -> Result<IntegralValue> {
    pi_integral_between(2.0, x, table)
}

/// `π(x) − θ(x)/log x − ∫₂ˣ θ(t)/(t log²t) dt`; zero in exact arithmetic.
pub fn abel_pi_residual(x: f64, table: &PrimeTable) -> Result<f64> {
    let integral = theta_integral(x, table)?.value;
    let pi = table.pi(x)? as f64;
    let theta = table.theta(x)?;
    Ok(pi - theta / x.ln() - integral)
}

/// `θ(x) − π(x)·log x + ∫₂ˣ π(t)/t dt`; zero in exact arithmetic.
pub fn abel_theta_residual(x: f64, table: &PrimeTable) -> Result<f64> {
    let integral = pi_integral(x, table)?.value;
    let pi = table.pi(x)? as f64;
    let theta = table.theta(x)?;
    Ok(theta - pi * x.ln() + integral)
}

/// Both prime integrals accumulated up to every prime, for O(log n) queries
/// in dense scans. Agrees with [`theta_integral`] / [`pi_integral`] to within
/// their rounding bounds.
#[derive(Debug, Clone)]
pub struct PrefixIntegrals<'a> {
    table: &'a PrimeTable,
    /// `∫₂^{p_i} θ(t)/(t log²t) dt`
    theta_int: Vec<f64>,
    /// `∫₂^{p_i} π(t)/t dt`
    pi_int: Vec<f64>,
}

impl<'a> PrefixIntegrals<'a> {
    pub fn new(table: &'a PrimeTable) -> Self {
        let primes = table.primes();
        let mut theta_int = Vec::with_capacity(primes.len());
        let mut pi_int = Vec::with_capacity(primes.len());
        let mut ti = NeumaierSum::new();
        let mut pi = NeumaierSum::new();
        for (i, &p) in primes.iter().enumerate() {
            if i > 0 {
                let a = primes[i - 1] as f64;
                let b = p as f64;
                ti += table.theta_at_index(i - 1) * inv_log_diff(a, b);
                pi += i as f64 * log_ratio(a, b);
            }
            theta_int.push(ti.value());
            pi_int.push(pi.value());
        }
        Self {
            table,
            theta_int,
            pi_int,
        }
    }

    fn last_piece(&self, x: f64) -> Result<Option<(usize, f64)>> {
        let count = check_x(x, self.table)?;
        Ok(count.checked_sub(1).map(|i| (i, self.table.primes()[i] as f64)))
    }

    pub fn theta_integral(&self, x: f64) -> Result<IntegralValue> {
        let value = match self.last_piece(x)? {
            None => 0.0,
            Some((i, a)) => self.theta_int[i] + self.table.theta_at_index(i) * inv_log_diff(a, x),
        };
        Ok(IntegralValue {
            value,
            abs_error_bound: rounding_bound(self.table.pi(x)? as usize, value),
            method: Method::PiecewiseExact,
        })
    }

    pub fn pi_integral(&self, x: f64) -> Result<IntegralValue> {
        let value = match self.last_piece(x)? {
            None => 0.0,
            Some((i, a)) => self.pi_int[i] + (i + 1) as f64 * log_ratio(a, x),
        };
        Ok(IntegralValue {
            value,
            abs_error_bound: rounding_bound(self.table.pi(x)? as usize, value),
            method: Method::PiecewiseExact,
        })
    }

    pub fn abel_pi_residual(&self, x: f64) -> Result<f64> {
        let integral = self.theta_integral(x)?.value;
        Ok(self.table.pi(x)? as f64 - self.table.theta(x)? / x.ln() - integral)
    }

    pub fn abel_theta_residual(&self, x: f64) -> Result<f64> {
        let integral = self.pi_integral(x)?.value;
        Ok(self.table.theta(x)? - self.table.pi(x)? as f64 * x.ln() + integral)
    }
}

/// Smallest integer `x₀ ≥ 2` such that `Li(x) ≤ ∫₂ˣ π(t)/t dt` at every
/// integer in `[x₀, hi]`. `None` if it fails at `hi` itself. Empirical only.
pub fn li_pi_integral_crossover(table: &PrimeTable, hi: u64) -> Result<Option<u64>> {
    let prefix = PrefixIntegrals::new(table);
    let mut stepper = LiStepper::new(LiStepper::SEGMENT_TOL);
    let mut last_fail = None;
    for n in 2..=hi {
        let x = n as f64;
        if stepper.advance_to(x)? > prefix.pi_integral(x)?.value {
            last_fail = Some(n);
        }
    }
    Ok(match last_fail {
        None => Some(2),
        Some(n) if n == hi => None,
        Some(n) => Some(n + 1),
    })
}
