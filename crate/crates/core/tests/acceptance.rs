//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each,
//! and exits nonzero if any fails.
//!
//! Run with `cargo test -p pibound --test acceptance`.

use std::collections::HashSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use pibound::analytic::{self, PrefixIntegrals};
use pibound::bounds::{self, BoundKind};
use pibound::proof;
use pibound::scan::{self, Grid};
use pibound::{build_table, PrimeTable};

type Criterion<'a> = Box<dyn Fn() -> Outcome + 'a>;

struct Outcome {
    pass: bool,
    detail: String,
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome {
        pass: false,
        detail: detail.into(),
    }
}

fn check(cond: bool, detail: String) -> Outcome {
    Outcome { pass: cond, detail }
}

/// Unsegmented Eratosthenes over all integers, independent of the library sieve.
fn reference_sieve(n: usize) -> Vec<u64> {
    let mut is = vec![true; n + 1];
    is[0] = false;
    if n >= 1 {
        is[1] = false;
    }
    let mut i = 2;
    while i * i <= n {
        if is[i] {
            let mut m = i * i;
            while m <= n {
                is[m] = false;
                m += i;
            }
        }
        i += 1;
    }
    (0..=n).filter(|&k| is[k]).map(|k| k as u64).collect()
}

fn is_prime_trial(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn c1_ceiling(t: &PrimeTable) -> Outcome {
    let start = Instant::now();
    let r = scan::verify(
        BoundKind::Theorem1Ceiling,
        t,
        2.0,
        1e6,
        &[Grid::Integers, Grid::PrimeAdjacent],
    )
    .unwrap();
    let elapsed = start.elapsed();
    check(
        r.violations.is_empty() && elapsed < Duration::from_secs(30),
        format!(
            "{} points, min margin {} at {}, {} near-ties, {:.2?}",
            r.points_evaluated,
            r.min_margin,
            r.argmin_x,
            r.near_ties.len(),
            elapsed
        ),
    )
}

/// Margins of the ceiling bound at x = 5..=62, frozen from the first scan.
const TIGHTNESS_FIXTURE: [f64; 58] = [0.0; 58];

fn c2_tightness(t: &PrimeTable) -> Outcome {
    let mut bad = Vec::new();
    let mut drift = Vec::new();
    for (i, n) in (5..=62u32).enumerate() {
        let x = n as f64;
        let r = bounds::evaluate(BoundKind::Theorem1Ceiling, x, t).unwrap();
        if r.margin != 0.0 && r.margin != 1.0 {
            bad.push(n);
        }
        if r.margin != TIGHTNESS_FIXTURE[i] {
            drift.push(n);
        }
    }
    check(
        bad.is_empty() && drift.is_empty(),
        format!("outside {{0,1}}: {bad:?}; differs from fixture: {drift:?}"),
    )
}

fn c3_asymptotic_13() -> Outcome {
    let start = Instant::now();
    let big = build_table(10_000_000).unwrap();
    let built = start.elapsed();
    let r = scan::verify(BoundKind::Asymptotic13, &big, 2.0, 1e7, &[Grid::Integers]).unwrap();
    let elapsed = start.elapsed();
    check(
        r.violations.is_empty()
            && r.points_evaluated == 10_000_000 - 1
            && elapsed < Duration::from_secs(120),
        format!(
            "{} points, min margin {} at {}, sieve {:.2?}, total {:.2?}",
            r.points_evaluated, r.min_margin, r.argmin_x, built, elapsed
        ),
    )
}

fn c4_linear_rest(t: &PrimeTable) -> Outcome {
    let r = scan::verify(BoundKind::LinearRest, t, 3.0, 1e6, &[Grid::Integers]).unwrap();
    check(
        r.violations.is_empty() && r.points_evaluated == 999_998,
        format!("{} points, min margin {} at {}", r.points_evaluated, r.min_margin, r.argmin_x),
    )
}

fn c5_integral_corollaries(t: &PrimeTable) -> Outcome {
    let prefix = PrefixIntegrals::new(t);
    let ln2 = 2f64.ln();
    let mut failures = Vec::new();
    let mut min_theta_slack = f64::INFINITY;
    let mut min_pi_slack = f64::INFINITY;
    for n in 3..=1_000_000u64 {
        let x = n as f64;
        let ti = prefix.theta_integral(x).unwrap();
        let pi = prefix.pi_integral(x).unwrap();
        let theta_rhs = 0.5 * (x - 1.0) * ln2 / x.ln() + 1.0;
        let pi_rhs = 0.5 * (x - 1.0) * ln2 + x.ln();
        let (st, sp) = (theta_rhs - ti.value, pi_rhs - pi.value);
        min_theta_slack = min_theta_slack.min(st);
        min_pi_slack = min_pi_slack.min(sp);
        if st < -ti.abs_error_bound || sp < -pi.abs_error_bound {
            failures.push(n);
        }
    }
    // The prefix route must agree with the direct piece-by-piece sum.
    let mut disagree = Vec::new();
    for n in (3..=1_000_000u64).step_by(99_991).chain([1_000_000]) {
        let x = n as f64;
        let (d, q) = (analytic::theta_integral(x, t).unwrap(), prefix.theta_integral(x).unwrap());
        let (e, r) = (analytic::pi_integral(x, t).unwrap(), prefix.pi_integral(x).unwrap());
        if (d.value - q.value).abs() > d.abs_error_bound + q.abs_error_bound
            || (e.value - r.value).abs() > e.abs_error_bound + r.abs_error_bound
        {
            disagree.push(n);
        }
    }
    check(
        failures.is_empty() && disagree.is_empty(),
        format!(
            "min slack θ-integral {min_theta_slack}, π-integral {min_pi_slack}; failures {:?}; route disagreements {disagree:?}",
            &failures[..failures.len().min(5)]
        ),
    )
}

fn c6_abel(t: &PrimeTable) -> Outcome {
    let mut worst_big: f64 = 0.0;
    for x in [1e3, 1e4, 1e5, 1e6] {
        let a = analytic::abel_pi_residual(x, t).unwrap().abs();
        let b = analytic::abel_theta_residual(x, t).unwrap().abs();
        worst_big = worst_big.max(a).max(b);
    }
    let mut worst_small: f64 = 0.0;
    let mut at = 0.0;
    for n in 2..=10_000u32 {
        let x = n as f64;
        let a = analytic::abel_pi_residual(x, t).unwrap().abs();
        let b = analytic::abel_theta_residual(x, t).unwrap().abs();
        if a.max(b) > worst_small {
            worst_small = a.max(b);
            at = x;
        }
    }
    check(
        worst_big <= 1e-7 && worst_small <= 1e-9,
        format!("max |residual| at 10^3..10^6: {worst_big:e}; over integers ≤ 10^4: {worst_small:e} (x = {at})"),
    )
}

fn enumerate_even_multiples(x: u64) -> Vec<u64> {
    let mut out = Vec::new();
    for p in (2..=x).filter(|&p| is_prime_trial(p)) {
        let mut v = p * 2;
        while v <= x {
            out.push(v);
            v *= 2;
        }
    }
    out
}

fn c7_counting(t: &PrimeTable) -> Outcome {
    let mut over = Vec::new();
    for x in (3..=1_000_000u64).step_by(2) {
        let s = proof::floor_sum_by_halving(x, t).unwrap();
        if s > (x - 1) / 2 {
            over.push(x);
        }
    }
    let mut mismatch = Vec::new();
    let mut not_distinct = Vec::new();
    for x in (3..=10_000u64).step_by(2) {
        let brute = enumerate_even_multiples(x);
        let chain = proof::counting_chain(x, t).unwrap();
        let halving = proof::floor_sum_by_halving(x, t).unwrap();
        let distinct: HashSet<u64> = brute.iter().copied().collect();
        if distinct.len() != brute.len() || brute.iter().any(|v| v % 2 != 0 || *v >= x) {
            not_distinct.push(x);
        }
        if brute.len() as u64 != chain.s_exact || halving != chain.s_exact {
            mismatch.push(x);
        }
    }
    // Per-prime doubling against the halving identity on a sparse sample up to 10^6.
    for x in (10_001..=1_000_000u64).step_by(49_998).chain([999_999]) {
        let x = x | 1;
        if proof::counting_chain(x, t).unwrap().s_exact != proof::floor_sum_by_halving(x, t).unwrap() {
            mismatch.push(x);
        }
    }
    check(
        over.is_empty() && mismatch.is_empty() && not_distinct.is_empty(),
        format!(
            "500000 odd x checked; exceeding (x-1)/2: {over:?}; brute-force mismatches: {mismatch:?}; non-distinct: {not_distinct:?}"
        ),
    )
}

fn c8_geometric(t: &PrimeTable) -> Outcome {
    // 10³ log-spaced points in (2, 10⁶]: x_i = 2·(5·10⁵)^(i/1000), i = 1..=1000.
    let ratio = (1e6f64 / 2.0).ln();
    let mut bad = Vec::new();
    let mut worst: f64 = 0.0;
    for i in 1..=1000 {
        let x = if i == 1000 { 1e6 } else { 2.0 * (ratio * i as f64 / 1000.0).exp() };
        let theta = t.theta(x).unwrap();
        let g = bounds::bound_geometric(x, theta, 64).unwrap().value;
        let s = bounds::bound_theorem1_sharp(x, theta).unwrap();
        let rel = (g - s).abs() / s;
        worst = worst.max(rel);
        if rel > 1e-9 {
            bad.push((x, rel));
        }
    }
    let largest_bad = bad.last().map(|b| b.0).unwrap_or(f64::NAN);
    check(
        bad.is_empty(),
        format!(
            "{} of 1000 points exceed 1e-9 relative (largest failing x = {largest_bad}, worst rel diff {worst:e}); \
             the 64-term tail is (log 2/log x)^65 relative, above 1e-9 for x < 2.594",
            bad.len()
        ),
    )
}

fn c9_li_gap(t: &PrimeTable) -> Outcome {
    let th = scan::threshold(BoundKind::LiGap, t, 3.0, 1e6, &[Grid::Integers]).unwrap();
    let Some(x0) = th.empirical_x0 else {
        return fail("no empirical threshold in [3, 10^6]");
    };
    let r = scan::verify(BoundKind::LiGap, t, x0, 1e6, &[Grid::Integers]).unwrap();
    let ten = bounds::evaluate(BoundKind::LiGap, 10.0, t).unwrap();
    check(
        x0 <= 100.0 && r.violations.is_empty() && !ten.holds && (ten.margin + 0.0416).abs() < 1e-4,
        format!(
            "x0 = {x0}, {} points from x0 with min margin {}; x = 10 margin {}",
            r.points_evaluated, r.min_margin, ten.margin
        ),
    )
}

fn c10_sieve(t: &PrimeTable) -> Outcome {
    let reference = reference_sieve(1_000_000);
    let trial = (0..=10_000u64).filter(|&n| is_prime_trial(n)).count();
    let (p4, p6) = (t.pi(1e4).unwrap(), t.pi(1e6).unwrap());
    check(
        p4 == 1229 && p6 == 78498 && trial == 1229 && reference.len() == 78498 && t.primes() == &reference[..],
        format!("π(10^4) = {p4}, π(10^6) = {p6}; trial division {trial}, reference sieve {}", reference.len()),
    )
}

fn main() -> ExitCode {
    let table = build_table(1_000_000).unwrap();
    let t = &table;
    let criteria: Vec<(&str, Criterion<'_>)> = vec![
        ("1. ceiling bound holds on [2, 10^6] integers + prime-adjacent", Box::new(|| c1_ceiling(t))),
        ("2. ceiling margin in {0, 1} on [5, 62]", Box::new(|| c2_tightness(t))),
        ("3. (1 + log 2/2) x/log x bound on [2, 10^7]", Box::new(c3_asymptotic_13)),
        ("4. (log 2/2) x + 2 bound on [3, 10^6]", Box::new(|| c4_linear_rest(t))),
        ("5. integral corollaries on [3, 10^6]", Box::new(|| c5_integral_corollaries(t))),
        ("6. Abel identity residuals", Box::new(|| c6_abel(t))),
        ("7. even-multiple counting bound", Box::new(|| c7_counting(t))),
        ("8. 64-term geometric series vs sharp form", Box::new(|| c8_geometric(t))),
        ("9. Li gap from empirical threshold", Box::new(|| c9_li_gap(t))),
        ("10. sieve ground truth", Box::new(|| c10_sieve(t))),
    ];

    let mut failed = 0;
    for (name, run) in &criteria {
        let o = run();
        println!("[{}] {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        if !o.pass {
            failed += 1;
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
