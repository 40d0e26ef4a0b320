//! Odd-only segmented sieve of Eratosthenes.
//!
//! Index `j` in the odd-number space stands for `2j + 1`. Each segment covers
//! [`SEGMENT_LEN`] consecutive odd numbers. Segments are sieved independently
//! (in parallel) and concatenated in order, so the output does not depend on
//! scheduling.

use rayon::prelude::*;

/// Odd residues per segment.
pub const SEGMENT_LEN: u64 = 1 << 20;

/// Plain sieve for the base primes `≤ n`.
pub(crate) fn small_primes(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut m = i * i;
            while m <= n {
                composite[m] = true;
                m += i;
            }
        }
    }
    out
}

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// All primes `≤ limit`, ascending.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    // Odd indices 0..=last cover 1, 3, ..., the largest odd ≤ limit.
    let last = (limit - 1) / 2;
    let base: Vec<u64> = small_primes(isqrt(limit))
        .into_iter()
        .filter(|&p| p > 2)
        .collect();
    let segments = last / SEGMENT_LEN + 1;

    let chunks: Vec<Vec<u64>> = (0..segments)
        .into_par_iter()
        .map(|s| {
            let lo = s * SEGMENT_LEN;
            let hi = (lo + SEGMENT_LEN - 1).min(last);
            sieve_segment(lo, hi, &base)
        })
        .collect();

    let mut primes = Vec::with_capacity(chunks.iter().map(Vec::len).sum::<usize>() + 1);
    primes.push(2);
    for c in chunks {
        primes.extend(c);
    }
    primes
}

/// Sieve odd indices `lo..=hi`, returning the primes they represent.
fn sieve_segment(lo: u64, hi: u64, base: &[u64]) -> Vec<u64> {
    let len = (hi - lo + 1) as usize;
    let mut composite = vec![false; len];
    if lo == 0 {
        composite[0] = true; // 1
    }
    let top = 2 * hi + 1;
    for &p in base {
        if p * p > top {
            break;
        }
        let sq = (p * p - 1) / 2;
        let start = if sq >= lo {
            sq
        } else {
            let r = (p - 1) / 2;
            lo + (r + p - lo % p) % p
        };
        let mut j = start;
        while j <= hi {
            composite[(j - lo) as usize] = true;
            j += p;
        }
    }
    composite
        .iter()
        .enumerate()
        .filter(|(_, &c)| !c)
        .map(|(i, _)| 2 * (lo + i as u64) + 1)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn is_prime_trial(n: u64) -> bool {
        n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
    }

    #[test]
    fn tiny_limits() {
        assert!(primes_up_to(0).is_empty());
        assert!(primes_up_to(1).is_empty());
        assert_eq!(primes_up_to(2), vec![2]);
        assert_eq!(primes_up_to(3), vec![2, 3]);
        assert_eq!(primes_up_to(10), vec![2, 3, 5, 7]);
    }

    #[test]
    fn matches_trial_division() {
        let expected: Vec<u64> = (0..=20_000).filter(|&n| is_prime_trial(n)).collect();
        assert_eq!(primes_up_to(20_000), expected);
    }

    #[test]
    fn segment_boundaries() {
        // Crosses the first segment boundary at 2 * SEGMENT_LEN.
        let limit = 2 * SEGMENT_LEN + 1000;
        let seg = primes_up_to(limit);
        assert_eq!(seg, small_primes(limit));
    }

    #[test]
    fn isqrt_exact() {
        for n in [0, 1, 3, 4, 15, 16, 17, 99_999_999, 100_000_000, u32::MAX as u64] {
            let r = isqrt(n);
            assert!(r * r <= n && (r + 1) * (r + 1) > n);
        }
    }
}
