//! Bulk sieves: segmented sum-of-divisors tables, prime generation, and a
//! least-prime-factor table for full factorization over a range.

use rayon::prelude::*;

use super::ArithError;

/// Hard ceiling on the number of entries a single [`SigmaTable`] may hold.
pub const DEFAULT_MAX_SIEVE_SPAN: u64 = 1 << 28;

/// Exact sigma(n) for every n in an inclusive range.
#[derive(Debug, Clone)]
pub struct SigmaTable {
    pub lo: u64,
    pub hi: u64,
    pub values: Vec<u64>,
}

impl SigmaTable {
    #[inline]
    pub fn get(&self, n: u64) -> u64 {
        debug_assert!(n >= self.lo && n <= self.hi);
        self.values[(n - self.lo) as usize]
    }
}

/// Fill sigma values for [lo, hi] into `out` (length hi-lo+1) by divisor
/// accumulation. Divisors d <= sqrt(hi) are walked over their multiples; the
/// co-divisor m/q > sqrt(hi) is added from the quotient side.
pub(crate) fn sigma_fill(lo: u64, hi: u64, out: &mut [u64]) {
    debug_assert_eq!(out.len() as u64, hi - lo + 1);
    out.fill(0);
    let root = (hi as f64).sqrt() as u64 + 1;
    let root = root.min(hi);
    for d in 1..=root {
        // multiples of d in [lo, hi]
        let mut m = lo.div_ceil(d) * d;
        while m <= hi {
            out[(m - lo) as usize] += d;
            m += d;
        }
        // co-divisors: for multiples m = d*q, add q when q > root
        let mut q = (lo.div_ceil(d)).max(root + 1);
        let mut m2 = d * q;
        while m2 <= hi {
            out[(m2 - lo) as usize] += q;
            q += 1;
            m2 += d;
        }
    }
}

/// Exact sigma(n) for all n in [lo, hi], computed in independent segments.
///
/// Parallelizes over segments; output is deterministic and independent of
/// thread count.
pub fn sigma_sieve(lo: u64, hi: u64, segment_size: u64) -> Result<SigmaTable, ArithError> {
    sigma_sieve_with_budget(lo, hi, segment_size, DEFAULT_MAX_SIEVE_SPAN)
}

pub fn sigma_sieve_with_budget(
    lo: u64,
    hi: u64,
    segment_size: u64,
    max_span: u64,
) -> Result<SigmaTable, ArithError> {
    assert!(lo >= 1 && lo <= hi && segment_size >= 1);
    let span = hi - lo + 1;
    if span > max_span {
        return Err(ArithError::SieveBudget { span, budget: max_span });
    }
    let mut values = vec![0u64; span as usize];
    let seg = segment_size as usize;
    values
        .par_chunks_mut(seg)
        .enumerate()
        .for_each(|(i, chunk)| {
            let seg_lo = lo + (i as u64) * segment_size;
            let seg_hi = seg_lo + chunk.len() as u64 - 1;
            sigma_fill(seg_lo, seg_hi, chunk);
        });
    Ok(SigmaTable { lo, hi, values })
}

/// All primes p <= limit.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut is_comp = vec![false; n + 1];
    let mut primes = Vec::new();
    for p in 2..=n {
        if !is_comp[p] {
            primes.push(p as u64);
            let mut m = p * p;
            while m <= n {
                is_comp[m] = true;
                m += p;
            }
        }
    }
    primes
}

/// Least-prime-factor table for 0..=limit; lpf[n] == 0 marks n prime (or n < 2).
///
/// Linear sieve; lets callers factor any n <= limit in O(log n).
pub struct LpfTable {
    lpf: Vec<u32>,
}

impl LpfTable {
    pub fn build(limit: u64) -> Self {
        assert!(limit <= u32::MAX as u64, "lpf table limited to u32 range");
        let n = limit as usize;
        let mut lpf = vec![0u32; n + 1];
        let mut primes: Vec<u32> = Vec::new();
        for i in 2..=n {
            if lpf[i] == 0 {
                primes.push(i as u32);
            }
            for &p in &primes {
                let ip = i * p as usize;
                if ip > n {
                    break;
                }
                lpf[ip] = p;
                if i % p as usize == 0 {
                    break;
                }
            }
        }
        LpfTable { lpf }
    }

    /// Prime-power factorization of n (requires n <= limit).
    pub fn factor(&self, n: u64) -> Vec<(u64, u32)> {
        let mut out = Vec::new();
        let mut m = n as usize;
        while m > 1 {
            let p = if self.lpf[m] == 0 { m as u64 } else { self.lpf[m] as u64 };
            let mut e = 0u32;
            while m as u64 % p == 0 {
                m /= p as usize;
                e += 1;
            }
            out.push((p, e));
        }
        out
    }

    /// Visit (prime, exponent) pairs of n without allocating.
    #[inline]
    pub fn for_each_factor(&self, n: u64, mut f: impl FnMut(u64, u32)) {
        let mut m = n as usize;
        while m > 1 {
            let p = if self.lpf[m] == 0 { m as u64 } else { self.lpf[m] as u64 };
            let mut e = 0u32;
            while m as u64 % p == 0 {
                m /= p as usize;
                e += 1;
            }
            f(p, e);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::test_oracles::sigma_naive;

    #[test]
    fn sigma_first_ten() {
        let t = sigma_sieve(1, 10, 4).unwrap();
        assert_eq!(t.values, vec![1, 3, 4, 7, 6, 12, 8, 15, 13, 18]);
    }

    #[test]
    fn sigma_window() {
        let t = sigma_sieve(5, 6, 100).unwrap();
        assert_eq!(t.values, vec![6, 12]);
    }

    #[test]
    fn sigma_prime_singleton() {
        for p in [2u64, 97, 65537, 1_000_003] {
            let t = sigma_sieve(p, p, 1).unwrap();
            assert_eq!(t.values, vec![p + 1]);
        }
    }

    #[test]
    fn sigma_matches_naive_on_offset_range() {
        let lo = 999_950u64;
        let hi = 1_000_050u64;
        let t = sigma_sieve(lo, hi, 17).unwrap();
        for n in lo..=hi {
            assert_eq!(t.get(n), sigma_naive(n), "sigma({n})");
        }
    }

    #[test]
    fn segmentation_invariance() {
        let a = sigma_sieve(100, 1000, 7).unwrap();
        let b = sigma_sieve(100, 1000, 901).unwrap();
        assert_eq!(a.values, b.values);
    }

    #[test]
    fn sigma_lower_bound_and_prime_characterization() {
        let t = sigma_sieve(2, 3000, 256).unwrap();
        for n in 2..=3000u64 {
            assert!(t.get(n) >= n);
            assert_eq!(
                t.get(n) == n + 1,
                crate::arith::is_prime_u64(n),
                "sigma(n) = n + 1 must characterize primes, n={n}"
            );
        }
    }

    #[test]
    fn budget_error() {
        let err = sigma_sieve_with_budget(1, 1000, 10, 100).unwrap_err();
        assert!(matches!(err, ArithError::SieveBudget { .. }));
    }

    #[test]
    fn primes_small() {
        assert_eq!(primes_up_to(10), vec![2, 3, 5, 7]);
        assert_eq!(primes_up_to(1), Vec::<u64>::new());
        assert_eq!(primes_up_to(2), vec![2]);
    }

    #[test]
    fn lpf_factors() {
        let t = LpfTable::build(1000);
        assert_eq!(t.factor(126), vec![(2, 1), (3, 2), (7, 1)]);
        assert_eq!(t.factor(997), vec![(997, 1)]);
        assert_eq!(t.factor(1), vec![]);
    }
}
