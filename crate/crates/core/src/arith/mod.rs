//! Exact integer arithmetic: factorization, the sum-of-divisors function, the
//! additive function log(sigma(n)/n) and its prime-power values, plus bulk
//! sieves over ranges.

mod primality;
mod sieve;
mod sums;

pub use primality::{factor_u64, gcd_u64, is_prime_u64, mul_mod, pow_mod, SMALL_PRIMES};
pub(crate) use sieve::sigma_fill;
pub use sieve::{
    primes_up_to, sigma_sieve, sigma_sieve_with_budget, LpfTable, SigmaTable,
    DEFAULT_MAX_SIEVE_SPAN,
};
pub use sums::{
    mertens_report, theta_check, theta_check_all_primes, Kahan, MertensReport, ThetaReport,
};

use num_bigint::BigUint;
use num_traits::One;
use thiserror::Error;

use crate::log_rational::LogRational;

#[derive(Debug, Error)]
pub enum ArithError {
    #[error("sigma({n}) = {exact} does not fit in a machine word")]
    SigmaOverflow { n: u64, exact: BigUint },
    #[error("sieve span {span} exceeds the configured budget {budget}")]
    SieveBudget { span: u64, budget: u64 },
}

/// Exact prime-power decomposition of a positive integer.
///
/// Invariants: the product of p^a equals `n`, primes are strictly increasing,
/// exponents are >= 1, and every listed prime passes the primality test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    n: u64,
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    /// p-adic valuation of n.
    pub fn valuation(&self, p: u64) -> u32 {
        self.factors
            .iter()
            .find(|&&(q, _)| q == p)
            .map_or(0, |&(_, a)| a)
    }

    /// All divisors of n in ascending order.
    pub fn divisors(&self) -> Vec<u64> {
        let mut divs = vec![1u64];
        for &(p, a) in &self.factors {
            let prev = divs.len();
            let mut pe = 1u64;
            for _ in 0..a {
                pe *= p;
                for i in 0..prev {
                    divs.push(divs[i] * pe);
                }
            }
        }
        divs.sort_unstable();
        divs
    }

    /// Reassemble from parts, asserting the invariants hold.
    pub fn from_parts(n: u64, factors: Vec<(u64, u32)>) -> Self {
        let f = Factorization { n, factors };
        f.assert_valid();
        f
    }

    fn assert_valid(&self) {
        let mut prod: u128 = 1;
        let mut last = 0u64;
        for &(p, a) in &self.factors {
            assert!(p > last, "primes must be strictly increasing");
            assert!(a >= 1, "exponents must be >= 1");
            assert!(is_prime_u64(p), "{p} is not prime");
            prod *= (p as u128).pow(a);
            last = p;
        }
        assert_eq!(prod, self.n as u128, "factor product must equal n");
    }
}

/// Factor any n in [1, 2^63): trial division below 2^16, then Pollard rho
/// with the deterministic 64-bit primality test.
pub fn factorize(n: u64) -> Factorization {
    assert!(n >= 1, "factorize requires n >= 1");
    Factorization { n, factors: factor_u64(n) }
}

/// sigma(p^a) as a big integer: (p^(a+1) - 1)/(p - 1).
pub fn sigma_prime_power(p: u64, a: u32) -> BigUint {
    let p = BigUint::from(p);
    let num = p.pow(a + 1) - 1u32;
    let den = &p - 1u32;
    num / den
}

/// Exact sum of divisors as a big integer; never overflows.
pub fn sigma_big(f: &Factorization) -> BigUint {
    f.factors
        .iter()
        .map(|&(p, a)| sigma_prime_power(p, a))
        .fold(BigUint::one(), |acc, x| acc * x)
}

/// Sum of divisors as a machine word; reports the exact value on overflow.
pub fn sigma(f: &Factorization) -> Result<u64, ArithError> {
    let exact = sigma_big(f);
    u64::try_from(&exact).map_err(|_| ArithError::SigmaOverflow { n: f.n, exact })
}

/// Value of the additive function on a prime power: log(sigma(p^a)/p^a),
/// which also equals log((1 - p^-(a+1))/(1 - p^-1)). a = 0 gives log 1 = 0.
pub fn ell(p: u64, a: u32) -> LogRational {
    debug_assert!(is_prime_u64(p), "{p} is not prime");
    if a == 0 {
        return LogRational::zero();
    }
    let num = sigma_prime_power(p, a);
    let den = BigUint::from(p).pow(a);
    LogRational::from_parts(num, den)
}

/// The additive function log(sigma(n)/n), as an exact log-rational.
/// Always >= 0 because sigma(n) >= n.
pub fn g(f: &Factorization) -> LogRational {
    f.factors
        .iter()
        .map(|&(p, a)| ell(p, a))
        .sum()
}

/// Test-support oracles, independent of the factorization path.
pub mod test_oracles {
    /// sigma by direct trial-division divisor enumeration.
    pub fn sigma_naive(n: u64) -> u64 {
        let mut s = 0u64;
        let mut d = 1u64;
        while d * d <= n {
            if n % d == 0 {
                s += d;
                if d != n / d {
                    s += n / d;
                }
            }
            d += 1;
        }
        s
    }

    /// Primality by trial division.
    pub fn is_prime_naive(n: u64) -> bool {
        if n < 2 {
            return false;
        }
        let mut d = 2u64;
        while d * d <= n {
            if n % d == 0 {
                return false;
            }
            d += 1;
        }
        true
    }

    /// All divisors of n by trial division, ascending.
    pub fn divisors_naive(n: u64) -> Vec<u64> {
        let mut small = Vec::new();
        let mut large = Vec::new();
        let mut d = 1u64;
        while d * d <= n {
            if n % d == 0 {
                small.push(d);
                if d != n / d {
                    large.push(n / d);
                }
            }
            d += 1;
        }
        large.reverse();
        small.extend(large);
        small
    }
}

#[cfg(test)]
mod tests {
    use super::test_oracles::*;
    use super::*;

    #[test]
    fn factorize_examples() {
        assert_eq!(factorize(1).factors(), &[]);
        assert_eq!(factorize(126).factors(), &[(2, 1), (3, 2), (7, 1)]);
        assert_eq!(factorize(2759).factors(), &[(31, 1), (89, 1)]);
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(sigma(&factorize(1)).unwrap(), 1);
        // sigma(6) = 2 sigma(5): the smallest solution for k = 2
        assert_eq!(sigma(&factorize(5)).unwrap(), 6);
        assert_eq!(sigma(&factorize(6)).unwrap(), 12);
        // sigma(1920) = 3 sigma(1919): member of the k = 3 solution list
        assert_eq!(sigma(&factorize(1920)).unwrap(), 6120);
        assert_eq!(sigma_naive(1920), 6120);
        assert_eq!(sigma(&factorize(1919)).unwrap(), 2040);
    }

    #[test]
    fn sigma_overflow_reports_exact_value() {
        // primorial-rich number with enormous sigma: 2^62 * 3 * 5 * 7 ... none
        // overflow; use a number with sigma just past u64::MAX instead.
        // 18446744073709551557 is the largest prime below 2^64; its sigma is
        // p + 1 = 2^64 - 58, still a u64. Use p * 2 pattern via big n:
        let p = 18_446_744_073_709_551_557u64 / 4; // odd composite chunk
        let f = factorize(p);
        // not asserting overflow here; just that sigma_big and sigma agree
        assert_eq!(sigma_big(&f), BigUint::from(sigma(&f).unwrap()));

        // A genuine overflow: n = 2^63 - ... build directly from parts.
        // 2^62 has sigma = 2^63 - 1 (fits); multiply by 3: sigma *= 4.
        let f = Factorization::from_parts(3 * (1u64 << 62), vec![(2, 62), (3, 1)]);
        match sigma(&f) {
            Err(ArithError::SigmaOverflow { exact, .. }) => {
                assert_eq!(exact, (BigUint::from((1u128 << 63) - 1)) * 4u32);
            }
            other => panic!("expected overflow, got {other:?}"),
        }
    }

    #[test]
    fn ell_examples() {
        assert!(ell(5, 0).is_zero());
        assert_eq!(ell(5, 1), LogRational::from_u64_parts(6, 5));
        assert_eq!(ell(2, 3), LogRational::from_u64_parts(15, 8));
    }

    #[test]
    fn g_examples() {
        assert!(g(&factorize(1)).is_zero());
        assert_eq!(g(&factorize(6)), LogRational::from_u64_parts(2, 1));
        for p in [2u64, 3, 97, 65537] {
            assert_eq!(g(&factorize(p)), LogRational::from_u64_parts(p + 1, p));
        }
    }

    #[test]
    fn g_nonnegative_everywhere_sampled() {
        for n in 1..=2000u64 {
            assert!(g(&factorize(n)).is_nonnegative());
        }
    }

    #[test]
    fn divisors_match_naive() {
        for n in [1u64, 2, 12, 126, 2759, 5040, 99991] {
            assert_eq!(factorize(n).divisors(), divisors_naive(n));
        }
    }

    #[test]
    fn valuation_lookup() {
        let f = factorize(720); // 2^4 * 3^2 * 5
        assert_eq!(f.valuation(2), 4);
        assert_eq!(f.valuation(3), 2);
        assert_eq!(f.valuation(5), 1);
        assert_eq!(f.valuation(7), 0);
    }

    #[test]
    fn naive_primality_agrees() {
        for n in 0..5000u64 {
            assert_eq!(is_prime_u64(n), is_prime_naive(n), "n={n}");
        }
    }
}
