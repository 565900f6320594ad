//! Deterministic 64-bit primality testing and Pollard-rho factorization.

use once_cell::sync::Lazy;

/// Primes below 2^16, used for trial division.
pub static SMALL_PRIMES: Lazy<Vec<u64>> = Lazy::new(|| {
    let mut is_comp = vec![false; 1 << 16];
    let mut primes = Vec::with_capacity(6542);
    for n in 2..(1u64 << 16) {
        if !is_comp[n as usize] {
            primes.push(n);
            let mut m = n * n;
            while m < (1 << 16) {
                is_comp[m as usize] = true;
                m += n;
            }
        }
    }
    primes
});

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc: u64 = 1;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// The first twelve primes are a complete Miller-Rabin witness set below
/// 3.3 * 10^24, which covers the whole u64 range.
const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

fn is_sprp(n: u64, a: u64) -> bool {
    let a = a % n;
    if a == 0 {
        return true;
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    let mut x = pow_mod(a, d, n);
    if x == 1 || x == n - 1 {
        return true;
    }
    for _ in 1..s {
        x = mul_mod(x, x, n);
        if x == n - 1 {
            return true;
        }
    }
    false
}

/// Deterministic primality test for the full u64 range.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    WITNESSES.iter().all(|&a| is_sprp(n, a))
}

/// Pollard's rho (Brent cycle detection). Assumes n is composite, odd, and
/// has no factor below 2^16. Returns a nontrivial factor.
fn pollard_rho(n: u64) -> u64 {
    debug_assert!(n > 1 && !is_prime_u64(n));
    let mut c: u64 = 1;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let mut x: u64 = 2;
        let mut y: u64 = 2;
        let mut d: u64 = 1;
        let mut q: u64 = 1;
        let mut count = 0u32;
        while d == 1 {
            x = f(x);
            y = f(f(y));
            let diff = x.abs_diff(y);
            if diff == 0 {
                break; // cycle without factor, retry with a new constant
            }
            q = mul_mod(q, diff, n);
            count += 1;
            if count % 64 == 0 {
                d = gcd_u64(q, n);
            }
        }
        if d == 1 && x != y {
            d = gcd_u64(x.abs_diff(y), n);
        }
        if d > 1 && d < n {
            return d;
        }
        c = c.wrapping_add(1);
    }
}

pub fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Full prime-power decomposition of n >= 1 as (prime, exponent) pairs with
/// strictly increasing primes. Trial division below 2^16, then Pollard rho.
pub fn factor_u64(n: u64) -> Vec<(u64, u32)> {
    let mut out: Vec<(u64, u32)> = Vec::new();
    if n <= 1 {
        return out;
    }
    let mut m = n;
    for &p in SMALL_PRIMES.iter() {
        if p * p > m {
            break;
        }
        if m % p == 0 {
            let mut e = 0u32;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            out.push((p, e));
        }
    }
    if m > 1 {
        let mut stack = vec![m];
        let mut large: Vec<u64> = Vec::new();
        while let Some(v) = stack.pop() {
            if is_prime_u64(v) {
                large.push(v);
            } else {
                let d = pollard_rho(v);
                stack.push(d);
                stack.push(v / d);
            }
        }
        large.sort_unstable();
        let mut i = 0;
        while i < large.len() {
            let p = large[i];
            let mut e = 0u32;
            while i < large.len() && large[i] == p {
                e += 1;
                i += 1;
            }
            out.push((p, e));
        }
    }
    out.sort_unstable_by_key(|&(p, _)| p);
    out
}
