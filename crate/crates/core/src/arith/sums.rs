//! Prime sums: the Chebyshev theta function against its linear bound, and the
//! Mertens prime-reciprocal sum.

use serde::Serialize;

use super::sieve::primes_up_to;

/// Kahan-compensated accumulator; million-term log sums stay below 1e-12
/// accumulated error.
#[derive(Default, Clone, Copy)]
pub struct Kahan {
    sum: f64,
    carry: f64,
}

impl Kahan {
    pub fn add(&mut self, x: f64) {
        let y = x - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ThetaReport {
    pub x: u64,
    pub theta: f64,
    pub bound: f64,
    pub ok: bool,
}

/// theta(x) = sum of log p over primes p <= x, checked against 1.02x.
pub fn theta_check(x: u64) -> ThetaReport {
    assert!(x >= 2);
    let mut acc = Kahan::default();
    for p in primes_up_to(x) {
        acc.add((p as f64).ln());
    }
    let theta = acc.value();
    let bound = 1.02 * x as f64;
    ThetaReport { x, theta, bound, ok: theta < bound }
}

/// Checks theta(p) < 1.02p at every prime p <= x. Between primes theta is
/// constant while the bound grows, so prime points are the worst case.
pub fn theta_check_all_primes(x: u64) -> (bool, Option<u64>) {
    assert!(x >= 2);
    let mut acc = Kahan::default();
    for p in primes_up_to(x) {
        acc.add((p as f64).ln());
        if acc.value() >= 1.02 * p as f64 {
            return (false, Some(p));
        }
    }
    (true, None)
}

#[derive(Debug, Clone, Serialize)]
pub struct MertensReport {
    pub x: u64,
    pub sum: f64,
    pub loglog: f64,
    pub delta: f64,
}

/// sum of 1/p over primes p <= x, with delta = sum - log log x.
pub fn mertens_report(x: u64) -> MertensReport {
    assert!(x >= 3);
    let mut acc = Kahan::default();
    for p in primes_up_to(x) {
        acc.add(1.0 / p as f64);
    }
    let sum = acc.value();
    let loglog = (x as f64).ln().ln();
    MertensReport { x, sum, loglog, delta: sum - loglog }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theta_two() {
        let r = theta_check(2);
        assert!((r.theta - 2f64.ln()).abs() < 1e-15);
        assert!(r.ok);
    }

    #[test]
    fn theta_ten() {
        // log(2*3*5*7) = log 210
        let r = theta_check(10);
        assert!((r.theta - 210f64.ln()).abs() < 1e-12);
        assert!(r.ok);
        assert!((r.bound - 10.2).abs() < 1e-12);
    }

    #[test]
    fn mertens_three() {
        let r = mertens_report(3);
        assert!((r.sum - (0.5 + 1.0 / 3.0)).abs() < 1e-15);
    }

    #[test]
    fn mertens_ten() {
        let r = mertens_report(10);
        let expect = 0.5 + 1.0 / 3.0 + 0.2 + 1.0 / 7.0;
        assert!((r.sum - expect).abs() < 1e-15);
        assert!((r.sum - 1.1762).abs() < 1e-4);
    }
}
