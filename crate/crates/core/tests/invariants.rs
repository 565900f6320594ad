//! Exhaustive deterministic invariants that are too heavy for unit tests but
//! cheap enough to run on every `cargo test`.

use num_bigint::BigUint;

use sigmak_core::arith::{ell, factorize, is_prime_u64, primes_up_to, sigma_big};
use sigmak_core::classifiers::{is_k_layered, DEFAULT_PARTITION_BUDGET};
use sigmak_core::solutions::search;

/// For every prime p and a >= 1 the prime-power value sits below 2/p, and
/// the a = 1 value above 1/(2p).
#[test]
fn ell_bounds_on_the_full_grid() {
    for p in primes_up_to(10_000) {
        let mut last = ell(p, 0);
        for a in 1..=10u32 {
            let v = ell(p, a);
            assert!(v.to_f64() <= 2.0 / p as f64, "ell({p}^{a}) above 2/p");
            assert!(v > last, "ell must increase strictly in the exponent");
            last = v;
        }
        assert!(
            ell(p, 1).to_f64() >= 1.0 / (2.0 * p as f64),
            "ell({p}) below 1/(2p)"
        );
    }
}

/// Deterministic Miller-Rabin agrees with trial division across 10^7.
#[test]
fn primality_agrees_with_trial_division_to_1e7() {
    // sieve as the wholesale form of trial division
    let limit = 10_000_000u64;
    let mut is_comp = vec![false; (limit + 1) as usize];
    for p in 2..=limit {
        if !is_comp[p as usize] {
            assert!(is_prime_u64(p), "{p} should be prime");
            let mut m = p.checked_mul(p);
            while let Some(v) = m {
                if v > limit {
                    break;
                }
                is_comp[v as usize] = true;
                m = v.checked_add(p);
            }
        } else {
            assert!(!is_prime_u64(p), "{p} should be composite");
        }
    }
    // spot-check the sieve against literal trial division
    for n in [2u64, 3, 1483, 9_999_991, 9_999_999] {
        let naive = sigmak_core::arith::test_oracles::is_prime_naive(n);
        assert_eq!(is_prime_u64(n), naive, "n={n}");
    }
}

/// Among all k=2 solutions up to 10^6, the only prime one is n = 5.
#[test]
fn five_is_the_only_prime_solution_for_k2_to_1e6() {
    let sols = search(2, 1_000_000).unwrap();
    assert!(!sols.is_empty());
    for s in &sols {
        if s.n != 5 {
            assert!(!is_prime_u64(s.n), "unexpected prime solution n={}", s.n);
        }
    }
    assert!(sols.iter().any(|s| s.n == 5));
}

/// The defining equation forces k | sigma(n+1); solutions must also satisfy
/// sigma(n+1) >= 2(n+1) once n >= 2 (equality exactly when n is prime).
/// The trivial solution n = 1 for k = 3 shows why n = 1 is excluded:
/// sigma(2) = 3 < 4.
#[test]
fn solution_records_satisfy_structural_necessities() {
    for k in [2u64, 3, 4, 5, 7] {
        for s in search(k, 100_000).unwrap() {
            let sigma_n1 = sigma_big(&factorize(s.n + 1));
            assert_eq!(BigUint::from(s.sigma_n1), sigma_n1);
            assert!((sigma_n1.clone() % k) == BigUint::from(0u32), "k | sigma(n+1) fails");
            if s.n >= 2 {
                let twice = BigUint::from(2 * (s.n + 1));
                assert!(sigma_n1 >= twice, "n+1 not abundant-or-perfect at n={}", s.n);
                if is_prime_u64(s.n) {
                    assert_eq!(sigma_n1, twice, "prime n must make n+1 exactly 2-perfect");
                }
            }
        }
    }
}

/// Positive 2-part verdicts imply the arithmetic necessities.
#[test]
fn zumkeller_necessities_on_decided_range() {
    let check = |n: u64| {
        let v = is_k_layered(n, 2, DEFAULT_PARTITION_BUDGET);
        if v.k_layered == Some(true) {
            let sigma = sigma_big(&factorize(n));
            assert!((sigma.clone() % 2u32) == BigUint::from(0u32), "sigma({n}) odd");
            assert!(sigma >= BigUint::from(2 * n), "sigma({n}) < 2n");
            assert!(v.certificate.unwrap().verify());
        }
    };
    for n in 1..=5_000u64 {
        check(n);
    }
    for n in (5_000..=100_000u64).step_by(977) {
        check(n);
    }
}

/// The CRT equivalence holds at every (y, r) whose period fits 10^6.
#[test]
fn period_equivalence_exhaustive_to_1e6() {
    use sigmak_core::prob::period_model_equivalence;
    use sigmak_core::truncation::TruncationParams;
    for y in [2u64, 3, 5, 7, 11, 13] {
        for r in 1u32.. {
            let params = TruncationParams::new(y, r, 0.01);
            let m = &params.period;
            if m > &BigUint::from(1_000_000u64) {
                break;
            }
            let check = period_model_equivalence(&params).unwrap();
            assert!(check.matches, "mismatch at y={y}, r={r}, M={m}");
        }
    }
}

/// Annotated solution classifier flags for the published k = 3 list.
#[test]
fn k3_records_annotation_facts() {
    let records = search(3, 11_219).unwrap();
    assert_eq!(records.len(), 4);
    for rec in &records {
        let sigma_n1 = sigma_big(&factorize(rec.n + 1));
        assert!((sigma_n1 % 3u32) == BigUint::from(0u32));
    }
    // 1920 = n+1 of the second solution is practical and 3-layered
    let v = is_k_layered(1920, 3, DEFAULT_PARTITION_BUDGET);
    assert_eq!(v.k_layered, Some(true));
    assert!(v.practical);
}
