//! Randomized invariants across modules.

use num_traits::One;
use proptest::prelude::*;

use sigmak_core::arith::{factorize, g, gcd_u64, sigma, sigma_sieve};
use sigmak_core::log_rational::LogRational;
use sigmak_core::prob::{levy_concentration, prime_diff_pmf, prob, Pmf, Provenance};
use sigmak_core::truncation::{consecutive_diff, g_tail, truncated_g, TruncationParams};

proptest! {
    #[test]
    fn sigma_is_multiplicative_on_coprime_pairs(m in 1u64..=1_000_000, n in 1u64..=1_000_000) {
        prop_assume!(gcd_u64(m, n) == 1);
        let lhs = sigma(&factorize(m * n)).unwrap();
        let rhs = sigma(&factorize(m)).unwrap() * sigma(&factorize(n)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn g_is_additive_on_coprime_pairs(m in 1u64..=1_000_000, n in 1u64..=1_000_000) {
        prop_assume!(gcd_u64(m, n) == 1);
        let whole = g(&factorize(m * n));
        let split = g(&factorize(m)) + g(&factorize(n));
        prop_assert_eq!(whole, split);
    }

    #[test]
    fn g_is_nonnegative(n in 1u64..=100_000_000) {
        prop_assert!(g(&factorize(n)).is_nonnegative());
    }

    #[test]
    fn sieve_agrees_with_factorization(lo in 1u64..=5_000_000, span in 0u64..200, probe in any::<u64>()) {
        let hi = lo + span;
        let table = sigma_sieve(lo, hi, 64).unwrap();
        let n = lo + probe % (span + 1);
        prop_assert_eq!(table.get(n), sigma(&factorize(n)).unwrap());
    }

    #[test]
    fn diff_is_periodic(n in 1u64..=5_000, y in 2u64..=7, r in 1u32..=3) {
        let params = TruncationParams::new(y, r, 0.01);
        let m = u64::try_from(&params.period).unwrap();
        prop_assert_eq!(
            consecutive_diff(n, &params),
            consecutive_diff(n + m, &params)
        );
    }

    #[test]
    fn truncation_decomposes_g(n in 1u64..=100_000, y in 2u64..=11, r in 1u32..=4) {
        let f = factorize(n);
        prop_assume!(!f.factors().iter().any(|&(p, a)| p <= y && a > r));
        let params = TruncationParams::new(y, r, 0.01);
        let whole = g(&f);
        let split = truncated_g(n, &params) + g_tail(n, y);
        prop_assert_eq!(whole, split);
    }

    #[test]
    fn z_pmf_is_symmetric(p_idx in 0usize..5, r in 1u32..=4) {
        let p = [2u64, 3, 5, 7, 11][p_idx];
        let z = prime_diff_pmf(p, r);
        for (v, pr) in z.atoms() {
            let mirrored = -v;
            prop_assert_eq!(&z.prob_of(&mirrored), pr);
        }
    }

    #[test]
    fn concentration_nondecreasing_in_l(weights in proptest::collection::vec(1u64..50, 2..8), l1 in 0.01f64..2.0, l2 in 0.01f64..2.0) {
        let pmf = pmf_from_weights(&weights);
        let (small, large) = if l1 <= l2 { (l1, l2) } else { (l2, l1) };
        let qs = levy_concentration(&pmf, small).q_exact;
        let ql = levy_concentration(&pmf, large).q_exact;
        prop_assert!(qs <= ql);
    }

    #[test]
    fn convolution_cannot_increase_concentration(
        w1 in proptest::collection::vec(1u64..50, 2..6),
        w2 in proptest::collection::vec(1u64..50, 2..6),
        l in 0.01f64..1.0,
    ) {
        let x = pmf_from_weights(&w1);
        let y = pmf_from_weights(&w2);
        let q_conv = levy_concentration(&x.convolve(&y), l).q_exact;
        let qx = levy_concentration(&x, l).q_exact;
        let qy = levy_concentration(&y, l).q_exact;
        prop_assert!(q_conv <= qx.min(qy));
    }

    #[test]
    fn convolution_is_order_independent(order in 0usize..6) {
        let parts = [prime_diff_pmf(2, 2), prime_diff_pmf(3, 2), prime_diff_pmf(5, 2)];
        let perms: [[usize; 3]; 6] =
            [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let reference = parts[0].convolve(&parts[1]).convolve(&parts[2]);
        let p = perms[order];
        let shuffled = parts[p[0]].convolve(&parts[p[1]]).convolve(&parts[p[2]]);
        prop_assert!(reference.same_atoms(&shuffled));
    }

    #[test]
    fn exact_pmfs_have_unit_mass(p_idx in 0usize..5, r in 1u32..=5) {
        let p = [2u64, 3, 5, 7, 11][p_idx];
        prop_assert!(prime_diff_pmf(p, r).total_mass().is_one());
    }
}

/// Distinct support points log(2), log(3/2), log(4/3), ... with the given
/// weights, normalized exactly.
fn pmf_from_weights(weights: &[u64]) -> Pmf {
    let total: u64 = weights.iter().sum();
    let atoms = weights.iter().enumerate().map(|(i, &w)| {
        let i = i as u64;
        (
            LogRational::from_u64_parts(i + 2, i + 1),
            prob(w, total),
        )
    });
    Pmf::from_atoms(atoms, Provenance::Exact)
}

#[test]
fn pmf_helper_masses_sum_to_one() {
    let p = pmf_from_weights(&[3, 4, 5]);
    assert!(p.total_mass().is_one());
}
