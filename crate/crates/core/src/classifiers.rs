//! Combinatorial divisor classifiers: equal-sum divisor partitions (Zumkeller
//! and the k-part generalization), practical numbers, abundance and
//! k-perfection flags, and the product construction that builds k-part
//! numbers from practical ones.

use num_bigint::BigUint;
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::arith::{factorize, gcd_u64, sigma_big, test_oracles::divisors_naive};
use crate::solutions::SolutionRecord;

/// Default step allowance for one partition search (DP word updates plus
/// branch nodes).
pub const DEFAULT_PARTITION_BUDGET: u64 = 10_000_000;

#[derive(Debug, Error)]
pub enum ClassifierError {
    #[error("inputs must be coprime")]
    NotCoprime,
    #[error("first factor must be practical")]
    NotPractical,
    #[error("k must divide sigma(n)")]
    SigmaNotDivisible,
    #[error("second factor is not (k-1)-layered")]
    FactorNotLayered,
    #[error("second factor's (k-1)-layered status is undecided within budget")]
    FactorUndecided,
    #[error("product overflows the supported range")]
    Overflow,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchStatus {
    Decided,
    Timeout,
}

/// Witness that the divisors of n split into k disjoint parts of equal sum.
#[derive(Debug, Clone, Serialize)]
pub struct PartitionCertificate {
    pub n: u64,
    pub k: u64,
    pub parts: Vec<Vec<u64>>,
}

impl PartitionCertificate {
    /// Re-verification independent of the search: disjointness, coverage of
    /// the full divisor set (recomputed by trial division), equal sums.
    pub fn verify(&self) -> bool {
        let divisors = divisors_naive(self.n);
        let mut seen: Vec<u64> = Vec::new();
        let sigma: u64 = divisors.iter().sum();
        if self.parts.len() as u64 != self.k || sigma % self.k != 0 {
            return false;
        }
        let target = sigma / self.k;
        for part in &self.parts {
            if part.iter().sum::<u64>() != target {
                return false;
            }
            seen.extend(part);
        }
        seen.sort_unstable();
        seen == divisors
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("certificate serializes")
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassifierVerdict {
    pub n: u64,
    pub k: u64,
    /// 2-part equal-sum partition exists; None if undecided within budget.
    pub zumkeller: Option<bool>,
    /// k-part equal-sum partition exists; None if undecided within budget.
    pub k_layered: Option<bool>,
    pub practical: bool,
    pub abundant: bool,
    pub perfect: bool,
    pub k_perfect: bool,
    /// Some subset of proper divisors sums to n; None if undecided.
    pub semiperfect: Option<bool>,
    pub certificate: Option<PartitionCertificate>,
    pub search_status: SearchStatus,
}

enum PartitionOutcome {
    Partitioned(Vec<Vec<u64>>),
    Impossible,
    Timeout,
}

/// Decides whether the divisors of n split into k parts of equal sum.
///
/// Returns the full verdict; the certificate witnesses a positive k-layered
/// answer. The search peels parts one at a time, forcing the largest
/// unassigned divisor into the current part, with a bitset subset-sum
/// feasibility check in front of every peel.
pub fn is_k_layered(n: u64, k: u64, budget: u64) -> ClassifierVerdict {
    assert!(n >= 1 && k >= 1);
    let mut budget = budget;
    let f = factorize(n);
    let sigma = sigma_big(&f);
    let divisors = f.divisors();

    let two_n = BigUint::from(n) * 2u32;
    let abundant = sigma > two_n;
    let perfect = sigma == two_n;
    let k_perfect = sigma == BigUint::from(n) * k;
    let practical = is_practical(n);

    let (k_layered, certificate, mut timed_out) =
        match layered_decision(n, k, &divisors, &sigma, &mut budget) {
            PartitionOutcome::Partitioned(parts) => {
                (Some(true), Some(PartitionCertificate { n, k, parts }), false)
            }
            PartitionOutcome::Impossible => (Some(false), None, false),
            PartitionOutcome::Timeout => (None, None, true),
        };

    let zumkeller = if k == 2 {
        k_layered
    } else {
        match layered_decision(n, 2, &divisors, &sigma, &mut budget) {
            PartitionOutcome::Partitioned(_) => Some(true),
            PartitionOutcome::Impossible => Some(false),
            PartitionOutcome::Timeout => {
                timed_out = true;
                None
            }
        }
    };

    let semiperfect = match semiperfect_decision(n, &divisors, &mut budget) {
        Some(b) => Some(b),
        None => {
            timed_out = true;
            None
        }
    };

    ClassifierVerdict {
        n,
        k,
        zumkeller,
        k_layered,
        practical,
        abundant,
        perfect,
        k_perfect,
        semiperfect,
        certificate,
        search_status: if timed_out { SearchStatus::Timeout } else { SearchStatus::Decided },
    }
}

fn layered_decision(
    n: u64,
    k: u64,
    divisors: &[u64],
    sigma: &BigUint,
    budget: &mut u64,
) -> PartitionOutcome {
    if k == 1 {
        return PartitionOutcome::Partitioned(vec![divisors.to_vec()]);
    }
    if !(sigma % k).is_zero() {
        return PartitionOutcome::Impossible;
    }
    let Ok(target) = u64::try_from(sigma / k) else {
        // targets beyond u64 cannot be searched; report as undecided
        return PartitionOutcome::Timeout;
    };
    if target < n {
        // the part containing the divisor n itself would overshoot
        return PartitionOutcome::Impossible;
    }
    let mut desc: Vec<u64> = divisors.to_vec();
    desc.sort_unstable_by(|a, b| b.cmp(a));
    peel_parts(&desc, k, target, budget)
}

fn peel_parts(remaining: &[u64], parts_left: u64, target: u64, budget: &mut u64) -> PartitionOutcome {
    if parts_left == 1 {
        debug_assert_eq!(remaining.iter().sum::<u64>(), target);
        return PartitionOutcome::Partitioned(vec![remaining.to_vec()]);
    }
    // feasibility: some subset containing the forced largest element must
    // reach the target
    let largest = remaining[0];
    if largest > target {
        return PartitionOutcome::Impossible;
    }
    let Some(reach) = reachable_sums(&remaining[1..], target - largest, budget) else {
        return PartitionOutcome::Timeout;
    };
    if !bit_is_set(&reach, target - largest) {
        return PartitionOutcome::Impossible;
    }

    let mut chosen_idx = vec![0usize];
    let suffix: Vec<u64> = suffix_sums(remaining);
    let mut timed_out = false;
    let result = dfs_part(
        remaining,
        1,
        target - largest,
        &suffix,
        &mut chosen_idx,
        parts_left,
        target,
        budget,
        &mut timed_out,
    );
    match result {
        Some(parts) => PartitionOutcome::Partitioned(parts),
        None if timed_out => PartitionOutcome::Timeout,
        None => PartitionOutcome::Impossible,
    }
}

/// Extend the current part from index `start` until it covers `need`, then
/// peel the remaining parts. Divisors are scanned largest-first.
#[allow(clippy::too_many_arguments)]
fn dfs_part(
    remaining: &[u64],
    start: usize,
    need: u64,
    suffix: &[u64],
    chosen_idx: &mut Vec<usize>,
    parts_left: u64,
    target: u64,
    budget: &mut u64,
    timed_out: &mut bool,
) -> Option<Vec<Vec<u64>>> {
    if *budget == 0 {
        *timed_out = true;
        return None;
    }
    *budget -= 1;
    if need == 0 {
        let mut in_part = vec![false; remaining.len()];
        for &i in chosen_idx.iter() {
            in_part[i] = true;
        }
        let rest: Vec<u64> = remaining
            .iter()
            .copied()
            .zip(&in_part)
            .filter_map(|(v, &used)| (!used).then_some(v))
            .collect();
        return match peel_parts(&rest, parts_left - 1, target, budget) {
            PartitionOutcome::Partitioned(mut parts) => {
                let part: Vec<u64> = chosen_idx.iter().map(|&i| remaining[i]).collect();
                parts.insert(0, part);
                Some(parts)
            }
            PartitionOutcome::Timeout => {
                *timed_out = true;
                None
            }
            PartitionOutcome::Impossible => None,
        };
    }
    for i in start..remaining.len() {
        let v = remaining[i];
        if v > need {
            continue;
        }
        if suffix[i] < need {
            break; // everything from here on is too small in total
        }
        chosen_idx.push(i);
        if let Some(parts) = dfs_part(
            remaining,
            i + 1,
            need - v,
            suffix,
            chosen_idx,
            parts_left,
            target,
            budget,
            timed_out,
        ) {
            return Some(parts);
        }
        chosen_idx.pop();
        if *timed_out {
            return None;
        }
    }
    None
}

fn suffix_sums(values: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64; values.len() + 1];
    for i in (0..values.len()).rev() {
        out[i] = out[i + 1] + values[i];
    }
    out
}

/// Bitset of subset sums of `values` capped at `target`; None when the step
/// budget runs out.
fn reachable_sums(values: &[u64], target: u64, budget: &mut u64) -> Option<Vec<u64>> {
    let words = (target / 64 + 1) as usize;
    let mut bits = vec![0u64; words];
    bits[0] = 1;
    for &v in values {
        if v > target {
            continue;
        }
        let cost = words as u64;
        if *budget < cost {
            *budget = 0;
            return None;
        }
        *budget -= cost;
        or_shifted(&mut bits, v);
    }
    Some(bits)
}

/// bits |= bits << shift, in place.
fn or_shifted(bits: &mut [u64], shift: u64) {
    let word_shift = (shift / 64) as usize;
    let bit_shift = shift % 64;
    for i in (word_shift..bits.len()).rev() {
        let mut v = bits[i - word_shift] << bit_shift;
        if bit_shift > 0 && i > word_shift {
            v |= bits[i - word_shift - 1] >> (64 - bit_shift);
        }
        bits[i] |= v;
    }
}

fn bit_is_set(bits: &[u64], idx: u64) -> bool {
    bits[(idx / 64) as usize] & (1 << (idx % 64)) != 0
}

fn semiperfect_decision(n: u64, divisors: &[u64], budget: &mut u64) -> Option<bool> {
    if n == 1 {
        return Some(false);
    }
    let proper: Vec<u64> = divisors.iter().copied().filter(|&d| d < n).collect();
    let reach = reachable_sums(&proper, n, budget)?;
    Some(bit_is_set(&reach, n))
}

/// Structure criterion for practical numbers: n = 1, or n even with every
/// successive prime at most 1 + sigma of the part before it.
pub fn is_practical(n: u64) -> bool {
    assert!(n >= 1);
    if n == 1 {
        return true;
    }
    let f = factorize(n);
    let factors = f.factors();
    if factors[0].0 != 2 {
        return false;
    }
    let mut sigma_prefix: u128 = 0;
    for &(p, a) in factors {
        if sigma_prefix > 0 && p as u128 > sigma_prefix + 1 {
            return false;
        }
        let mut pp: u128 = 1;
        let mut s: u128 = 1;
        for _ in 0..a {
            pp *= p as u128;
            s += pp;
        }
        sigma_prefix = if sigma_prefix == 0 { s } else { sigma_prefix * s };
    }
    true
}

/// sigma(n) == k * n.
pub fn is_k_perfect(n: u64, k: u64) -> bool {
    assert!(n >= 1 && k >= 1);
    sigma_big(&factorize(n)) == BigUint::from(n) * k
}

/// Product construction: a practical n with k | sigma(n), times a coprime
/// (k-1)-layered x, is k-layered. Checks the preconditions, then returns the
/// verdict for the product.
pub fn product_construction_check(
    n: u64,
    x: u64,
    k: u64,
    budget: u64,
) -> Result<ClassifierVerdict, ClassifierError> {
    assert!(k >= 2);
    if gcd_u64(n, x) != 1 {
        return Err(ClassifierError::NotCoprime);
    }
    if !is_practical(n) {
        return Err(ClassifierError::NotPractical);
    }
    if !(sigma_big(&factorize(n)) % k).is_zero() {
        return Err(ClassifierError::SigmaNotDivisible);
    }
    if k - 1 >= 2 {
        let v = is_k_layered(x, k - 1, budget);
        match v.k_layered {
            Some(true) => {}
            Some(false) => return Err(ClassifierError::FactorNotLayered),
            None => return Err(ClassifierError::FactorUndecided),
        }
    }
    let product = n.checked_mul(x).ok_or(ClassifierError::Overflow)?;
    Ok(is_k_layered(product, k, budget))
}

#[derive(Debug, Clone, Serialize)]
pub struct AnnotatedSolution {
    #[serde(flatten)]
    pub record: SolutionRecord,
    pub verdict: ClassifierVerdict,
}

/// Classifier annotations for n+1 of every record, with the record's own k.
pub fn annotate_solutions(records: &[SolutionRecord], budget: u64) -> Vec<AnnotatedSolution> {
    records
        .iter()
        .map(|rec| AnnotatedSolution {
            record: rec.clone(),
            verdict: is_k_layered(rec.n + 1, rec.k, budget),
        })
        .collect()
}

/// Definitional oracles, deliberately independent of the fast paths.
pub mod oracles {
    use crate::arith::test_oracles::divisors_naive;

    /// Practicality straight from the definition: every m < n is a sum of
    /// distinct divisors of n.
    pub fn is_practical_by_subset_sums(n: u64) -> bool {
        if n == 1 {
            return true;
        }
        let divisors = divisors_naive(n);
        let cap = (n - 1) as usize;
        let words = cap / 64 + 1;
        let mut bits = vec![0u64; words];
        bits[0] = 1;
        for &d in &divisors {
            if d as usize > cap {
                continue;
            }
            super::or_shifted(&mut bits, d);
        }
        (1..=cap).all(|m| bits[m / 64] & (1 << (m % 64)) != 0)
    }
}
