//! The exact periodic probability model: per-prime difference variables on
//! uniform residues mod p^r, their independent sum over p <= y, Monte Carlo
//! sampling, the anti-concentration (Petrov) evaluation, and the check that
//! the sum's distribution matches the consecutive difference enumerated over
//! one full period.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::arith::ell;
use crate::log_rational::LogRational;
use crate::truncation::TruncationParams;

use super::concentration::{levy_concentration, ratio_to_f64};
use super::pmf::{Pmf, Prob, Provenance};

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("exact convolution would hold about {estimated_atoms} atoms, over the budget {budget}")]
    ExactBudget { estimated_atoms: u128, budget: u64 },
    #[error("period {period} exceeds the enumeration budget {budget}")]
    PeriodBudget { period: String, budget: u64 },
    #[error("no effective primes: need y >= 5 and eps <= 1/65")]
    NoEffectivePrimes,
    #[error("scale {l} is not below ell({p}) = {ell_p}; hypothesis requires L < ell(p)")]
    ScaleTooLarge { p: u64, l: f64, ell_p: f64 },
    #[error("tuple encoding supports at most {max} primes at r = {r}, got {got}")]
    TupleWidth { max: usize, r: u32, got: usize },
}

/// Ceiling on the estimated atom count of an exact convolution.
pub const DEFAULT_EXACT_BUDGET: u64 = 10_000_000;
/// Ceiling on the period length for full-period enumeration.
pub const DEFAULT_PERIOD_BUDGET: u64 = 10_000_000;
/// Monte Carlo sample count used when the exact route is over budget.
pub const DEFAULT_MC_SAMPLES: u64 = 1_000_000;

/// Support and residue counts of the per-prime difference variable on
/// uniform residues mod p^r.
///
/// Index layout: 0 is the zero atom, a in 1..=r is +ell(p^a), r+a is
/// -ell(p^a). Counts are numbers of residues mod p^r; they sum to p^r.
pub struct PrimeDiffAtoms {
    pub p: u64,
    pub r: u32,
    pub keys: Vec<LogRational>,
    pub counts: Vec<BigUint>,
    pub modulus: BigUint,
}

impl PrimeDiffAtoms {
    pub fn new(p: u64, r: u32) -> Self {
        assert!(p >= 2 && r >= 1);
        let pb = BigUint::from(p);
        let modulus = pb.pow(r);
        let mut keys = Vec::with_capacity(2 * r as usize + 1);
        let mut counts = Vec::with_capacity(2 * r as usize + 1);
        // zero atom: residues where p divides neither n nor n+1
        keys.push(LogRational::zero());
        counts.push(&modulus - BigUint::from(2u32) * pb.pow(r - 1));
        // positive cluster: p^a exactly divides n+1 (a = r means p^r | n+1)
        for a in 1..=r {
            keys.push(ell(p, a));
            counts.push(residues_with_valuation(&pb, r, a));
        }
        for a in 1..=r {
            keys.push(-ell(p, a));
            counts.push(residues_with_valuation(&pb, r, a));
        }
        PrimeDiffAtoms { p, r, keys, counts, modulus }
    }

    /// Number of support points with positive probability.
    pub fn live_atoms(&self) -> usize {
        self.counts.iter().filter(|c| !c.is_zero()).count()
    }

    /// Atom index for a pair of capped valuations of (n, n+1); consecutive
    /// integers share no factor p, so at most one of the two is nonzero.
    #[inline]
    pub fn index_for(&self, v_n: u32, v_n1: u32) -> usize {
        debug_assert!(v_n == 0 || v_n1 == 0);
        if v_n1 > 0 {
            v_n1 as usize
        } else if v_n > 0 {
            self.r as usize + v_n as usize
        } else {
            0
        }
    }
}

/// Residues u mod p^r with min(v_p(u), r) = a, for a >= 1: p^(r-a) - p^(r-a-1)
/// for a < r, and exactly one residue for a = r.
fn residues_with_valuation(p: &BigUint, r: u32, a: u32) -> BigUint {
    if a < r {
        p.pow(r - a) - p.pow(r - a - 1)
    } else {
        BigUint::one()
    }
}

/// Classical limiting law of the p-adic valuation, truncated at r, as a pmf
/// over the prime-power values ell(p^a): P(a) = (1 - 1/p) p^-a for a < r,
/// with the geometric tail collapsed onto a = r.
///
/// This is exactly the distribution of min(v_p(N), r) for N uniform mod p^r,
/// so the capped uniform-residue model and the classical law agree on every
/// a < r. Exposed for comparison; the difference model below is the primary
/// object.
pub fn valuation_pmf(p: u64, r: u32) -> Pmf {
    assert!(p >= 2 && r >= 1);
    let pb = BigUint::from(p);
    let modulus = pb.pow(r);
    let atoms = (0..=r).map(|a| {
        (
            ell(p, a),
            Prob::new(residues_with_valuation(&pb, r, a), modulus.clone()),
        )
    });
    Pmf::from_atoms(atoms, Provenance::Exact)
}

/// Exact distribution of the per-prime difference variable.
///
/// Zero with probability 1 - 2/p (empty for p = 2), +/-ell(p^a) with
/// probability (p-1)/p^(a+1) for a < r, and +/-ell(p^r) with probability
/// 1/p^r.
pub fn prime_diff_pmf(p: u64, r: u32) -> Pmf {
    let atoms = PrimeDiffAtoms::new(p, r);
    Pmf::from_atoms(
        atoms
            .keys
            .iter()
            .cloned()
            .zip(atoms.counts.iter().map(|c| Prob::new(c.clone(), atoms.modulus.clone()))),
        Provenance::Exact,
    )
}

fn included_primes<'a>(params: &'a TruncationParams, subset: Option<&'a [u64]>) -> Vec<u64> {
    match subset {
        Some(s) => s.to_vec(),
        None => params.primes.clone(),
    }
}

/// Exact distribution of the independent sum over the included primes.
pub fn model_sum_pmf_exact(
    params: &TruncationParams,
    subset: Option<&[u64]>,
) -> Result<Pmf, ModelError> {
    model_sum_pmf_exact_with_budget(params, subset, DEFAULT_EXACT_BUDGET)
}

pub fn model_sum_pmf_exact_with_budget(
    params: &TruncationParams,
    subset: Option<&[u64]>,
    budget: u64,
) -> Result<Pmf, ModelError> {
    let primes = included_primes(params, subset);
    let mut estimated: u128 = 1;
    for &p in &primes {
        let atoms = if p == 2 { 2 * params.r as u128 } else { 2 * params.r as u128 + 1 };
        estimated = estimated.saturating_mul(atoms);
    }
    if estimated > budget as u128 {
        return Err(ModelError::ExactBudget { estimated_atoms: estimated, budget });
    }
    let mut acc = Pmf::point(LogRational::zero());
    for &p in &primes {
        acc = acc.convolve(&prime_diff_pmf(p, params.r));
    }
    Ok(acc)
}

/// Empirical distribution of the sum from seeded sampling.
///
/// Every prime draws from its own substream (seed, stream = p) of a seedable
/// counter-based generator, so results are reproducible and independent of
/// how the per-prime work is scheduled.
pub fn model_sum_pmf_mc(
    params: &TruncationParams,
    subset: Option<&[u64]>,
    samples: u64,
    seed: u64,
) -> Result<Pmf, ModelError> {
    assert!(samples >= 1);
    let primes = included_primes(params, subset);
    let radix = 2 * params.r as u128 + 1;
    let max_primes = (128.0 / (radix as f64).log2()).floor() as usize;
    if primes.len() > max_primes {
        return Err(ModelError::TupleWidth { max: max_primes, r: params.r, got: primes.len() });
    }
    let atom_tables: Vec<PrimeDiffAtoms> =
        primes.iter().map(|&p| PrimeDiffAtoms::new(p, params.r)).collect();

    // per-prime index streams
    let index_streams: Vec<Vec<u16>> = atom_tables
        .par_iter()
        .map(|atoms| {
            let mut rng = ChaCha12Rng::seed_from_u64(seed);
            rng.set_stream(atoms.p);
            sample_indices(atoms, samples, &mut rng)
        })
        .collect();

    // count joint outcomes; identical tuples share one exact key computation
    let mut tuple_counts: HashMap<u128, u64> = HashMap::new();
    for i in 0..samples as usize {
        let mut code: u128 = 0;
        for stream in &index_streams {
            code = code * radix + stream[i] as u128;
        }
        *tuple_counts.entry(code).or_insert(0) += 1;
    }

    let samples_big = BigUint::from(samples);
    let mut atoms_out: Vec<(LogRational, Prob)> = Vec::with_capacity(tuple_counts.len());
    for (code, count) in tuple_counts {
        let mut c = code;
        let mut key = LogRational::zero();
        for atoms in atom_tables.iter().rev() {
            let idx = (c % radix) as usize;
            c /= radix;
            key = key + atoms.keys[idx].clone();
        }
        atoms_out.push((key, Prob::new(BigUint::from(count), samples_big.clone())));
    }
    Ok(Pmf::from_atoms(atoms_out, Provenance::Empirical { samples, seed }))
}

fn sample_indices(atoms: &PrimeDiffAtoms, samples: u64, rng: &mut ChaCha12Rng) -> Vec<u16> {
    match atoms.modulus.to_u64() {
        Some(m) => {
            let cum: Vec<u64> = atoms
                .counts
                .iter()
                .scan(0u64, |acc, c| {
                    *acc += c.to_u64().expect("count fits when modulus does");
                    Some(*acc)
                })
                .collect();
            (0..samples)
                .map(|_| {
                    let t = rng.gen_range(0..m);
                    cum.iter().position(|&c| t < c).expect("within modulus") as u16
                })
                .collect()
        }
        None => {
            let cum: Vec<BigUint> = atoms
                .counts
                .iter()
                .scan(BigUint::zero(), |acc, c| {
                    *acc += c;
                    Some(acc.clone())
                })
                .collect();
            (0..samples)
                .map(|_| {
                    let t = sample_biguint_below(&atoms.modulus, rng);
                    cum.iter().position(|c| t < *c).expect("within modulus") as u16
                })
                .collect()
        }
    }
}

/// Uniform value in [0, bound) by top-masked rejection.
fn sample_biguint_below(bound: &BigUint, rng: &mut ChaCha12Rng) -> BigUint {
    let bits = bound.bits();
    let words = bits.div_ceil(32) as usize;
    let top_mask: u32 = if bits % 32 == 0 { u32::MAX } else { (1u32 << (bits % 32)) - 1 };
    loop {
        let mut digits = vec![0u32; words];
        for d in digits.iter_mut() {
            *d = rng.next_u32();
        }
        digits[words - 1] &= top_mask;
        let candidate = BigUint::new(digits);
        if &candidate < bound {
            return candidate;
        }
    }
}

/// Concentration of a single per-prime variable at a sub-gap scale: for
/// p >= 5 and L below ell(p), no interval of length L can cover more than the
/// zero cluster, so the concentration equals 1 - 2/p exactly.
pub fn zero_cluster_concentration_check(p: u64, r: u32, l: f64) -> Result<bool, ModelError> {
    assert!(p >= 5, "requires p >= 5");
    let ell_p = ell(p, 1).to_f64();
    if l >= ell_p {
        return Err(ModelError::ScaleTooLarge { p, l, ell_p });
    }
    let c = levy_concentration(&prime_diff_pmf(p, r), l);
    let expected = Prob::new(BigUint::from(p - 2), BigUint::from(p));
    Ok(c.q_exact == expected)
}

#[derive(Debug, Clone, Serialize)]
pub struct PetrovReport {
    pub eps: f64,
    pub k: u64,
    pub effective_primes: Vec<u64>,
    /// P(|W - log k| <= 3 eps), measured on the exact or sampled pmf.
    pub q_measured: f64,
    /// sup-interval concentration at scale 6 eps.
    pub q_sup: f64,
    /// (sum over effective primes of 2/p)^(-1/2).
    pub rhs_core: f64,
    /// q_measured / rhs_core; reported, never asserted against a constant.
    #[serde(rename = "implied_A")]
    pub implied_a: f64,
    pub method: String,
    pub dkw_epsilon: Option<f64>,
}

#[derive(Debug, Clone, Copy)]
pub enum WMethod {
    /// Exact when the atom budget allows, Monte Carlo otherwise.
    Auto { mc_samples: u64, seed: u64 },
    Exact,
    MonteCarlo { samples: u64, seed: u64 },
}

/// Measures the target probability of the model sum against the
/// anti-concentration shape over the effective primes.
pub fn petrov_eval(
    params: &TruncationParams,
    k: u64,
    method: WMethod,
) -> Result<PetrovReport, ModelError> {
    assert!(k >= 2);
    if params.effective_primes.is_empty() {
        return Err(ModelError::NoEffectivePrimes);
    }
    let (w, method_name) = match method {
        WMethod::Exact => (model_sum_pmf_exact(params, None)?, "exact"),
        WMethod::MonteCarlo { samples, seed } => {
            (model_sum_pmf_mc(params, None, samples, seed)?, "mc")
        }
        WMethod::Auto { mc_samples, seed } => match model_sum_pmf_exact(params, None) {
            Ok(pmf) => (pmf, "exact"),
            Err(ModelError::ExactBudget { .. }) => {
                (model_sum_pmf_mc(params, None, mc_samples, seed)?, "mc")
            }
            Err(e) => return Err(e),
        },
    };
    let ln_k = (k as f64).ln();
    let eps = params.eps;
    let q_measured = ratio_to_f64(&w.mass_in_window(ln_k - 3.0 * eps, ln_k + 3.0 * eps));
    let q_sup = levy_concentration(&w, 6.0 * eps).q;
    let sum_2p: f64 = params.effective_primes.iter().map(|&p| 2.0 / p as f64).sum();
    let rhs_core = 1.0 / sum_2p.sqrt();
    Ok(PetrovReport {
        eps,
        k,
        effective_primes: params.effective_primes.clone(),
        q_measured,
        q_sup,
        rhs_core,
        implied_a: q_measured / rhs_core,
        method: method_name.to_string(),
        dkw_epsilon: w.dkw_epsilon(0.01),
    })
}

/// Exact target probability P(|W - log k| <= 3 eps) when the exact
/// convolution fits its budget; None otherwise.
pub fn model_target_probability(params: &TruncationParams, k: u64) -> Option<f64> {
    let w = model_sum_pmf_exact(params, None).ok()?;
    let ln_k = (k as f64).ln();
    Some(ratio_to_f64(&w.mass_in_window(
        ln_k - 3.0 * params.eps,
        ln_k + 3.0 * params.eps,
    )))
}

#[derive(Debug)]
pub struct PeriodCheck {
    pub matches: bool,
    pub period_pmf: Pmf,
    pub model_pmf: Pmf,
}

/// Enumerates the consecutive difference over one full period 1..=M as an
/// exact pmf and compares it atom-for-atom with the convolution model.
pub fn period_model_equivalence(params: &TruncationParams) -> Result<PeriodCheck, ModelError> {
    period_model_equivalence_with_budget(params, DEFAULT_PERIOD_BUDGET)
}

pub fn period_model_equivalence_with_budget(
    params: &TruncationParams,
    budget: u64,
) -> Result<PeriodCheck, ModelError> {
    let m = params
        .period
        .to_u64()
        .filter(|&m| m <= budget)
        .ok_or_else(|| ModelError::PeriodBudget {
            period: params.period.to_string(),
            budget,
        })?;
    let atom_tables: Vec<PrimeDiffAtoms> =
        params.primes.iter().map(|&p| PrimeDiffAtoms::new(p, params.r)).collect();
    let radix = 2 * params.r as u128 + 1;
    let max_primes = (128.0 / (radix as f64).log2()).floor() as usize;
    if atom_tables.len() > max_primes {
        return Err(ModelError::TupleWidth {
            max: max_primes,
            r: params.r,
            got: atom_tables.len(),
        });
    }

    let mut tuple_counts: HashMap<u128, u64> = HashMap::new();
    for n in 1..=m {
        let mut code: u128 = 0;
        for atoms in &atom_tables {
            let v_n = capped_valuation(n, atoms.p, params.r);
            let v_n1 = capped_valuation(n + 1, atoms.p, params.r);
            code = code * radix + atoms.index_for(v_n, v_n1) as u128;
        }
        *tuple_counts.entry(code).or_insert(0) += 1;
    }

    let m_big = BigUint::from(m);
    let mut atoms_out: Vec<(LogRational, Prob)> = Vec::with_capacity(tuple_counts.len());
    for (code, count) in tuple_counts {
        let mut c = code;
        let mut key = LogRational::zero();
        for atoms in atom_tables.iter().rev() {
            let idx = (c % radix) as usize;
            c /= radix;
            key = key + atoms.keys[idx].clone();
        }
        atoms_out.push((key, Prob::new(BigUint::from(count), m_big.clone())));
    }
    let period_pmf = Pmf::from_atoms(atoms_out, Provenance::Exact);
    let model_pmf = model_sum_pmf_exact(params, None)?;
    Ok(PeriodCheck { matches: period_pmf.same_atoms(&model_pmf), period_pmf, model_pmf })
}

#[inline]
fn capped_valuation(n: u64, p: u64, r: u32) -> u32 {
    let mut m = n;
    let mut a = 0u32;
    while a < r && m % p == 0 {
        m /= p;
        a += 1;
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prob::pmf::prob;

    fn lr(n: u64, d: u64) -> LogRational {
        LogRational::from_u64_parts(n, d)
    }

    #[test]
    fn valuation_pmf_matches_geometric_law_below_cap() {
        for (p, r) in [(2u64, 3u32), (3, 2), (5, 4)] {
            let v = valuation_pmf(p, r);
            assert!(v.total_mass().is_one());
            for a in 0..r {
                // (1 - 1/p) p^-a
                let expect = Prob::new((p - 1).into(), BigUint::from(p).pow(a + 1));
                assert_eq!(v.prob_of(&ell(p, a)), expect, "p={p} a={a}");
            }
            // collapsed tail at the cap
            assert_eq!(
                v.prob_of(&ell(p, r)),
                Prob::new(BigUint::one(), BigUint::from(p).pow(r))
            );
        }
    }

    #[test]
    fn z_pmf_p5_r1() {
        let z = prime_diff_pmf(5, 1);
        assert_eq!(z.len(), 3);
        assert_eq!(z.prob_of(&LogRational::zero()), prob(3, 5));
        assert_eq!(z.prob_of(&lr(6, 5)), prob(1, 5));
        assert_eq!(z.prob_of(&lr(5, 6)), prob(1, 5));
        assert!(z.total_mass().is_one());
    }

    #[test]
    fn z_pmf_p3_r2() {
        let z = prime_diff_pmf(3, 2);
        assert_eq!(z.len(), 5);
        assert_eq!(z.prob_of(&LogRational::zero()), prob(1, 3));
        assert_eq!(z.prob_of(&lr(4, 3)), prob(2, 9));
        assert_eq!(z.prob_of(&lr(3, 4)), prob(2, 9));
        assert_eq!(z.prob_of(&lr(13, 9)), prob(1, 9));
        assert_eq!(z.prob_of(&lr(9, 13)), prob(1, 9));
    }

    #[test]
    fn z_pmf_p2_has_no_zero_atom() {
        let z = prime_diff_pmf(2, 1);
        assert_eq!(z.len(), 2);
        assert_eq!(z.prob_of(&lr(3, 2)), prob(1, 2));
        assert_eq!(z.prob_of(&lr(2, 3)), prob(1, 2));
    }

    #[test]
    fn z_pmf_cluster_masses() {
        for p in [3u64, 5, 7, 11] {
            for r in 1..=3u32 {
                let z = prime_diff_pmf(p, r);
                let positive: Prob = z
                    .atoms()
                    .filter(|(v, _)| v.is_nonnegative() && !v.is_zero())
                    .fold(Prob::zero(), |acc, (_, pr)| acc + pr);
                assert_eq!(positive, prob(1, p), "p={p} r={r}");
                assert!(z.total_mass().is_one());
            }
        }
    }

    #[test]
    fn z_pmf_matches_residue_enumeration() {
        for (p, r) in [(2u64, 1u32), (2, 3), (3, 2), (5, 1), (5, 2), (7, 3)] {
            let z = prime_diff_pmf(p, r);
            // oracle: enumerate all residues mod p^r directly
            let m = p.pow(r);
            let mut counts: HashMap<LogRational, u64> = HashMap::new();
            for u in 0..m {
                let v_n = capped_valuation_of_residue(u, p, r);
                let v_n1 = capped_valuation_of_residue((u + 1) % m, p, r);
                let key = &ell(p, v_n1) - &ell(p, v_n);
                *counts.entry(key).or_insert(0) += 1;
            }
            let oracle = Pmf::from_atoms(
                counts
                    .into_iter()
                    .map(|(k, c)| (k, Prob::new(c.into(), m.into()))),
                Provenance::Exact,
            );
            assert!(z.same_atoms(&oracle), "p={p} r={r}");
        }
    }

    /// min(v_p(u), r) for a residue class u mod p^r; the zero class has
    /// valuation >= r, capped to r.
    fn capped_valuation_of_residue(u: u64, p: u64, r: u32) -> u32 {
        if u == 0 {
            return r;
        }
        let mut m = u;
        let mut a = 0;
        while a < r && m % p == 0 {
            m /= p;
            a += 1;
        }
        a
    }

    #[test]
    fn w_single_prime_reduces_to_z() {
        let params = TruncationParams::new(2, 1, 0.01);
        let w = model_sum_pmf_exact(&params, None).unwrap();
        assert!(w.same_atoms(&prime_diff_pmf(2, 1)));
    }

    #[test]
    fn w_two_primes_mass_one() {
        let params = TruncationParams::new(3, 1, 0.01);
        let w = model_sum_pmf_exact(&params, None).unwrap();
        assert!(w.len() <= 9);
        assert!(w.total_mass().is_one());
    }

    #[test]
    fn w_mean_matches_enumeration() {
        // expectation under the log: weighted product of keys equals the
        // product of keys over all residues
        for (p, r) in [(3u64, 2u32), (5, 1)] {
            let z = prime_diff_pmf(p, r);
            let m = p.pow(r);
            let mut weighted_num = BigUint::one();
            let mut weighted_den = BigUint::one();
            for (v, pr) in z.atoms() {
                // weight = pr * p^r, an exact integer
                let w = (pr * Prob::new(m.into(), 1u32.into())).to_integer();
                let e = w.to_u32().unwrap();
                weighted_num *= v.numer().pow(e);
                weighted_den *= v.denom().pow(e);
            }
            let mut oracle_num = BigUint::one();
            let mut oracle_den = BigUint::one();
            for u in 0..m {
                let v_n = capped_valuation_of_residue(u, p, r);
                let v_n1 = capped_valuation_of_residue((u + 1) % m, p, r);
                let key = &ell(p, v_n1) - &ell(p, v_n);
                oracle_num *= key.numer();
                oracle_den *= key.denom();
            }
            let lhs = Prob::new(weighted_num, weighted_den);
            let rhs = Prob::new(oracle_num, oracle_den);
            assert_eq!(lhs, rhs, "p={p} r={r}");
        }
    }

    #[test]
    fn exact_budget_enforced() {
        let params = TruncationParams::new(31, 3, 0.001);
        let err = model_sum_pmf_exact_with_budget(&params, None, 1000).unwrap_err();
        assert!(matches!(err, ModelError::ExactBudget { .. }));
    }

    #[test]
    fn mc_single_sample_is_point() {
        let params = TruncationParams::new(5, 2, 0.01);
        let w = model_sum_pmf_mc(&params, None, 1, 42).unwrap();
        assert_eq!(w.len(), 1);
        assert!(w.total_mass().is_one());
    }

    #[test]
    fn mc_deterministic_for_fixed_seed() {
        let params = TruncationParams::new(7, 2, 0.01);
        let a = model_sum_pmf_mc(&params, None, 10_000, 123).unwrap();
        let b = model_sum_pmf_mc(&params, None, 10_000, 123).unwrap();
        assert!(a.same_atoms(&b));
        let c = model_sum_pmf_mc(&params, None, 10_000, 124).unwrap();
        assert!(!a.same_atoms(&c), "different seeds should differ");
    }

    #[test]
    fn mc_counts_sum_to_samples() {
        let params = TruncationParams::new(5, 1, 0.01);
        let w = model_sum_pmf_mc(&params, None, 5000, 9).unwrap();
        assert!(w.total_mass().is_one());
        assert_eq!(
            w.provenance(),
            &Provenance::Empirical { samples: 5000, seed: 9 }
        );
    }

    #[test]
    fn zero_cluster_check_examples() {
        assert!(zero_cluster_concentration_check(5, 1, 0.1).unwrap());
        assert!(zero_cluster_concentration_check(7, 3, 0.05).unwrap());
        let err = zero_cluster_concentration_check(5, 1, 0.2).unwrap_err();
        assert!(matches!(err, ModelError::ScaleTooLarge { .. }));
    }

    #[test]
    fn period_equivalence_degenerate_p2() {
        // M = 2: difference takes +log(3/2) and -log(3/2) once each
        let params = TruncationParams::new(2, 1, 0.01);
        let check = period_model_equivalence(&params).unwrap();
        assert!(check.matches);
        assert_eq!(check.period_pmf.len(), 2);
    }

    #[test]
    fn period_equivalence_small_cases() {
        for (y, r) in [(5u64, 2u32), (7, 1), (5, 1), (3, 2)] {
            let params = TruncationParams::new(y, r, 0.01);
            let check = period_model_equivalence(&params).unwrap();
            assert!(check.matches, "y={y} r={r}");
        }
    }

    #[test]
    fn period_budget_enforced() {
        let params = TruncationParams::new(23, 3, 0.001);
        let err = period_model_equivalence_with_budget(&params, 1000).unwrap_err();
        assert!(matches!(err, ModelError::PeriodBudget { .. }));
    }

    #[test]
    fn petrov_requires_effective_primes() {
        let params = TruncationParams::new(13, 1, 0.1);
        let err = petrov_eval(&params, 2, WMethod::Exact).unwrap_err();
        assert!(matches!(err, ModelError::NoEffectivePrimes));
    }

    #[test]
    fn petrov_rhs_core_value() {
        let params = TruncationParams::new(13, 1, 1.0 / 169.0);
        assert_eq!(params.effective_primes, vec![5, 7, 11, 13]);
        let rep = petrov_eval(&params, 2, WMethod::Exact).unwrap();
        let expect = 1.0 / (2.0 / 5.0 + 2.0 / 7.0 + 2.0 / 11.0 + 2.0 / 13.0f64).sqrt();
        assert!((rep.rhs_core - expect).abs() < 1e-12);
        assert!(rep.implied_a.is_finite() && rep.implied_a > 0.0);
    }

    #[test]
    fn convolution_never_increases_concentration() {
        let params = TruncationParams::new(13, 1, 1.0 / 169.0);
        let l = 6.0 * params.eps;
        let mut last = 1.0f64 + 1e-9;
        for m in 1..=4 {
            let w = model_sum_pmf_exact(&params, Some(&params.effective_primes[..m])).unwrap();
            let q = levy_concentration(&w, l).q;
            assert!(q <= last + 1e-15, "prefix {m}: {q} > {last}");
            last = q;
        }
    }

    #[test]
    fn effective_prime_sum_tracks_double_log() {
        // ratio of sum(2/p, 5 <= p <= y) to 2 log log y climbs toward 1
        let mut last_ratio = 0.0;
        for y in [100u64, 10_000, 1_000_000] {
            let sum: f64 = crate::arith::primes_up_to(y)
                .iter()
                .filter(|&&p| p >= 5)
                .map(|&p| 2.0 / p as f64)
                .sum();
            let ratio = sum / (2.0 * (y as f64).ln().ln());
            assert!(ratio > last_ratio && ratio < 1.0, "y={y} ratio={ratio}");
            last_ratio = ratio;
        }
    }
}
