//! Finite probability mass functions over exact log-rational values with
//! exact rational probabilities.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde_json::json;

use crate::log_rational::{BigRatio, LogRational};

/// Exact probability: a reduced non-negative big rational.
pub type Prob = BigRatio;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    Exact,
    Empirical { samples: u64, seed: u64 },
}

/// Finite distribution with unique exact value-keys.
///
/// Exact pmfs carry probabilities summing to exactly 1; empirical pmfs carry
/// observed frequencies count/samples, which also sum to 1 by construction.
#[derive(Debug, Clone)]
pub struct Pmf {
    atoms: BTreeMap<LogRational, Prob>,
    provenance: Provenance,
}

impl Pmf {
    /// Single atom with probability one.
    pub fn point(value: LogRational) -> Self {
        let mut atoms = BTreeMap::new();
        atoms.insert(value, Prob::one());
        Pmf { atoms, provenance: Provenance::Exact }
    }

    /// Build from (value, probability) pairs; colliding keys are merged and
    /// zero-probability entries dropped.
    pub fn from_atoms<I>(pairs: I, provenance: Provenance) -> Self
    where
        I: IntoIterator<Item = (LogRational, Prob)>,
    {
        let mut atoms: BTreeMap<LogRational, Prob> = BTreeMap::new();
        for (value, prob) in pairs {
            if prob.is_zero() {
                continue;
            }
            atoms
                .entry(value)
                .and_modify(|p| *p += &prob)
                .or_insert(prob);
        }
        Pmf { atoms, provenance }
    }

    pub fn atoms(&self) -> impl Iterator<Item = (&LogRational, &Prob)> {
        self.atoms.iter()
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn prob_of(&self, value: &LogRational) -> Prob {
        self.atoms.get(value).cloned().unwrap_or_else(Prob::zero)
    }

    pub fn total_mass(&self) -> Prob {
        self.atoms.values().fold(Prob::zero(), |acc, p| acc + p)
    }

    /// Atom-for-atom equality of values and probabilities.
    pub fn same_atoms(&self, other: &Pmf) -> bool {
        self.atoms == other.atoms
    }

    /// Distribution of the sum of two independent variables: value keys
    /// multiply, probabilities multiply and merge on colliding keys.
    pub fn convolve(&self, other: &Pmf) -> Pmf {
        let mut atoms: BTreeMap<LogRational, Prob> = BTreeMap::new();
        for (v1, p1) in &self.atoms {
            for (v2, p2) in &other.atoms {
                let v = v1 + v2;
                let p = p1 * p2;
                atoms.entry(v).and_modify(|q| *q += &p).or_insert(p);
            }
        }
        Pmf { atoms, provenance: Provenance::Exact }
    }

    /// Exact mass carried by atoms whose float value lies in [lo, hi],
    /// widened by a 1e-12 slack toward inclusion on both sides.
    pub fn mass_in_window(&self, lo: f64, hi: f64) -> Prob {
        const SLACK: f64 = 1e-12;
        let mut acc = Prob::zero();
        for (v, p) in &self.atoms {
            let f = v.to_f64();
            if f >= lo - SLACK && f <= hi + SLACK {
                acc += p;
            }
        }
        acc
    }

    /// Statistical half-width of a Dvoretzky-Kiefer-Wolfowitz band at
    /// confidence 1 - delta; only meaningful for empirical pmfs.
    pub fn dkw_epsilon(&self, delta: f64) -> Option<f64> {
        match self.provenance {
            Provenance::Exact => None,
            Provenance::Empirical { samples, .. } => {
                Some(((2.0 / delta).ln() / (2.0 * samples as f64)).sqrt())
            }
        }
    }

    /// JSON lines, one atom per line, big integers as decimal strings.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for (v, p) in &self.atoms {
            let line = json!({
                "num": v.numer().to_string(),
                "den": v.denom().to_string(),
                "log_value": v.to_f64(),
                "prob_num": p.numer().to_string(),
                "prob_den": p.denom().to_string(),
            });
            out.push_str(&line.to_string());
            out.push('\n');
        }
        out
    }
}

/// 1/1 probability helper.
pub fn prob(num: u64, den: u64) -> Prob {
    Prob::new(BigUint::from(num), BigUint::from(den))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lr(n: u64, d: u64) -> LogRational {
        LogRational::from_u64_parts(n, d)
    }

    #[test]
    fn point_mass() {
        let p = Pmf::point(lr(3, 2));
        assert_eq!(p.len(), 1);
        assert!(p.total_mass().is_one());
    }

    #[test]
    fn merge_and_drop_zero() {
        let p = Pmf::from_atoms(
            vec![
                (lr(3, 2), prob(1, 4)),
                (lr(6, 4), prob(1, 4)), // same key as 3/2
                (lr(1, 1), prob(1, 2)),
                (lr(9, 5), prob(0, 1)),
            ],
            Provenance::Exact,
        );
        assert_eq!(p.len(), 2);
        assert_eq!(p.prob_of(&lr(3, 2)), prob(1, 2));
        assert!(p.total_mass().is_one());
    }

    #[test]
    fn convolution_merges_colliding_sums() {
        // (log 2 with 1/2, log 1/2 with 1/2) convolved with itself:
        // sums log4, log1, log1, log(1/4) -> three atoms, middle mass 1/2
        let x = Pmf::from_atoms(
            vec![(lr(2, 1), prob(1, 2)), (lr(1, 2), prob(1, 2))],
            Provenance::Exact,
        );
        let y = x.convolve(&x);
        assert_eq!(y.len(), 3);
        assert_eq!(y.prob_of(&lr(1, 1)), prob(1, 2));
        assert!(y.total_mass().is_one());
    }

    #[test]
    fn window_mass_with_slack() {
        let p = Pmf::from_atoms(
            vec![(lr(1, 1), prob(1, 3)), (lr(2, 1), prob(2, 3))],
            Provenance::Exact,
        );
        let ln2 = 2f64.ln();
        assert_eq!(p.mass_in_window(ln2, ln2), prob(2, 3));
        assert_eq!(p.mass_in_window(-0.1, 0.1), prob(1, 3));
        assert!(p.mass_in_window(-1.0, 1.0).is_one());
    }

    #[test]
    fn jsonl_shape() {
        let p = Pmf::from_atoms(vec![(lr(3, 2), prob(1, 1))], Provenance::Exact);
        let line = p.to_jsonl();
        let v: serde_json::Value = serde_json::from_str(line.trim()).unwrap();
        assert_eq!(v["num"], "3");
        assert_eq!(v["den"], "2");
        assert_eq!(v["prob_num"], "1");
        assert_eq!(v["prob_den"], "1");
        assert!((v["log_value"].as_f64().unwrap() - 1.5f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn dkw_only_for_empirical() {
        let exact = Pmf::point(lr(1, 1));
        assert!(exact.dkw_epsilon(0.01).is_none());
        let emp = Pmf::from_atoms(
            vec![(lr(1, 1), prob(1, 1))],
            Provenance::Empirical { samples: 1_000_000, seed: 7 },
        );
        let eps = emp.dkw_epsilon(0.01).unwrap();
        assert!((eps - ((2.0f64 / 0.01).ln() / 2e6).sqrt()).abs() < 1e-15);
    }
}
