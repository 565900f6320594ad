//! The Lévy concentration function: the largest probability mass any closed
//! interval of a given length can capture.

use serde::Serialize;

use crate::log_rational::BigRatio;

use super::pmf::{Pmf, Prob};

/// Boundary slack for float comparisons; widens intervals toward inclusion.
pub const WINDOW_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Serialize)]
pub struct ConcentrationResult {
    #[serde(rename = "L")]
    pub l: f64,
    pub q: f64,
    pub witness_a: f64,
    #[serde(skip)]
    pub q_exact: BigRatio,
}

/// sup over a of P(X in [a, a+L]), computed by a two-pointer sweep over the
/// sorted support. The sup over closed intervals is reached with the left
/// endpoint at an atom; mass comparisons are exact.
pub fn levy_concentration(pmf: &Pmf, l: f64) -> ConcentrationResult {
    assert!(l > 0.0, "scale must be positive");
    assert!(!pmf.is_empty(), "pmf must be nonempty");
    let atoms: Vec<(f64, &Prob)> = pmf.atoms().map(|(v, p)| (v.to_f64(), p)).collect();
    let n = atoms.len();

    let mut best_mass = Prob::new(0u32.into(), 1u32.into());
    let mut best_a = atoms[0].0;
    let mut window = Prob::new(0u32.into(), 1u32.into());
    let mut j = 0usize;
    for i in 0..n {
        if j < i {
            j = i;
            window = Prob::new(0u32.into(), 1u32.into());
        }
        while j < n && atoms[j].0 <= atoms[i].0 + l + WINDOW_SLACK {
            window += atoms[j].1;
            j += 1;
        }
        if window > best_mass {
            best_mass = window.clone();
            best_a = atoms[i].0;
        }
        window -= atoms[i].1;
    }

    ConcentrationResult {
        l,
        q: ratio_to_f64(&best_mass),
        witness_a: best_a,
        q_exact: best_mass,
    }
}

pub(crate) fn ratio_to_f64(r: &BigRatio) -> f64 {
    use num_traits::Zero;
    if r.numer().is_zero() {
        return 0.0;
    }
    (crate::log_rational::ln_biguint(r.numer()) - crate::log_rational::ln_biguint(r.denom()))
        .exp()
}
