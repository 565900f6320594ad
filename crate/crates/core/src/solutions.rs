//! Search and count solutions of sigma(n+1) = k*sigma(n), with the density
//! series against the triple-log comparator and the asymptotic parameter
//! schedule.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::arith::{self, sigma_big, ArithError};

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("search limit {limit} exceeds the configured ceiling {ceiling}")]
    LimitBudget { limit: u64, ceiling: u64 },
    #[error("sieve value for n={n} disagrees with factorization: sieve {sieve}, exact {exact}")]
    VerificationMismatch { n: u64, sieve: u64, exact: String },
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// Default ceiling on the search limit; the scan is streamed, so this guards
/// runtime rather than memory.
pub const DEFAULT_LIMIT_CEILING: u64 = 10_000_000_000;

const SEGMENT: u64 = 1 << 20;

/// One verified solution n of sigma(n+1) = k*sigma(n).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolutionRecord {
    pub n: u64,
    pub k: u64,
    pub sigma_n: u64,
    pub sigma_n1: u64,
}

/// All n <= limit with sigma(n+1) = k*sigma(n), ascending.
///
/// Scans windows of a segmented sigma sieve comparing adjacent entries; each
/// window recomputes its own boundary value of sigma(n+1), so windows are
/// independent and the parallel scan is deterministic. Every candidate is
/// re-verified through an independent factorization before it is returned.
pub fn search(k: u64, limit: u64) -> Result<Vec<SolutionRecord>, SearchError> {
    search_with_ceiling(k, limit, DEFAULT_LIMIT_CEILING)
}

pub fn search_with_ceiling(
    k: u64,
    limit: u64,
    ceiling: u64,
) -> Result<Vec<SolutionRecord>, SearchError> {
    assert!(k >= 1 && limit >= 1);
    if limit > ceiling {
        return Err(SearchError::LimitBudget { limit, ceiling });
    }
    let windows: Vec<(u64, u64)> = (1..=limit)
        .step_by(SEGMENT as usize)
        .map(|lo| (lo, (lo + SEGMENT - 1).min(limit)))
        .collect();
    let per_window: Vec<Result<Vec<SolutionRecord>, SearchError>> = windows
        .par_iter()
        .map(|&(lo, hi)| scan_window(k, lo, hi))
        .collect();
    let mut out = Vec::new();
    for w in per_window {
        out.extend(w?);
    }
    Ok(out)
}

fn scan_window(k: u64, lo: u64, hi: u64) -> Result<Vec<SolutionRecord>, SearchError> {
    // sigma over [lo, hi+1]: the single-entry overlap keeps windows independent
    let mut values = vec![0u64; (hi - lo + 2) as usize];
    crate::arith::sigma_fill(lo, hi + 1, &mut values);
    let mut out = Vec::new();
    for n in lo..=hi {
        let s_n = values[(n - lo) as usize];
        let s_n1 = values[(n + 1 - lo) as usize];
        if s_n1 as u128 == k as u128 * s_n as u128 {
            let exact_n = sigma_big(&arith::factorize(n));
            let exact_n1 = sigma_big(&arith::factorize(n + 1));
            if exact_n != s_n.into() {
                return Err(SearchError::VerificationMismatch {
                    n,
                    sieve: s_n,
                    exact: exact_n.to_string(),
                });
            }
            if exact_n1 != s_n1.into() {
                return Err(SearchError::VerificationMismatch {
                    n: n + 1,
                    sieve: s_n1,
                    exact: exact_n1.to_string(),
                });
            }
            out.push(SolutionRecord { n, k, sigma_n: s_n, sigma_n1: s_n1 });
        }
    }
    Ok(out)
}

/// One point of the counting-function series.
#[derive(Debug, Clone, Serialize)]
pub struct DensityPoint {
    pub x: u64,
    pub count: u64,
    pub ratio: f64,
    /// 1/sqrt(log log log x); comparator has no implied constant, shape only.
    /// None below x = e^(e^e) where the triple log is not positive.
    pub bound: Option<f64>,
}

/// Counting function A_k at each x of an ascending grid.
pub fn count_series(k: u64, xs: &[u64]) -> Result<Vec<DensityPoint>, SearchError> {
    assert!(k >= 2, "density series requires k >= 2");
    assert!(xs.windows(2).all(|w| w[0] < w[1]), "xs must be ascending");
    let Some(&max) = xs.last() else { return Ok(Vec::new()) };
    let sols = search(k, max)?;
    Ok(xs
        .iter()
        .map(|&x| {
            let count = sols.iter().take_while(|s| s.n <= x).count() as u64;
            let lll = (x as f64).ln().ln().ln();
            DensityPoint {
                x,
                count,
                ratio: count as f64 / x as f64,
                bound: (lll > 0.0).then(|| 1.0 / lll.sqrt()),
            }
        })
        .collect())
}

/// Truncation parameters as functions of x, clamped at desk scale.
#[derive(Debug, Clone, Serialize)]
pub struct ScheduleParams {
    pub x: u64,
    pub r: u32,
    pub y: f64,
    pub eps: f64,
    pub clamped: bool,
}

/// r = floor(logloglog x), y = log x / (3 loglog x), eps = 1/(13y).
///
/// The formulas are asymptotic; any representable x yields r < 1 or y < 5, so
/// the result is clamped to (r >= 1, y >= 5) and flagged.
pub fn schedule(x: u64) -> ScheduleParams {
    assert!(x >= 3);
    schedule_from_ln(x, (x as f64).ln())
}

/// Same as [`schedule`] but driven by a caller-supplied value of log x, which
/// lets the raw formulas be exercised beyond the u64 range.
pub fn schedule_from_ln(x: u64, ln_x: f64) -> ScheduleParams {
    assert!(ln_x > 1.0, "needs log log x > 0");
    let lll = ln_x.ln().ln();
    let raw_r = lll.floor();
    let raw_y = ln_x / (3.0 * ln_x.ln());
    let clamped = raw_r < 1.0 || raw_y < 5.0;
    let r = if raw_r < 1.0 { 1 } else { raw_r as u32 };
    let y = raw_y.max(5.0);
    ScheduleParams { x, r, y, eps: 1.0 / (13.0 * y), clamped }
}
