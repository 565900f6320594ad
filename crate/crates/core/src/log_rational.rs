//! Exact representation of logarithms of positive rationals.
//!
//! Every quantity of the form log(sigma(n)/n) that this crate manipulates is
//! the logarithm of an explicit positive rational. Instead of carrying lossy
//! floats, [`LogRational`] stores the reduced fraction itself and performs all
//! equality and ordering decisions on it. Addition of logs is multiplication
//! of the underlying fractions, so the exact arithmetic stays cheap.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::{One, ToPrimitive, Zero};

/// Exact positive rational used both as a value key and as a probability.
pub type BigRatio = Ratio<BigUint>;

/// The real number `log(num/den)` stored as the reduced fraction `num/den`.
///
/// The represented value is negative exactly when `num < den`. Two
/// `LogRational`s are equal iff their fractions are equal, and the ordering
/// is the ordering of the real logarithms (log is monotone).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LogRational {
    key: BigRatio,
}

impl LogRational {
    /// log(1) = 0.
    pub fn zero() -> Self {
        LogRational { key: BigRatio::one() }
    }

    /// Construct from a fraction; reduces automatically.
    ///
    /// Panics if either part is zero — the argument of a logarithm must be a
    /// positive rational.
    pub fn from_parts(num: BigUint, den: BigUint) -> Self {
        assert!(!num.is_zero() && !den.is_zero(), "log argument must be positive");
        LogRational { key: BigRatio::new(num, den) }
    }

    pub fn from_u64_parts(num: u64, den: u64) -> Self {
        Self::from_parts(BigUint::from(num), BigUint::from(den))
    }

    pub fn from_ratio(key: BigRatio) -> Self {
        assert!(!key.numer().is_zero(), "log argument must be positive");
        LogRational { key }
    }

    /// The exact reduced fraction under the log.
    pub fn key(&self) -> &BigRatio {
        &self.key
    }

    pub fn into_key(self) -> BigRatio {
        self.key
    }

    pub fn numer(&self) -> &BigUint {
        self.key.numer()
    }

    pub fn denom(&self) -> &BigUint {
        self.key.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.key.is_one()
    }

    /// True when the represented log is >= 0, i.e. num >= den.
    pub fn is_nonnegative(&self) -> bool {
        self.key.numer() >= self.key.denom()
    }

    /// Float view: log(num) - log(den).
    ///
    /// Each big integer is converted through its top 53 bits plus a power of
    /// two, so the result stays finite even when the fraction itself would
    /// overflow the double range. Near-one ratios are routed through ln_1p of
    /// the exact difference, avoiding the cancellation the plain log
    /// difference would suffer. Error is bounded by a few ulp.
    pub fn to_f64(&self) -> f64 {
        let num = self.key.numer();
        let den = self.key.denom();
        if num == den {
            return 0.0;
        }
        if num.bits().abs_diff(den.bits()) <= 1 {
            if num > den {
                ratio_f64(&(num - den), den).ln_1p()
            } else {
                -ratio_f64(&(den - num), num).ln_1p()
            }
        } else {
            ln_biguint(num) - ln_biguint(den)
        }
    }
}

/// a/b as f64 through the top 53 bits of each side; underflows to zero when
/// the true ratio is below the double range.
fn ratio_f64(a: &BigUint, b: &BigUint) -> f64 {
    let (ma, ea) = top_bits(a);
    let (mb, eb) = top_bits(b);
    let exp = ea - eb;
    if exp.abs() > 1060 {
        return if exp > 0 { f64::INFINITY } else { 0.0 };
    }
    (ma / mb) * 2f64.powi(exp as i32)
}

fn top_bits(n: &BigUint) -> (f64, i64) {
    let bits = n.bits();
    if bits <= 53 {
        return (n.to_f64().expect("fits"), 0);
    }
    let shift = bits - 53;
    ((n >> shift).to_f64().expect("top bits fit"), shift as i64)
}

/// Natural log of a positive big integer via the top 53 bits and exponent.
pub fn ln_biguint(n: &BigUint) -> f64 {
    assert!(!n.is_zero(), "ln of zero");
    let bits = n.bits();
    if bits <= 53 {
        return n.to_f64().expect("fits in f64").ln();
    }
    let shift = bits - 53;
    let top = n >> shift;
    let mantissa = top.to_f64().expect("top 53 bits fit in f64");
    mantissa.ln() + (shift as f64) * std::f64::consts::LN_2
}

impl Add for &LogRational {
    type Output = LogRational;
    fn add(self, rhs: &LogRational) -> LogRational {
        LogRational { key: &self.key * &rhs.key }
    }
}

impl Add for LogRational {
    type Output = LogRational;
    fn add(self, rhs: LogRational) -> LogRational {
        &self + &rhs
    }
}

impl Sub for &LogRational {
    type Output = LogRational;
    fn sub(self, rhs: &LogRational) -> LogRational {
        LogRational { key: &self.key / &rhs.key }
    }
}

impl Sub for LogRational {
    type Output = LogRational;
    fn sub(self, rhs: LogRational) -> LogRational {
        &self - &rhs
    }
}

impl Neg for &LogRational {
    type Output = LogRational;
    fn neg(self) -> LogRational {
        LogRational { key: self.key.recip() }
    }
}

impl Neg for LogRational {
    type Output = LogRational;
    fn neg(self) -> LogRational {
        -&self
    }
}

impl std::iter::Sum for LogRational {
    fn sum<I: Iterator<Item = LogRational>>(iter: I) -> Self {
        iter.fold(LogRational::zero(), |acc, x| acc + x)
    }
}

impl fmt::Debug for LogRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "log({}/{})", self.key.numer(), self.key.denom())
    }
}

impl fmt::Display for LogRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.key.denom().is_one() {
            write!(f, "log({})", self.key.numer())
        } else {
            write!(f, "log({}/{})", self.key.numer(), self.key.denom())
        }
    }
}

/// Total order on float views that matches the exact order on the keys
/// whenever the floats are distinguishable.
pub fn cmp_f64_total(a: f64, b: f64) -> Ordering {
    a.partial_cmp(&b).expect("log values are finite")
}
