//! Scalars of the max-times semiring `(R+, max, *)` and its order-isomorphic
//! max-plus view `(R ∪ {-inf}, max, +)`.
//!
//! Everything downstream is generic over [`Scalar`]. Three carriers are
//! provided:
//!
//! * [`MaxPlusF64`] — float backend. Values are stored in the log domain
//!   (max-plus view), so `tmul` is addition and the semiring zero is `-inf`.
//!   Max-times I/O converts through `ln`/`exp`.
//! * [`MaxTimesRat`] — exact backend over nonnegative rationals with the
//!   max-times arithmetic.
//! * [`MaxPlusRat`] — exact backend over rationals (plus a `-inf` bottom)
//!   with the max-plus arithmetic, used for integer max-plus systems.

use std::cmp::Ordering;
use std::fmt;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{FromPrimitive, One, Signed, ToPrimitive, Zero};

/// Comparator configuration shared by every equality-like decision
/// (`= 1`, `lambda(A) = 1`, fixpoint detection, type argmax ties).
///
/// Exact backends ignore it and compare exactly. The float backend treats
/// `rel` as a relative tolerance on max-times magnitudes (equivalently an
/// absolute tolerance in the log domain) and `abs` as the absolute
/// threshold below which a max-times magnitude counts as zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cmp {
    pub rel: f64,
    pub abs: f64,
}

impl Default for Cmp {
    fn default() -> Self {
        Cmp { rel: 1e-9, abs: 1e-12 }
    }
}

impl Cmp {
    pub fn with_rel(rel: f64) -> Self {
        Cmp { rel, ..Cmp::default() }
    }
}

/// A totally ordered scalar of the max semiring.
///
/// `tmul` is the semiring multiplication (`*` in max-times, `+` in
/// max-plus); semiring addition is always `max` under [`Scalar::order`].
pub trait Scalar: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    /// True when arithmetic and comparisons are exact.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;

    fn tmul(&self, rhs: &Self) -> Self;

    /// Multiplicative inverse; `None` for the semiring zero.
    fn tinv(&self) -> Option<Self>;

    fn tdiv(&self, rhs: &Self) -> Option<Self> {
        rhs.tinv().map(|inv| self.tmul(&inv))
    }

    /// Total order (the semiring order; zero is the least element).
    fn order(&self, rhs: &Self) -> Ordering;

    /// The max-plus view of the value as a real number (`-inf` for zero).
    fn log_value(&self) -> f64;

    /// Inverse of [`Scalar::log_value`]; approximate on exact backends.
    fn from_log(v: f64) -> Self;

    /// `self` raised to the `k`-th power, `k >= 0`.
    fn pow_u(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = acc.tmul(self);
        }
        acc
    }

    /// `k`-th root, `k >= 1`. Exact whenever representable in the carrier.
    fn nth_root(&self, k: u32) -> Self;

    /// Equality under the comparator (exact backends ignore `cmp`).
    fn eq_tol(&self, rhs: &Self, cmp: &Cmp) -> bool;

    fn max_s(&self, rhs: &Self) -> Self {
        if self.order(rhs) == Ordering::Less {
            rhs.clone()
        } else {
            self.clone()
        }
    }

    fn min_s(&self, rhs: &Self) -> Self {
        if self.order(rhs) == Ordering::Greater {
            rhs.clone()
        } else {
            self.clone()
        }
    }

    fn le(&self, rhs: &Self) -> bool {
        self.order(rhs) != Ordering::Greater
    }

    fn ge(&self, rhs: &Self) -> bool {
        self.order(rhs) != Ordering::Less
    }

    fn le_tol(&self, rhs: &Self, cmp: &Cmp) -> bool {
        self.le(rhs) || self.eq_tol(rhs, cmp)
    }

    fn ge_tol(&self, rhs: &Self, cmp: &Cmp) -> bool {
        self.ge(rhs) || self.eq_tol(rhs, cmp)
    }

    /// Strictly less, beyond tolerance.
    fn lt_tol(&self, rhs: &Self, cmp: &Cmp) -> bool {
        self.order(rhs) == Ordering::Less && !self.eq_tol(rhs, cmp)
    }

    fn is_one_tol(&self, cmp: &Cmp) -> bool {
        self.eq_tol(&Self::one(), cmp)
    }
}

/// Float scalar, stored as the max-plus (log-domain) value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaxPlusF64(pub f64);

impl MaxPlusF64 {
    /// Build from a max-times magnitude.
    pub fn from_maxtimes(v: f64) -> Self {
        MaxPlusF64(v.ln())
    }

    /// The max-times magnitude.
    pub fn to_maxtimes(self) -> f64 {
        self.0.exp()
    }
}

impl fmt::Display for MaxPlusF64 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == f64::NEG_INFINITY {
            write!(f, "-inf")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl Scalar for MaxPlusF64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        MaxPlusF64(f64::NEG_INFINITY)
    }

    fn one() -> Self {
        MaxPlusF64(0.0)
    }

    fn is_zero(&self) -> bool {
        self.0 == f64::NEG_INFINITY
    }

    fn tmul(&self, rhs: &Self) -> Self {
        // -inf + x = -inf, including -inf + inf (never constructed).
        MaxPlusF64(self.0 + rhs.0)
    }

    fn tinv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(MaxPlusF64(-self.0))
        }
    }

    fn order(&self, rhs: &Self) -> Ordering {
        self.0.partial_cmp(&rhs.0).expect("NaN scalar")
    }

    fn log_value(&self) -> f64 {
        self.0
    }

    fn from_log(v: f64) -> Self {
        MaxPlusF64(v)
    }

    fn nth_root(&self, k: u32) -> Self {
        assert!(k >= 1);
        if self.is_zero() {
            return *self;
        }
        MaxPlusF64(self.0 / k as f64)
    }

    fn eq_tol(&self, rhs: &Self, cmp: &Cmp) -> bool {
        let (a, b) = (self.0, rhs.0);
        if a == b {
            return true;
        }
        let near_zero = cmp.abs.ln();
        if a == f64::NEG_INFINITY || b == f64::NEG_INFINITY {
            return a.max(b) <= near_zero;
        }
        (a - b).abs() <= cmp.rel || a.max(b) <= near_zero
    }
}

fn exact_rat_root(r: &BigRational, k: u32) -> Option<BigRational> {
    let num = r.numer();
    let den = r.denom();
    if num.is_negative() {
        return None;
    }
    let rn = num.nth_root(k);
    let rd = den.nth_root(k);
    if &rn.pow(k) == num && &rd.pow(k) == den {
        Some(BigRational::new(rn, rd))
    } else {
        None
    }
}

/// Exact nonnegative rational scalar with max-times arithmetic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaxTimesRat(pub BigRational);

impl MaxTimesRat {
    pub fn from_int(v: i64) -> Self {
        assert!(v >= 0, "max-times scalar must be nonnegative");
        MaxTimesRat(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_ratio(p: i64, q: i64) -> Self {
        let r = BigRational::new(BigInt::from(p), BigInt::from(q));
        assert!(!r.is_negative(), "max-times scalar must be nonnegative");
        MaxTimesRat(r)
    }
}

impl fmt::Display for MaxTimesRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Scalar for MaxTimesRat {
    const EXACT: bool = true;

    fn zero() -> Self {
        MaxTimesRat(BigRational::zero())
    }

    fn one() -> Self {
        MaxTimesRat(BigRational::one())
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn tmul(&self, rhs: &Self) -> Self {
        MaxTimesRat(&self.0 * &rhs.0)
    }

    fn tinv(&self) -> Option<Self> {
        if self.0.is_zero() {
            None
        } else {
            Some(MaxTimesRat(self.0.recip()))
        }
    }

    fn order(&self, rhs: &Self) -> Ordering {
        self.0.cmp(&rhs.0)
    }

    fn log_value(&self) -> f64 {
        if self.0.is_zero() {
            f64::NEG_INFINITY
        } else {
            // ln(p/q) computed as ln p - ln q to survive big operands
            let p = self.0.numer().to_f64().unwrap_or(f64::MAX);
            let q = self.0.denom().to_f64().unwrap_or(f64::MAX);
            p.ln() - q.ln()
        }
    }

    fn from_log(v: f64) -> Self {
        if v == f64::NEG_INFINITY {
            return Self::zero();
        }
        MaxTimesRat(BigRational::from_f64(v.exp()).expect("finite scalar"))
    }

    fn nth_root(&self, k: u32) -> Self {
        assert!(k >= 1);
        if let Some(r) = exact_rat_root(&self.0, k) {
            return MaxTimesRat(r);
        }
        // no exact rational root; fall back to a float approximation
        let approx = (self.log_value() / k as f64).exp();
        MaxTimesRat(BigRational::from_f64(approx).expect("finite root"))
    }

    fn eq_tol(&self, rhs: &Self, _cmp: &Cmp) -> bool {
        self.0 == rhs.0
    }
}

/// Exact rational scalar with max-plus arithmetic; `None` is the bottom `-inf`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaxPlusRat(pub Option<BigRational>);

impl MaxPlusRat {
    pub fn from_int(v: i64) -> Self {
        MaxPlusRat(Some(BigRational::from_integer(BigInt::from(v))))
    }

    pub fn neg_inf() -> Self {
        MaxPlusRat(None)
    }
}

impl fmt::Display for MaxPlusRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            None => write!(f, "-inf"),
            Some(r) => write!(f, "{}", r),
        }
    }
}

impl Scalar for MaxPlusRat {
    const EXACT: bool = true;

    fn zero() -> Self {
        MaxPlusRat(None)
    }

    fn one() -> Self {
        MaxPlusRat(Some(BigRational::zero()))
    }

    fn is_zero(&self) -> bool {
        self.0.is_none()
    }

    fn tmul(&self, rhs: &Self) -> Self {
        match (&self.0, &rhs.0) {
            (Some(a), Some(b)) => MaxPlusRat(Some(a + b)),
            _ => MaxPlusRat(None),
        }
    }

    fn tinv(&self) -> Option<Self> {
        self.0.as_ref().map(|r| MaxPlusRat(Some(-r)))
    }

    fn order(&self, rhs: &Self) -> Ordering {
        match (&self.0, &rhs.0) {
            (None, None) => Ordering::Equal,
            (None, Some(_)) => Ordering::Less,
            (Some(_), None) => Ordering::Greater,
            (Some(a), Some(b)) => a.cmp(b),
        }
    }

    fn log_value(&self) -> f64 {
        match &self.0 {
            None => f64::NEG_INFINITY,
            Some(r) => r.to_f64().expect("finite scalar"),
        }
    }

    fn from_log(v: f64) -> Self {
        if v == f64::NEG_INFINITY {
            MaxPlusRat(None)
        } else {
            MaxPlusRat(Some(BigRational::from_f64(v).expect("finite scalar")))
        }
    }

    fn nth_root(&self, k: u32) -> Self {
        assert!(k >= 1);
        match &self.0 {
            None => MaxPlusRat(None),
            Some(r) => MaxPlusRat(Some(r / BigRational::from_integer(BigInt::from(k)))),
        }
    }

    fn eq_tol(&self, rhs: &Self, _cmp: &Cmp) -> bool {
        self.0 == rhs.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn maxplus_f64_roundtrip() {
        let x = MaxPlusF64::from_maxtimes(2.0);
        assert!((x.to_maxtimes() - 2.0).abs() < 1e-12);
        assert!(MaxPlusF64::from_maxtimes(0.0).is_zero());
    }

    #[test]
    fn maxtimes_rat_exact_root() {
        // (1/4)^(1/2) = 1/2 exactly
        let r = MaxTimesRat::from_ratio(1, 4).nth_root(2);
        assert_eq!(r, MaxTimesRat::from_ratio(1, 2));
    }

    #[test]
    fn maxplus_rat_root_is_division() {
        let r = MaxPlusRat::from_int(3).nth_root(2);
        assert_eq!(r, MaxPlusRat(Some(BigRational::new(BigInt::from(3), BigInt::from(2)))));
    }

    #[test]
    fn float_comparator() {
        let cmp = Cmp::default();
        let a = MaxPlusF64(1.0);
        let b = MaxPlusF64(1.0 + 1e-12);
        assert!(a.eq_tol(&b, &cmp));
        assert!(!a.eq_tol(&MaxPlusF64(1.1), &cmp));
        assert!(MaxPlusF64::zero().eq_tol(&MaxPlusF64::zero(), &cmp));
        assert!(!MaxPlusF64::one().eq_tol(&MaxPlusF64::zero(), &cmp));
    }

    #[test]
    fn semiring_units() {
        assert_eq!(MaxTimesRat::from_int(6), MaxTimesRat::from_int(2).tmul(&MaxTimesRat::from_int(3)));
        let two = MaxPlusF64::from_maxtimes(2.0);
        let three = MaxPlusF64::from_maxtimes(3.0);
        assert!((two.tmul(&three).to_maxtimes() - 6.0).abs() < 1e-9);
        assert_eq!(two.max_s(&three), three);
    }
}
