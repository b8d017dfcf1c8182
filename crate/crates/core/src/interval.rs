//! Closed intervals with exact rational endpoints.
//!
//! Every certified quantity in the crate (Frobenius-Perron dimensions, the
//! index of a sequence, module dimensions) is carried as an [`Interval`].
//! Arithmetic is outward-exact: endpoints are rationals, so the only
//! widening comes from square roots, which are bracketed to a requested
//! width.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

pub fn rat_from_uint(n: &BigUint) -> Rational {
    Rational::from_integer(BigInt::from(n.clone()))
}

/// `"p/q"` in lowest terms; integers keep the explicit `/1`.
pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Accepts `p/q`, plain integers, decimals (`0.25`) and scientific
/// notation (`1e-12`).
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(n, d));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(pos) => {
            let e: i32 = s[pos + 1..].parse().map_err(|_| bad())?;
            (&s[..pos], e)
        }
        None => (s, 0),
    };
    let (neg, mantissa) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits: BigInt = format!("{int_part}{frac_part}0").parse().map_err(|_| bad())?;
    let digits = digits / 10;
    let scale = exp - frac_part.len() as i32;
    let ten = BigInt::from(10u32);
    let mut q = if scale >= 0 {
        Rational::from_integer(digits * num_traits::pow(ten, scale as usize))
    } else {
        Rational::new(digits, num_traits::pow(ten, (-scale) as usize))
    };
    if neg {
        q = -q;
    }
    Ok(q)
}

pub fn rational_to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// Floor of `log2(q)` for positive `q`, approximately (used only to size
/// working precision).
pub(crate) fn approx_log2(q: &Rational) -> i64 {
    let n = q.numer().abs().bits() as i64;
    let d = q.denom().bits() as i64;
    n - d
}

/// A closed interval `[lo, hi]` of rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: Rational,
    hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        Interval { lo, hi }
    }

    pub fn point(x: Rational) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn from_int(n: i64) -> Self {
        Interval::point(rat(n, 1))
    }

    pub fn zero() -> Self {
        Interval::from_int(0)
    }

    pub fn one() -> Self {
        Interval::from_int(1)
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / rat(2, 1)
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    /// The exact value, when the interval is degenerate.
    pub fn exact(&self) -> Option<&Rational> {
        self.is_point().then_some(&self.lo)
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn intersects(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// Distance between the two sets; zero when they intersect.
    pub fn gap(&self, other: &Interval) -> Rational {
        if other.lo > self.hi {
            &other.lo - &self.hi
        } else if self.lo > other.hi {
            &self.lo - &other.hi
        } else {
            Rational::zero()
        }
    }

    /// True when the two enclosures cannot be told apart at `tol`.
    pub fn agrees_within(&self, other: &Interval, tol: &Rational) -> bool {
        self.gap(other) <= *tol
    }

    pub fn scale(&self, c: &Rational) -> Interval {
        if c.is_negative() {
            Interval::new(&self.hi * c, &self.lo * c)
        } else {
            Interval::new(&self.lo * c, &self.hi * c)
        }
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(&Rational::zero())
    }

    pub fn checked_div(&self, other: &Interval) -> Option<Interval> {
        if other.contains_zero() {
            return None;
        }
        let inv = Interval::new(other.hi.recip(), other.lo.recip());
        Some(self * &inv)
    }

    /// Enclosure of the square root of a nonnegative interval; each endpoint
    /// is bracketed to within `tol`.
    pub fn sqrt(&self, tol: &Rational) -> Interval {
        assert!(!self.lo.is_negative(), "sqrt of negative interval");
        let lo = sqrt_bracket(&self.lo, tol).0;
        let hi = sqrt_bracket(&self.hi, tol).1;
        Interval::new(lo, hi)
    }

    pub fn to_f64(&self) -> f64 {
        rational_to_f64(&self.midpoint())
    }
}

/// `(a, b)` with `a <= sqrt(x) <= b` and `b - a <= tol` (exact when `x` is a
/// perfect rational square).
pub fn sqrt_bracket(x: &Rational, tol: &Rational) -> (Rational, Rational) {
    if x.is_zero() {
        return (Rational::zero(), Rational::zero());
    }
    let n = x.numer().to_biguint().expect("nonnegative");
    let d = x.denom().to_biguint().expect("positive");
    let (sn, sd) = (n.sqrt(), d.sqrt());
    if &sn * &sn == n && &sd * &sd == d {
        let r = Rational::new(BigInt::from(sn), BigInt::from(sd));
        return (r.clone(), r);
    }
    // sqrt(n/d) = sqrt(n*d) / d; scale by 2^k until the unit step is below tol.
    let nd = &n * &d;
    let mut k = 0usize;
    loop {
        let scale = BigUint::one() << k;
        let root = (&nd * &scale * &scale).sqrt();
        let den = BigInt::from(&d * &scale);
        let lo = Rational::new(BigInt::from(root.clone()), den.clone());
        let hi = Rational::new(BigInt::from(root + 1u32), den.clone());
        if &hi - &lo <= *tol {
            return (lo, hi);
        }
        k += 8;
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_point() {
            write!(f, "[{}]", format_rational(&self.lo))
        } else {
            write!(f, "[{:.15}, {:.15}]", rational_to_f64(&self.lo), rational_to_f64(&self.hi))
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.exact() {
            Some(x) if x.is_integer() => write!(f, "{}", x.numer()),
            Some(x) => write!(f, "{}", format_rational(x)),
            None => write!(
                f,
                "{:.12} ± {:.1e}",
                self.to_f64(),
                rational_to_f64(&self.width()) / 2.0
            ),
        }
    }
}

impl Serialize for Interval {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Interval", 2)?;
        st.serialize_field("lo", &format_rational(&self.lo))?;
        st.serialize_field("hi", &format_rational(&self.hi))?;
        st.end()
    }
}

impl Add for &Interval {
    type Output = Interval;
    fn add(self, rhs: &Interval) -> Interval {
        Interval::new(&self.lo + &rhs.lo, &self.hi + &rhs.hi)
    }
}

impl Sub for &Interval {
    type Output = Interval;
    fn sub(self, rhs: &Interval) -> Interval {
        Interval::new(&self.lo - &rhs.hi, &self.hi - &rhs.lo)
    }
}

impl Mul for &Interval {
    type Output = Interval;
    fn mul(self, rhs: &Interval) -> Interval {
        if !self.lo.is_negative() && !rhs.lo.is_negative() {
            return Interval::new(&self.lo * &rhs.lo, &self.hi * &rhs.hi);
        }
        let cands = [
            &self.lo * &rhs.lo,
            &self.lo * &rhs.hi,
            &self.hi * &rhs.lo,
            &self.hi * &rhs.hi,
        ];
        let lo = cands.iter().min().unwrap().clone();
        let hi = cands.iter().max().unwrap().clone();
        Interval::new(lo, hi)
    }
}

impl std::iter::Sum for Interval {
    fn sum<I: Iterator<Item = Interval>>(iter: I) -> Interval {
        iter.fold(Interval::zero(), |acc, x| &acc + &x)
    }
}
