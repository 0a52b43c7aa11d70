//! Slopes: reduced fractions `p/q` on the projective line, with one point at
//! infinity written `1/0`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::ArithError;

/// A reduced fraction with `den >= 0`. Infinity has no sign: `-1/0` and `1/0`
/// are the same slope.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Slope {
    num: BigInt,
    den: BigInt,
}

impl Slope {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Slope, ArithError> {
        let (num, den) = (num.into(), den.into());
        if num.is_zero() && den.is_zero() {
            return Err(ArithError::Indeterminate);
        }
        Ok(Slope::reduced(num, den))
    }

    // Callers guarantee (num, den) != (0, 0).
    fn reduced(num: BigInt, den: BigInt) -> Slope {
        if den.is_zero() {
            return Slope::infinity();
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = (num / &g, den / &g);
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        Slope { num, den }
    }

    pub fn infinity() -> Slope {
        Slope { num: BigInt::one(), den: BigInt::zero() }
    }

    pub fn zero() -> Slope {
        Slope { num: BigInt::zero(), den: BigInt::one() }
    }

    pub fn integer(n: impl Into<BigInt>) -> Slope {
        Slope { num: n.into(), den: BigInt::one() }
    }

    pub fn num(&self) -> &BigInt {
        &self.num
    }

    pub fn den(&self) -> &BigInt {
        &self.den
    }

    pub fn is_infinite(&self) -> bool {
        self.den.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    /// `Some(n)` when the slope is the integer `n`.
    pub fn as_integer(&self) -> Option<&BigInt> {
        self.is_integral().then_some(&self.num)
    }

    /// `p/q -> -p/q`; infinity is fixed.
    pub fn mirror(&self) -> Slope {
        if self.is_infinite() {
            return self.clone();
        }
        Slope { num: -&self.num, den: self.den.clone() }
    }

    /// `p/q -> p/(q + t p)`, the action of `t` meridional twists.
    pub fn twist(&self, t: &BigInt) -> Slope {
        Slope::reduced(self.num.clone(), &self.den + t * &self.num)
    }

    /// `p/q -> q/p`; swaps zero and infinity.
    pub fn invert(&self) -> Slope {
        Slope::reduced(self.den.clone(), self.num.clone())
    }

    /// Sum on the extended line. `None` only for infinity plus infinity.
    pub fn checked_add(&self, other: &Slope) -> Option<Slope> {
        match (self.is_infinite(), other.is_infinite()) {
            (true, true) => None,
            (true, false) | (false, true) => Some(Slope::infinity()),
            (false, false) => {
                Some(Slope::reduced(&self.num * &other.den + &other.num * &self.den, &self.den * &other.den))
            }
        }
    }

    pub fn checked_sub(&self, other: &Slope) -> Option<Slope> {
        self.checked_add(&other.mirror())
    }

    /// Product on the extended line. `None` for zero times infinity.
    pub fn checked_mul(&self, other: &Slope) -> Option<Slope> {
        let inf = self.is_infinite() || other.is_infinite();
        if inf && (self.is_zero() || other.is_zero()) {
            return None;
        }
        if inf {
            return Some(Slope::infinity());
        }
        Some(Slope::reduced(&self.num * &other.num, &self.den * &other.den))
    }

    pub fn checked_div(&self, other: &Slope) -> Option<Slope> {
        self.checked_mul(&other.invert())
    }

    /// `self - 1/x`, which is always defined when `self` is finite.
    pub fn minus_recip(&self, x: &Slope) -> Option<Slope> {
        self.checked_sub(&x.invert())
    }
}

impl From<i64> for Slope {
    fn from(n: i64) -> Slope {
        Slope::integer(n)
    }
}

impl From<BigInt> for Slope {
    fn from(n: BigInt) -> Slope {
        Slope::integer(n)
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

fn parse_int(s: &str) -> Option<BigInt> {
    let s = s.trim();
    let s = s.strip_prefix('+').unwrap_or(s);
    BigInt::from_str(s).ok()
}

impl FromStr for Slope {
    type Err = ArithError;

    /// Accepts `p/q`, a bare integer, `inf` or `∞`.
    fn from_str(s: &str) -> Result<Slope, ArithError> {
        let err = || ArithError::Parse { what: "slope", input: s.to_string() };
        let t = s.trim();
        if t == "inf" || t == "∞" {
            return Ok(Slope::infinity());
        }
        match t.split_once('/') {
            Some((a, b)) => {
                let (a, b) = (parse_int(a).ok_or_else(err)?, parse_int(b).ok_or_else(err)?);
                Slope::new(a, b).map_err(|_| err())
            }
            None => parse_int(t).map(Slope::integer).ok_or_else(err),
        }
    }
}
