use std::fmt;

use exact_arith::Slope;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use surgery_engine::ClosedManifoldClass;

/// The numerator closure of the rational tangle `p/q`, stored with `p >= 0`
/// and `0 <= q < p`. `b(1, 0)` is the unknot and `b(0, 1)` the two-component
/// unlink.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TwoBridgeLink {
    p: BigInt,
    q: BigInt,
}

impl TwoBridgeLink {
    pub fn new(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Self {
        let (p, q): (BigInt, BigInt) = (p.into(), q.into());
        let q = if p.is_negative() { -q } else { q };
        let p = p.abs();
        if p.is_zero() {
            return TwoBridgeLink { p, q: BigInt::one() };
        }
        TwoBridgeLink { q: q.mod_floor(&p), p }
    }

    /// Closing `1/0` gives the unknot and `0` the unlink.
    pub fn from_fraction(s: &Slope) -> Self {
        TwoBridgeLink::new(s.num().clone(), s.den().clone())
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    pub fn is_unknot(&self) -> bool {
        self.p.is_one()
    }

    /// Two components when `p` is even.
    pub fn components(&self) -> usize {
        if self.p.is_even() {
            2
        } else {
            1
        }
    }

    pub fn mirror(&self) -> Self {
        TwoBridgeLink::new(self.p.clone(), -&self.q)
    }
}

/// Schubert: `b(p, q)` and `b(p, q')` agree iff `q' = q^{+-1} mod p`. With
/// `oriented` false, mirror images `-q^{+-1}` are allowed as well.
pub fn two_bridge_equivalent(a: &TwoBridgeLink, b: &TwoBridgeLink, oriented: bool) -> bool {
    if a.p != b.p {
        return false;
    }
    let p = &a.p;
    if p <= &BigInt::from(2) {
        return true;
    }
    let inv = a.q.extended_gcd(p).x.mod_floor(p);
    let mut options = vec![a.q.clone(), inv];
    if !oriented {
        let neg: Vec<BigInt> = options.iter().map(|q| (-q).mod_floor(p)).collect();
        options.extend(neg);
    }
    options.contains(&b.q)
}

/// `b(p, q)` lifts to `L(p, q)`; the unknot to `S^3` and the unlink to
/// `S^1 x S^2`.
pub fn double_branched_cover(l: &TwoBridgeLink) -> ClosedManifoldClass {
    ClosedManifoldClass::lens(l.p.clone(), l.q.clone())
}

impl fmt::Display for TwoBridgeLink {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "b({},{})", self.p, self.q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(p: i64, q: i64) -> TwoBridgeLink {
        TwoBridgeLink::new(p, q)
    }

    #[test]
    fn normal_form() {
        assert_eq!(TwoBridgeLink::from_fraction(&"3/5".parse().unwrap()), b(3, 2));
        assert!(TwoBridgeLink::from_fraction(&"1/7".parse().unwrap()).is_unknot());
        assert!(TwoBridgeLink::from_fraction(&Slope::infinity()).is_unknot());
        assert_eq!(TwoBridgeLink::from_fraction(&Slope::zero()), b(0, 1));
        assert_eq!(TwoBridgeLink::from_fraction(&"-5/2".parse().unwrap()), b(5, 3));
        assert_eq!(b(4, 1).components(), 2);
    }

    #[test]
    fn schubert() {
        assert!(two_bridge_equivalent(&b(5, 2), &b(5, 3), true));
        assert!(!two_bridge_equivalent(&b(3, 1), &b(5, 1), false));
        assert!(two_bridge_equivalent(&b(7, 3), &b(7, 3), true));
        assert!(!two_bridge_equivalent(&b(7, 1), &b(7, 6), true));
        assert!(two_bridge_equivalent(&b(7, 1), &b(7, 6), false));
    }

    #[test]
    fn covers() {
        assert_eq!(double_branched_cover(&b(1, 0)), ClosedManifoldClass::ThreeSphere);
        assert_eq!(double_branched_cover(&b(5, 2)), ClosedManifoldClass::lens(5, 2));
        assert_eq!(double_branched_cover(&b(0, 1)), ClosedManifoldClass::S1xS2);
    }
}
