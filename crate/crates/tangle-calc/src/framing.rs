//! Matching tangle insertions with Dehn fillings.
//!
//! A framing of a four-punctured sphere is an ordered pair of unoriented
//! curves `(m̂, l̂)`. Each lifts to a curve on the covering torus; the lifts are
//! oriented so that `m · l = +1`. In that basis the fraction of an inserted
//! rational tangle and the filling slope are the same number, which is what
//! lets the tangle route and the surgery route share one set of slopes.

use exact_arith::Slope;
use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::{Result, TangleError};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Framing {
    pub sphere: (String, String),
    pub torus: (String, String),
    /// `-1` when the raw lift of `l̂` had to be reversed.
    pub orientation: i8,
}

impl Framing {
    /// `intersection` is `m · l` for the lifts as first drawn; a `-1` is
    /// repaired by reversing `l`.
    pub fn lift(m_hat: &str, l_hat: &str, intersection: i8) -> Result<Framing> {
        let (l, orientation) = match intersection {
            1 => (l_hat.to_string(), 1),
            -1 => (format!("-{l_hat}"), -1),
            other => return Err(TangleError::Framing(format!("lifts meet {other} times, expected +-1"))),
        };
        Ok(Framing { sphere: (m_hat.to_string(), l_hat.to_string()), torus: (m_hat.to_string(), l), orientation })
    }

    pub fn standard() -> Framing {
        Framing::lift("m", "l", 1).expect("unit intersection")
    }
}

/// The filling slope matching the insertion of the rational tangle `r`.
pub fn filling_correspondence(f: &Framing, r: &Slope) -> Slope {
    debug_assert!(f.orientation.abs() == 1);
    r.clone()
}

/// A change of framing, acting on slopes by `p/q -> (a p + b q)/(c p + d q)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FramingChange {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigInt,
}

impl FramingChange {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>, d: impl Into<BigInt>) -> Result<Self> {
        let m = FramingChange { a: a.into(), b: b.into(), c: c.into(), d: d.into() };
        if !m.determinant().abs().is_one() {
            return Err(TangleError::Framing(format!("determinant {} is not +-1", m.determinant())));
        }
        Ok(m)
    }

    pub fn identity() -> Self {
        FramingChange::new(1, 0, 0, 1).expect("unimodular")
    }

    /// `t` twists along the meridian: `p/q -> p/(q + t p)`.
    pub fn twist(t: impl Into<BigInt>) -> Self {
        FramingChange::new(1, 0, t, 1).expect("unimodular")
    }

    pub fn determinant(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn apply(&self, s: &Slope) -> Slope {
        let (p, q) = (s.num(), s.den());
        Slope::new(&self.a * p + &self.b * q, &self.c * p + &self.d * q)
            .expect("unimodular maps keep coprime pairs coprime")
    }

    /// `self` after `first`.
    pub fn compose(&self, first: &FramingChange) -> FramingChange {
        FramingChange {
            a: &self.a * &first.a + &self.b * &first.c,
            b: &self.a * &first.b + &self.b * &first.d,
            c: &self.c * &first.a + &self.d * &first.c,
            d: &self.c * &first.b + &self.d * &first.d,
        }
    }

    pub fn inverse(&self) -> FramingChange {
        let det = self.determinant();
        FramingChange { a: &self.d * &det, b: -&self.b * &det, c: -&self.c * &det, d: &self.a * &det }
    }
}
