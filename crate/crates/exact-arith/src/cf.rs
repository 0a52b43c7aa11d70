//! Subtractive continued fractions `[a, b, ..., c] = 1/(a - 1/(b - ... - 1/c))`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::{ArithError, Slope};

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct ContinuedFraction {
    pub terms: Vec<BigInt>,
}

impl ContinuedFraction {
    pub fn new(terms: Vec<BigInt>) -> Self {
        ContinuedFraction { terms }
    }

    pub fn from_i64s(terms: &[i64]) -> Self {
        ContinuedFraction { terms: terms.iter().map(|&t| BigInt::from(t)).collect() }
    }

    /// The empty list is infinity by convention.
    pub fn evaluate(&self) -> Slope {
        if self.terms.is_empty() {
            return Slope::infinity();
        }
        let mut tail = Slope::zero();
        for a in self.terms.iter().rev() {
            // a is finite, so a - tail always exists
            tail = Slope::integer(a.clone()).checked_sub(&tail).expect("finite minus slope").invert();
        }
        tail
    }

    /// Deterministic expansion with every tail strictly between 0 and 1, so
    /// each head is `ceil(1/v)`.
    pub fn expand(s: &Slope) -> Self {
        if s.is_infinite() {
            return ContinuedFraction::default();
        }
        if s.is_zero() {
            return ContinuedFraction::from_i64s(&[0, 0]);
        }
        let mut terms = Vec::new();
        // v = num/den, and we track 1/v = den/num with a positive denominator.
        let (mut num, mut den) = (s.den().clone(), s.num().clone());
        if den < BigInt::zero() {
            num = -num;
            den = -den;
        }
        loop {
            let (q, r) = num.div_rem(&den);
            if r.is_zero() {
                terms.push(q);
                return ContinuedFraction { terms };
            }
            let a = num.div_ceil(&den);
            // tail w = a - num/den lies in (0, 1); continue with 1/w
            let w_num = &a * &den - &num;
            terms.push(a);
            num = den;
            den = w_num;
            debug_assert!(den > BigInt::zero() && den < num);
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// The same nesting with rational entries. `None` when an infinite entry
/// meets an infinite tail.
pub fn evaluate_slopes(terms: &[Slope]) -> Option<Slope> {
    if terms.is_empty() {
        return Some(Slope::infinity());
    }
    let mut tail = Slope::zero();
    for a in terms.iter().rev() {
        tail = a.checked_sub(&tail)?.invert();
    }
    Some(tail)
}

/// Scaled determinant of the tridiagonal matrix with diagonal `terms` and unit
/// off-diagonal squares: the continuant `K(a_1, ..., a_n)` in the subtractive
/// convention. `[a_1, ..., a_n] = K(a_2..a_n) / K(a_1..a_n)`.
pub fn continuant(terms: &[BigInt]) -> BigInt {
    let (mut prev, mut cur) = (BigInt::zero(), BigInt::one());
    for a in terms {
        let next = a * &cur - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

impl fmt::Display for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{t}")?;
        }
        f.write_str("]")
    }
}

impl FromStr for ContinuedFraction {
    type Err = ArithError;

    fn from_str(s: &str) -> Result<Self, ArithError> {
        let err = || ArithError::Parse { what: "continued fraction", input: s.to_string() };
        let body = s.trim().strip_prefix('[').and_then(|b| b.strip_suffix(']')).ok_or_else(err)?;
        if body.trim().is_empty() {
            return Ok(ContinuedFraction::default());
        }
        let terms = body
            .split(',')
            .map(|t| {
                let t = t.trim().replace('−', "-");
                BigInt::from_str(t.strip_prefix('+').unwrap_or(&t)).map_err(|_| err())
            })
            .collect::<Result<_, _>>()?;
        Ok(ContinuedFraction { terms })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cf(t: &[i64]) -> ContinuedFraction {
        ContinuedFraction::from_i64s(t)
    }

    #[test]
    fn one_has_two_spellings() {
        assert_eq!(cf(&[1]).evaluate(), Slope::integer(1));
        assert_eq!(cf(&[0, -1]).evaluate(), Slope::integer(1));
    }

    #[test]
    fn small_values() {
        assert_eq!(cf(&[2, 3]).evaluate(), Slope::new(3, 5).unwrap());
        assert_eq!(cf(&[]).evaluate(), Slope::infinity());
        assert_eq!(cf(&[0]).evaluate(), Slope::infinity());
        assert_eq!(cf(&[0, 0]).evaluate(), Slope::zero());
        assert_eq!(cf(&[1, 1]).evaluate(), Slope::infinity());
    }

    #[test]
    fn expansions() {
        assert_eq!(ContinuedFraction::expand(&Slope::new(3, 5).unwrap()), cf(&[2, 3]));
        assert_eq!(ContinuedFraction::expand(&Slope::integer(1)), cf(&[1]));
        assert_eq!(ContinuedFraction::expand(&Slope::infinity()), cf(&[]));
        assert_eq!(ContinuedFraction::expand(&Slope::new(-3, 5).unwrap()), cf(&[-1, 2, 2]));
        assert_eq!(ContinuedFraction::expand(&Slope::zero()).evaluate(), Slope::zero());
    }

    #[test]
    fn continuant_matches_evaluation() {
        let t = cf(&[3, -2, 5, 4]);
        let k_all = continuant(&t.terms);
        let k_tail = continuant(&t.terms[1..]);
        assert_eq!(t.evaluate(), Slope::new(k_tail, k_all).unwrap());
    }

    #[test]
    fn rational_entries() {
        let v = evaluate_slopes(&[Slope::new(5, 2).unwrap(), Slope::integer(3)]).unwrap();
        // 1/(5/2 - 1/3) = 6/13
        assert_eq!(v, Slope::new(6, 13).unwrap());
        assert_eq!(evaluate_slopes(&[Slope::infinity()]), Some(Slope::zero()));
    }

    #[test]
    fn text_round_trip() {
        let t = cf(&[2, -3, 0]);
        assert_eq!(t.to_string(), "[2,-3,0]");
        assert_eq!("[2, −3, 0]".parse::<ContinuedFraction>().unwrap(), t);
        assert_eq!("[]".parse::<ContinuedFraction>().unwrap(), cf(&[]));
    }
}
