use std::fmt;

use exact_arith::Slope;
use num_bigint::BigInt;

use crate::convention::{Composition, HORIZONTAL, VERTICAL};
use crate::{Result, TangleError};

/// A rational tangle is determined by its fraction; `1/0` and `0` included.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalTangle {
    pub fraction: Slope,
}

impl RationalTangle {
    pub fn new(fraction: Slope) -> Self {
        RationalTangle { fraction }
    }
}

impl From<Slope> for RationalTangle {
    fn from(fraction: Slope) -> Self {
        RationalTangle { fraction }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum TangleExpr {
    Leaf(RationalTangle),
    Slot,
    HorizontalSum(Vec<TangleExpr>),
    VerticalStack(Vec<TangleExpr>),
    IntegerTwistBox(BigInt),
}

impl TangleExpr {
    pub fn leaf(s: Slope) -> Self {
        TangleExpr::Leaf(RationalTangle::new(s))
    }

    /// The staircase for `[a1, a2, ..., an]`: the stack of `1/a1` on top of
    /// the side-by-side sum of `-a2` and the staircase for `[a3, ..., an]`.
    pub fn from_cf(terms: &[Slope]) -> Self {
        match terms {
            [] => TangleExpr::leaf(Slope::infinity()),
            [a] => TangleExpr::leaf(a.invert()),
            [a, b] => TangleExpr::VerticalStack(vec![TangleExpr::leaf(a.invert()), TangleExpr::leaf(b.mirror())]),
            [a, b, rest @ ..] => TangleExpr::VerticalStack(vec![
                TangleExpr::leaf(a.invert()),
                TangleExpr::HorizontalSum(vec![TangleExpr::leaf(b.mirror()), TangleExpr::from_cf(rest)]),
            ]),
        }
    }

    pub fn slot_count(&self) -> usize {
        match self {
            TangleExpr::Slot => 1,
            TangleExpr::HorizontalSum(c) | TangleExpr::VerticalStack(c) => c.iter().map(Self::slot_count).sum(),
            _ => 0,
        }
    }

    fn replace_slot(&self, r: &RationalTangle) -> TangleExpr {
        match self {
            TangleExpr::Slot => TangleExpr::Leaf(r.clone()),
            TangleExpr::HorizontalSum(c) => TangleExpr::HorizontalSum(c.iter().map(|t| t.replace_slot(r)).collect()),
            TangleExpr::VerticalStack(c) => TangleExpr::VerticalStack(c.iter().map(|t| t.replace_slot(r)).collect()),
            other => other.clone(),
        }
    }

    /// Fills the single slot with `r`.
    pub fn insert(&self, r: &RationalTangle) -> Result<TangleExpr> {
        match self.slot_count() {
            1 => Ok(self.replace_slot(r)),
            n => Err(TangleError::SlotCount(n)),
        }
    }

    /// Reflection in the projection plane: every fraction changes sign.
    pub fn mirror(&self) -> TangleExpr {
        match self {
            TangleExpr::Leaf(r) => TangleExpr::leaf(r.fraction.mirror()),
            TangleExpr::Slot => TangleExpr::Slot,
            TangleExpr::HorizontalSum(c) => TangleExpr::HorizontalSum(c.iter().map(Self::mirror).collect()),
            TangleExpr::VerticalStack(c) => TangleExpr::VerticalStack(c.iter().map(Self::mirror).collect()),
            TangleExpr::IntegerTwistBox(t) => TangleExpr::IntegerTwistBox(-t),
        }
    }

    pub fn fraction(&self) -> Result<Slope> {
        self.fraction_under(HORIZONTAL, VERTICAL)
    }

    /// The fraction, provided every sum stays inside rational tangles: a
    /// side-by-side sum needs an integral summand and a stack needs one of
    /// the form `1/n`. Other sums are Montesinos tangles; their fraction
    /// still gives the determinant of the closure but not its two-bridge type.
    pub fn rational_fraction(&self) -> Result<Slope> {
        let fold = |children: &[TangleExpr], how: Composition, name: &str| -> Result<Slope> {
            let mut it = children.iter();
            let first = it.next().ok_or_else(|| TangleError::Unresolved(format!("empty {name}")))?;
            let mut acc = first.rational_fraction()?;
            for c in it {
                let f = c.rational_fraction()?;
                let unit = |s: &Slope| match how {
                    Composition::Add => s.is_integral(),
                    Composition::Harmonic => s.invert().is_integral(),
                };
                if !unit(&acc) && !unit(&f) {
                    return Err(TangleError::NotRational(format!("{name} of {acc} and {f}")));
                }
                acc =
                    how.combine(&acc, &f).ok_or_else(|| TangleError::Unresolved(format!("{name} of {acc} and {f}")))?;
            }
            Ok(acc)
        };
        match self {
            TangleExpr::HorizontalSum(c) => fold(c, HORIZONTAL, "hsum"),
            TangleExpr::VerticalStack(c) => fold(c, VERTICAL, "vsum"),
            other => other.fraction(),
        }
    }

    /// The fraction with an explicit assignment of the two sums; only the
    /// convention calibration uses anything but the frozen one.
    pub fn fraction_under(&self, horizontal: Composition, vertical: Composition) -> Result<Slope> {
        let fold = |children: &[TangleExpr], how: Composition, name: &str| -> Result<Slope> {
            let mut it = children.iter();
            let first = it.next().ok_or_else(|| TangleError::Unresolved(format!("empty {name}")))?;
            let mut acc = first.fraction_under(horizontal, vertical)?;
            for c in it {
                let f = c.fraction_under(horizontal, vertical)?;
                acc =
                    how.combine(&acc, &f).ok_or_else(|| TangleError::Unresolved(format!("{name} of {acc} and {f}")))?;
            }
            Ok(acc)
        };
        match self {
            TangleExpr::Leaf(r) => Ok(r.fraction.clone()),
            TangleExpr::Slot => Err(TangleError::SlotPresent),
            TangleExpr::IntegerTwistBox(t) => Ok(Slope::integer(t.clone())),
            TangleExpr::HorizontalSum(c) => fold(c, horizontal, "hsum"),
            TangleExpr::VerticalStack(c) => fold(c, vertical, "vsum"),
        }
    }
}

impl fmt::Display for TangleExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |f: &mut fmt::Formatter<'_>, head: &str, c: &[TangleExpr]| {
            write!(f, "({head}")?;
            for t in c {
                write!(f, " {t}")?;
            }
            f.write_str(")")
        };
        match self {
            TangleExpr::Leaf(r) => write!(f, "(leaf {})", r.fraction),
            TangleExpr::Slot => f.write_str("(slot)"),
            TangleExpr::IntegerTwistBox(t) => write!(f, "(twist {t})"),
            TangleExpr::HorizontalSum(c) => list(f, "hsum", c),
            TangleExpr::VerticalStack(c) => list(f, "vsum", c),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> Slope {
        x.parse().unwrap()
    }

    fn twist(n: i64) -> TangleExpr {
        TangleExpr::IntegerTwistBox(BigInt::from(n))
    }

    #[test]
    fn sums() {
        assert_eq!(TangleExpr::HorizontalSum(vec![twist(2), twist(3)]).fraction().unwrap(), s("5"));
        assert_eq!(TangleExpr::VerticalStack(vec![twist(2), twist(3)]).fraction().unwrap(), s("6/5"));
        let inf = TangleExpr::leaf(Slope::infinity());
        assert_eq!(
            TangleExpr::VerticalStack(vec![inf.clone(), TangleExpr::leaf(s("7/3"))]).fraction().unwrap(),
            s("7/3")
        );
        assert!(matches!(
            TangleExpr::HorizontalSum(vec![inf.clone(), inf]).fraction(),
            Err(TangleError::Unresolved(_))
        ));
    }

    #[test]
    fn rationality() {
        let half = TangleExpr::leaf(s("1/2"));
        let third = TangleExpr::leaf(s("1/3"));
        let h = TangleExpr::HorizontalSum(vec![half.clone(), third.clone()]);
        assert_eq!(h.fraction().unwrap(), s("5/6"));
        assert!(matches!(h.rational_fraction(), Err(TangleError::NotRational(_))));
        let ok = TangleExpr::HorizontalSum(vec![half.clone(), twist(2), TangleExpr::leaf(Slope::zero())]);
        assert_eq!(ok.rational_fraction().unwrap(), s("5/2"));
        // 1/2 and 1/3 are vertical twists, so stacking them is rational
        assert_eq!(TangleExpr::VerticalStack(vec![half.clone(), third]).rational_fraction().unwrap(), s("1/5"));
        let v = TangleExpr::VerticalStack(vec![TangleExpr::leaf(s("2/3")), TangleExpr::leaf(s("3/5"))]);
        assert!(v.rational_fraction().is_err());
        let inf = TangleExpr::leaf(Slope::infinity());
        assert_eq!(
            TangleExpr::VerticalStack(vec![inf.clone(), TangleExpr::leaf(s("2/3"))]).rational_fraction().unwrap(),
            s("2/3")
        );
        assert!(TangleExpr::HorizontalSum(vec![inf, half]).rational_fraction().is_err());
    }

    #[test]
    fn slots() {
        let t = TangleExpr::VerticalStack(vec![twist(2), TangleExpr::Slot, TangleExpr::leaf(s("3"))]);
        assert_eq!(t.fraction(), Err(TangleError::SlotPresent));
        let filled = t.insert(&RationalTangle::new(Slope::infinity())).unwrap();
        assert_eq!(filled.fraction().unwrap(), s("6/5"));
        assert_eq!(filled.insert(&RationalTangle::new(Slope::zero())), Err(TangleError::SlotCount(0)));
        let two = TangleExpr::HorizontalSum(vec![TangleExpr::Slot, TangleExpr::Slot]);
        assert_eq!(two.insert(&RationalTangle::new(Slope::zero())), Err(TangleError::SlotCount(2)));
    }

    #[test]
    fn staircase_examples() {
        assert_eq!(TangleExpr::from_cf(&[s("2"), s("3")]).fraction().unwrap(), s("3/5"));
        assert_eq!(TangleExpr::from_cf(&[s("1")]).fraction().unwrap(), s("1"));
        assert_eq!(TangleExpr::from_cf(&[s("0"), s("-1")]).fraction().unwrap(), s("1"));
        let t = TangleExpr::from_cf(&[s("-5/6"), s("0"), s("0"), s("-1")]);
        assert_eq!(t.fraction().unwrap(), s("6"));
        assert_eq!(t.mirror().fraction().unwrap(), s("-6"));
    }
}
