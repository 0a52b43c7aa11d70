//! Which of the two sums adds fractions.
//!
//! Placing tangles side by side adds their fractions; stacking one on top of
//! the other adds reciprocals. The opposite assignment is equally consistent
//! on its own, so it is fixed here and checked against the continued-fraction
//! legend: the staircase of twists `[a, b, ..., c]` must have fraction
//! `1/(a - 1/(b - ... - 1/c))`.

use exact_arith::cf::evaluate_slopes;
use exact_arith::Slope;

use crate::tangle::TangleExpr;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Composition {
    /// `F = F1 + F2`
    Add,
    /// `1/F = 1/F1 + 1/F2`
    Harmonic,
}

impl Composition {
    /// `None` where extended-rational arithmetic is undefined (`oo + oo`,
    /// or two zeros stacked harmonically).
    pub fn combine(self, a: &Slope, b: &Slope) -> Option<Slope> {
        match self {
            Composition::Add => a.checked_add(b),
            Composition::Harmonic => a.invert().checked_add(&b.invert()).map(|s| s.invert()),
        }
    }
}

pub const HORIZONTAL: Composition = Composition::Add;
pub const VERTICAL: Composition = Composition::Harmonic;

fn sequences(max_len: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut all = vec![vec![]];
    let mut frontier = vec![vec![]];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for s in &frontier {
            for a in -bound..=bound {
                let mut t: Vec<i64> = s.clone();
                t.push(a);
                next.push(t);
            }
        }
        all.extend(next.iter().cloned());
        frontier = next;
    }
    all.retain(|s| !s.is_empty());
    all
}

/// Does the staircase built by [`TangleExpr::from_cf`] agree with the
/// continued fraction for every short sequence, under this assignment?
pub fn staircase_agrees(horizontal: Composition, vertical: Composition, max_len: usize, bound: i64) -> bool {
    sequences(max_len, bound).iter().all(|seq| {
        let terms: Vec<Slope> = seq.iter().map(|&a| Slope::integer(a)).collect();
        let want = evaluate_slopes(&terms);
        let got = TangleExpr::from_cf(&terms).fraction_under(horizontal, vertical).ok();
        want.is_none() || got.is_none() || want == got
    })
}

/// The assignment the legend picks out, or `None` if it fails to decide.
pub fn calibrate() -> Option<(Composition, Composition)> {
    let options = [(Composition::Add, Composition::Harmonic), (Composition::Harmonic, Composition::Add)];
    let ok: Vec<_> = options.into_iter().filter(|&(h, v)| staircase_agrees(h, v, 4, 3)).collect();
    match ok.as_slice() {
        [one] => Some(*one),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frozen_convention_matches_legend() {
        assert_eq!(calibrate(), Some((HORIZONTAL, VERTICAL)));
    }

    #[test]
    fn combine() {
        let s = |x: &str| x.parse::<Slope>().unwrap();
        assert_eq!(HORIZONTAL.combine(&s("2"), &s("3")), Some(s("5")));
        assert_eq!(VERTICAL.combine(&s("2"), &s("3")), Some(s("6/5")));
        assert_eq!(VERTICAL.combine(&s("1/0"), &s("7/2")), Some(s("7/2")));
        assert_eq!(VERTICAL.combine(&s("0"), &s("0")), None);
        assert_eq!(HORIZONTAL.combine(&s("1/0"), &s("1/0")), None);
    }
}
