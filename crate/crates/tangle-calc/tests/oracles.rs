use exact_arith::Slope;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use proptest::prelude::*;
use surgery_engine::{lens_equivalent, lens_from_linear_chain, TwistRegionGraph};
use tangle_calc::{
    double_branched_cover, two_bridge_equivalent, RationalTangle, TangleError, TangleExpr, TwoBridgeLink,
};

/// `[a1, ..., an]` as a numerator/denominator pair by the three-term
/// recurrence, without any rational arithmetic.
fn cf_by_recurrence(terms: &[i64]) -> (i64, i64) {
    // value of [a_k, ..., a_n] = num/den, built from the back; the tail
    // after the last term is 0, so [c] = 1/c
    let (mut num, mut den) = (0i64, 1i64);
    for &a in terms.iter().rev() {
        // 1/(a - num/den) = den / (a den - num)
        let (n, d) = (den, a * den - num);
        num = n;
        den = d;
    }
    (num, den)
}

fn odometer(len: usize, bound: i64, mut f: impl FnMut(&[i64])) {
    let mut v = vec![-bound; len];
    loop {
        f(&v);
        let mut i = 0;
        loop {
            if i == len {
                return;
            }
            if v[i] < bound {
                v[i] += 1;
                break;
            }
            v[i] = -bound;
            i += 1;
        }
    }
}

#[test]
fn staircase_matches_continued_fraction() {
    let mut checked = 0usize;
    for len in 1..=6 {
        odometer(len, 5, |seq| {
            let (n, d) = cf_by_recurrence(seq);
            let terms: Vec<Slope> = seq.iter().map(|&a| Slope::integer(a)).collect();
            let got = TangleExpr::from_cf(&terms).fraction();
            if n == 0 && d == 0 {
                return;
            }
            assert_eq!(got.unwrap(), Slope::new(n, d).unwrap(), "{seq:?}");
            checked += 1;
        });
    }
    assert!(checked > 1_900_000);
}

#[test]
fn two_chain_cover_matches_surgery() {
    for a in -9i64..=9 {
        for b in -9i64..=9 {
            if b == 0 {
                continue;
            }
            let chain = TwistRegionGraph::path(vec![Slope::integer(a), Slope::integer(b)], &[1]).unwrap();
            let surgery = lens_from_linear_chain(&chain).unwrap();
            let t = TangleExpr::HorizontalSum(vec![TangleExpr::IntegerTwistBox(BigInt::from(a)), TangleExpr::Slot])
                .insert(&RationalTangle::new(Slope::new(-1, b).unwrap()))
                .unwrap();
            let cover = double_branched_cover(&TwoBridgeLink::from_fraction(&t.fraction().unwrap()));
            // the two routes may pick inverse q, which is the same oriented lens space
            assert!(lens_equivalent(&cover, &surgery, true), "a={a} b={b}: {cover} vs {surgery}");
        }
    }
}

#[test]
fn schubert_relation_is_an_equivalence() {
    for p in 0..=30i64 {
        let links: Vec<TwoBridgeLink> =
            (0..p.max(1)).filter(|q| q.gcd(&p) == 1).map(|q| TwoBridgeLink::new(p, q)).collect();
        for oriented in [true, false] {
            for x in &links {
                assert!(two_bridge_equivalent(x, x, oriented));
                for y in &links {
                    assert_eq!(two_bridge_equivalent(x, y, oriented), two_bridge_equivalent(y, x, oriented));
                    for z in &links {
                        if two_bridge_equivalent(x, y, oriented) && two_bridge_equivalent(y, z, oriented) {
                            assert!(two_bridge_equivalent(x, z, oriented), "{x} {y} {z}");
                        }
                    }
                }
            }
        }
    }
}

proptest! {
    #[test]
    fn mirror_negates_fraction(terms in prop::collection::vec(-6i64..=6, 1..=5)) {
        let slopes: Vec<Slope> = terms.iter().map(|&a| Slope::integer(a)).collect();
        let t = TangleExpr::from_cf(&slopes);
        if let Ok(f) = t.fraction() {
            prop_assert_eq!(t.mirror().fraction().unwrap(), f.mirror());
        }
    }

    #[test]
    fn mirror_covers_are_orientation_reversed(p in -40i64..=40, q in 1i64..=40) {
        prop_assume!(p.gcd(&q) == 1);
        let l = TwoBridgeLink::from_fraction(&Slope::new(p, q).unwrap());
        prop_assert_eq!(double_branched_cover(&l.mirror()), double_branched_cover(&l).mirror());
    }
}

#[test]
fn montesinos_sums_keep_only_the_determinant() {
    for p1 in -6i64..=6 {
        for q1 in 2i64..=5 {
            for p2 in -6i64..=6 {
                for q2 in 2i64..=5 {
                    if p1.gcd(&q1) != 1 || p2.gcd(&q2) != 1 {
                        continue;
                    }
                    let t = TangleExpr::HorizontalSum(vec![
                        TangleExpr::leaf(Slope::new(p1, q1).unwrap()),
                        TangleExpr::leaf(Slope::new(p2, q2).unwrap()),
                    ]);
                    // the closure of a two-piece Montesinos tangle has determinant
                    // |p1 q2 + q1 p2|; the reduced fraction can only lose factors
                    let det = BigInt::from(p1 * q2 + q1 * p2);
                    let num = t.fraction().unwrap().num().clone();
                    assert!(det.is_zero() && num.is_zero() || !num.is_zero() && (&det % &num).is_zero());
                    assert!(matches!(t.rational_fraction(), Err(TangleError::NotRational(_))));
                }
            }
        }
    }
}
