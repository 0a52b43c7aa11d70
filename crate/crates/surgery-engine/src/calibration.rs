//! Sign conventions for the moves, fixed by a homology battery.
//!
//! Each move has one sign that cannot be read off a picture reliably. The
//! battery below applies both choices to a fixed family of small diagrams and
//! keeps the one that preserves first homology everywhere. The constants are
//! the frozen outcome; `calibrate` recomputes them so a test can compare.

use exact_arith::Slope;
use num_bigint::BigInt;

use crate::moves::{blow_down_signed, rolfsen_signed, slam_dunk_signed};
use crate::{first_homology, TwistRegionGraph};

/// Slam-dunk sends the neighbour `a` to `a - SLAM_DUNK_SIGN / r`.
pub const SLAM_DUNK_SIGN: i64 = 1;
/// Rolfsen twist sends `p/q` to `p/(q + ROLFSEN_SIGN * t * p)`.
pub const ROLFSEN_SIGN: i64 = 1;
/// Blow-down of an `eps` component shifts neighbours by `BLOW_DOWN_SIGN * eps`.
pub const BLOW_DOWN_SIGN: i64 = -1;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Calibration {
    pub slam_dunk: Option<i64>,
    pub rolfsen: Option<i64>,
    pub blow_down: Option<i64>,
}

const COEFFS: [(i64, i64); 9] = [(1, 1), (-1, 1), (2, 1), (-3, 1), (3, 2), (-5, 3), (1, 2), (0, 1), (7, 4)];

/// Paths of two to four components and cycles of three to five, with
/// coefficients drawn from a short fixed list and clasp signs alternating
/// with the position.
pub fn battery() -> Vec<TwistRegionGraph> {
    let slope = |i: usize| {
        let (p, q) = COEFFS[i % COEFFS.len()];
        Slope::new(p, q).unwrap()
    };
    let mut out = Vec::new();
    for n in 2..=5usize {
        for offset in 0..COEFFS.len() {
            let coeffs: Vec<Slope> = (0..n).map(|i| slope(offset + 3 * i)).collect();
            let signs: Vec<i64> = (0..n).map(|i| if (offset + i) % 3 == 0 { -1 } else { 1 }).collect();
            if n <= 4 {
                out.push(TwistRegionGraph::path(coeffs.clone(), &signs[..n - 1]).unwrap());
            }
            if n >= 3 {
                out.push(TwistRegionGraph::cycle(coeffs, &signs).unwrap());
            }
        }
    }
    out
}

fn sign_that_works(check: impl Fn(i64) -> bool) -> Option<i64> {
    match (check(1), check(-1)) {
        (true, false) => Some(1),
        (false, true) => Some(-1),
        _ => None,
    }
}

fn preserves_everywhere(
    diagrams: &[TwistRegionGraph],
    apply: impl Fn(&TwistRegionGraph, u32) -> Option<TwistRegionGraph>,
) -> bool {
    let mut applied = 0;
    for d in diagrams {
        let h = first_homology(d);
        for id in d.ids() {
            if let Some(out) = apply(d, id) {
                applied += 1;
                if first_homology(&out) != h {
                    return false;
                }
            }
        }
    }
    applied > 0
}

/// Re-derives each sign from the battery; `None` means both or neither sign
/// survived, which would make the battery useless.
pub fn calibrate() -> Calibration {
    let diagrams = battery();
    let twists: Vec<BigInt> = [-2, -1, 1, 3].into_iter().map(BigInt::from).collect();
    Calibration {
        slam_dunk: sign_that_works(|s| preserves_everywhere(&diagrams, |d, id| slam_dunk_signed(d, id, s).ok())),
        rolfsen: sign_that_works(|s| {
            twists.iter().all(|t| preserves_everywhere(&diagrams, |d, id| rolfsen_signed(d, id, t, s).ok()))
        }),
        blow_down: sign_that_works(|s| preserves_everywhere(&diagrams, |d, id| blow_down_signed(d, id, s).ok())),
    }
}
