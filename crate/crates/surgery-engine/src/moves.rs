//! Kirby moves that keep a diagram inside the path/cycle class.

use std::fmt;

use exact_arith::Slope;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use crate::calibration::{BLOW_DOWN_SIGN, ROLFSEN_SIGN, SLAM_DUNK_SIGN};
use crate::{ComponentId, DiagramError, Result, TwistRegionGraph};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Move {
    /// Remove a `1/0` component.
    DeleteInfinite {
        target: ComponentId,
    },
    SlamDunk {
        end: ComponentId,
    },
    RolfsenTwist {
        end: ComponentId,
        twists: BigInt,
    },
    BlowDown {
        target: ComponentId,
    },
    /// Merge `absorb` into `keep`; both are parallel meridians.
    Amalgamate {
        keep: ComponentId,
        absorb: ComponentId,
    },
}

impl Move {
    pub fn name(&self) -> &'static str {
        match self {
            Move::DeleteInfinite { .. } => "delete",
            Move::SlamDunk { .. } => "slam-dunk",
            Move::RolfsenTwist { .. } => "rolfsen",
            Move::BlowDown { .. } => "blow-down",
            Move::Amalgamate { .. } => "amalgamate",
        }
    }

    pub fn targets(&self) -> Vec<ComponentId> {
        match *self {
            Move::DeleteInfinite { target } | Move::BlowDown { target } => vec![target],
            Move::SlamDunk { end } | Move::RolfsenTwist { end, .. } => vec![end],
            Move::Amalgamate { keep, absorb } => vec![keep, absorb],
        }
    }

    /// `-` when the move takes no parameters.
    pub fn params(&self) -> String {
        match self {
            Move::RolfsenTwist { twists, .. } => format!("t={twists}"),
            _ => "-".to_string(),
        }
    }

    pub fn apply(&self, d: &TwistRegionGraph) -> Result<TwistRegionGraph> {
        match self {
            Move::DeleteInfinite { target } => delete_infinite(d, *target),
            Move::SlamDunk { end } => slam_dunk(d, *end),
            Move::RolfsenTwist { end, twists } => rolfsen_twist_end(d, *end, twists),
            Move::BlowDown { target } => blow_down(d, *target),
            Move::Amalgamate { keep, absorb } => amalgamate_parallel(d, *keep, *absorb),
        }
    }

    pub fn parse(name: &str, targets: &str, params: &str) -> std::result::Result<Move, String> {
        let ids: Vec<ComponentId> = targets
            .split(',')
            .map(|t| t.trim().parse().map_err(|_| format!("bad target list {targets:?}")))
            .collect::<std::result::Result<_, _>>()?;
        let one = || match ids.as_slice() {
            [id] => Ok(*id),
            _ => Err(format!("{name} takes one target")),
        };
        match name {
            "delete" => Ok(Move::DeleteInfinite { target: one()? }),
            "slam-dunk" => Ok(Move::SlamDunk { end: one()? }),
            "blow-down" => Ok(Move::BlowDown { target: one()? }),
            "rolfsen" => {
                let t = params
                    .strip_prefix("t=")
                    .and_then(|t| t.parse::<BigInt>().ok())
                    .ok_or_else(|| format!("rolfsen needs t=<integer>, got {params:?}"))?;
                Ok(Move::RolfsenTwist { end: one()?, twists: t })
            }
            "amalgamate" => match ids.as_slice() {
                [keep, absorb] => Ok(Move::Amalgamate { keep: *keep, absorb: *absorb }),
                _ => Err("amalgamate takes two targets".to_string()),
            },
            other => Err(format!("unknown move {other:?}")),
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t: Vec<String> = self.targets().iter().map(ToString::to_string).collect();
        write!(f, "{} {} {}", self.name(), t.join(","), self.params())
    }
}

fn precondition(mv: &'static str, reason: impl Into<String>) -> DiagramError {
    DiagramError::Precondition { mv, reason: reason.into() }
}

fn shift(s: &Slope, by: i64) -> Slope {
    s.checked_add(&Slope::integer(by)).expect("adding an integer is always defined")
}

pub fn delete_infinite(d: &TwistRegionGraph, target: ComponentId) -> Result<TwistRegionGraph> {
    if !d.coefficient(target)?.is_infinite() {
        return Err(precondition("delete", format!("component {target} is not 1/0")));
    }
    let mut out = d.clone();
    out.remove_component(target)?;
    Ok(out)
}

pub fn slam_dunk(d: &TwistRegionGraph, end: ComponentId) -> Result<TwistRegionGraph> {
    slam_dunk_signed(d, end, SLAM_DUNK_SIGN)
}

/// The end is a meridian of its neighbour `a`; it disappears and `a` becomes
/// `a - sigma/r`. When `a` is rational the move is only exact for an isolated
/// Hopf pair, handled by [`hopf_pair_slope`].
pub(crate) fn slam_dunk_signed(d: &TwistRegionGraph, end: ComponentId, sigma: i64) -> Result<TwistRegionGraph> {
    const MV: &str = "slam-dunk";
    let r = d.coefficient(end)?.clone();
    let nbrs = d.neighbors(end);
    let &[(a, lk)] = nbrs.as_slice() else {
        return Err(precondition(MV, format!("component {end} has degree {}", nbrs.len())));
    };
    if r.is_infinite() {
        return Err(precondition(MV, format!("component {end} is 1/0; delete it instead")));
    }
    if lk.abs() != 1 {
        return Err(precondition(MV, format!("component {end} links its neighbour {lk} times")));
    }
    let ca = d.coefficient(a)?;
    let new = if ca.is_integral() {
        ca.checked_sub(&r.invert().checked_mul(&Slope::integer(sigma)).expect("finite")).expect("integer minus slope")
    } else if d.degree(a) == 1 {
        hopf_pair_slope(ca, &r)
    } else {
        return Err(precondition(MV, format!("neighbour {a} has non-integral coefficient {ca}")));
    };
    let mut out = d.clone();
    let end_was_knot = out.remove_component(end)?.knot;
    out.set_coefficient(a, new)?;
    if end_was_knot {
        out.set_knot(a)?;
    }
    Ok(out)
}

/// Surgery on a Hopf link with coefficients `p1/q1` and `p2/q2` is surgery on
/// a single unknot with slope `y/x`, where `y = p1 p2 - q1 q2`. Choose
/// `p1 v - q1 u = 1`; then `x = v q2 - u p2`. For integral `p1/q1` this is
/// `p1 - q2/p2`, the ordinary slam-dunk.
pub fn hopf_pair_slope(first: &Slope, second: &Slope) -> Slope {
    let (p1, q1) = (first.num(), first.den());
    let (p2, q2) = (second.num(), second.den());
    let y = p1 * p2 - q1 * q2;
    // extended gcd on (p1, q1): g = p1 * s + q1 * t = 1
    let e = p1.extended_gcd(q1);
    let (v, u) = if e.gcd.is_negative() { (-e.x, e.y) } else { (e.x, -e.y) };
    let x = &v * q2 - &u * p2;
    Slope::new(y, x).expect("coprime pair cannot give 0/0")
}

pub fn rolfsen_twist_end(d: &TwistRegionGraph, end: ComponentId, t: &BigInt) -> Result<TwistRegionGraph> {
    rolfsen_signed(d, end, t, ROLFSEN_SIGN)
}

/// `t` full twists along the disk bounded by a component of degree at most 2.
/// Its coefficient `p/q` becomes `p/(q + sigma t p)`, each neighbour gains
/// `t lk^2` and the strands of two neighbours gain `t lk_a lk_b` full twists
/// between them. A blow-down is the case `t = -eps` followed by deletion.
pub(crate) fn rolfsen_signed(
    d: &TwistRegionGraph,
    end: ComponentId,
    t: &BigInt,
    sigma: i64,
) -> Result<TwistRegionGraph> {
    let nbrs = d.neighbors(end);
    if nbrs.len() > 2 {
        return Err(precondition("rolfsen", format!("component {end} has degree {}", nbrs.len())));
    }
    if let Some((a, lk)) = nbrs.iter().find(|(_, lk)| lk.abs() != 1) {
        // several parallel strands through the disk would be twisted into a torus knot
        return Err(precondition("rolfsen", format!("component {end} links {a} {lk} times")));
    }
    let mut out = d.clone();
    let c = d.coefficient(end)?.twist(&(t * BigInt::from(sigma)));
    out.set_coefficient(end, c)?;
    for &(a, lk) in &nbrs {
        let by = Slope::integer(t * BigInt::from(lk * lk));
        let shifted = d.coefficient(a)?.checked_add(&by).expect("integer shift");
        out.set_coefficient(a, shifted)?;
    }
    if let [(a, la), (b, lb)] = nbrs[..] {
        let by = t * BigInt::from(la * lb);
        let by = i64::try_from(&by).map_err(|_| precondition("rolfsen", format!("{by} twists between {a} and {b}")))?;
        out.add_linking(a, b, by)?;
    }
    Ok(out)
}

pub fn blow_down(d: &TwistRegionGraph, target: ComponentId) -> Result<TwistRegionGraph> {
    blow_down_signed(d, target, BLOW_DOWN_SIGN)
}

/// Removes a `+-1` component. With `eps` its coefficient, each neighbour
/// shifts by `sign * eps * lk^2` and the two neighbours gain
/// `sign * eps * lk_a * lk_b` full twists between them.
pub(crate) fn blow_down_signed(d: &TwistRegionGraph, target: ComponentId, sign: i64) -> Result<TwistRegionGraph> {
    const MV: &str = "blow-down";
    let c = d.coefficient(target)?;
    let eps: i64 = match c.as_integer().and_then(|n| i64::try_from(n).ok()) {
        Some(e @ (1 | -1)) => e,
        _ => return Err(precondition(MV, format!("component {target} has coefficient {c}, not +-1"))),
    };
    let nbrs = d.neighbors(target);
    if let Some((a, lk)) = nbrs.iter().find(|(_, lk)| lk.abs() != 1) {
        return Err(precondition(MV, format!("component {target} links {a} {lk} times")));
    }
    let mut out = d.clone();
    out.remove_component(target)?;
    for &(a, lk) in &nbrs {
        let s = shift(d.coefficient(a)?, sign * eps * lk * lk);
        out.set_coefficient(a, s)?;
    }
    if let [(a, la), (b, lb)] = nbrs[..] {
        out.add_linking(a, b, sign * eps * la * lb)?;
    }
    Ok(out)
}

/// Two meridians of one component with coefficients `r1`, `r2` become one
/// with `1/r = 1/r1 + 1/r2`. This is a homeomorphism only when one of the
/// numerators is `+-1`, so other inputs are refused.
pub fn amalgamate_parallel(d: &TwistRegionGraph, keep: ComponentId, absorb: ComponentId) -> Result<TwistRegionGraph> {
    const MV: &str = "amalgamate";
    if keep == absorb {
        return Err(precondition(MV, "needs two distinct components"));
    }
    let (n1, n2) = (d.neighbors(keep), d.neighbors(absorb));
    let (&[(a1, l1)], &[(a2, l2)]) = (n1.as_slice(), n2.as_slice()) else {
        return Err(precondition(MV, format!("components {keep} and {absorb} must both have degree 1")));
    };
    if a1 != a2 || l1 != l2 || l1.abs() != 1 {
        return Err(precondition(MV, format!("components {keep} and {absorb} are not parallel meridians")));
    }
    let (r1, r2) = (d.coefficient(keep)?, d.coefficient(absorb)?);
    if !(r1.num().abs().is_one() || r2.num().abs().is_one()) {
        return Err(precondition(MV, format!("neither {r1} nor {r2} has numerator +-1")));
    }
    let inv = r1.invert().checked_add(&r2.invert()).ok_or_else(|| precondition(MV, "both coefficients are 0"))?;
    let mut out = d.clone();
    let absorbed_knot = out.remove_component(absorb)?.knot;
    out.set_coefficient(keep, inv.invert())?;
    if absorbed_knot {
        out.set_knot(keep)?;
    }
    Ok(out)
}
