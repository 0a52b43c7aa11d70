use std::fmt;
use std::str::FromStr;

use exact_arith::Slope;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A closed 3-manifold as far as this crate can name it. Lens spaces carry
/// their orientation in `q`: `p/q` surgery on the unknot is `L(p, q)` and its
/// mirror is `L(p, p - q)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum ClosedManifoldClass {
    Lens { p: BigInt, q: BigInt },
    ThreeSphere,
    S1xS2,
    ConnectedSumOrUnresolved(String),
}

impl ClosedManifoldClass {
    /// `L(p, q)` normalised to `p >= 2`, `1 <= q < p`, or the degenerate cases.
    pub fn lens(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Self {
        let (p, q): (BigInt, BigInt) = (p.into(), q.into());
        if p.is_zero() {
            return ClosedManifoldClass::S1xS2;
        }
        let q = if p.is_negative() { -q } else { q };
        let p = p.abs();
        if p.is_one() {
            return ClosedManifoldClass::ThreeSphere;
        }
        ClosedManifoldClass::Lens { q: q.mod_floor(&p), p }
    }

    /// The result of `s` surgery on the unknot.
    pub fn from_unknot_slope(s: &Slope) -> Self {
        if s.is_infinite() {
            return ClosedManifoldClass::ThreeSphere;
        }
        ClosedManifoldClass::lens(s.num().clone(), s.den().clone())
    }

    pub fn is_resolved(&self) -> bool {
        !matches!(self, ClosedManifoldClass::ConnectedSumOrUnresolved(_))
    }

    /// Orientation reversal.
    pub fn mirror(&self) -> Self {
        match self {
            ClosedManifoldClass::Lens { p, q } => ClosedManifoldClass::lens(p.clone(), -q),
            other => other.clone(),
        }
    }

    /// Order of the first homology, `Some(0)` for `S1xS2`.
    pub fn homology_order(&self) -> Option<BigInt> {
        match self {
            ClosedManifoldClass::Lens { p, .. } => Some(p.clone()),
            ClosedManifoldClass::ThreeSphere => Some(BigInt::one()),
            ClosedManifoldClass::S1xS2 => Some(BigInt::zero()),
            ClosedManifoldClass::ConnectedSumOrUnresolved(_) => None,
        }
    }
}

/// Connected sum of resolved pieces, dropping `S^3` summands.
pub fn connected_sum(parts: &[ClosedManifoldClass]) -> ClosedManifoldClass {
    let rest: Vec<&ClosedManifoldClass> = parts.iter().filter(|c| **c != ClosedManifoldClass::ThreeSphere).collect();
    match rest.as_slice() {
        [] => ClosedManifoldClass::ThreeSphere,
        [one] => (*one).clone(),
        many => {
            let names: Vec<String> = many.iter().map(ToString::to_string).collect();
            ClosedManifoldClass::ConnectedSumOrUnresolved(names.join(" # "))
        }
    }
}

/// `L(p, q) = L(p, q')` up to orientation-preserving homeomorphism iff
/// `q' = q^{+-1} mod p`; allowing reversal adds `q' = -q^{+-1}`.
pub fn lens_equivalent(a: &ClosedManifoldClass, b: &ClosedManifoldClass, oriented: bool) -> bool {
    use ClosedManifoldClass::*;
    match (a, b) {
        (Lens { p: p1, q: q1 }, Lens { p: p2, q: q2 }) => {
            if p1 != p2 {
                return false;
            }
            let p = p1;
            let inv = |q: &BigInt| {
                let e = q.extended_gcd(p);
                e.x.mod_floor(p)
            };
            let mut options = vec![q1.clone(), inv(q1)];
            if !oriented {
                let neg: Vec<BigInt> = options.iter().map(|q| (-q).mod_floor(p)).collect();
                options.extend(neg);
            }
            options.contains(&q2.mod_floor(p))
        }
        (ThreeSphere, ThreeSphere) | (S1xS2, S1xS2) => true,
        _ => false,
    }
}

impl fmt::Display for ClosedManifoldClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClosedManifoldClass::Lens { p, q } => write!(f, "L({p},{q})"),
            ClosedManifoldClass::ThreeSphere => f.write_str("S3"),
            ClosedManifoldClass::S1xS2 => f.write_str("S1xS2"),
            ClosedManifoldClass::ConnectedSumOrUnresolved(s) => write!(f, "unresolved({s})"),
        }
    }
}

impl FromStr for ClosedManifoldClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        match s {
            "S3" => return Ok(ClosedManifoldClass::ThreeSphere),
            "S1xS2" => return Ok(ClosedManifoldClass::S1xS2),
            _ => {}
        }
        if let Some(body) = s.strip_prefix("unresolved(").and_then(|b| b.strip_suffix(')')) {
            return Ok(ClosedManifoldClass::ConnectedSumOrUnresolved(body.to_string()));
        }
        let body = s
            .strip_prefix("L(")
            .and_then(|b| b.strip_suffix(')'))
            .ok_or_else(|| format!("not a manifold class: {s:?}"))?;
        let (p, q) = body.split_once(',').ok_or_else(|| format!("not a lens space: {s:?}"))?;
        let p: BigInt = p.trim().parse().map_err(|_| format!("bad p in {s:?}"))?;
        let q: BigInt = q.trim().parse().map_err(|_| format!("bad q in {s:?}"))?;
        Ok(ClosedManifoldClass::lens(p, q))
    }
}
