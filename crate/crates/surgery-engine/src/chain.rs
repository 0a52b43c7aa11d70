//! Deterministic reduction of diagrams whose pieces are all paths.

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::certificate::{terminal_class, RewriteCertificate, Step};
use crate::classify::connected_sum;
use crate::{digest, ClosedManifoldClass, ComponentId, DiagramError, Move, Result, Shape, TwistRegionGraph};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ChainReduction {
    Certified(RewriteCertificate),
    /// No move in the fixed order applies to `at`.
    Stuck {
        at: TwistRegionGraph,
        steps: Vec<Step>,
        reason: String,
    },
}

/// The Rolfsen twist sending a `+-1/q` coefficient to `1/0`.
fn twist_to_infinity(d: &TwistRegionGraph, id: ComponentId) -> Option<Move> {
    let c = d.coefficient(id).ok()?;
    if c.is_infinite() || !c.num().abs().is_one() || d.degree(id) > 1 {
        return None;
    }
    // q + t p = 0 with p = +-1
    let t: BigInt = -(c.den() * c.num());
    Some(Move::RolfsenTwist { end: id, twists: t })
}

fn next_move(d: &TwistRegionGraph) -> Option<Move> {
    if let Some(id) = d.ids().find(|&id| d.coefficient(id).unwrap().is_infinite()) {
        return Some(Move::DeleteInfinite { target: id });
    }
    let ends: Vec<ComponentId> = d.ids().filter(|&id| d.degree(id) == 1).collect();
    for &end in &ends {
        let mv = Move::SlamDunk { end };
        if mv.apply(d).is_ok() {
            return Some(mv);
        }
    }
    for &end in &ends {
        if let Some(mv) = twist_to_infinity(d, end) {
            return Some(mv);
        }
    }
    if d.len() > 1 {
        let isolated = d.ids().filter(|&id| d.degree(id) == 0);
        for id in isolated {
            if let Some(mv) = twist_to_infinity(d, id) {
                return Some(mv);
            }
        }
    }
    None
}

/// Deletes `1/0` components, slam-dunks ends (lowest id first), twists
/// `+-1/q` ends to `1/0`, and removes isolated `S^3` pieces, until at most one
/// component is left.
pub fn reduce_path_forest(d: &TwistRegionGraph) -> Result<ChainReduction> {
    if let Some(p) = d.pieces().into_iter().find(|p| p.shape == Shape::Cycle) {
        return Err(DiagramError::Precondition {
            mv: "reduce",
            reason: format!("component {} lies on a cycle", p.order[0]),
        });
    }
    let mut cur = d.clone();
    let mut steps = Vec::new();
    while cur.len() > 1 {
        let Some(mv) = next_move(&cur) else {
            let reason = if cur.edge_count() == 0 {
                format!("{} separate summands remain", cur.len())
            } else {
                "every end meets a non-integral neighbour".to_string()
            };
            return Ok(ChainReduction::Stuck { at: cur, steps, reason });
        };
        cur = mv.apply(&cur)?;
        steps.push(Step { mv, digest: digest(&cur) });
    }
    let terminal = terminal_class(&cur).expect("at most one component");
    Ok(ChainReduction::Certified(RewriteCertificate { initial: d.clone(), steps, terminal }))
}

/// Classifies a single linear chain with finite coefficients.
pub fn lens_from_linear_chain(d: &TwistRegionGraph) -> Result<ClosedManifoldClass> {
    let shape_err = |reason: String| DiagramError::Precondition { mv: "lens", reason };
    let pieces = d.pieces();
    match pieces.as_slice() {
        [] => return Ok(ClosedManifoldClass::ThreeSphere),
        [p] if p.shape == Shape::Path => {}
        [_] => return Err(shape_err("the diagram is a cycle, not a linear chain".into())),
        many => return Err(shape_err(format!("the diagram has {} pieces", many.len()))),
    }
    if let Some(c) = d.components().find(|c| c.coefficient.is_infinite()) {
        return Err(shape_err(format!("component {} has coefficient 1/0", c.id)));
    }
    Ok(match reduce_path_forest(d)? {
        ChainReduction::Certified(cert) => cert.terminal,
        ChainReduction::Stuck { at, .. } if at.edge_count() == 0 => {
            let parts: Vec<ClosedManifoldClass> =
                at.components().map(|c| ClosedManifoldClass::from_unknot_slope(&c.coefficient)).collect();
            connected_sum(&parts)
        }
        ChainReduction::Stuck { reason, .. } => ClosedManifoldClass::ConnectedSumOrUnresolved(reason),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{first_homology, replay};
    use exact_arith::Slope;

    fn chain(c: &[&str]) -> TwistRegionGraph {
        let coeffs = c.iter().map(|x| x.parse::<Slope>().unwrap()).collect();
        TwistRegionGraph::path(coeffs, &vec![1; c.len() - 1]).unwrap()
    }

    #[test]
    fn small_chains() {
        let c = lens_from_linear_chain(&chain(&["3", "2"])).unwrap();
        assert_eq!(c.homology_order(), Some(BigInt::from(5)));
        assert_eq!(lens_from_linear_chain(&chain(&["1"])).unwrap(), ClosedManifoldClass::ThreeSphere);
        assert_eq!(lens_from_linear_chain(&chain(&["0"])).unwrap(), ClosedManifoldClass::S1xS2);
        assert!(lens_from_linear_chain(&crate::mt5c()).is_err());
        assert!(lens_from_linear_chain(&chain(&["1/0", "2"])).is_err());
    }

    #[test]
    fn rational_ends_reduce_with_certificate() {
        let d = chain(&["-3/8", "0", "0", "-7/5"]);
        let ChainReduction::Certified(cert) = reduce_path_forest(&d).unwrap() else { panic!("stuck") };
        assert!(replay(&cert).is_valid());
        let order = first_homology(&d).order().unwrap();
        assert_eq!(cert.terminal.homology_order(), Some(order));
    }

    #[test]
    fn rational_middle_is_reported() {
        let d = chain(&["2", "3/2", "5/3", "2"]);
        match reduce_path_forest(&d).unwrap() {
            ChainReduction::Stuck { reason, .. } => assert!(reason.contains("non-integral")),
            ChainReduction::Certified(c) => panic!("unexpected {c}"),
        }
    }
}
