use exact_arith::Slope;
use surgery_engine::{fill, mirror, mt5c, ComponentId, TwistRegionGraph};
use tangle_calc::{Bindings, TangleExpr};

use crate::data::{catalog, FamilyData};
use crate::{CatalogError, FamilyParams, Result};

/// The chain component that carries the knot.
pub const KNOT: ComponentId = 1;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BergeDescription {
    pub params: FamilyParams,
    /// The five-chain with components 2..5 filled; a `1/0` filling removes
    /// its component.
    pub diagram: TwistRegionGraph,
    pub knot: ComponentId,
    /// Slopes on components 2..5.
    pub coefficients: [Slope; 4],
    pub rho_s3: Slope,
    pub rho_lens: Slope,
    pub tangle: TangleExpr,
    pub delta: Slope,
    pub degenerate_flags: Vec<String>,
}

impl BergeDescription {
    /// The same description seen in the mirror.
    pub fn mirror(&self) -> BergeDescription {
        BergeDescription {
            params: self.params.clone(),
            diagram: mirror(&self.diagram),
            knot: self.knot,
            coefficients: self.coefficients.clone().map(|c| c.mirror()),
            rho_s3: self.rho_s3.mirror(),
            rho_lens: self.rho_lens.mirror(),
            tangle: self.tangle.mirror(),
            delta: self.delta.mirror(),
            degenerate_flags: self.degenerate_flags.clone(),
        }
    }
}

pub(crate) fn environment(fp: &FamilyParams, data: &FamilyData) -> Bindings {
    let mut env = data.constants.clone();
    env.extend(fp.bindings());
    env
}

/// Evaluates the four chain coefficients, `delta` aside.
pub(crate) fn coefficients(fp: &FamilyParams) -> Result<[Slope; 4]> {
    fp.validate()?;
    let data = catalog().get(fp.family);
    let env = environment(fp, data);
    let mut out: [Slope; 4] = std::array::from_fn(|_| Slope::zero());
    for (slot, e) in out.iter_mut().zip(&data.coefficients) {
        *slot = e.eval(&env).map_err(|err| CatalogError::Constraint(format!("{fp}: {err}")))?;
    }
    Ok(out)
}

/// The chain with the given slopes on components 2..5.
pub(crate) fn chain_with(fp: &FamilyParams, coefficients: &[Slope; 4]) -> Result<TwistRegionGraph> {
    let data = catalog().get(fp.family);
    let mut d = if data.mirror { mirror(&mt5c()) } else { mt5c() };
    d.set_knot(KNOT)?;
    for (id, c) in (2..).zip(coefficients) {
        d = fill(&d, id, c.clone())?;
    }
    Ok(d)
}

pub fn surgery_description(fp: &FamilyParams) -> Result<BergeDescription> {
    let coefficients = coefficients(fp)?;
    let data = catalog().get(fp.family);
    let diagram = chain_with(fp, &coefficients)?;
    let (tangle, delta) = tangle_description(fp)?;
    let mut degenerate_flags = Vec::new();
    for (j, (c, e)) in coefficients.iter().zip(&data.coefficients).enumerate() {
        if c.is_infinite() {
            degenerate_flags.push(format!("infinite:c{}", j + 2));
        } else if c.is_zero() && !e.symbols().is_empty() {
            degenerate_flags.push(format!("zero:c{}", j + 2));
        }
    }
    if let Some((_, 0)) = fp.derived_rs() {
        degenerate_flags.push("infinite:r/s".into());
    }
    Ok(BergeDescription {
        params: fp.clone(),
        diagram,
        knot: KNOT,
        coefficients,
        rho_s3: Slope::infinity(),
        rho_lens: data.rho_lens.clone(),
        tangle,
        delta,
        degenerate_flags,
    })
}

/// The tangle with one slot for the knot's quotient, and the slope `delta`
/// whose insertion gives the two-bridge link covered by the lens space.
pub fn tangle_description(fp: &FamilyParams) -> Result<(TangleExpr, Slope)> {
    fp.validate()?;
    let data = catalog().get(fp.family);
    let tangle = data.template.instantiate(&environment(fp, data))?;
    Ok((tangle, data.delta.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Family;
    use surgery_engine::Shape;

    #[test]
    fn family_one_small_point() {
        let fp = FamilyParams::from_pairs(Family::I, &[("p", 1), ("q", 0), ("r", 0), ("s", 1)]).unwrap();
        let d = surgery_description(&fp).unwrap();
        assert_eq!(d.diagram.len(), 5);
        let pieces = d.diagram.pieces();
        assert_eq!(pieces.len(), 1);
        assert_eq!(pieces[0].shape, Shape::Cycle);
        // c2 = (-4p - q)/(5p + q), c5 = (-5r - s)/(4r + s)
        assert_eq!(d.coefficients[0], "-4/5".parse().unwrap());
        assert_eq!(d.coefficients[3], Slope::integer(-1));
        assert!(d.rho_s3.is_infinite());
        assert_eq!(d.rho_lens, Slope::integer(-1));
        assert_eq!(d.diagram.knot(), Some(KNOT));
        assert_eq!(d.tangle.slot_count(), 1);
        assert!(d.degenerate_flags.is_empty());
    }

    #[test]
    fn mirrored_families_use_negative_clasps() {
        for f in [Family::II, Family::III, Family::V] {
            let fp = crate::grid_tuples(f, &crate::Grid::default()).unwrap().remove(0);
            let d = surgery_description(&fp).unwrap();
            assert!(d.diagram.edges().all(|(_, _, lk)| lk == -1), "{f}");
        }
        let fp = FamilyParams::from_pairs(Family::IV, &[("p", 1), ("K", 1), ("eps", 1)]).unwrap();
        assert!(surgery_description(&fp).unwrap().diagram.edges().all(|(_, _, lk)| lk == 1));
    }

    #[test]
    fn degenerate_points_are_flagged_not_rejected() {
        // eps + pK = 0 makes s vanish
        let fp = FamilyParams::from_pairs(Family::III, &[("p", 1), ("K", -1), ("eps", 1)]).unwrap();
        let d = surgery_description(&fp).unwrap();
        assert!(d.degenerate_flags.contains(&"infinite:r/s".to_string()), "{:?}", d.degenerate_flags);
        // 5p + q = 0 sends c2 to 1/0 and removes component 2
        let fp = FamilyParams::from_pairs(Family::I, &[("p", 1), ("q", -5), ("r", 0), ("s", 1)]).unwrap();
        let d = surgery_description(&fp).unwrap();
        assert_eq!(d.degenerate_flags, vec!["infinite:c2".to_string()]);
        assert!(!d.diagram.contains(2));
    }

    #[test]
    fn mirror_is_an_involution() {
        let fp = FamilyParams::from_pairs(Family::VI, &[("p", 2), ("q", 1), ("r", 1), ("s", 1), ("n", 2)]).unwrap();
        let d = surgery_description(&fp).unwrap();
        assert_eq!(d.mirror().mirror(), d);
        assert_eq!(d.mirror().rho_lens, Slope::integer(1));
    }
}
