use exact_arith::{AbelianGroup, Slope};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use surgery_engine::{
    fill, first_homology, lens_equivalent, reduce_path_forest, replay, simplify, ChainReduction, ClosedManifoldClass,
    RewriteCertificate, SimplifyOutcome,
};
use tangle_calc::{double_branched_cover, RationalTangle, TangleError, TwoBridgeLink};

use crate::describe::{chain_with, coefficients};
use crate::{surgery_description, BergeDescription, FamilyParams, Result};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VerificationReport {
    pub params: FamilyParams,
    pub rho_lens: Slope,
    pub s3_homology: AbelianGroup,
    /// `ConnectedSumOrUnresolved` when the forest reduction got stuck.
    pub s3_terminal: ClosedManifoldClass,
    pub s3_certificate: Option<RewriteCertificate>,
    pub s3_replayed: bool,
    pub lens_homology: AbelianGroup,
    /// `None` when the search ran out of budget or moves.
    pub lens_certificate: Option<RewriteCertificate>,
    pub lens_replayed: bool,
    pub lens_explored: usize,
    /// Fraction of the tangle with `1/0` in the slot.
    pub unknot_fraction: Option<Slope>,
    /// Numerator of the fraction with `delta` inserted; its absolute value
    /// is the order of the lens-side homology whether or not the tangle is
    /// rational.
    pub tangle_numerator: Option<BigInt>,
    /// The two-bridge link from inserting `delta`, when the result is a
    /// rational tangle.
    pub tangle_link: Option<TwoBridgeLink>,
    pub tangle_lens: Option<ClosedManifoldClass>,
    pub consistent: bool,
    pub degenerate_flags: Vec<String>,
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn s3_ok(&self) -> bool {
        self.s3_terminal == ClosedManifoldClass::ThreeSphere && self.s3_homology.is_trivial() && self.s3_replayed
    }

    /// The insertion of `1/0` closes to the unknot.
    pub fn unknot_ok(&self) -> bool {
        self.unknot_fraction.as_ref().is_some_and(|f| TwoBridgeLink::from_fraction(f).is_unknot())
    }

    pub fn lens_order(&self) -> Option<BigInt> {
        self.lens_homology.is_finite_cyclic().then(|| self.lens_homology.order()).flatten()
    }

    /// The tangle's determinant equals the order of the lens-side homology.
    pub fn tangle_order_ok(&self) -> bool {
        match (&self.tangle_numerator, self.lens_order()) {
            (Some(n), Some(order)) => n.abs() == order,
            (Some(n), None) => n.is_zero(),
            _ => false,
        }
    }

    pub fn surgery_lens(&self) -> Option<&ClosedManifoldClass> {
        self.lens_certificate.as_ref().map(|c| &c.terminal)
    }

    /// Both the surgery search and the tangle route produced a class.
    pub fn both_resolved(&self) -> bool {
        self.surgery_lens().is_some() && self.tangle_lens.is_some()
    }
}

pub fn verify(fp: &FamilyParams, budget: usize) -> Result<VerificationReport> {
    Ok(verify_description(&surgery_description(fp)?, budget))
}

/// Runs both fillings of the chain and the tangle route, and compares.
pub fn verify_description(desc: &BergeDescription, budget: usize) -> VerificationReport {
    let mut notes = Vec::new();

    let s3_diagram = fill(&desc.diagram, desc.knot, desc.rho_s3.clone()).expect("the knot component exists");
    let s3_homology = first_homology(&s3_diagram);
    let (s3_terminal, s3_certificate) = match reduce_path_forest(&s3_diagram) {
        Ok(ChainReduction::Certified(cert)) => (cert.terminal.clone(), Some(cert)),
        Ok(ChainReduction::Stuck { reason, .. }) => {
            notes.push(format!("s3 reduction stuck: {reason}"));
            (ClosedManifoldClass::ConnectedSumOrUnresolved(reason), None)
        }
        Err(e) => {
            notes.push(format!("s3 reduction failed: {e}"));
            (ClosedManifoldClass::ConnectedSumOrUnresolved(e.to_string()), None)
        }
    };
    let s3_replayed = s3_certificate.as_ref().is_some_and(|c| replay(c).is_valid());

    let lens_diagram = fill(&desc.diagram, desc.knot, desc.rho_lens.clone()).expect("the knot component exists");
    let lens_homology = first_homology(&lens_diagram);
    let (lens_certificate, lens_explored) = match simplify(&lens_diagram, budget) {
        SimplifyOutcome::Resolved(cert) => (Some(cert), 0),
        SimplifyOutcome::Unresolved { smallest, explored } => {
            notes.push(format!("lens search unresolved after {explored} nodes ({} components left)", smallest.len()));
            (None, explored)
        }
    };
    let lens_replayed = match &lens_certificate {
        Some(c) => {
            let v = replay(c);
            if !v.is_valid() {
                notes.push(format!("lens certificate does not replay: {v:?}"));
            }
            v.is_valid()
        }
        None => false,
    };

    let closed = |s: &Slope| desc.tangle.insert(&RationalTangle::new(s.clone())).expect("templates have one slot");
    let unknot_fraction =
        closed(&Slope::infinity()).fraction().map_err(|e| notes.push(format!("tangle with 1/0 inserted: {e}"))).ok();
    let lens_tangle = closed(&desc.delta);
    let tangle_numerator = lens_tangle
        .fraction()
        .map_err(|e| notes.push(format!("tangle with {} inserted: {e}", desc.delta)))
        .ok()
        .map(|f| f.num().clone());
    let tangle_link = match lens_tangle.rational_fraction() {
        Ok(f) => Some(TwoBridgeLink::from_fraction(&f)),
        Err(TangleError::NotRational(why)) => {
            notes.push(format!(
                "tangle with {} inserted is not rational ({why}); two-bridge type not determined",
                desc.delta
            ));
            None
        }
        Err(_) => None,
    };
    let tangle_lens = tangle_link.as_ref().map(double_branched_cover);

    let order = lens_homology.is_finite_cyclic().then(|| lens_homology.order()).flatten();
    let resolved: Vec<&ClosedManifoldClass> =
        lens_certificate.iter().filter(|_| lens_replayed).map(|c| &c.terminal).chain(tangle_lens.iter()).collect();
    let mut agree = true;
    for c in &resolved {
        // S1 x S2 has order 0, which `cyclic` reads as Z
        if c.homology_order().map(AbelianGroup::cyclic).as_ref() != Some(&lens_homology) {
            notes.push(format!("{c} disagrees with |H1| = {}", lens_homology));
            agree = false;
        }
    }
    if let (Some(n), Some(order)) = (&tangle_numerator, &order) {
        if &n.abs() != order {
            notes.push(format!("tangle determinant {} differs from |H1| = {order}", n.abs()));
        }
    }
    if let [a, b] = resolved.as_slice() {
        if !lens_equivalent(a, b, false) {
            notes.push(format!("surgery gives {a} but the tangle gives {b}"));
            agree = false;
        }
    }
    if lens_certificate.is_some() && !lens_replayed {
        agree = false;
    }
    let s3_ok = s3_terminal == ClosedManifoldClass::ThreeSphere && s3_homology.is_trivial() && s3_replayed;
    let consistent = s3_ok && lens_homology.is_finite_cyclic() && agree;

    VerificationReport {
        params: desc.params.clone(),
        rho_lens: desc.rho_lens.clone(),
        s3_homology,
        s3_terminal,
        s3_certificate,
        s3_replayed,
        lens_homology,
        lens_certificate,
        lens_replayed,
        lens_explored,
        unknot_fraction,
        tangle_numerator,
        tangle_link,
        tangle_lens,
        consistent,
        degenerate_flags: desc.degenerate_flags.clone(),
        notes,
    }
}

/// The exact `S^3` check alone: trivial homology and a replayable reduction
/// of the chain to `S^3` once the knot is filled with `1/0`.
pub fn s3_holds(fp: &FamilyParams) -> Result<bool> {
    let c = coefficients(fp)?;
    chain_s3_holds(fp, &c)
}

/// The `S^3` check after adding `1` to the coefficient of component `id`
/// (2..5).
pub fn mutated_s3_holds(fp: &FamilyParams, id: usize) -> Result<bool> {
    let mut c = coefficients(fp)?;
    let slot = &mut c[id - 2];
    *slot = slot.checked_add(&Slope::integer(1)).expect("adding 1 is always defined");
    chain_s3_holds(fp, &c)
}

fn chain_s3_holds(fp: &FamilyParams, c: &[Slope; 4]) -> Result<bool> {
    let d = chain_with(fp, c)?;
    let s3 = fill(&d, crate::KNOT, Slope::infinity())?;
    if !first_homology(&s3).is_trivial() {
        return Ok(false);
    }
    Ok(match reduce_path_forest(&s3)? {
        ChainReduction::Certified(cert) => {
            cert.terminal == ClosedManifoldClass::ThreeSphere && replay(&cert).is_valid()
        }
        ChainReduction::Stuck { .. } => false,
    })
}
