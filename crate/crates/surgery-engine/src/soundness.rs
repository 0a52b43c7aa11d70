//! Randomised check that every applicable move preserves first homology.

use std::collections::BTreeMap;

use exact_arith::Slope;
use num_bigint::BigInt;
use num_integer::Integer;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::{first_homology, ComponentId, Move, TwistRegionGraph};

fn random_slope<R: Rng>(rng: &mut R, max_entry: i64) -> Slope {
    match rng.gen_range(0..20) {
        0 => Slope::infinity(),
        1..=5 => Slope::integer(if rng.gen_bool(0.5) { 1 } else { -1 }),
        6..=11 => Slope::integer(rng.gen_range(-max_entry..=max_entry)),
        _ => loop {
            let p = rng.gen_range(-max_entry..=max_entry);
            let q = rng.gen_range(1..=max_entry);
            if p.gcd(&q) == 1 {
                return Slope::new(p, q).unwrap();
            }
        },
    }
}

fn random_linking<R: Rng>(rng: &mut R) -> i64 {
    let lk = if rng.gen_range(0..8) == 0 { 2 } else { 1 };
    if rng.gen_bool(0.5) {
        lk
    } else {
        -lk
    }
}

/// Up to `max_components` unknots split into one or two path or cycle pieces,
/// coefficients with entries bounded by `max_entry`.
pub fn random_diagram<R: Rng>(rng: &mut R, max_components: usize, max_entry: i64) -> TwistRegionGraph {
    let n = rng.gen_range(1..=max_components);
    let first = if n >= 2 && rng.gen_bool(0.3) { rng.gen_range(1..n) } else { n };
    let mut d = TwistRegionGraph::new();
    let mut next: ComponentId = 1;
    for size in [first, n - first] {
        if size == 0 {
            continue;
        }
        let ids: Vec<ComponentId> = (next..next + size as ComponentId).collect();
        next += size as ComponentId;
        for &id in &ids {
            d.add_component(id, random_slope(rng, max_entry)).expect("fresh id");
        }
        for w in ids.windows(2) {
            d.add_edge(w[0], w[1], random_linking(rng)).expect("path edge");
        }
        if size >= 3 && rng.gen_bool(0.5) {
            d.add_edge(ids[size - 1], ids[0], random_linking(rng)).expect("closing edge");
        }
    }
    d
}

/// Every move whose preconditions hold on `d`, with Rolfsen twists limited to
/// `t` in `{-2, -1, 1, 2}`.
pub fn applicable_moves(d: &TwistRegionGraph) -> Vec<Move> {
    let mut out = Vec::new();
    let ids: Vec<ComponentId> = d.ids().collect();
    for &id in &ids {
        out.push(Move::DeleteInfinite { target: id });
        out.push(Move::SlamDunk { end: id });
        out.push(Move::BlowDown { target: id });
        for t in [-2, -1, 1, 2] {
            out.push(Move::RolfsenTwist { end: id, twists: BigInt::from(t) });
        }
        for &other in &ids {
            out.push(Move::Amalgamate { keep: id, absorb: other });
        }
    }
    out.retain(|mv| mv.apply(d).is_ok());
    out
}

#[derive(Clone, Debug, Default)]
pub struct SoundnessReport {
    pub diagrams: usize,
    /// Applications per move name.
    pub applications: BTreeMap<&'static str, usize>,
    pub failures: Vec<String>,
}

impl SoundnessReport {
    pub fn total_applications(&self) -> usize {
        self.applications.values().sum()
    }
}

/// Draws `count` diagrams from a seeded generator (at most seven components,
/// entries bounded by nine) and compares homology across every applicable move.
pub fn move_soundness(seed: u64, count: usize) -> SoundnessReport {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut report = SoundnessReport { diagrams: count, ..SoundnessReport::default() };
    for _ in 0..count {
        let d = random_diagram(&mut rng, 7, 9);
        let h = first_homology(&d);
        for mv in applicable_moves(&d) {
            let out = mv.apply(&d).expect("filtered to applicable moves");
            *report.applications.entry(mv.name()).or_default() += 1;
            let h2 = first_homology(&out);
            if h2 != h {
                report.failures.push(format!("{mv} changed {h} to {h2} on\n{}", crate::text::format_diagram(&d)));
            }
        }
    }
    report
}
