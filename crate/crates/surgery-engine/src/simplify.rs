//! Bounded search for a move sequence ending in at most one component.
//!
//! Iterative deepening over the move list returned by [`candidate_moves`],
//! with a per-round transposition table keyed by digest. Moves are tried in a
//! fixed order, so the outcome depends only on the input and the budget.

use std::collections::HashMap;

use exact_arith::Slope;
use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::certificate::{terminal_class, RewriteCertificate, Step};
use crate::{digest, ComponentId, Move, TwistRegionGraph};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SimplifyOutcome {
    Resolved(RewriteCertificate),
    /// `smallest` has the fewest components (then edges) of any diagram seen.
    Unresolved {
        smallest: TwistRegionGraph,
        explored: usize,
    },
}

impl SimplifyOutcome {
    pub fn certificate(&self) -> Option<&RewriteCertificate> {
        match self {
            SimplifyOutcome::Resolved(c) => Some(c),
            SimplifyOutcome::Unresolved { .. } => None,
        }
    }
}

fn unit_coefficient(s: &Slope) -> Option<i64> {
    match s.as_integer().and_then(|n| i64::try_from(n).ok()) {
        Some(e @ (1 | -1)) => Some(e),
        _ => None,
    }
}

fn clasps_are_simple(d: &TwistRegionGraph, id: ComponentId) -> bool {
    d.neighbors(id).iter().all(|(_, lk)| lk.abs() == 1)
}

/// Ids with the knot component moved to the back.
fn knot_last(d: &TwistRegionGraph, ids: impl Iterator<Item = ComponentId>) -> Vec<ComponentId> {
    let mut v: Vec<ComponentId> = ids.collect();
    v.sort_by_key(|&id| (d.component(id).map(|c| c.knot).unwrap_or(false), id));
    v
}

/// Moves worth trying from `d`, best first: delete a `1/0` component (forced
/// when available), blow-downs, slam-dunks and amalgamations at ends, then
/// Rolfsen twists that send a component of degree at most 2 to `1/0`, or an
/// end's neighbour to `+-1`. Only moves whose preconditions hold are returned.
pub fn candidate_moves(d: &TwistRegionGraph) -> Vec<Move> {
    if let Some(id) = d.ids().find(|&id| d.coefficient(id).unwrap().is_infinite()) {
        return vec![Move::DeleteInfinite { target: id }];
    }
    let mut out = Vec::new();
    let applies = |mv: &Move| mv.apply(d).is_ok();

    for id in knot_last(d, d.ids()) {
        let mv = Move::BlowDown { target: id };
        if unit_coefficient(d.coefficient(id).unwrap()).is_some() && applies(&mv) {
            out.push(mv);
        }
    }

    let ends = knot_last(d, d.ids().filter(|&id| d.degree(id) == 1));
    for &end in &ends {
        let mv = Move::SlamDunk { end };
        if applies(&mv) {
            out.push(mv);
        }
    }
    for (i, &a) in ends.iter().enumerate() {
        for &b in &ends[i + 1..] {
            for mv in [Move::Amalgamate { keep: a, absorb: b }, Move::Amalgamate { keep: b, absorb: a }] {
                if applies(&mv) {
                    out.push(mv);
                    break;
                }
            }
        }
    }

    for id in knot_last(d, d.ids().filter(|&id| d.degree(id) <= 2)) {
        let c = d.coefficient(id).unwrap();
        if c.num().abs().is_one() {
            let t: BigInt = -(c.den() * c.num());
            out.push(Move::RolfsenTwist { end: id, twists: t });
        }
        if let [(a, lk)] = d.neighbors(id)[..] {
            let ca = d.coefficient(a).unwrap();
            if lk.abs() != 1 || !clasps_are_simple(d, a) || unit_coefficient(ca).is_some() {
                continue;
            }
            if let Some(n) = ca.as_integer() {
                for target in [1, -1] {
                    let t = BigInt::from(target) - n;
                    out.push(Move::RolfsenTwist { end: id, twists: t });
                }
            }
        }
    }
    out.retain(|mv| applies(mv));
    out
}

enum Search {
    Found(Vec<Step>),
    NotFound,
    OutOfBudget,
}

struct Searcher {
    budget: usize,
    explored: usize,
    smallest: TwistRegionGraph,
    // digest -> largest remaining depth it has been expanded with this round
    seen: HashMap<String, usize>,
    cut: bool,
}

impl Searcher {
    fn dfs(&mut self, d: &TwistRegionGraph, remaining: usize, path: &mut Vec<Step>) -> Search {
        if self.explored >= self.budget {
            return Search::OutOfBudget;
        }
        self.explored += 1;
        if (d.len(), d.edge_count()) < (self.smallest.len(), self.smallest.edge_count()) {
            self.smallest = d.clone();
        }
        if d.len() <= 1 {
            return Search::Found(path.clone());
        }
        // each move removes at most one component
        if d.len() - 1 > remaining {
            self.cut = true;
            return Search::NotFound;
        }
        for mv in candidate_moves(d) {
            let next = mv.apply(d).expect("candidates are applicable");
            let key = digest(&next);
            let left = remaining - 1;
            if self.seen.get(&key).is_some_and(|&r| r >= left) {
                continue;
            }
            self.seen.insert(key.clone(), left);
            path.push(Step { mv, digest: key });
            match self.dfs(&next, left, path) {
                Search::NotFound => {}
                other => return other,
            }
            path.pop();
        }
        Search::NotFound
    }
}

/// Searches for a certificate using at most `budget` node expansions.
pub fn simplify(d: &TwistRegionGraph, budget: usize) -> SimplifyOutcome {
    let mut s = Searcher { budget, explored: 0, smallest: d.clone(), seen: HashMap::new(), cut: false };
    let max_depth = 3 * d.len() + 2;
    for limit in 0..=max_depth {
        s.seen.clear();
        s.cut = false;
        match s.dfs(d, limit, &mut Vec::new()) {
            Search::Found(steps) => {
                let mut end = d.clone();
                for st in &steps {
                    end = st.mv.apply(&end).expect("steps were applied during the search");
                }
                let terminal = terminal_class(&end).expect("search stops at one component");
                return SimplifyOutcome::Resolved(RewriteCertificate { initial: d.clone(), steps, terminal });
            }
            Search::OutOfBudget => break,
            Search::NotFound if !s.cut => break,
            Search::NotFound => {}
        }
    }
    SimplifyOutcome::Unresolved { smallest: s.smallest, explored: s.explored }
}
