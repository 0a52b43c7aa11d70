use std::collections::{BTreeMap, BTreeSet};

use exact_arith::Slope;

use crate::{DiagramError, Result};

pub type ComponentId = u32;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Component {
    pub id: ComponentId,
    pub coefficient: Slope,
    /// Marks the component whose surgery is under study.
    pub knot: bool,
}

/// Unknots with surgery coefficients, joined by twist regions whose weight is
/// the linking number. Every vertex has degree at most two, so each connected
/// piece is a path or a cycle.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct TwistRegionGraph {
    components: BTreeMap<ComponentId, Component>,
    // keyed by (min id, max id)
    edges: BTreeMap<(ComponentId, ComponentId), i64>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Shape {
    Path,
    Cycle,
}

/// A connected piece, listed in traversal order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Piece {
    pub shape: Shape,
    pub order: Vec<ComponentId>,
}

fn key(a: ComponentId, b: ComponentId) -> (ComponentId, ComponentId) {
    (a.min(b), a.max(b))
}

impl TwistRegionGraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Components `1..=n` in a path, `linkings[i]` joining `i+1` and `i+2`.
    pub fn path(coefficients: Vec<Slope>, linkings: &[i64]) -> Result<Self> {
        let n = coefficients.len();
        if linkings.len() + 1 != n && !(n == 0 && linkings.is_empty()) {
            return Err(DiagramError::Parse {
                line: 0,
                msg: format!("a path of {n} needs {} linkings", n.saturating_sub(1)),
            });
        }
        let mut d = Self::new();
        for (i, c) in coefficients.into_iter().enumerate() {
            d.add_component(i as ComponentId + 1, c)?;
        }
        for (i, &lk) in linkings.iter().enumerate() {
            d.add_edge(i as ComponentId + 1, i as ComponentId + 2, lk)?;
        }
        Ok(d)
    }

    /// Components `1..=n` in a cycle, `linkings[i]` joining `i+1` and `i+2` (mod n).
    pub fn cycle(coefficients: Vec<Slope>, linkings: &[i64]) -> Result<Self> {
        let n = coefficients.len();
        if n < 3 || linkings.len() != n {
            return Err(DiagramError::Parse {
                line: 0,
                msg: format!("a cycle needs at least 3 components and one linking each, got {n}"),
            });
        }
        let mut d = Self::new();
        for (i, c) in coefficients.into_iter().enumerate() {
            d.add_component(i as ComponentId + 1, c)?;
        }
        for (i, &lk) in linkings.iter().enumerate() {
            d.add_edge(i as ComponentId + 1, ((i + 1) % n) as ComponentId + 1, lk)?;
        }
        Ok(d)
    }

    pub fn add_component(&mut self, id: ComponentId, coefficient: Slope) -> Result<()> {
        if self.components.contains_key(&id) {
            return Err(DiagramError::DuplicateComponent(id));
        }
        self.components.insert(id, Component { id, coefficient, knot: false });
        Ok(())
    }

    pub fn add_edge(&mut self, a: ComponentId, b: ComponentId, linking: i64) -> Result<()> {
        if a == b {
            return Err(DiagramError::SelfLoop(a));
        }
        for id in [a, b] {
            if !self.components.contains_key(&id) {
                return Err(DiagramError::UnknownComponent(id));
            }
        }
        if linking == 0 {
            return Err(DiagramError::ZeroLinking(a, b));
        }
        if self.edges.contains_key(&key(a, b)) {
            return Err(DiagramError::DuplicateEdge(a, b));
        }
        for id in [a, b] {
            if self.degree(id) >= 2 {
                return Err(DiagramError::DegreeTooHigh(id));
            }
        }
        self.edges.insert(key(a, b), linking);
        Ok(())
    }

    pub fn set_knot(&mut self, id: ComponentId) -> Result<()> {
        let c = self.components.get_mut(&id).ok_or(DiagramError::UnknownComponent(id))?;
        c.knot = true;
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn ids(&self) -> impl Iterator<Item = ComponentId> + '_ {
        self.components.keys().copied()
    }

    pub fn components(&self) -> impl Iterator<Item = &Component> {
        self.components.values()
    }

    pub fn edges(&self) -> impl Iterator<Item = (ComponentId, ComponentId, i64)> + '_ {
        self.edges.iter().map(|(&(a, b), &lk)| (a, b, lk))
    }

    pub fn component(&self, id: ComponentId) -> Result<&Component> {
        self.components.get(&id).ok_or(DiagramError::UnknownComponent(id))
    }

    pub fn coefficient(&self, id: ComponentId) -> Result<&Slope> {
        Ok(&self.component(id)?.coefficient)
    }

    pub fn contains(&self, id: ComponentId) -> bool {
        self.components.contains_key(&id)
    }

    pub fn knot(&self) -> Option<ComponentId> {
        self.components.values().find(|c| c.knot).map(|c| c.id)
    }

    /// Zero when unlinked.
    pub fn linking(&self, a: ComponentId, b: ComponentId) -> i64 {
        self.edges.get(&key(a, b)).copied().unwrap_or(0)
    }

    /// Neighbours in ascending id order, with linking numbers.
    pub fn neighbors(&self, id: ComponentId) -> Vec<(ComponentId, i64)> {
        self.edges
            .iter()
            .filter_map(|(&(a, b), &lk)| match (a == id, b == id) {
                (true, _) => Some((b, lk)),
                (_, true) => Some((a, lk)),
                _ => None,
            })
            .collect()
    }

    pub fn degree(&self, id: ComponentId) -> usize {
        self.edges.keys().filter(|&&(a, b)| a == id || b == id).count()
    }

    pub fn pieces(&self) -> Vec<Piece> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        // Start paths at their smaller end so the traversal is canonical.
        let mut starts: Vec<ComponentId> = self.ids().filter(|&id| self.degree(id) <= 1).collect();
        starts.extend(self.ids().filter(|&id| self.degree(id) == 2));
        for start in starts {
            if seen.contains(&start) {
                continue;
            }
            let mut order = vec![start];
            seen.insert(start);
            let mut cur = start;
            loop {
                let next = self.neighbors(cur).into_iter().map(|(n, _)| n).find(|n| !seen.contains(n));
                match next {
                    Some(n) => {
                        seen.insert(n);
                        order.push(n);
                        cur = n;
                    }
                    None => break,
                }
            }
            let shape = if order.len() >= 3 && self.linking(*order.last().unwrap(), start) != 0 {
                Shape::Cycle
            } else {
                Shape::Path
            };
            out.push(Piece { shape, order });
        }
        out.sort_by_key(|p| p.order.iter().copied().min());
        out
    }

    pub(crate) fn set_coefficient(&mut self, id: ComponentId, s: Slope) -> Result<()> {
        let c = self.components.get_mut(&id).ok_or(DiagramError::UnknownComponent(id))?;
        c.coefficient = s;
        Ok(())
    }

    pub(crate) fn remove_component(&mut self, id: ComponentId) -> Result<Component> {
        let c = self.components.remove(&id).ok_or(DiagramError::UnknownComponent(id))?;
        self.edges.retain(|&(a, b), _| a != id && b != id);
        Ok(c)
    }

    /// Adds `delta` full twists between `a` and `b`, creating or dropping the
    /// twist region as needed.
    pub(crate) fn add_linking(&mut self, a: ComponentId, b: ComponentId, delta: i64) -> Result<()> {
        let total = self.linking(a, b) + delta;
        self.edges.remove(&key(a, b));
        if total != 0 {
            self.add_edge(a, b, total)?;
        }
        Ok(())
    }
}

/// The minimally twisted five-component chain: a 5-cycle of unknots with
/// every coefficient `1/0` and every clasp of linking `+1`.
pub fn mt5c() -> TwistRegionGraph {
    TwistRegionGraph::cycle(vec![Slope::infinity(); 5], &MT5C_LINKINGS).expect("valid cycle")
}

/// Clasp signs around the chain, starting with the clasp between 1 and 2.
pub const MT5C_LINKINGS: [i64; 5] = [1, 1, 1, 1, 1];

/// Negates every coefficient and every linking.
pub fn mirror(d: &TwistRegionGraph) -> TwistRegionGraph {
    let mut m = d.clone();
    for c in m.components.values_mut() {
        c.coefficient = c.coefficient.mirror();
    }
    for lk in m.edges.values_mut() {
        *lk = -*lk;
    }
    m
}

/// Sets a coefficient; filling with `1/0` deletes the component.
pub fn fill(d: &TwistRegionGraph, id: ComponentId, s: Slope) -> Result<TwistRegionGraph> {
    let mut out = d.clone();
    if s.is_infinite() {
        out.remove_component(id)?;
    } else {
        out.set_coefficient(id, s)?;
    }
    Ok(out)
}
