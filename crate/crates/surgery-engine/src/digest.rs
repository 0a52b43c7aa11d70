//! Id-free canonical form of a diagram and its hash.

use sha2::{Digest, Sha256};

use crate::{ComponentId, Shape, TwistRegionGraph};

fn vertex_token(d: &TwistRegionGraph, id: ComponentId) -> String {
    let c = d.component(id).expect("piece ids are present");
    if c.knot {
        format!("{}*", c.coefficient)
    } else {
        c.coefficient.to_string()
    }
}

fn walk(d: &TwistRegionGraph, order: &[ComponentId], closed: bool) -> String {
    let mut s = String::from(if closed { "C" } else { "P" });
    for (i, &id) in order.iter().enumerate() {
        s.push(' ');
        s.push_str(&vertex_token(d, id));
        let next = match order.get(i + 1) {
            Some(&n) => Some(n),
            None if closed => Some(order[0]),
            None => None,
        };
        if let Some(n) = next {
            s.push_str(&format!(" ({})", d.linking(id, n)));
        }
    }
    s
}

/// Each piece is written as the lexicographically least walk over all
/// rotations and reflections; pieces are then sorted and joined.
pub fn canonical_form(d: &TwistRegionGraph) -> String {
    let mut pieces: Vec<String> = d
        .pieces()
        .into_iter()
        .map(|p| {
            let closed = p.shape == Shape::Cycle;
            let mut candidates = Vec::new();
            let n = p.order.len();
            let mut rev = p.order.clone();
            rev.reverse();
            for base in [&p.order, &rev] {
                let starts = if closed { n } else { 1 };
                for k in 0..starts {
                    let rotated: Vec<ComponentId> = base[k..].iter().chain(&base[..k]).copied().collect();
                    candidates.push(walk(d, &rotated, closed));
                }
            }
            candidates.into_iter().min().unwrap_or_default()
        })
        .collect();
    pieces.sort();
    pieces.join("; ")
}

/// First 16 hex digits of SHA-256 over the canonical form.
pub fn digest(d: &TwistRegionGraph) -> String {
    let hash = Sha256::digest(canonical_form(d).as_bytes());
    hash.iter().take(8).map(|b| format!("{b:02x}")).collect()
}
