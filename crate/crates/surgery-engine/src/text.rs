//! Plain-text diagram format.
//!
//! ```text
//! shape cycle 5
//! coeffs 1/0 -1/1 2/3 1/0 4/1
//! linkings 1 1 -1 1 1
//! ids 1 2 3 4 5
//! knot 1
//! ```
//!
//! `linkings` joins consecutive components, and for a cycle the last entry
//! closes it. `ids` defaults to the next unused integers and `knot` is
//! optional. A diagram may hold several stanzas, one per connected piece;
//! `shape empty` is the empty diagram. Blank lines separate diagrams and `#`
//! starts a comment.

use exact_arith::Slope;

use crate::{ComponentId, DiagramError, Result, Shape, TwistRegionGraph};

fn perr(line: usize, msg: impl Into<String>) -> DiagramError {
    DiagramError::Parse { line, msg: msg.into() }
}

#[derive(Default)]
struct Stanza {
    line: usize,
    shape: Option<(Shape, usize)>,
    coeffs: Option<Vec<Slope>>,
    linkings: Option<Vec<i64>>,
    ids: Option<Vec<ComponentId>>,
}

/// Parses one diagram; `first_line` offsets reported line numbers.
pub fn parse_diagram_at(text: &str, first_line: usize) -> Result<TwistRegionGraph> {
    let mut stanzas: Vec<Stanza> = Vec::new();
    let mut knots: Vec<(usize, ComponentId)> = Vec::new();
    let mut empty = false;
    for (k, raw) in text.lines().enumerate() {
        let line = first_line + k;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut words = content.split_whitespace();
        let head = words.next().unwrap_or_default();
        let rest: Vec<&str> = words.collect();
        match head {
            "shape" => {
                let shape = match rest.as_slice() {
                    ["empty"] => {
                        empty = true;
                        continue;
                    }
                    ["cycle", n] => (Shape::Cycle, *n),
                    ["path", n] => (Shape::Path, *n),
                    _ => return Err(perr(line, format!("expected `shape cycle|path n`, got {content:?}"))),
                };
                let n: usize = shape.1.parse().map_err(|_| perr(line, format!("bad component count {:?}", shape.1)))?;
                stanzas.push(Stanza { line, shape: Some((shape.0, n)), ..Stanza::default() });
            }
            "coeffs" | "linkings" | "ids" => {
                let st = stanzas.last_mut().ok_or_else(|| perr(line, format!("`{head}` before any `shape` line")))?;
                match head {
                    "coeffs" => {
                        let v = rest
                            .iter()
                            .map(|w| w.parse::<Slope>().map_err(|e| perr(line, e.to_string())))
                            .collect::<Result<Vec<_>>>()?;
                        st.coeffs = Some(v);
                    }
                    "linkings" => {
                        let v = rest
                            .iter()
                            .map(|w| {
                                w.trim_start_matches('+')
                                    .parse::<i64>()
                                    .map_err(|_| perr(line, format!("bad linking {w:?}")))
                            })
                            .collect::<Result<Vec<_>>>()?;
                        st.linkings = Some(v);
                    }
                    _ => {
                        let v = rest
                            .iter()
                            .map(|w| w.parse::<ComponentId>().map_err(|_| perr(line, format!("bad id {w:?}"))))
                            .collect::<Result<Vec<_>>>()?;
                        st.ids = Some(v);
                    }
                }
            }
            "knot" => {
                let id = match rest.as_slice() {
                    [id] => id.parse().map_err(|_| perr(line, format!("bad knot id {id:?}")))?,
                    _ => return Err(perr(line, "expected `knot <id>`")),
                };
                knots.push((line, id));
            }
            other => return Err(perr(line, format!("unknown keyword {other:?}"))),
        }
    }
    if empty && !stanzas.is_empty() {
        return Err(perr(first_line, "`shape empty` cannot be combined with other stanzas"));
    }
    if !empty && stanzas.is_empty() {
        return Err(perr(first_line, "no `shape` line"));
    }

    let mut d = TwistRegionGraph::new();
    let mut next_id: ComponentId = 1;
    for st in stanzas {
        let (shape, n) = st.shape.expect("stanzas start with shape");
        let coeffs = st.coeffs.ok_or_else(|| perr(st.line, "missing `coeffs`"))?;
        if coeffs.len() != n {
            return Err(perr(st.line, format!("expected {n} coefficients, got {}", coeffs.len())));
        }
        let links = st.linkings.unwrap_or_default();
        let want = match shape {
            Shape::Cycle => n,
            Shape::Path => n.saturating_sub(1),
        };
        if links.len() != want {
            return Err(perr(st.line, format!("expected {want} linkings, got {}", links.len())));
        }
        if shape == Shape::Cycle && n < 3 {
            return Err(perr(st.line, "a cycle needs at least 3 components"));
        }
        let ids = match st.ids {
            Some(ids) if ids.len() == n => ids,
            Some(ids) => return Err(perr(st.line, format!("expected {n} ids, got {}", ids.len()))),
            None => (0..n as ComponentId).map(|i| next_id + i).collect(),
        };
        for (id, c) in ids.iter().zip(coeffs) {
            d.add_component(*id, c).map_err(|e| perr(st.line, e.to_string()))?;
        }
        for (i, lk) in links.iter().enumerate() {
            d.add_edge(ids[i], ids[(i + 1) % n], *lk).map_err(|e| perr(st.line, e.to_string()))?;
        }
        next_id = next_id.max(ids.iter().copied().max().unwrap_or(0) + 1);
    }
    for (line, id) in knots {
        d.set_knot(id).map_err(|e| perr(line, e.to_string()))?;
    }
    Ok(d)
}

pub fn parse_diagram(text: &str) -> Result<TwistRegionGraph> {
    parse_diagram_at(text, 1)
}

/// Splits on blank lines and parses each block.
pub fn parse_diagrams(text: &str) -> Result<Vec<TwistRegionGraph>> {
    let mut out = Vec::new();
    let mut block = String::new();
    let mut start = 1;
    for (k, line) in text.lines().chain(std::iter::once("")).enumerate() {
        if line.trim().is_empty() {
            if block.lines().any(|l| !l.split('#').next().unwrap_or("").trim().is_empty()) {
                out.push(parse_diagram_at(&block, start)?);
            }
            block.clear();
            start = k + 2;
        } else {
            block.push_str(line);
            block.push('\n');
        }
    }
    Ok(out)
}

pub fn format_diagram(d: &TwistRegionGraph) -> String {
    if d.is_empty() {
        return "shape empty\n".to_string();
    }
    let mut out = String::new();
    for piece in d.pieces() {
        let n = piece.order.len();
        let closed = piece.shape == Shape::Cycle;
        let coeffs: Vec<String> = piece.order.iter().map(|&id| d.coefficient(id).unwrap().to_string()).collect();
        let links: Vec<String> = (0..if closed { n } else { n - 1 })
            .map(|i| d.linking(piece.order[i], piece.order[(i + 1) % n]).to_string())
            .collect();
        let ids: Vec<String> = piece.order.iter().map(ToString::to_string).collect();
        out.push_str(&format!("shape {} {n}\n", if closed { "cycle" } else { "path" }));
        out.push_str(&format!("coeffs {}\n", coeffs.join(" ")));
        out.push_str(&format!("linkings {}\n", links.join(" ")).replace("linkings \n", "linkings\n"));
        out.push_str(&format!("ids {}\n", ids.join(" ")));
        if let Some(k) = piece.order.iter().find(|&&id| d.component(id).unwrap().knot) {
            out.push_str(&format!("knot {k}\n"));
        }
    }
    out
}
