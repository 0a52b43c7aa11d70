//! Move sequences that can be checked independently of the search that
//! produced them.
//!
//! ```text
//! CERTIFICATE 1
//! INITIAL
//! shape path 2
//! coeffs 2/1 3/1
//! linkings 1
//! ids 1 2
//! END
//! MOVE slam-dunk 2 - 3f1c0a9b2e7d4c11
//! TERMINAL L(5,3)
//! ```

use std::fmt;

use crate::classify::ClosedManifoldClass;
use crate::text::{format_diagram, parse_diagram_at};
use crate::{digest, first_homology, Move, TwistRegionGraph};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Step {
    pub mv: Move,
    /// Digest of the diagram after the move.
    pub digest: String,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RewriteCertificate {
    pub initial: TwistRegionGraph,
    pub steps: Vec<Step>,
    pub terminal: ClosedManifoldClass,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ReplayVerdict {
    Valid,
    /// `step` counts from 1; 0 refers to the terminal check.
    Invalid {
        step: usize,
        reason: String,
    },
}

impl ReplayVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, ReplayVerdict::Valid)
    }
}

/// The class read off a diagram with at most one component.
pub fn terminal_class(d: &TwistRegionGraph) -> Option<ClosedManifoldClass> {
    match d.len() {
        0 => Some(ClosedManifoldClass::ThreeSphere),
        1 => d.components().next().map(|c| ClosedManifoldClass::from_unknot_slope(&c.coefficient)),
        _ => None,
    }
}

impl RewriteCertificate {
    /// Applies every step, returning the diagrams after each one.
    pub fn trace(&self) -> Result<Vec<TwistRegionGraph>, (usize, String)> {
        let mut out = Vec::with_capacity(self.steps.len());
        let mut d = self.initial.clone();
        for (i, step) in self.steps.iter().enumerate() {
            d = step.mv.apply(&d).map_err(|e| (i + 1, e.to_string()))?;
            out.push(d.clone());
        }
        Ok(out)
    }

    pub fn final_diagram(&self) -> Option<TwistRegionGraph> {
        match self.trace() {
            Ok(t) => Some(t.last().cloned().unwrap_or_else(|| self.initial.clone())),
            Err(_) => None,
        }
    }

    pub fn parse(text: &str) -> Result<RewriteCertificate, String> {
        let lines: Vec<&str> = text.lines().collect();
        let mut i = 0;
        let skip = |i: &mut usize| {
            while *i < lines.len() && lines[*i].trim().is_empty() {
                *i += 1;
            }
        };
        skip(&mut i);
        if lines.get(i).map(|l| l.trim()) != Some("CERTIFICATE 1") {
            return Err(format!("line {}: expected `CERTIFICATE 1`", i + 1));
        }
        i += 1;
        skip(&mut i);
        if lines.get(i).map(|l| l.trim()) != Some("INITIAL") {
            return Err(format!("line {}: expected `INITIAL`", i + 1));
        }
        i += 1;
        let start = i;
        while i < lines.len() && lines[i].trim() != "END" {
            i += 1;
        }
        if i == lines.len() {
            return Err("missing `END` after the initial diagram".to_string());
        }
        let initial = parse_diagram_at(&lines[start..i].join("\n"), start + 1).map_err(|e| e.to_string())?;
        i += 1;
        let mut steps = Vec::new();
        let mut terminal = None;
        for (k, line) in lines.iter().enumerate().skip(i) {
            let words: Vec<&str> = line.split_whitespace().collect();
            match words.as_slice() {
                [] => {}
                ["MOVE", name, targets, params, digest] => {
                    let mv = Move::parse(name, targets, params).map_err(|e| format!("line {}: {e}", k + 1))?;
                    steps.push(Step { mv, digest: digest.to_string() });
                }
                ["TERMINAL", ..] => {
                    let rest = line.trim().trim_start_matches("TERMINAL").trim();
                    terminal = Some(rest.parse::<ClosedManifoldClass>().map_err(|e| format!("line {}: {e}", k + 1))?);
                }
                _ => return Err(format!("line {}: cannot read {line:?}", k + 1)),
            }
        }
        let terminal = terminal.ok_or("missing `TERMINAL` line")?;
        Ok(RewriteCertificate { initial, steps, terminal })
    }
}

impl fmt::Display for RewriteCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CERTIFICATE 1")?;
        writeln!(f, "INITIAL")?;
        f.write_str(&format_diagram(&self.initial))?;
        writeln!(f, "END")?;
        for s in &self.steps {
            writeln!(f, "MOVE {} {}", s.mv, s.digest)?;
        }
        writeln!(f, "TERMINAL {}", self.terminal)
    }
}

/// Re-applies each move, checking the recorded digest and that first homology
/// never changes, then checks the final diagram against the terminal class.
pub fn replay(cert: &RewriteCertificate) -> ReplayVerdict {
    let h0 = first_homology(&cert.initial);
    let mut d = cert.initial.clone();
    for (i, step) in cert.steps.iter().enumerate() {
        let n = i + 1;
        d = match step.mv.apply(&d) {
            Ok(next) => next,
            Err(e) => return ReplayVerdict::Invalid { step: n, reason: format!("{} failed: {e}", step.mv) },
        };
        let got = digest(&d);
        if got != step.digest {
            return ReplayVerdict::Invalid {
                step: n,
                reason: format!("digest {got} does not match recorded {}", step.digest),
            };
        }
        let h = first_homology(&d);
        if h != h0 {
            return ReplayVerdict::Invalid { step: n, reason: format!("homology changed from {h0} to {h}") };
        }
    }
    match terminal_class(&d) {
        None => ReplayVerdict::Invalid { step: 0, reason: format!("final diagram still has {} components", d.len()) },
        Some(c) if c != cert.terminal => ReplayVerdict::Invalid {
            step: 0,
            reason: format!("final diagram is {c}, certificate claims {}", cert.terminal),
        },
        Some(_) => ReplayVerdict::Valid,
    }
}
