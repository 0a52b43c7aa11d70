use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use tangle_calc::Bindings;

use crate::{CatalogError, Result};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Family {
    I,
    II,
    III,
    IV,
    V,
    VI,
    SpA,
    SpB,
    SpC,
    SpD,
}

/// Every parameter name a family may take, in tuple order.
pub const PARAM_NAMES: [&str; 7] = ["p", "q", "r", "s", "n", "K", "eps"];

impl Family {
    pub const ALL: [Family; 10] = [
        Family::I,
        Family::II,
        Family::III,
        Family::IV,
        Family::V,
        Family::VI,
        Family::SpA,
        Family::SpB,
        Family::SpC,
        Family::SpD,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::I => "I",
            Family::II => "II",
            Family::III => "III",
            Family::IV => "IV",
            Family::V => "V",
            Family::VI => "VI",
            Family::SpA => "SpA",
            Family::SpB => "SpB",
            Family::SpC => "SpC",
            Family::SpD => "SpD",
        }
    }

    /// The free parameters, in tuple order.
    pub fn params(self) -> &'static [&'static str] {
        match self {
            Family::I => &["p", "q", "r", "s"],
            Family::II | Family::VI => &["p", "q", "r", "s", "n"],
            Family::III | Family::IV | Family::V => &["p", "K", "eps"],
            Family::SpA | Family::SpB | Family::SpC | Family::SpD => &["n"],
        }
    }

    pub fn is_sporadic(self) -> bool {
        matches!(self, Family::SpA | Family::SpB | Family::SpC | Family::SpD)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = CatalogError;

    /// Accepts the short names and the Roman numerals IX..XII for the
    /// sporadic families.
    fn from_str(s: &str) -> Result<Family> {
        let alias = match s {
            "IX" => "SpA",
            "X" => "SpB",
            "XI" => "SpC",
            "XII" => "SpD",
            other => other,
        };
        Family::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(alias))
            .ok_or_else(|| CatalogError::UnknownFamily(s.to_string()))
    }
}

/// A point of a family's parameter space. Unused parameters are `None`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct FamilyParams {
    pub family: Family,
    pub p: Option<i64>,
    pub q: Option<i64>,
    pub r: Option<i64>,
    pub s: Option<i64>,
    pub n: Option<i64>,
    pub k: Option<i64>,
    pub eps: Option<i64>,
}

impl FamilyParams {
    pub fn empty(family: Family) -> Self {
        FamilyParams { family, p: None, q: None, r: None, s: None, n: None, k: None, eps: None }
    }

    /// Builds and validates from `(name, value)` pairs.
    pub fn from_pairs(family: Family, pairs: &[(&str, i64)]) -> Result<Self> {
        let mut fp = FamilyParams::empty(family);
        for &(name, v) in pairs {
            fp.set(name, v)?;
        }
        fp.validate()?;
        Ok(fp)
    }

    fn slot(&mut self, name: &str) -> Option<&mut Option<i64>> {
        Some(match name {
            "p" => &mut self.p,
            "q" => &mut self.q,
            "r" => &mut self.r,
            "s" => &mut self.s,
            "n" => &mut self.n,
            "K" => &mut self.k,
            "eps" => &mut self.eps,
            _ => return None,
        })
    }

    pub fn get(&self, name: &str) -> Option<i64> {
        match name {
            "p" => self.p,
            "q" => self.q,
            "r" => self.r,
            "s" => self.s,
            "n" => self.n,
            "K" => self.k,
            "eps" => self.eps,
            _ => None,
        }
    }

    pub fn set(&mut self, name: &str, v: i64) -> Result<()> {
        let family = self.family;
        if !family.params().contains(&name) {
            return Err(CatalogError::Unexpected { family, name: name.to_string() });
        }
        *self.slot(name).expect("known name") = Some(v);
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        for name in PARAM_NAMES {
            let wanted = self.family.params().contains(&name);
            match (wanted, self.get(name)) {
                (true, None) => return Err(CatalogError::Missing { family: self.family, name }),
                (false, Some(_)) => return Err(CatalogError::Unexpected { family: self.family, name: name.into() }),
                _ => {}
            }
        }
        if let (Some(p), Some(q), Some(r), Some(s)) = (self.p, self.q, self.r, self.s) {
            let det = p * s - q * r;
            if det.abs() != 1 {
                return Err(CatalogError::Constraint(format!(
                    "|ps - qr| = {} (need 1) at p={p} q={q} r={r} s={s}",
                    det.abs()
                )));
            }
        }
        if let Some(e) = self.eps {
            if e.abs() != 1 {
                return Err(CatalogError::Constraint(format!("eps = {e} (need +1 or -1)")));
            }
        }
        Ok(())
    }

    /// `(r, s)` for families III to V, where they are functions of `p`, `K`
    /// and `eps`.
    pub fn derived_rs(&self) -> Option<(i64, i64)> {
        match (self.family, self.p, self.k, self.eps) {
            (Family::III | Family::IV | Family::V, Some(p), Some(k), Some(e)) => {
                Some((2 * e + (2 * p + e) * k, e + p * k))
            }
            _ => None,
        }
    }

    /// The free parameters as name/value pairs, in tuple order.
    pub fn assignments(&self) -> Vec<(&'static str, i64)> {
        self.family.params().iter().filter_map(|&n| self.get(n).map(|v| (n, v))).collect()
    }

    pub fn bindings(&self) -> Bindings {
        self.assignments().into_iter().map(|(k, v)| (k.to_string(), BigInt::from(v))).collect()
    }
}

impl fmt::Display for FamilyParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.family)?;
        for (k, v) in self.assignments() {
            write!(f, " {k}={v}")?;
        }
        Ok(())
    }
}
