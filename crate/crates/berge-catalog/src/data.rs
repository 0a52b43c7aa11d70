//! The family records, embedded from `data/families.toml`.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use exact_arith::Slope;
use num_bigint::BigInt;
use serde::Deserialize;
use tangle_calc::{Bindings, Expr, Template};

use crate::{CatalogError, Family, Result};

pub const FAMILIES_TOML: &str = include_str!("../data/families.toml");

#[derive(Deserialize)]
struct RawCatalog {
    version: u32,
    template: String,
    family: Vec<RawFamily>,
}

#[derive(Deserialize)]
struct RawFamily {
    name: String,
    mirror: bool,
    rho_lens: i64,
    delta: i64,
    params: Vec<String>,
    #[serde(default)]
    constants: BTreeMap<String, i64>,
    source: String,
    template: Option<String>,
    define: Vec<(String, String)>,
}

#[derive(Clone, Debug)]
pub struct FamilyData {
    pub family: Family,
    /// Built on the mirror image of the chain.
    pub mirror: bool,
    pub rho_lens: Slope,
    pub delta: Slope,
    pub constants: Bindings,
    pub source: String,
    /// Expressions for components 2..5, in terms of parameters and constants.
    pub coefficients: [Expr; 4],
    /// The template with every definition substituted.
    pub template: Template,
}

#[derive(Clone, Debug)]
pub struct Catalog {
    pub version: u32,
    pub families: Vec<FamilyData>,
}

impl Catalog {
    pub fn parse(text: &str) -> Result<Catalog> {
        let raw: RawCatalog = toml::from_str(text).map_err(|e| CatalogError::Data(e.to_string()))?;
        let families = raw.family.iter().map(|f| build(f, &raw.template)).collect::<Result<Vec<_>>>()?;
        for fam in Family::ALL {
            if families.iter().filter(|d| d.family == fam).count() != 1 {
                return Err(CatalogError::Data(format!("family {fam} must appear exactly once")));
            }
        }
        Ok(Catalog { version: raw.version, families })
    }

    pub fn get(&self, family: Family) -> &FamilyData {
        self.families.iter().find(|d| d.family == family).expect("every family is present")
    }
}

fn build(raw: &RawFamily, default_template: &str) -> Result<FamilyData> {
    let family: Family = raw.name.parse()?;
    let err = |msg: String| CatalogError::Data(format!("{family}: {msg}"));
    if raw.params.iter().map(String::as_str).ne(family.params().iter().copied()) {
        return Err(err(format!("params {:?} differ from {:?}", raw.params, family.params())));
    }
    let mut defs: BTreeMap<String, Expr> = BTreeMap::new();
    for (name, text) in &raw.define {
        let e = Expr::parse(text).map_err(|e| err(format!("{name}: {e}")))?.substitute(&defs);
        defs.insert(name.clone(), e);
    }
    let known: Vec<&str> = family.params().iter().copied().chain(raw.constants.keys().map(String::as_str)).collect();
    let take = |name: &str| -> Result<Expr> {
        let e = defs.get(name).cloned().ok_or_else(|| err(format!("missing definition of {name}")))?;
        if let Some(v) = e.symbols().into_iter().find(|v| !known.contains(&v.as_str())) {
            return Err(err(format!("{name} uses unknown parameter {v}")));
        }
        Ok(e)
    };
    let coefficients = [take("c2")?, take("c3")?, take("c4")?, take("c5")?];
    take("X")?;
    let text = raw.template.as_deref().unwrap_or(default_template);
    let template = Template::parse(text).map_err(|e| err(format!("template: {e}")))?.substitute(&defs);
    if let Some(v) = template.symbols().into_iter().find(|v| !known.contains(&v.as_str())) {
        return Err(err(format!("template uses unknown parameter {v}")));
    }
    for (what, v) in [("rho_lens", raw.rho_lens), ("delta", raw.delta)] {
        if v.abs() > 1 {
            return Err(err(format!("{what} = {v} is outside -1..1")));
        }
    }
    Ok(FamilyData {
        family,
        mirror: raw.mirror,
        rho_lens: Slope::integer(raw.rho_lens),
        delta: Slope::integer(raw.delta),
        constants: raw.constants.iter().map(|(k, &v)| (k.clone(), BigInt::from(v))).collect(),
        source: raw.source.clone(),
        coefficients,
        template,
    })
}

/// The embedded catalog, parsed once.
pub fn catalog() -> &'static Catalog {
    static CATALOG: OnceLock<Catalog> = OnceLock::new();
    CATALOG.get_or_init(|| Catalog::parse(FAMILIES_TOML).expect("embedded family data is valid"))
}
