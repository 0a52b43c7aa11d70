//! Line-delimited JSON reports.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde_json::{json, Map, Value};

use crate::VerificationReport;

pub const SCHEMA: &str = "berge-report/1";

fn int(n: &BigInt) -> Value {
    n.to_i64().map_or_else(|| Value::String(n.to_string()), Value::from)
}

impl VerificationReport {
    pub fn to_json(&self) -> Value {
        let params: Map<String, Value> =
            self.params.assignments().into_iter().map(|(k, v)| (k.to_string(), v.into())).collect();
        let cert_len = |c: Option<usize>| c.map_or(Value::Null, Value::from);
        json!({
            "schema": SCHEMA,
            "family": self.params.family.name(),
            "params": params,
            "s3": {
                "terminal": self.s3_terminal.to_string(),
                "h1": self.s3_homology.to_string(),
                "cert_len": cert_len(self.s3_certificate.as_ref().map(|c| c.steps.len())),
                "replayed": self.s3_replayed,
            },
            "lens": {
                "rho": self.rho_lens.to_string(),
                "h1": self.lens_homology.to_string(),
                "order": self.lens_order().as_ref().map_or(Value::Null, int),
                "terminal": self.surgery_lens().map_or(Value::Null, |c| c.to_string().into()),
                "cert_len": cert_len(self.lens_certificate.as_ref().map(|c| c.steps.len())),
            },
            "tangle": self.tangle_numerator.as_ref().map_or(Value::Null, |n| json!({
                "p": int(&n.abs()),
                "q": self.tangle_link.as_ref().map_or(Value::Null, |l| int(l.q())),
                "rational": self.tangle_link.is_some(),
                "unknot": self.unknot_ok(),
            })),
            "consistent": self.consistent,
            "degenerate_flags": self.degenerate_flags,
            "notes": self.notes,
        })
    }

    /// One line of the report stream.
    pub fn to_json_line(&self) -> String {
        self.to_json().to_string()
    }
}
