//! Sweep configuration files.
//!
//! ```text
//! # comments and blank lines are ignored
//! budget = 10000
//! jobs = 4
//! range = p=-2..2
//! range = K=0..3
//! ```
//!
//! One `key = value` per line. Keys are `budget`, `jobs` and `range`; only
//! `range` may repeat. An empty file keeps every default.

use std::path::Path;

use berge_catalog::Grid;

use crate::CliError;

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Config {
    pub budget: Option<usize>,
    pub jobs: Option<usize>,
    /// `name=lo..hi` specs in file order.
    pub ranges: Vec<String>,
}

fn err(line: usize, msg: impl Into<String>) -> CliError {
    CliError::Config { line, msg: msg.into() }
}

pub fn parse_config(text: &str) -> Result<Config, CliError> {
    let mut c = Config::default();
    for (i, raw) in text.lines().enumerate() {
        let n = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let key: String = line.chars().take_while(|ch| !ch.is_whitespace() && *ch != '=').collect();
        if !["budget", "jobs", "range"].contains(&key.as_str()) {
            return Err(err(n, format!("unknown key `{key}`")));
        }
        let value = line[key.len()..]
            .trim_start()
            .strip_prefix('=')
            .ok_or_else(|| err(n, format!("expected `{key} = value`")))?
            .trim();
        let count =
            |v: &str| v.parse::<usize>().map_err(|_| err(n, format!("{key}: `{v}` is not a non-negative integer")));
        match key.as_str() {
            "budget" => c.budget = Some(count(value)?),
            "jobs" => match count(value)? {
                0 => return Err(err(n, "jobs must be at least 1")),
                j => c.jobs = Some(j),
            },
            _ => {
                Grid::default().set_spec(value).map_err(|e| err(n, e.to_string()))?;
                c.ranges.push(value.to_string());
            }
        }
    }
    Ok(c)
}

pub fn load_config(path: &Path) -> Result<Config, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    parse_config(&text)
}
