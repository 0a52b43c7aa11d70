//! The `berge` command line: batch verification of the Berge families.

pub mod config;

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use berge_catalog::{
    catalog, surgery_description, sweep, verify_description, Family, FamilyParams, Grid, SweepSummary,
    VerificationReport, PARAM_NAMES,
};
use clap::{Args, Parser, Subcommand};
use surgery_engine::text::format_diagram;
use surgery_engine::{replay, ReplayVerdict, RewriteCertificate};

pub use config::{load_config, parse_config, Config};

pub const EXIT_OK: u8 = 0;
pub const EXIT_INCONSISTENT: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_UNRESOLVED: u8 = 3;

pub const DEFAULT_BUDGET: usize = 20_000;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("config line {line}: {msg}")]
    Config { line: usize, msg: String },
    #[error("{0}")]
    Io(String),
    #[error(transparent)]
    Catalog(#[from] berge_catalog::CatalogError),
}

fn family_help() -> String {
    let mut s = String::from("Families and their parameters:\n");
    for f in Family::ALL {
        let _ = writeln!(s, "  {:<4} {}", f.name(), f.params().join(" "));
    }
    let _ = write!(
        s,
        "\nParameter names: {}. IX, X, XI and XII are accepted for SpA..SpD.\n\
         Exit codes: 0 consistent, 1 inconsistent or failed replay, 2 bad arguments, 3 nothing resolved.",
        PARAM_NAMES.join(" ")
    );
    s
}

#[derive(Parser, Debug)]
#[command(name = "berge", version, about = "Verify surgery and tangle descriptions of the Berge knot families", after_help = family_help())]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List the families with their parameters and data
    List,
    /// Print the surgery diagram and tangle tree of one parameter point
    Describe(#[command(flatten)] PointArgs),
    /// Verify one parameter point and print its JSON report
    Verify {
        #[command(flatten)]
        point: PointArgs,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        /// Write the report here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify every valid tuple of a grid, one JSON report per line
    Sweep {
        /// Defaults to every family
        #[arg(long, value_parser = parse_family)]
        family: Option<Family>,
        /// `name=lo..hi`, repeatable; applied after the config file
        #[arg(long = "range", allow_hyphen_values = true)]
        ranges: Vec<String>,
        #[arg(long)]
        budget: Option<usize>,
        /// Worker cap
        #[arg(long)]
        jobs: Option<usize>,
        /// `key = value` file with budget, jobs and range keys
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Replay a rewrite certificate; exit 0 iff it is valid
    Replay { certificate: PathBuf },
    /// Write the diagram, certificates, tangle and report of one point to a directory
    Export {
        #[command(flatten)]
        point: PointArgs,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args, Debug, Clone)]
pub struct PointArgs {
    #[arg(long, value_parser = parse_family)]
    pub family: Family,
    #[arg(long, allow_negative_numbers = true)]
    pub p: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    pub q: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    pub r: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    pub s: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    pub n: Option<i64>,
    #[arg(long = "K", allow_negative_numbers = true)]
    pub k: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    pub eps: Option<i64>,
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: berge_catalog::CatalogError| e.to_string())
}

impl PointArgs {
    pub fn params(&self) -> Result<FamilyParams, CliError> {
        let given = [self.p, self.q, self.r, self.s, self.n, self.k, self.eps];
        let pairs: Vec<(&str, i64)> =
            PARAM_NAMES.iter().zip(given).filter_map(|(&name, v)| v.map(|v| (name, v))).collect();
        Ok(FamilyParams::from_pairs(self.family, &pairs)?)
    }
}

/// 1 if any report is inconsistent, else 3 if no report resolved a lens
/// class by either route, else 0.
pub fn exit_code(reports: &[VerificationReport]) -> u8 {
    if reports.iter().any(|r| !r.consistent) {
        EXIT_INCONSISTENT
    } else if !reports.is_empty() && reports.iter().all(|r| r.surgery_lens().is_none() && r.tangle_lens.is_none()) {
        EXIT_UNRESOLVED
    } else {
        EXIT_OK
    }
}

fn write_out(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| CliError::Io(e.to_string())),
    }
}

fn list() -> String {
    let mut s = String::from("family  mirror  rho_lens  delta  source         params\n");
    for f in Family::ALL {
        let d = catalog().get(f);
        let (rho, delta) = (d.rho_lens.to_string(), d.delta.to_string());
        let _ = writeln!(
            s,
            "{:<6}  {:<6}  {rho:>8}  {delta:>5}  {:<13}  {}",
            f.name(),
            d.mirror,
            d.source,
            f.params().join(" ")
        );
    }
    s
}

fn describe(fp: &FamilyParams) -> Result<String, CliError> {
    let d = surgery_description(fp)?;
    let mut s = format!("{fp}\n");
    let coeffs: Vec<String> = d.coefficients.iter().enumerate().map(|(i, c)| format!("c{}={c}", i + 2)).collect();
    let _ = writeln!(s, "coefficients {}", coeffs.join(" "));
    let _ = writeln!(s, "knot {} rho_s3 {} rho_lens {}", d.knot, d.rho_s3, d.rho_lens);
    s.push_str(&format_diagram(&d.diagram));
    let _ = writeln!(s, "tangle {}", d.tangle);
    let _ = writeln!(s, "delta {}", d.delta);
    if !d.degenerate_flags.is_empty() {
        let _ = writeln!(s, "degenerate {}", d.degenerate_flags.join(" "));
    }
    Ok(s)
}

fn run_sweep(
    family: Option<Family>,
    ranges: &[String],
    budget: Option<usize>,
    jobs: Option<usize>,
    config: Option<&Path>,
    out: Option<&Path>,
) -> Result<u8, CliError> {
    let cfg = config.map(load_config).transpose()?.unwrap_or_default();
    let mut grid = Grid::default();
    for spec in cfg.ranges.iter().chain(ranges) {
        grid.set_spec(spec)?;
    }
    let budget = budget.or(cfg.budget).unwrap_or(DEFAULT_BUDGET);
    let jobs = jobs.or(cfg.jobs);
    if jobs == Some(0) {
        return Err(CliError::Usage("--jobs must be at least 1".into()));
    }
    let families: Vec<Family> = family.map_or(Family::ALL.to_vec(), |f| vec![f]);
    let mut lines = String::new();
    let mut all = Vec::new();
    eprintln!("{}", SweepSummary::HEADER);
    for f in families {
        let outcome = sweep(f, &grid, budget, jobs)?;
        eprintln!("{}", outcome.summary);
        for r in &outcome.reports {
            lines.push_str(&r.to_json_line());
            lines.push('\n');
        }
        all.extend(outcome.reports);
    }
    eprintln!("{}", SweepSummary::from_reports(None, &all));
    write_out(out, &lines)?;
    Ok(exit_code(&all))
}

fn run_replay(path: &Path) -> Result<u8, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    let cert = match RewriteCertificate::parse(&text) {
        Ok(c) => c,
        Err(e) => {
            println!("invalid: {e}");
            return Ok(EXIT_INCONSISTENT);
        }
    };
    match replay(&cert) {
        ReplayVerdict::Valid => {
            println!("valid: {} steps to {}", cert.steps.len(), cert.terminal);
            Ok(EXIT_OK)
        }
        ReplayVerdict::Invalid { step, reason } => {
            println!("invalid at step {step}: {reason}");
            Ok(EXIT_INCONSISTENT)
        }
    }
}

fn run_export(fp: &FamilyParams, budget: usize, dir: &Path) -> Result<u8, CliError> {
    let desc = surgery_description(fp)?;
    let report = verify_description(&desc, budget);
    fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
    let mut files = vec![
        ("chain.diagram", format_diagram(&desc.diagram)),
        ("tangle.txt", format!("{}\ndelta {}\n", desc.tangle, desc.delta)),
        ("report.json", report.to_json_line() + "\n"),
    ];
    if let Some(c) = &report.s3_certificate {
        files.push(("s3.cert", c.to_string()));
    }
    if let Some(c) = &report.lens_certificate {
        files.push(("lens.cert", c.to_string()));
    }
    for (name, body) in files {
        let path = dir.join(name);
        fs::write(&path, body).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        println!("{}", path.display());
    }
    Ok(exit_code(&[report]))
}

pub fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::List => {
            write_out(None, &list())?;
            Ok(EXIT_OK)
        }
        Command::Describe(point) => {
            write_out(None, &describe(&point.params()?)?)?;
            Ok(EXIT_OK)
        }
        Command::Verify { point, budget, out } => {
            let fp = point.params()?;
            let report = verify_description(&surgery_description(&fp)?, budget);
            write_out(out.as_deref(), &(report.to_json_line() + "\n"))?;
            Ok(exit_code(&[report]))
        }
        Command::Sweep { family, ranges, budget, jobs, config, out } => {
            run_sweep(family, &ranges, budget, jobs, config.as_deref(), out.as_deref())
        }
        Command::Replay { certificate } => run_replay(&certificate),
        Command::Export { point, budget, out } => run_export(&point.params()?, budget, &out),
    }
}

/// Parses `argv` and runs it, mapping every failure to an exit code.
pub fn main_with(argv: impl IntoIterator<Item = String>) -> u8 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("berge: {e}");
            EXIT_USAGE
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Result<Cli, clap::Error> {
        Cli::try_parse_from(std::iter::once("berge").chain(args.iter().copied()))
    }

    #[test]
    fn point_flags_map_to_params() {
        let cli = parse(&["verify", "--family", "III", "--p", "2", "--K", "1", "--eps", "+1"]).unwrap();
        let Command::Verify { point, budget, .. } = cli.command else { panic!("not verify") };
        assert_eq!(budget, DEFAULT_BUDGET);
        assert_eq!(point.params().unwrap().to_string(), "III p=2 K=1 eps=1");
        let cli = parse(&["describe", "--family", "I", "--p", "-3", "--q", "-2", "--r", "-5", "--s", "-3"]).unwrap();
        let Command::Describe(point) = cli.command else { panic!("not describe") };
        assert_eq!(point.params().unwrap().get("r"), Some(-5));
    }

    #[test]
    fn sweep_flags() {
        let cli =
            parse(&["sweep", "--family", "I", "--range", "p=-3..3", "--range", "q=-3..3", "--jobs", "2"]).unwrap();
        let Command::Sweep { family, ranges, jobs, .. } = cli.command else { panic!("not sweep") };
        assert_eq!(family, Some(Family::I));
        assert_eq!(ranges, vec!["p=-3..3", "q=-3..3"]);
        assert_eq!(jobs, Some(2));
    }

    #[test]
    fn malformed_input_is_rejected() {
        assert!(parse(&["verify", "--family", "VII"]).is_err());
        assert!(parse(&["verify", "--family", "I", "--bogus", "1"]).is_err());
        assert!(parse(&["verify", "--family", "I", "--p", "x"]).is_err());
        assert!(parse(&["frobnicate"]).is_err());
        // parses, but the point is incomplete
        let cli = parse(&["verify", "--family", "I"]).unwrap();
        let Command::Verify { point, .. } = cli.command else { panic!("not verify") };
        assert!(point.params().is_err());
    }

    #[test]
    fn exit_codes_follow_the_reports() {
        let fp = |f, pairs: &[(&str, i64)]| FamilyParams::from_pairs(f, pairs).unwrap();
        let point = [("p", -1), ("q", 3), ("r", -2), ("s", 5), ("n", 0)];
        let good = berge_catalog::verify(&fp(Family::VI, &point), 2_000).unwrap();
        let s1s2 = berge_catalog::verify(&fp(Family::I, &[("p", 1), ("q", 0), ("r", 0), ("s", 1)]), 2_000).unwrap();
        assert_eq!(exit_code(std::slice::from_ref(&good)), EXIT_OK);
        assert_eq!(exit_code(&[good.clone(), s1s2]), EXIT_INCONSISTENT);
        let mut blind = good;
        blind.lens_certificate = None;
        blind.tangle_lens = None;
        assert_eq!(exit_code(&[blind]), EXIT_UNRESOLVED);
        assert_eq!(exit_code(&[]), EXIT_OK);
    }
}
