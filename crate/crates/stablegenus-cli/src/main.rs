//! Command-line front end: signature step functions, stable-genus bounds,
//! unit balls, branched-cover certificates, subadditive tables, and golden
//! reproduction targets.
//!
//! Exit codes: 0 success, 1 usage/input error, 2 computation error,
//! 3 reproduction mismatch.

mod output;
mod reproduce;
mod steps;

use clap::{Parser, Subcommand, ValueEnum};
use stablegenus_core::cg::{certify, construct_j, SearchSpace, Verdict};
use stablegenus_core::fekete::{audit_subadditive, fekete_n0, fekete_upper, SubadditiveTable};
use stablegenus_core::knot::{parse_basis_knot, parse_expr, BasisKnot};
use stablegenus_core::ratio::{format_q, parse_q, Q};
use stablegenus_core::stable::{
    default_registry, g_st_interval, load_registry, unit_ball, Category, Fact,
};
use stablegenus_core::Error;
use std::path::PathBuf;

#[derive(Parser)]
#[command(name = "stablegenus", version, about = "Exact bounds for the stable 4-genus seminorm")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum CategoryArg {
    Smooth,
    Topological,
}

impl From<CategoryArg> for Category {
    fn from(c: CategoryArg) -> Category {
        match c {
            CategoryArg::Smooth => Category::Smooth,
            CategoryArg::Topological => Category::Topological,
        }
    }
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum Format {
    Json,
    Csv,
    Svg,
}

#[derive(Subcommand)]
enum Command {
    /// Signature step function of a knot expression
    Sig {
        expr: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Lower/upper bounds for the stable genus of an expression
    Bounds {
        expr: String,
        #[arg(long, value_enum, default_value = "topological")]
        category: CategoryArg,
        #[arg(long)]
        facts: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Outer and inner unit-ball approximations on a comma-separated basis
    Ball {
        basis: String,
        #[arg(long, value_enum, default_value = "topological")]
        category: CategoryArg,
        #[arg(long)]
        facts: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Branched-cover certificate for stable genus near 1/2
    CgCertify {
        #[arg(long)]
        eps: String,
        /// companion expression; searched for when omitted
        #[arg(long = "J")]
        j: Option<String>,
        #[arg(long, default_value_t = 15)]
        max_k: i64,
        #[arg(long, default_value_t = 5)]
        max_multiplicity: i64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Fekete bounds for a subadditive table file (lines of "n,value")
    Fekete {
        table: PathBuf,
        /// with --eps, also report the n0 threshold
        #[arg(long)]
        eps: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Regenerate a golden artifact and compare against embedded data
    Reproduce {
        /// one of: figure-1, figure-3, figure-4, table-4d
        target: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            let code = if e.use_stderr() { 1 } else { 0 };
            std::process::exit(code);
        }
    };
    let code = match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e);
            match e {
                Error::Parse { .. }
                | Error::UnknownKnot(_)
                | Error::NotCoprime(..)
                | Error::TorusRange(..)
                | Error::Invalid(_) => 1,
                _ => 2,
            }
        }
    };
    std::process::exit(code);
}

fn load_facts(path: &Option<PathBuf>) -> Result<Vec<Fact>, Error> {
    match path {
        None => Ok(default_registry()),
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| Error::Invalid(format!("cannot read {}: {}", p.display(), e)))?;
            load_registry(&text)
        }
    }
}

fn parse_basis_list(text: &str) -> Result<Vec<BasisKnot>, Error> {
    // commas inside T(p,q) do not separate entries
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                parts.push(&text[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&text[start..]);
    parts.iter().map(|p| parse_basis_knot(p)).collect()
}

fn parse_rational(text: &str, what: &str) -> Result<Q, Error> {
    parse_q(text.trim()).ok_or_else(|| Error::Invalid(format!("invalid {}: {:?}", what, text)))
}

fn dispatch(cli: Cli) -> Result<i32, Error> {
    match cli.command {
        Command::Sig { expr, format, out } => {
            let e = parse_expr(&expr)?;
            let pieces = steps::step_pieces(&e)?;
            let text = match format {
                Format::Csv => steps::to_csv(&pieces),
                Format::Svg => steps::to_svg(&e, &pieces),
                Format::Json => steps::to_json(&e, &pieces).to_string(),
            };
            output::emit(&text, &out)?;
            Ok(0)
        }
        Command::Bounds { expr, category, facts, out } => {
            let e = parse_expr(&expr)?;
            let registry = load_facts(&facts)?;
            let report = g_st_interval(&e, category.into(), &registry)?;
            let mut json = report.to_json();
            json["schema"] = serde_json::json!("stablegenus/1");
            output::emit(&json.to_string(), &out)?;
            Ok(0)
        }
        Command::Ball { basis, category, facts, out } => {
            let basis = parse_basis_list(&basis)?;
            let registry = load_facts(&facts)?;
            let report = unit_ball(&basis, category.into(), &registry)?;
            let mut json = report.to_json();
            json["schema"] = serde_json::json!("stablegenus/1");
            json["functionals"] = serde_json::json!(report
                .functionals
                .iter()
                .map(|f| serde_json::json!({
                    "label": f.label,
                    "coefficients": f.coefficients.iter().map(format_q).collect::<Vec<_>>(),
                }))
                .collect::<Vec<_>>());
            output::emit(&json.to_string(), &out)?;
            Ok(0)
        }
        Command::CgCertify { eps, j, max_k, max_multiplicity, out } => {
            let eps = parse_rational(&eps, "eps")?;
            let companion = match j {
                Some(text) => parse_expr(&text)?,
                None => construct_j(&eps, SearchSpace { max_k, max_multiplicity })?,
            };
            let cert = certify(&eps, &companion)?;
            let mut json = cert.to_json();
            json["schema"] = serde_json::json!("stablegenus/1");
            output::emit(&json.to_string(), &out)?;
            Ok(if cert.verdict == Verdict::Valid { 0 } else { 2 })
        }
        Command::Fekete { table, eps, out } => {
            let text = std::fs::read_to_string(&table)
                .map_err(|e| Error::Invalid(format!("cannot read {}: {}", table.display(), e)))?;
            let mut t = SubadditiveTable::new();
            for (lineno, line) in text.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let (n, v) = line.split_once(',').ok_or_else(|| {
                    Error::Invalid(format!("line {}: expected \"n,value\"", lineno + 1))
                })?;
                let n: u64 = n.trim().parse().map_err(|_| {
                    Error::Invalid(format!("line {}: bad index {:?}", lineno + 1, n))
                })?;
                t.insert(n, parse_rational(v, "table value")?)?;
            }
            let upper = fekete_upper(&t)?;
            let violations = audit_subadditive(&t);
            let mut json = serde_json::json!({
                "schema": "stablegenus/1",
                "upper": format_q(&upper),
                "violations": violations.len(),
            });
            if let Some(eps) = eps {
                let eps = parse_rational(&eps, "eps")?;
                // N: first index within eps/2 of the bound; B: max below it
                let cap_n = t
                    .iter()
                    .find(|(n, v)| {
                        *v / Q::from_integer((**n).into()) <= &upper + &eps / Q::from_integer(2.into())
                    })
                    .map(|(n, _)| *n)
                    .ok_or_else(|| Error::Invalid("no index reaches the bound".into()))?;
                let bound_b = t
                    .iter()
                    .filter(|(n, _)| **n <= cap_n)
                    .map(|(_, v)| v.clone())
                    .max()
                    .expect("table is nonempty");
                let n0 = fekete_n0(cap_n, &bound_b, &eps)?;
                json["n0"] = serde_json::json!(n0.to_string());
                json["eps"] = serde_json::json!(format_q(&eps));
            }
            output::emit(&json.to_string(), &out)?;
            Ok(if violations.is_empty() { 0 } else { 2 })
        }
        Command::Reproduce { target, out } => reproduce::run(&target, &out),
    }
}
