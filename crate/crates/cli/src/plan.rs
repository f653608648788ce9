//! Argument lists and the serialized experiment plan.

use std::fmt;
use std::path::Path;

use eca_core::rule::class_representatives;
use eca_core::{Budget, Constraints, Family};
use serde::Serialize;

/// Failures detected by the harness itself, before the library is involved.
#[derive(Debug)]
pub enum Failure {
    /// Malformed text on the command line (rule list, range, literal).
    Parse(String),
    /// Well-formed but unusable plan.
    Plan(String),
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Parse(m) => write!(f, "parse error: {m}"),
            Failure::Plan(m) => write!(f, "invalid plan: {m}"),
        }
    }
}

impl std::error::Error for Failure {}

fn number(text: &str) -> Result<usize, Failure> {
    text.trim().parse().map_err(|_| Failure::Parse(format!("expected a number, got {text:?}")))
}

/// Comma-separated items, each a number or an inclusive range `a..b`.
pub fn parse_list(text: &str) -> Result<Vec<usize>, Failure> {
    let mut out = Vec::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        match item.split_once("..") {
            Some((a, b)) => {
                let (a, b) = (number(a)?, number(b.trim_start_matches('='))?);
                if a > b {
                    return Err(Failure::Parse(format!("empty range {item:?}")));
                }
                out.extend(a..=b);
            }
            None => out.push(number(item)?),
        }
    }
    if out.is_empty() {
        return Err(Failure::Parse(format!("empty list {text:?}")));
    }
    Ok(out)
}

/// Rule codes: numbers, ranges, `all` or `all-88-reps`.
pub fn parse_rules(text: &str) -> Result<Vec<u8>, Failure> {
    let mut out = Vec::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        match item {
            "all-88-reps" => out.extend(class_representatives().into_iter().map(|r| r.code())),
            "all" => out.extend(0..=255u8),
            _ => {
                for code in parse_list(item)? {
                    let code = u8::try_from(code).map_err(|_| Failure::Parse(format!("rule {code} is not in 0..=255")))?;
                    out.push(code);
                }
            }
        }
    }
    let mut seen = [false; 256];
    out.retain(|&r| !std::mem::replace(&mut seen[r as usize], true));
    if out.is_empty() {
        return Err(Failure::Parse(format!("empty rule list {text:?}")));
    }
    Ok(out)
}

pub fn parse_families(text: &str) -> Result<Vec<Family>, Failure> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|f| match f {
            "all" => Ok(Family::SAMPLED.to_vec()),
            _ => f.parse::<Family>().map(|f| vec![f]).map_err(|e| Failure::Parse(e.to_string())),
        })
        .collect::<Result<Vec<_>, _>>()
        .map(|v| v.concat())
}

/// Everything needed to regenerate an output directory bit for bit.
#[derive(Debug, Serialize)]
pub struct ExperimentPlan {
    pub command: String,
    pub rules: Vec<u8>,
    pub families: Vec<Family>,
    pub constraints: Constraints,
    pub n: Vec<usize>,
    pub modes: Option<usize>,
    pub mode_file: Option<String>,
    pub s: Option<usize>,
    pub m: Option<usize>,
    pub steps: Option<usize>,
    pub exhaustive: bool,
    pub seed: u64,
    pub budget: Budget,
}

impl ExperimentPlan {
    pub fn write(&self, dir: &Path) -> anyhow::Result<()> {
        std::fs::create_dir_all(dir)?;
        std::fs::write(dir.join("plan.json"), serde_json::to_string_pretty(self)? + "\n")?;
        Ok(())
    }
}
