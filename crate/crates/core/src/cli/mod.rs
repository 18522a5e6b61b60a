//! Run configuration, suite orchestration and the JSON report.

mod report;
mod suites;

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use crate::combinatorics::enumerate_gt_patterns;
use crate::error::{Error, Result};
use crate::exactalg::mp::Precision;
use crate::yangian::ChainSpec;

pub use report::{CheckRecord, SpectralReport, Status, SuiteReport, SCHEMA};
pub use suites::Context;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Suite {
    #[serde(rename = "yangian")]
    Yangian,
    #[serde(rename = "gt")]
    Gt,
    #[serde(rename = "bop")]
    Bop,
    #[serde(rename = "sov")]
    Sov,
    #[serde(rename = "bethe")]
    Bethe,
    #[serde(rename = "appendixA")]
    AppendixA,
    #[serde(rename = "appendixB")]
    AppendixB,
}

impl Suite {
    /// Dependency order: yangian → gt → bop/sov → bethe, then the appendices.
    pub const ALL: [Suite; 7] = [Suite::Yangian, Suite::Gt, Suite::Bop, Suite::Sov, Suite::Bethe, Suite::AppendixA, Suite::AppendixB];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Yangian => "yangian",
            Suite::Gt => "gt",
            Suite::Bop => "bop",
            Suite::Sov => "sov",
            Suite::Bethe => "bethe",
            Suite::AppendixA => "appendixA",
            Suite::AppendixB => "appendixB",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| Error::Config(format!("unknown suite {s:?} (known: yangian, gt, bop, sov, bethe, appendixA, appendixB)")))
    }
}

const RUN_KEYS: [&str; 5] = ["preset", "suites", "precision", "seed", "out"];
const CHAIN_KEYS: [&str; 6] = ["n", "nu", "theta", "hbar", "z", "w"];

#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub chain: ChainSpec,
    /// Enabled suites, deduplicated and in dependency order.
    pub suites: Vec<Suite>,
    pub precision: u32,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(chain: ChainSpec) -> Self {
        Self { chain, suites: Suite::ALL.to_vec(), precision: Precision::DEFAULT_DIGITS, seed: 0, out: None }
    }

    /// Parses the JSON config: chain fields at the top level (rationals as
    /// `"p/q"` strings), or `"preset": "t0" | "t1" | …` instead of them, plus
    /// the optional run fields.
    pub fn from_json(s: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(s)?;
        let obj = v.as_object().ok_or_else(|| Error::Config("config must be a JSON object".into()))?;
        if let Some(k) = obj.keys().find(|k| !RUN_KEYS.contains(&k.as_str()) && !CHAIN_KEYS.contains(&k.as_str())) {
            return Err(Error::Config(format!("unknown config key {k:?}")));
        }
        let chain_part: serde_json::Map<String, Value> = obj.iter().filter(|(k, _)| CHAIN_KEYS.contains(&k.as_str())).map(|(k, v)| (k.clone(), v.clone())).collect();
        let chain = match obj.get("preset") {
            Some(p) => {
                if !chain_part.is_empty() {
                    return Err(Error::Config("give either a preset or explicit chain fields, not both".into()));
                }
                ChainSpec::preset(p.as_str().ok_or_else(|| Error::Config("preset must be a string".into()))?)?
            }
            None => ChainSpec::from_json(&Value::Object(chain_part).to_string())?,
        };
        let mut cfg = Self::new(chain);
        if let Some(list) = obj.get("suites") {
            let arr = list.as_array().ok_or_else(|| Error::Config("suites must be an array of names".into()))?;
            let names: Vec<Suite> = arr.iter().map(|x| x.as_str().ok_or_else(|| Error::Config("suite names must be strings".into())).and_then(Suite::from_str)).collect::<Result<_>>()?;
            cfg.set_suites(&names);
        }
        if let Some(p) = obj.get("precision") {
            cfg.precision = p.as_u64().and_then(|d| u32::try_from(d).ok()).ok_or_else(|| Error::Config("precision must be a positive integer".into()))?;
        }
        if let Some(x) = obj.get("seed") {
            cfg.seed = x.as_u64().ok_or_else(|| Error::Config("seed must be a non-negative integer".into()))?;
        }
        if let Some(o) = obj.get("out") {
            cfg.out = Some(PathBuf::from(o.as_str().ok_or_else(|| Error::Config("out must be a path string".into()))?));
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn set_suites(&mut self, names: &[Suite]) {
        let mut s = names.to_vec();
        s.sort();
        s.dedup();
        self.suites = s;
    }

    /// Re-checks the genericness preconditions the enabled suites rely on.
    pub fn validate(&self) -> Result<()> {
        self.chain.validate()?;
        if self.suites.is_empty() {
            return Err(Error::Config("no suites enabled".into()));
        }
        if self.suites.contains(&Suite::Bethe) {
            self.chain.check_distinct_z()?;
            if self.precision < Precision::MIN_DIGITS {
                return Err(Error::PrecisionTooLow { digits: self.precision, needed: Precision::MIN_DIGITS });
            }
        }
        Ok(())
    }
}

/// Runs every enabled suite. Suites share lazily built artifacts and run in
/// parallel on the current rayon pool; the report lists them in dependency order.
pub fn run(cfg: &RunConfig) -> Result<SpectralReport> {
    cfg.validate()?;
    let ctx = Context::new(cfg)?;
    let started = Instant::now();
    let suites: Vec<SuiteReport> = cfg.suites.par_iter().map(|&s| suites::run_suite(&ctx, s)).collect();
    Ok(SpectralReport::new(cfg, suites, started.elapsed().as_secs_f64()))
}

/// Dimension, per-site pattern counts, `B` degree and rough suite costs.
pub fn describe(cfg: &RunConfig) -> Result<String> {
    use std::fmt::Write;
    let spec = &cfg.chain;
    let dim = spec.hilbert_dim();
    let mut s = String::new();
    let _ = writeln!(s, "gl({}) chain with {} site(s), hbar = {}", spec.n, spec.l(), crate::exactalg::rational::rat_to_string(&spec.hbar));
    let _ = writeln!(s, "Hilbert dimension: {dim}");
    for (a, nu) in spec.nu.iter().enumerate() {
        let _ = writeln!(s, "  site {}: nu = {nu:?}, {} GT patterns", a + 1, enumerate_gt_patterns(nu)?.len());
    }
    let _ = writeln!(s, "B-operator degree: {}", spec.b_degree());
    let _ = writeln!(s, "predicted suite costs:");
    let d3 = (dim as f64).powi(3);
    for suite in &cfg.suites {
        let line = match suite {
            Suite::Yangian => format!("exact RTT at 9 point pairs; {} transfer-matrix commutators of size {dim}", pairs_of_diagrams(spec.n)),
            Suite::Gt => format!("{dim} exact covectors, GT spectrum check ~{:.1e} rational ops", d3),
            Suite::Bop => format!("B of degree {} on {dim} covectors", spec.b_degree()),
            Suite::Sov => format!("{dim} exact B-eigencovectors, rank ~{:.1e} rational ops, ASTL rebuilds twice", d3),
            Suite::Bethe => format!("dense eigenproblem of size {dim} at {} digits (~{:.1e} multiprecision ops), {} Baxter solves", cfg.precision, 10.0 * d3, dim * spec.n),
            Suite::AppendixA => format!("exact ranks of {} special-point transfer matrices", spec.l() * crate::yangian::checks::nonempty_diagrams(4, spec.n).len()),
            Suite::AppendixB => format!("momentum commutators on {dim} covectors"),
        };
        let _ = writeln!(s, "  {suite}: {line}");
    }
    Ok(s)
}

fn pairs_of_diagrams(n: usize) -> usize {
    let k = crate::yangian::checks::nonempty_diagrams(3, n).len();
    9 * k * (k + 1) / 2
}

#[cfg(test)]
mod tests;
