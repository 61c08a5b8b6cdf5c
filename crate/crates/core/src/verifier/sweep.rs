use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{verify_case, Status, TheoremCase, VerificationReport};
use crate::characters::{primitive_characters, DirichletCharacter};
use crate::error::{Error, Result};

const MAX_MODULUS: u64 = 200;
const MAX_DIM: usize = 4;
const MIN_M: i64 = -20;

/// Batch configuration. Range fields generate the product of all
/// multisets of primitive constituents (conductor ≤ `rho_modulus_max`,
/// size ≤ `dim_max`), even primitive twists (conductor ≤
/// `twist_modulus_max`) and `m_list`; `case` entries are appended.
#[derive(Clone, Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    #[serde(default)]
    pub rho_modulus_max: u64,
    #[serde(default)]
    pub twist_modulus_max: u64,
    #[serde(default)]
    pub m_list: Vec<i64>,
    #[serde(default = "one")]
    pub dim_max: usize,
    #[serde(default, rename = "case")]
    pub cases: Vec<CaseSpec>,
}

fn one() -> usize {
    1
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct CaseSpec {
    pub rho: Vec<String>,
    pub twist: String,
    pub m: i64,
}

#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct SweepSummary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub degenerate: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub config: SweepConfig,
    pub summary: SweepSummary,
    pub reports: Vec<VerificationReport>,
}

impl SweepReport {
    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }
}

impl SweepConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let config: SweepConfig = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    fn validate(&self) -> Result<()> {
        if self.rho_modulus_max > MAX_MODULUS || self.twist_modulus_max > MAX_MODULUS {
            return Err(Error::Parse(format!(
                "moduli above {MAX_MODULUS} are not supported"
            )));
        }
        if self.dim_max == 0 || self.dim_max > MAX_DIM {
            return Err(Error::Parse(format!("dim_max must lie in 1..={MAX_DIM}")));
        }
        let ms = self.m_list.iter().chain(self.cases.iter().map(|c| &c.m));
        for &m in ms {
            if !(MIN_M..0).contains(&m) {
                return Err(Error::Parse(format!("m = {m} outside {MIN_M}..=-1")));
            }
        }
        Ok(())
    }

    /// Cases in deterministic order: ranges first (dimension, constituents,
    /// twist, m), then explicit entries.
    pub fn cases(&self) -> Result<Vec<TheoremCase>> {
        let mut out = Vec::new();
        if self.rho_modulus_max > 0 && self.twist_modulus_max > 0 && !self.m_list.is_empty() {
            let pool: Vec<String> = primitive_characters(self.rho_modulus_max)
                .iter()
                .map(DirichletCharacter::label)
                .collect();
            let twists: Vec<String> = primitive_characters(self.twist_modulus_max)
                .into_iter()
                .filter(DirichletCharacter::is_even)
                .map(|c| c.label())
                .collect();
            for dim in 1..=self.dim_max {
                for rho in multisets(&pool, dim) {
                    for twist in &twists {
                        for &m in &self.m_list {
                            out.push(TheoremCase::new(&rho, twist, m)?);
                        }
                    }
                }
            }
        }
        for c in &self.cases {
            out.push(
                TheoremCase::new(&c.rho, &c.twist, c.m).map_err(|e| Error::Parse(e.to_string()))?,
            );
        }
        Ok(out)
    }
}

/// Size-k multisets of `pool`, as nondecreasing index sequences.
fn multisets(pool: &[String], k: usize) -> Vec<Vec<String>> {
    let mut out = Vec::new();
    let mut idx = vec![0usize; k];
    if pool.is_empty() {
        return out;
    }
    loop {
        out.push(idx.iter().map(|&i| pool[i].clone()).collect());
        let Some(pos) = (0..k).rev().find(|&p| idx[p] + 1 < pool.len()) else {
            return out;
        };
        idx[pos] += 1;
        for p in pos + 1..k {
            idx[p] = idx[pos];
        }
    }
}

pub fn run_sweep(config: &SweepConfig) -> Result<SweepReport> {
    config.validate()?;
    let cases = config.cases()?;
    let reports: Vec<VerificationReport> = cases.par_iter().map(verify_case).collect();
    let mut summary = SweepSummary {
        total: reports.len(),
        ..Default::default()
    };
    for r in &reports {
        match r.status {
            Status::Pass => summary.passed += 1,
            Status::Fail => summary.failed += 1,
            Status::Skipped => summary.skipped += 1,
            Status::Degenerate => summary.degenerate += 1,
        }
    }
    Ok(SweepReport {
        config: config.clone(),
        summary,
        reports,
    })
}

pub fn run_sweep_file(path: &Path) -> Result<SweepReport> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    run_sweep(&SweepConfig::parse(&text)?)
}
