//! Machine-readable run reports (TOML). `parse_report(emit_report(r)) == r`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracle::{CostLedger, OracleKind};
use crate::pipeline::{PipelineConfig, PipelineResult, StageStats};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceInfo {
    pub n: usize,
    pub m: usize,
    pub oracle: OracleKind,
    pub s: u32,
    pub t: u32,
}

/// The configuration a run actually used, defaults included.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub eps_override: Option<f64>,
    pub c_t: f64,
    pub retries: u32,
    pub c_rho: f64,
    pub c_size: f64,
    pub c_w: f64,
    pub c_dh: f64,
    pub seed: u64,
}

impl From<&PipelineConfig> for ConfigEcho {
    fn from(c: &PipelineConfig) -> Self {
        ConfigEcho {
            eps_override: c.eps_override,
            c_t: c.c_t,
            retries: c.retries,
            c_rho: c.sparsify.c_rho,
            c_size: c.sparsify.c_size,
            c_w: c.sparsify.c_w,
            c_dh: c.c_dh,
            seed: c.seed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultInfo {
    pub lambda: u64,
    /// Shore containing s, ascending vertex ids (0-based).
    pub shore: Vec<u32>,
    /// Set when the run was cross-checked against the exhaustive solver.
    pub verified: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub format_version: u32,
    pub instance: InstanceInfo,
    pub config: ConfigEcho,
    pub result: ResultInfo,
    pub stages: StageStats,
    pub ledger: CostLedger,
    pub wall_time_ms: u64,
}

impl RunReport {
    pub fn new(
        instance: InstanceInfo,
        config: &PipelineConfig,
        run: &PipelineResult,
        verified: Option<bool>,
        wall_time_ms: u64,
    ) -> Self {
        RunReport {
            format_version: FORMAT_VERSION,
            instance,
            config: config.into(),
            result: ResultInfo {
                lambda: run.lambda,
                shore: run.shore.vertices(),
                verified,
            },
            stages: run.stats.clone(),
            ledger: run.ledger.clone(),
            wall_time_ms,
        }
    }
}

pub fn emit_report(report: &RunReport) -> Result<String> {
    toml::to_string_pretty(report).map_err(|e| Error::Parameter(format!("report emit: {e}")))
}

pub fn parse_report(text: &str) -> Result<RunReport> {
    let report: RunReport =
        toml::from_str(text).map_err(|e| Error::Parse {
            line: 0,
            msg: format!("report: {e}"),
        })?;
    if report.format_version != FORMAT_VERSION {
        return Err(Error::Parse {
            line: 0,
            msg: format!(
                "unsupported report format version {}",
                report.format_version
            ),
        });
    }
    Ok(report)
}
