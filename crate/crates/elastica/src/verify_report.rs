//! JSON view of the verification suite.

use elastica_core::verify::{self, CheckRecord, Measure, SuiteConfig};
use serde::Serialize;

use crate::error::AppResult;

#[derive(Debug, Clone, Serialize)]
pub struct Record {
    pub check: String,
    pub family: String,
    /// residual, order_n or order_h.
    pub measure: &'static str,
    pub n: usize,
    pub h: f64,
    pub value: f64,
    pub lo: f64,
    pub hi: f64,
    pub pass: bool,
}

impl From<&CheckRecord> for Record {
    fn from(r: &CheckRecord) -> Self {
        Record {
            check: r.check.clone(),
            family: r.family.clone(),
            measure: match r.measure {
                Measure::Residual => "residual",
                Measure::OrderN => "order_n",
                Measure::OrderH => "order_h",
            },
            n: r.n,
            h: r.h,
            value: r.value,
            lo: r.lo,
            hi: r.hi,
            pass: r.pass,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub n: usize,
    pub h: f64,
    pub seed: u64,
    pub passed: usize,
    pub failed: usize,
    pub records: Vec<Record>,
}

pub fn run(cfg: &SuiteConfig) -> AppResult<VerifyReport> {
    let recs: Vec<Record> = verify::run_suite(cfg)?.iter().map(Record::from).collect();
    let failed = recs.iter().filter(|r| !r.pass).count();
    Ok(VerifyReport { n: cfg.n, h: cfg.h, seed: cfg.seed, passed: recs.len() - failed, failed, records: recs })
}
