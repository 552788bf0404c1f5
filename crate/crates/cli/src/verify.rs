//! Seeded verification runs over an (identity, m, n, trial) grid.

use std::time::{Duration, Instant};

use minorsum::{IdentityId, IdentityReport};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::{ConfigError, VerifyConfig};
use crate::trial::{applicable, generate, trial_rng};

#[derive(Debug, Clone, Serialize)]
pub struct ShapeSummary {
    pub m: usize,
    pub n: usize,
    pub trials: u64,
    pub passed: u64,
    pub failed: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentitySummary {
    pub identity: &'static str,
    pub trials: u64,
    pub passed: u64,
    pub failed: u64,
    pub shapes: Vec<ShapeSummary>,
}

/// A failing trial with everything needed to replay it.
#[derive(Debug, Clone, Serialize)]
pub struct Failure {
    pub identity: &'static str,
    pub m: usize,
    pub n: usize,
    pub trial: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<IdentityReport>,
    pub inputs: Value,
}

#[derive(Debug, Clone, Copy, Default, Serialize, PartialEq, Eq)]
pub struct Totals {
    pub trials: u64,
    pub passed: u64,
    pub failed: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub config: VerifyConfig,
    pub identities: Vec<IdentitySummary>,
    pub failures: Vec<Failure>,
    pub totals: Totals,
    #[serde(skip)]
    pub wall_time: Duration,
}

impl RunReport {
    pub fn is_success(&self) -> bool {
        self.totals.failed == 0
    }

    /// One line per failure, one per identity, then the run summary. Wall
    /// time is left out so equal configs give byte-identical output.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        let mut push = |v: Value| {
            out.push_str(&serde_json::to_string(&v).expect("report serialises"));
            out.push('\n');
        };
        for f in &self.failures {
            let mut v = serde_json::to_value(f).expect("failure serialises");
            v.as_object_mut()
                .expect("object")
                .insert("kind".into(), json!("failure"));
            push(v);
        }
        for s in &self.identities {
            let mut v = serde_json::to_value(s).expect("summary serialises");
            v.as_object_mut()
                .expect("object")
                .insert("kind".into(), json!("identity"));
            push(v);
        }
        push(json!({
            "kind": "summary",
            "config": self.config,
            "totals": self.totals,
            "pass": self.is_success(),
        }));
        out
    }
}

struct Cell {
    id: IdentityId,
    m: usize,
    n: usize,
    trial: u32,
}

fn run_cell(cfg: &VerifyConfig, cell: &Cell) -> Option<Failure> {
    let mut rng = trial_rng(cfg.seed, cell.id, cell.m, cell.n, cell.trial);
    let input = generate(cell.id, cell.m, cell.n, cell.trial, cfg.ring, cfg.bound, &mut rng);
    let (error, report) = match input.run(cell.id) {
        Ok(r) if r.pass => return None,
        Ok(r) => (None, Some(r)),
        Err(e) => (Some(e.to_string()), None),
    };
    Some(Failure {
        identity: cell.id.as_str(),
        m: cell.m,
        n: cell.n,
        trial: cell.trial,
        error,
        report,
        inputs: input.to_json(),
    })
}

/// Runs every applicable cell on `workers` threads (0 = rayon default).
/// Results are assembled in (identity, m, n, trial) order.
pub fn run_verify(cfg: &VerifyConfig, workers: usize) -> Result<RunReport, ConfigError> {
    cfg.validate()?;
    let started = Instant::now();
    let mut cells = Vec::new();
    for &id in &cfg.identities {
        for m in cfg.m.iter() {
            for n in cfg.n.iter().filter(|&n| applicable(id, m, n)) {
                cells.extend((0..cfg.trials).map(|trial| Cell { id, m, n, trial }));
            }
        }
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .expect("thread pool");
    let outcomes: Vec<Option<Failure>> = pool.install(|| cells.par_iter().map(|c| run_cell(cfg, c)).collect());

    let mut identities: Vec<IdentitySummary> = Vec::new();
    let mut totals = Totals::default();
    for id in &cfg.identities {
        identities.push(IdentitySummary {
            identity: id.as_str(),
            trials: 0,
            passed: 0,
            failed: 0,
            shapes: Vec::new(),
        });
    }
    let mut failures = Vec::new();
    for (cell, outcome) in cells.iter().zip(outcomes) {
        let summary = identities
            .iter_mut()
            .find(|s| s.identity == cell.id.as_str())
            .expect("summary per identity");
        if summary.shapes.last().is_none_or(|s| (s.m, s.n) != (cell.m, cell.n)) {
            summary.shapes.push(ShapeSummary {
                m: cell.m,
                n: cell.n,
                trials: 0,
                passed: 0,
                failed: 0,
            });
        }
        let shape = summary.shapes.last_mut().expect("pushed above");
        shape.trials += 1;
        summary.trials += 1;
        totals.trials += 1;
        match outcome {
            None => {
                shape.passed += 1;
                summary.passed += 1;
                totals.passed += 1;
            }
            Some(f) => {
                shape.failed += 1;
                summary.failed += 1;
                totals.failed += 1;
                failures.push(f);
            }
        }
    }
    Ok(RunReport {
        config: cfg.clone(),
        identities,
        failures,
        totals,
        wall_time: started.elapsed(),
    })
}
