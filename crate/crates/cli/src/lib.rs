//! Verification harness and one-shot evaluators on top of `minorsum`.

pub mod config;
pub mod trial;
pub mod verify;

use anyhow::{bail, Context, Result};
use minorsum::combinat::Partition;
use minorsum::identities::{f_ab, g_ab, minor_sum};
use minorsum::paths::{count_free, FreeCount, PathProblemFile};
use minorsum::symfun::{skew_schur, VarBlock};
use minorsum::{Matrix, Scalar};

pub use config::{RingChoice, Span, VerifyConfig};
pub use verify::{run_verify, RunReport};

/// Quantity computed by `eval`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalOp {
    Pf,
    Det,
    MinorSum,
    F,
    G,
}

impl EvalOp {
    pub fn arity(self) -> usize {
        match self {
            EvalOp::F | EvalOp::G => 3,
            _ => 1,
        }
    }
}

/// Parses matrix files given as `(label, text)` pairs and evaluates `op`;
/// `f` and `g` take `A`, `B`, `X` in that order.
pub fn eval(op: EvalOp, inputs: &[(String, String)]) -> Result<Scalar> {
    if inputs.len() != op.arity() {
        bail!("expected {} matrix file(s), got {}", op.arity(), inputs.len());
    }
    let mats = inputs
        .iter()
        .map(|(label, text)| Matrix::from_json(text).with_context(|| format!("{label}: invalid matrix file")))
        .collect::<Result<Vec<_>>>()?;
    let value = match op {
        EvalOp::Pf => mats[0].pfaffian()?,
        EvalOp::Det => mats[0].det()?,
        EvalOp::MinorSum => minor_sum(&mats[0])?,
        EvalOp::F => f_ab(&mats[0], &mats[1], &mats[2])?,
        EvalOp::G => g_ab(&mats[0], &mats[1], &mats[2])?,
    };
    Ok(value)
}

/// Free-endpoint path count for a JSON problem.
pub fn paths(text: &str) -> Result<FreeCount> {
    let file: PathProblemFile = serde_json::from_str(text).context("invalid path problem")?;
    Ok(count_free(&file.into_problem()?)?)
}

/// Comma-separated parts, e.g. `3,1,1`; empty text is the empty partition.
pub fn parse_partition(text: &str) -> Result<Partition> {
    let parts = text
        .split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| {
            p.parse::<usize>()
                .with_context(|| format!("bad part {p:?} in {text:?}"))
        })
        .collect::<Result<Vec<_>>>()?;
    Partition::new(parts).with_context(|| format!("{text:?} is not non-increasing"))
}

/// `s_{λ/μ}(x1, ..., x{vars})`.
pub fn schur(lambda: &str, mu: &str, vars: usize) -> Result<Scalar> {
    if vars == 0 {
        bail!("need at least one variable");
    }
    let block = VarBlock::standalone("x", vars)?;
    Ok(skew_schur(&parse_partition(lambda)?, &parse_partition(mu)?, &block)?)
}
