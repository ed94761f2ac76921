//! Error type shared by all solver modules.

use crate::forms::BQForm;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is a perfect square; the equation has no nontrivial solution")]
    PerfectSquare(u64),

    #[error("expansion of sqrt({radicand}) did not close within {budget} steps")]
    StepBudgetExceeded { radicand: u64, budget: usize },

    #[error("convergent index {index} needs {needed} quotients but only {available} are expanded")]
    IndexBeyondExpansion {
        index: usize,
        needed: usize,
        available: usize,
    },

    #[error("reduction reached the ultimate form {0}")]
    UltimateFormReached(BQForm),

    #[error("no distinctive form found for {radicand} within {steps} reduction steps")]
    Unclassifiable { radicand: u64, steps: usize },

    #[error("condition violated: {0}")]
    ConditionViolated(String),

    #[error("{radicand} admits no representation of the requested kind")]
    NotRepresentable { radicand: u64 },

    #[error("shifted radicand {0} is a perfect square; skipped")]
    SquareTarget(String),

    #[error("shifted factor is not positive: {0}")]
    NonPositiveFactor(String),

    #[error("parity violation: {0} is odd and cannot be halved exactly")]
    ParityViolation(String),

    #[error("cannot compose solutions for different radicands ({0} vs {1})")]
    MixedRadicand(u64, u64),

    #[error("unknown family id `{0}`")]
    UnknownFamily(String),

    #[error("method mismatch at A = {radicand}: {detail}")]
    MismatchDetected { radicand: u64, detail: String },

    #[error("interval {lo}..{hi} (k = {k}) is not fully covered by the table")]
    IncompleteInterval { k: u64, lo: u64, hi: u64 },

    #[error("empty or invalid range [{lo}, {hi}]")]
    InvalidRange { lo: u64, hi: u64 },

    #[error("the right side -3 solver requires an odd radicand, got {0}")]
    OddRadicandRequired(u64),

    #[error("solution fails its defining identity: {0}")]
    IdentityViolated(String),
}

pub type Result<T> = std::result::Result<T, Error>;
