//! Verified solution triples and method tags.

use crate::error::{Error, Result};
use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use serde::Serialize;
use std::fmt;

/// A solution of `y^2 - A x^2 = rhs`, verified exactly at construction.
///
/// `rhs` is `1` for the Pell equation proper and `-3` for the companion
/// equation; no other right sides are representable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PellSolution {
    pub radicand: u64,
    pub x: BigUint,
    pub y: BigUint,
    pub rhs: i64,
}

impl PellSolution {
    /// Builds a solution after checking `y^2 - A x^2 = rhs` with exact
    /// arithmetic. Nothing unverified ever leaves this constructor.
    pub fn verified(radicand: u64, x: BigUint, y: BigUint, rhs: i64) -> Result<Self> {
        if rhs == 1 && x.is_zero() {
            return Err(Error::IdentityViolated(format!(
                "A={radicand}: (0, 1) is the trivial solution"
            )));
        }
        let a = BigInt::from(radicand);
        let xi = BigInt::from(x.clone());
        let yi = BigInt::from(y.clone());
        let lhs = &yi * &yi - a * &xi * &xi;
        if lhs != BigInt::from(rhs) {
            return Err(Error::IdentityViolated(format!(
                "A={radicand} x={x} y={y}: y^2 - A x^2 = {lhs}, expected {rhs}"
            )));
        }
        Ok(PellSolution {
            radicand,
            x,
            y,
            rhs,
        })
    }
}

impl fmt::Display for PellSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "y^2 - {}x^2 = {}: (x, y) = ({}, {})",
            self.radicand, self.rhs, self.x, self.y
        )
    }
}

/// Which path produced a solution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum SolveMethod {
    #[serde(rename = "EQUAL_R")]
    EqualR,
    #[serde(rename = "DOUBLE_R_FWD")]
    DoubleRFwd,
    #[serde(rename = "DOUBLE_R_BWD")]
    DoubleRBwd,
    #[serde(rename = "SUM_EQ_2A")]
    SumEq2A,
    #[serde(rename = "R_EQ_2A")]
    REq2A,
    #[serde(rename = "K_TIMES_R")]
    KTimesR,
    #[serde(rename = "TRIPLE_R_FWD")]
    TripleRFwd,
    #[serde(rename = "TRIPLE_R_BWD")]
    TripleRBwd,
    /// Full period walk, the classical method.
    #[serde(rename = "STANDARD")]
    Standard,
    /// Sequential-differences reduction (inverse calculations).
    #[serde(rename = "SEQDIFF")]
    SeqDiff,
    /// Bounded direct search (right side -3 fallback).
    #[serde(rename = "SEARCH")]
    Search,
}

impl SolveMethod {
    pub fn is_shortcut(self) -> bool {
        !matches!(
            self,
            SolveMethod::Standard | SolveMethod::SeqDiff | SolveMethod::Search
        )
    }

    pub fn as_str(self) -> &'static str {
        match self {
            SolveMethod::EqualR => "EQUAL_R",
            SolveMethod::DoubleRFwd => "DOUBLE_R_FWD",
            SolveMethod::DoubleRBwd => "DOUBLE_R_BWD",
            SolveMethod::SumEq2A => "SUM_EQ_2A",
            SolveMethod::REq2A => "R_EQ_2A",
            SolveMethod::KTimesR => "K_TIMES_R",
            SolveMethod::TripleRFwd => "TRIPLE_R_FWD",
            SolveMethod::TripleRBwd => "TRIPLE_R_BWD",
            SolveMethod::Standard => "STANDARD",
            SolveMethod::SeqDiff => "SEQDIFF",
            SolveMethod::Search => "SEARCH",
        }
    }
}

impl fmt::Display for SolveMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}
