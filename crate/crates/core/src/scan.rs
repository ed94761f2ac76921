//! Range scanning for solution tables, local/absolute maxima bookkeeping,
//! and the standard-vs-shortcut benchmark.

use crate::arith::{is_prime_u64, isqrt_u64};
use crate::cf;
use crate::error::{Error, Result};
use crate::forms;
use crate::solution::SolveMethod;
use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Serialize, Serializer};
use std::collections::BTreeMap;
use std::io::{self, Write};
use std::time::Instant;

fn ser_big<S: Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// One row of a solution table. Big values serialize as decimal strings:
/// `x` outgrows every fixed-width integer almost immediately.
#[derive(Debug, Clone, Serialize)]
pub struct TableRecord {
    #[serde(rename = "A")]
    pub a: u64,
    #[serde(serialize_with = "ser_big")]
    pub x: BigUint,
    #[serde(serialize_with = "ser_big")]
    pub y: BigUint,
    pub method: SolveMethod,
}

/// Which solver fills the table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableMethod {
    Fast,
    Standard,
    /// Sequential-differences inverse calculations, with a silent fall back
    /// to the period walk (recorded in the method tag) when no distinctive
    /// form is found.
    SeqDiff,
}

fn solve_one(a: u64, method: TableMethod) -> Result<TableRecord> {
    match method {
        TableMethod::Fast => {
            let f = cf::solve_fast(a)?;
            Ok(TableRecord {
                a,
                x: f.solution.x,
                y: f.solution.y,
                method: f.method,
            })
        }
        TableMethod::Standard => {
            let s = cf::solve_standard(a)?;
            Ok(TableRecord {
                a,
                x: s.x,
                y: s.y,
                method: SolveMethod::Standard,
            })
        }
        TableMethod::SeqDiff => match forms::inverse_solve(a) {
            Ok(inv) => Ok(TableRecord {
                a,
                x: inv.solution.x,
                y: inv.solution.y,
                method: SolveMethod::SeqDiff,
            }),
            Err(Error::Unclassifiable { .. }) => {
                let s = cf::solve_standard(a)?;
                Ok(TableRecord {
                    a,
                    x: s.x,
                    y: s.y,
                    method: SolveMethod::Standard,
                })
            }
            Err(e) => Err(e),
        },
    }
}

/// Builds the table of minimal solutions for every non-square radicand in
/// `[lo, hi]`, in deterministic ascending order. Blocks are solved in
/// parallel; the merge preserves order.
pub fn build_table(lo: u64, hi: u64, method: TableMethod) -> Result<Vec<TableRecord>> {
    if lo < 2 || hi < lo {
        return Err(Error::InvalidRange { lo, hi });
    }
    (lo..=hi)
        .into_par_iter()
        .filter(|a| {
            let k = isqrt_u64(*a);
            k * k != *a
        })
        .map(|a| solve_one(a, method))
        .collect()
}

pub fn write_jsonl<W: Write>(mut w: W, records: &[TableRecord]) -> io::Result<()> {
    for r in records {
        serde_json::to_writer(&mut w, r)?;
        writeln!(w)?;
    }
    Ok(())
}

pub fn write_tsv<W: Write>(mut w: W, records: &[TableRecord]) -> io::Result<()> {
    writeln!(w, "A\tx\ty\tmethod")?;
    for r in records {
        writeln!(w, "{}\t{}\t{}\t{}", r.a, r.x, r.y, r.method)?;
    }
    Ok(())
}

/// Classification attached to each maxima record.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum MaximaClass {
    /// Prime with `A = 4n + 1`.
    Prime4n1,
    /// Any other prime.
    Prime,
    /// `A = 2p` with `p` prime.
    QuasiPrime,
    Other,
}

pub fn classify_maxima(a: u64) -> MaximaClass {
    if is_prime_u64(a) {
        if a % 4 == 1 {
            MaximaClass::Prime4n1
        } else {
            MaximaClass::Prime
        }
    } else if a.is_multiple_of(2) && is_prime_u64(a / 2) {
        MaximaClass::QuasiPrime
    } else {
        MaximaClass::Other
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct MaximaRecord {
    pub a: u64,
    #[serde(serialize_with = "ser_big")]
    pub x: BigUint,
    /// Interval index: `k^2 < A < (k+1)^2`.
    pub k: u64,
    pub class: MaximaClass,
}

#[derive(Debug, Clone, Serialize)]
pub struct MaximaReport {
    pub locals: Vec<MaximaRecord>,
    pub absolutes: Vec<MaximaRecord>,
    /// How many local maxima fall in each classification.
    pub local_class_counts: BTreeMap<String, u64>,
}

/// Finds the largest minimal solution inside every square-bounded interval
/// and the running absolute maxima. The table must cover whole intervals.
pub fn find_maxima(records: &[TableRecord]) -> Result<MaximaReport> {
    if records.is_empty() {
        return Err(Error::InvalidRange { lo: 0, hi: 0 });
    }
    // Verify interval completeness: interval k holds exactly 2k non-squares.
    let mut by_interval: BTreeMap<u64, Vec<&TableRecord>> = BTreeMap::new();
    for r in records {
        by_interval.entry(isqrt_u64(r.a)).or_default().push(r);
    }
    for (k, rs) in &by_interval {
        if rs.len() as u64 != 2 * k {
            return Err(Error::IncompleteInterval {
                k: *k,
                lo: k * k + 1,
                hi: (k + 1) * (k + 1) - 1,
            });
        }
    }
    let mut locals = Vec::new();
    for (k, rs) in &by_interval {
        let best = rs
            .iter()
            .max_by(|a, b| a.x.cmp(&b.x).then(b.a.cmp(&a.a)))
            .expect("interval is nonempty");
        locals.push(MaximaRecord {
            a: best.a,
            x: best.x.clone(),
            k: *k,
            class: classify_maxima(best.a),
        });
    }
    let mut absolutes = Vec::new();
    let mut best_so_far: Option<&BigUint> = None;
    for r in records {
        if best_so_far.is_none_or(|b| &r.x > b) {
            best_so_far = Some(&r.x);
            absolutes.push(MaximaRecord {
                a: r.a,
                x: r.x.clone(),
                k: isqrt_u64(r.a),
                class: classify_maxima(r.a),
            });
        }
    }
    let mut local_class_counts = BTreeMap::new();
    for l in &locals {
        *local_class_counts
            .entry(format!("{:?}", l.class))
            .or_insert(0u64) += 1;
    }
    Ok(MaximaReport {
        locals,
        absolutes,
        local_class_counts,
    })
}

/// Benchmark of the classical period walk against the shortcut solver.
#[derive(Debug, Clone, Serialize)]
pub struct BenchReport {
    pub lo: u64,
    pub hi: u64,
    pub radicands: u64,
    pub standard_wall_s: f64,
    pub fast_wall_s: f64,
    /// Wall-clock ratio standard / fast; hardware-bound, reported with the
    /// environment fields below.
    pub wall_ratio_standard_over_fast: f64,
    pub standard_steps: u64,
    pub fast_steps: u64,
    /// Deterministic step-count ratio fast / standard; the primary metric.
    pub step_ratio_fast_over_standard: f64,
    pub shortcut_hits: BTreeMap<String, u64>,
    pub fallbacks: u64,
    pub mismatches: u64,
    pub threads: usize,
    pub debug_build: bool,
}

impl BenchReport {
    pub fn human_summary(&self) -> String {
        let mut s = String::new();
        s.push_str(&format!(
            "bench [{}, {}]: {} radicands, 0 mismatches\n",
            self.lo, self.hi, self.radicands
        ));
        s.push_str(&format!(
            "  wall time: standard {:.3}s, fast {:.3}s, ratio standard/fast = {:.3}\n",
            self.standard_wall_s, self.fast_wall_s, self.wall_ratio_standard_over_fast
        ));
        s.push_str(&format!(
            "  CF steps:  standard {}, fast {}, ratio fast/standard = {:.3}\n",
            self.standard_steps, self.fast_steps, self.step_ratio_fast_over_standard
        ));
        s.push_str("  shortcut hits:\n");
        for (k, v) in &self.shortcut_hits {
            s.push_str(&format!("    {k:<14} {v}\n"));
        }
        s.push_str(&format!("    {:<14} {}\n", "fallback", self.fallbacks));
        s
    }
}

/// Runs both methods over the range, hard-checks that they produce
/// identical solutions, and reports wall times, step counts, and the
/// shortcut-hit histogram.
pub fn bench(lo: u64, hi: u64) -> Result<BenchReport> {
    if lo < 2 || hi < lo {
        return Err(Error::InvalidRange { lo, hi });
    }
    let radicands: Vec<u64> = (lo..=hi)
        .filter(|a| {
            let k = isqrt_u64(*a);
            k * k != *a
        })
        .collect();

    let t0 = Instant::now();
    let standard: Vec<(u64, BigUint, usize)> = radicands
        .par_iter()
        .map(|&a| cf::solve_standard_with_steps(a).map(|(s, n)| (a, s.x, n)))
        .collect::<Result<_>>()?;
    let standard_wall_s = t0.elapsed().as_secs_f64();

    let t1 = Instant::now();
    let fast: Vec<(u64, BigUint, usize, SolveMethod)> = radicands
        .par_iter()
        .map(|&a| cf::solve_fast(a).map(|f| (a, f.solution.x, f.steps, f.method)))
        .collect::<Result<_>>()?;
    let fast_wall_s = t1.elapsed().as_secs_f64();

    let mut shortcut_hits: BTreeMap<String, u64> = BTreeMap::new();
    let mut fallbacks = 0u64;
    let mut standard_steps = 0u64;
    let mut fast_steps = 0u64;
    for ((a_s, x_s, n_s), (a_f, x_f, n_f, m_f)) in standard.iter().zip(fast.iter()) {
        debug_assert_eq!(a_s, a_f);
        if x_s != x_f {
            return Err(Error::MismatchDetected {
                radicand: *a_s,
                detail: format!("standard x = {x_s}, fast x = {x_f}"),
            });
        }
        standard_steps += *n_s as u64;
        fast_steps += *n_f as u64;
        if m_f.is_shortcut() {
            *shortcut_hits.entry(m_f.to_string()).or_insert(0) += 1;
        } else {
            fallbacks += 1;
        }
    }
    Ok(BenchReport {
        lo,
        hi,
        radicands: radicands.len() as u64,
        standard_wall_s,
        fast_wall_s,
        wall_ratio_standard_over_fast: standard_wall_s / fast_wall_s.max(f64::EPSILON),
        standard_steps,
        fast_steps,
        step_ratio_fast_over_standard: fast_steps as f64 / (standard_steps as f64).max(1.0),
        shortcut_hits,
        fallbacks,
        mismatches: 0,
        threads: rayon::current_num_threads(),
        debug_build: cfg!(debug_assertions),
    })
}
