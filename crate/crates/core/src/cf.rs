//! Continued-fraction expansion of `sqrt(A)`, convergents, the classical
//! period-walk solver, and the incremental shortcut scanner that cuts the
//! walk short when a distinctive pattern appears among the remainders.
//!
//! Step `i` of the expansion holds the triple `(d_{i-1}, a_i, r_i)` from
//!
//! ```text
//! (sqrt(A) + a_{i-1}) / r_{i-1}  =  d_{i-1} + r_i / (sqrt(A) + a_i)
//! ```
//!
//! with `r_0 = 1`. Consecutive remainders satisfy
//! `r_i * r_{i+1} + a_{i+1}^2 = A`, so a pattern such as `r_j = r_{j-1}`
//! hands us a representation of `A` together with small parameters
//! `(l, m) = (B_{j-1}, B_{j-2})` taken from the convergent denominators
//! `B_n = d_n B_{n-1} + B_{n-2}`, `B_{-2} = 1`, `B_{-1} = 0`.

use crate::arith::{exact_sqrt_big, isqrt_u64};
use crate::cases::{self, DistinctiveParams};
use crate::error::{Error, Result};
use crate::forms::FormClass;
use crate::minus3::Minus3Params;
use crate::solution::{PellSolution, SolveMethod};
use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

/// One expansion step: quotient `d_{i-1}`, shift `a_i`, remainder `r_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CfStep {
    pub index: usize,
    pub quotient: BigUint,
    pub shift: BigUint,
    pub remainder: BigUint,
}

/// The expansion of `sqrt(A)` through period closure.
#[derive(Debug, Clone)]
pub struct CfExpansion {
    pub radicand: u64,
    /// `floor(sqrt(A))`.
    pub d0: BigUint,
    /// Steps `1 ..= L + 1`; the final step re-enters the period.
    pub steps: Vec<CfStep>,
    /// Period length `L`, set once closure is detected.
    pub period: Option<usize>,
}

/// Default expansion budget, comfortably above classical period bounds at
/// the scales this crate targets.
pub fn default_max_steps(radicand: u64) -> usize {
    10 * isqrt_u64(radicand) as usize + 100
}

/// Computes the next `(quotient, shift, remainder)` triple, or the first
/// one when `prev` is `None`.
pub fn expand_step(radicand: u64, prev: Option<&CfStep>) -> Result<CfStep> {
    let d0 = isqrt_u64(radicand);
    if d0 * d0 == radicand {
        return Err(Error::PerfectSquare(radicand));
    }
    let big_a = BigUint::from(radicand);
    let big_d0 = BigUint::from(d0);
    match prev {
        None => Ok(CfStep {
            index: 1,
            quotient: big_d0.clone(),
            shift: big_d0.clone(),
            remainder: &big_a - &big_d0 * &big_d0,
        }),
        Some(p) => {
            let quotient = (&big_d0 + &p.shift) / &p.remainder;
            let shift = &quotient * &p.remainder - &p.shift;
            let remainder = (&big_a - &shift * &shift) / &p.remainder;
            Ok(CfStep {
                index: p.index + 1,
                quotient,
                shift,
                remainder,
            })
        }
    }
}

/// Expands `sqrt(A)` until the period closes, detected by repetition of the
/// `(shift, remainder)` pair of step 1. The returned expansion holds
/// `L + 1` steps.
pub fn expand_sqrt(radicand: u64, max_steps: usize) -> Result<CfExpansion> {
    let mut steps = Vec::new();
    let mut step = expand_step(radicand, None)?;
    let first_state = (step.shift.clone(), step.remainder.clone());
    steps.push(step.clone());
    loop {
        step = expand_step(radicand, Some(&step))?;
        steps.push(step.clone());
        if step.index > 1 && (step.shift.clone(), step.remainder.clone()) == first_state {
            let period = step.index - 1;
            return Ok(CfExpansion {
                radicand,
                d0: BigUint::from(isqrt_u64(radicand)),
                steps,
                period: Some(period),
            });
        }
        if steps.len() >= max_steps {
            return Err(Error::StepBudgetExceeded {
                radicand,
                budget: max_steps,
            });
        }
    }
}

impl CfExpansion {
    pub fn period_length(&self) -> Option<usize> {
        self.period
    }

    /// Quotient `d_n`. Indices past the expanded steps are resolved through
    /// the period once it is known.
    pub fn quotient(&self, n: usize) -> Result<BigUint> {
        if n < self.steps.len() {
            return Ok(self.steps[n].quotient.clone());
        }
        match self.period {
            Some(l) => {
                let folded = ((n - 1) % l) + 1;
                Ok(self.steps[folded].quotient.clone())
            }
            None => Err(Error::IndexBeyondExpansion {
                index: n,
                needed: n + 1,
                available: self.steps.len(),
            }),
        }
    }

    /// Convergent denominator `B_n` (`B_{-2} = 1`, `B_{-1} = 0`).
    pub fn convergent(&self, n: usize) -> Result<BigUint> {
        let (mut prev2, mut prev1) = (BigUint::one(), BigUint::zero());
        for i in 0..=n {
            let d = self.quotient(i)?;
            let next = &d * &prev1 + &prev2;
            prev2 = prev1;
            prev1 = next;
        }
        Ok(prev1)
    }

    /// Companion numerator `y_n` (seeds `0, 1`), so `y_n / B_n -> sqrt(A)`.
    pub fn convergent_numerator(&self, n: usize) -> Result<BigUint> {
        let (mut prev2, mut prev1) = (BigUint::zero(), BigUint::one());
        for i in 0..=n {
            let d = self.quotient(i)?;
            let next = &d * &prev1 + &prev2;
            prev2 = prev1;
            prev1 = next;
        }
        Ok(prev1)
    }
}

/// Computes the fundamental solution from the quotient list of one closed
/// period: `x = B_{L-1}` for even `L`, `x = B_{2L-1}` for odd `L`, with `y`
/// the matching numerator. `quotients` must hold `d_0 ..= d_{L-1}`; later
/// quotients follow from periodicity (`d_L = 2 d_0`).
fn fundamental_from_period(radicand: u64, quotients: &[BigUint], l: usize) -> Result<PellSolution> {
    let quo = |n: usize| -> BigUint {
        if n < l {
            quotients[n].clone()
        } else if n.is_multiple_of(l) {
            // d_L, d_2L, ...: twice the leading quotient.
            &quotients[0] * BigUint::from(2u32)
        } else {
            quotients[(n - 1) % l + 1].clone()
        }
    };
    let nmax = if l.is_multiple_of(2) {
        l - 1
    } else {
        2 * l - 1
    };
    let (mut b2, mut b1) = (BigUint::one(), BigUint::zero());
    let (mut y2, mut y1) = (BigUint::zero(), BigUint::one());
    for n in 0..=nmax {
        let d = quo(n);
        let nb = &d * &b1 + &b2;
        b2 = std::mem::replace(&mut b1, nb);
        let ny = &d * &y1 + &y2;
        y2 = std::mem::replace(&mut y1, ny);
    }
    PellSolution::verified(radicand, b1, y1, 1)
}

/// Classical solve: walk the full period, then read off `x = B_{Ls-1}` with
/// `s = 1`. Also reports the number of expansion steps consumed (`L + 1`,
/// the closure-detection walk).
pub fn solve_standard_with_steps(radicand: u64) -> Result<(PellSolution, usize)> {
    let exp = expand_sqrt(radicand, default_max_steps(radicand))?;
    let l = exp.period.expect("expand_sqrt always closes the period");
    let quotients: Vec<BigUint> = exp.steps[..l].iter().map(|s| s.quotient.clone()).collect();
    let solution = fundamental_from_period(radicand, &quotients, l)?;
    Ok((solution, exp.steps.len()))
}

pub fn solve_standard(radicand: u64) -> Result<PellSolution> {
    solve_standard_with_steps(radicand).map(|(s, _)| s)
}

/// Which equation a scan serves.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rhs {
    One,
    MinusThree,
}

/// Pattern kinds among consecutive remainders.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum ShortcutKind {
    EqualR,
    DoubleRFwd,
    DoubleRBwd,
    SumEq2A,
    REq2A,
    KTimesR,
    TripleRFwd,
    TripleRBwd,
}

impl ShortcutKind {
    pub fn method(self) -> SolveMethod {
        match self {
            ShortcutKind::EqualR => SolveMethod::EqualR,
            ShortcutKind::DoubleRFwd => SolveMethod::DoubleRFwd,
            ShortcutKind::DoubleRBwd => SolveMethod::DoubleRBwd,
            ShortcutKind::SumEq2A => SolveMethod::SumEq2A,
            ShortcutKind::REq2A => SolveMethod::REq2A,
            ShortcutKind::KTimesR => SolveMethod::KTimesR,
            ShortcutKind::TripleRFwd => SolveMethod::TripleRFwd,
            ShortcutKind::TripleRBwd => SolveMethod::TripleRBwd,
        }
    }
}

/// Extracted payload of a shortcut hit, validated at construction.
#[derive(Debug, Clone)]
pub enum HitParams {
    /// Parameters for the representation classes (equation right side 1).
    Distinctive(DistinctiveParams),
    /// Factor pair for the even composite case.
    CompositeEven {
        p1: u64,
        p2: u64,
        s: BigUint,
        q: BigUint,
    },
    /// Direct solution (`r = 2a` case), already verified.
    DirectX { x: BigUint, y: BigUint },
    /// Parameters for the right side -3.
    Minus3(Minus3Params),
}

#[derive(Debug, Clone)]
pub struct ShortcutHit {
    pub kind: ShortcutKind,
    /// Step index `j` at which the pattern fired.
    pub position: usize,
    pub params: HitParams,
}

/// Rolling scanner state: everything needed to test the patterns at the
/// current step.
struct ScanCursor {
    radicand: u64,
    big_a: BigUint,
    d0: BigUint,
    j: usize,
    shift: BigUint,
    rem: BigUint,
    rem_prev: BigUint,
    /// `B_{j-1}` and `B_{j-2}`.
    b1: BigUint,
    b2: BigUint,
}

impl ScanCursor {
    fn start(radicand: u64) -> Result<Self> {
        let step = expand_step(radicand, None)?;
        Ok(ScanCursor {
            radicand,
            big_a: BigUint::from(radicand),
            d0: step.shift.clone(),
            j: 1,
            shift: step.shift,
            rem: step.remainder,
            rem_prev: BigUint::one(),
            b1: BigUint::one(),
            b2: BigUint::zero(),
        })
    }

    /// Period closed: the remainder hits 1 exactly at multiples of `L`.
    fn closed(&self) -> bool {
        self.rem.is_one()
    }

    /// Moves to step `j + 1` and returns the quotient `d_j` consumed by the
    /// move (which is also the recurrence index for `B_j`).
    fn advance(&mut self) -> BigUint {
        let quotient = (&self.d0 + &self.shift) / &self.rem;
        let shift = &quotient * &self.rem - &self.shift;
        let rem_next = (&self.big_a - &shift * &shift) / &self.rem;
        let b_next = &quotient * &self.b1 + &self.b2;
        self.b2 = std::mem::replace(&mut self.b1, b_next);
        self.rem_prev = std::mem::replace(&mut self.rem, rem_next);
        self.shift = shift;
        self.j += 1;
        quotient
    }

    /// Tries every pattern of `rhs` at the current step, most specific
    /// first. A hit is returned only when its distinctive condition holds
    /// exactly; otherwise scanning continues.
    fn match_here(&self, rhs: Rhs) -> Option<ShortcutHit> {
        match rhs {
            Rhs::One => self.match_pell(),
            Rhs::MinusThree => self.match_minus3(),
        }
    }

    fn match_pell(&self) -> Option<ShortcutHit> {
        let two = BigUint::from(2u32);
        // EQUAL_R: r_j = r_{j-1}
        if self.rem == self.rem_prev {
            if let Ok(p) = DistinctiveParams::new(
                FormClass::EqualSquares,
                self.shift.clone(),
                self.rem.clone(),
                self.b1.clone(),
                self.b2.clone(),
            ) {
                return Some(self.hit(ShortcutKind::EqualR, HitParams::Distinctive(p)));
            }
        }
        // DOUBLE_R_FWD: r_j = 2 r_{j-1}
        if self.rem == &self.rem_prev * &two {
            if let Ok(p) = DistinctiveParams::new(
                FormClass::DoubleSquares,
                self.shift.clone(),
                self.rem_prev.clone(),
                self.b1.clone(),
                self.b2.clone(),
            ) {
                return Some(self.hit(ShortcutKind::DoubleRFwd, HitParams::Distinctive(p)));
            }
        }
        // DOUBLE_R_BWD: r_{j-1} = 2 r_j
        if self.rem_prev == &self.rem * &two {
            if let Ok(p) = DistinctiveParams::new(
                FormClass::DoubleSquares,
                self.shift.clone(),
                self.rem.clone(),
                self.b2.clone(),
                self.b1.clone(),
            ) {
                return Some(self.hit(ShortcutKind::DoubleRBwd, HitParams::Distinctive(p)));
            }
        }
        // SUM_EQ_2A: r_{j-1} + r_j = 2 a_j
        if &self.rem_prev + &self.rem == &self.shift * &two {
            if let Ok(p) = DistinctiveParams::new(
                FormClass::SumEqualsCross,
                &self.shift + &self.rem_prev,
                self.rem_prev.clone(),
                &self.b1 + &self.b2,
                self.b2.clone(),
            ) {
                return Some(self.hit(ShortcutKind::SumEq2A, HitParams::Distinctive(p)));
            }
        }
        // R_EQ_2A: r_j = 2 a_j, solution read off directly
        if self.rem == &self.shift * &two {
            let x = &self.b1 * (&self.b1 + &self.b2 * &two);
            let t = &self.big_a * &x * &x + BigUint::one();
            if let Some(y) = exact_sqrt_big(&t) {
                return Some(self.hit(ShortcutKind::REq2A, HitParams::DirectX { x, y }));
            }
        }
        // K_TIMES_R: K r_j = a_j for a whole K >= 1
        if !self.shift.is_zero() && self.shift >= self.rem {
            let (k, rem) = self.shift.div_rem(&self.rem);
            if rem.is_zero() {
                let q = self.b1.clone();
                let s = &k * &self.b1 + &self.b2;
                if let Some((p1, p2)) = resolve_factor_pair(self.radicand, &s, &q) {
                    return Some(self.hit(
                        ShortcutKind::KTimesR,
                        HitParams::CompositeEven { p1, p2, s, q },
                    ));
                }
            }
        }
        None
    }

    fn match_minus3(&self) -> Option<ShortcutHit> {
        let three = BigUint::from(3u32);
        // TRIPLE_R_FWD: r_j = 3 r_{j-1}
        if self.rem == &self.rem_prev * &three {
            if let Ok(p) = Minus3Params::new(
                self.shift.clone(),
                self.rem_prev.clone(),
                self.b1.clone(),
                self.b2.clone(),
            ) {
                return Some(self.hit(ShortcutKind::TripleRFwd, HitParams::Minus3(p)));
            }
        }
        // TRIPLE_R_BWD: r_{j-1} = 3 r_j
        if self.rem_prev == &self.rem * &three {
            if let Ok(p) = Minus3Params::new(
                self.shift.clone(),
                self.rem.clone(),
                self.b2.clone(),
                self.b1.clone(),
            ) {
                return Some(self.hit(ShortcutKind::TripleRBwd, HitParams::Minus3(p)));
            }
        }
        None
    }

    fn hit(&self, kind: ShortcutKind, params: HitParams) -> ShortcutHit {
        ShortcutHit {
            kind,
            position: self.j,
            params,
        }
    }
}

/// Solves `p1 S^2 - p2 Q^2 = 1` with `p1 p2 = A` for a coprime factor pair,
/// if one exists: `p1` is the positive root of `p1^2 S^2 - p1 - A Q^2 = 0`.
fn resolve_factor_pair(radicand: u64, s: &BigUint, q: &BigUint) -> Option<(u64, u64)> {
    let a = BigUint::from(radicand);
    let ss = s * s;
    let qq = q * q;
    let disc = BigUint::one() + BigUint::from(4u32) * &a * &ss * &qq;
    let root = exact_sqrt_big(&disc)?;
    let num = root + BigUint::one();
    let den = BigUint::from(2u32) * &ss;
    let (p1, rem) = num.div_rem(&den);
    if !rem.is_zero() || p1.is_zero() {
        return None;
    }
    let (p2, rem) = (&p1 * &ss - BigUint::one()).div_rem(&qq);
    if !rem.is_zero() {
        return None;
    }
    if &p1 * &p2 != a {
        return None;
    }
    let p1 = p1.to_u64()?;
    let p2 = p2.to_u64()?;
    (crate::arith::gcd_u64(p1, p2) == 1).then_some((p1, p2))
}

/// Scans an expansion for the first shortcut pattern of `rhs`, in step
/// order with the fixed priority `EQUAL_R > DOUBLE_R_FWD > DOUBLE_R_BWD >
/// SUM_EQ_2A > R_EQ_2A > K_TIMES_R` within each step. Steps at or past the
/// period boundary (remainder 1) never produce hits: the patterns there are
/// artifacts of the period restart and yield non-minimal solutions.
pub fn scan_shortcuts(exp: &CfExpansion, rhs: Rhs) -> Option<ShortcutHit> {
    let mut cursor = ScanCursor::start(exp.radicand).ok()?;
    for _ in 0..exp.steps.len() {
        if cursor.closed() {
            return None;
        }
        if let Some(hit) = cursor.match_here(rhs) {
            return Some(hit);
        }
        cursor.advance();
    }
    None
}

/// Result of the shortcut-first solver.
#[derive(Debug, Clone)]
pub struct FastSolve {
    pub solution: PellSolution,
    pub method: SolveMethod,
    /// Expansion steps consumed.
    pub steps: usize,
}

/// Expands incrementally, testing the shortcut patterns at each new step.
/// On a hit the matching case formula produces the solution (verified
/// exactly); if the period closes first, falls back to the classical walk,
/// whose quotients are already in hand. Agrees with [`solve_standard`]
/// everywhere.
pub fn solve_fast(radicand: u64) -> Result<FastSolve> {
    let mut cursor = ScanCursor::start(radicand)?;
    let mut quotients: Vec<BigUint> = vec![cursor.d0.clone()];
    let budget = default_max_steps(radicand);
    loop {
        if cursor.closed() {
            // Period closed at L = j with everything needed for the
            // classical formula already expanded.
            let l = cursor.j;
            quotients.truncate(l);
            let solution = fundamental_from_period(radicand, &quotients, l)?;
            return Ok(FastSolve {
                solution,
                method: SolveMethod::Standard,
                steps: l,
            });
        }
        if let Some(hit) = cursor.match_here(Rhs::One) {
            let solution = solve_hit(radicand, &hit)?;
            return Ok(FastSolve {
                solution,
                method: hit.kind.method(),
                steps: hit.position,
            });
        }
        if cursor.j >= budget {
            return Err(Error::StepBudgetExceeded { radicand, budget });
        }
        let d = cursor.advance();
        quotients.push(d);
    }
}

/// Applies the case formula matching a hit and verifies the result.
pub fn solve_hit(radicand: u64, hit: &ShortcutHit) -> Result<PellSolution> {
    match &hit.params {
        HitParams::Distinctive(p) => match p.cls {
            FormClass::EqualSquares => cases::solve_4n1(p),
            FormClass::DoubleSquares => cases::solve_8n3(p),
            FormClass::SumEqualsCross => cases::solve_8n7(p),
            _ => Err(Error::ConditionViolated(format!(
                "no direct case formula for {:?}",
                p.cls
            ))),
        },
        HitParams::CompositeEven { p1, p2, s, q } => cases::solve_composite_even(*p1, *p2, s, q),
        HitParams::DirectX { x, y } => PellSolution::verified(radicand, x.clone(), y.clone(), 1),
        HitParams::Minus3(p) => p.solve(radicand),
    }
}
