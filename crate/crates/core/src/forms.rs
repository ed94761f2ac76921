//! Sequential-differences reduction of binary quadratic forms
//! `b Y^2 - c X^2 + 2a XY` with invariant `bc + a^2 = A`, the five-way
//! distinctive-form classification, and the inverse-calculations pipeline
//! that recovers the minimal solution of the Pell equation from the
//! reduction walk alone.

use crate::arith::{gcd_u64, isqrt_u64};
use crate::cases::{DistinctiveParams, Representation};
use crate::error::{Error, Result};
use crate::solution::PellSolution;
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use std::fmt;

/// A binary quadratic form `b Y^2 - c X^2 + 2a XY` attached to its radicand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BQForm {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub radicand: u64,
}

impl BQForm {
    pub fn new(a: i64, b: i64, c: i64, radicand: u64) -> Self {
        BQForm {
            a: a.into(),
            b: b.into(),
            c: c.into(),
            radicand,
        }
    }

    /// `bc + a^2`, invariant under reduction.
    pub fn determinant(&self) -> BigInt {
        &self.b * &self.c + &self.a * &self.a
    }

    /// `r = b - c + 2a`: the form's value at `X = Y = 1` and the quantity
    /// steering the reduction.
    pub fn residual(&self) -> BigInt {
        &self.b - &self.c + BigInt::from(2) * &self.a
    }

    /// Form value at arbitrary `(X, Y)`.
    pub fn eval(&self, x: &BigInt, y: &BigInt) -> BigInt {
        &self.b * y * y - &self.c * x * x + BigInt::from(2) * &self.a * x * y
    }
}

impl fmt::Display for BQForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coeff = |v: &BigInt| -> String {
            if v.magnitude().is_one() {
                String::new()
            } else {
                v.magnitude().to_string()
            }
        };
        write!(
            f,
            "{}Y^2 {} {}X^2",
            coeff(&self.b),
            if self.c.is_negative() { "+" } else { "-" },
            coeff(&self.c)
        )?;
        if !self.a.is_zero() {
            let cross = BigInt::from(2) * &self.a;
            write!(
                f,
                " {} {}XY",
                if cross.is_negative() { "-" } else { "+" },
                coeff(&cross)
            )?;
        }
        Ok(())
    }
}

/// One substitution move of the reduction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Move {
    /// `X_i = Y_i + X_{i+1}` (taken when `r > 1`).
    XShift,
    /// `Y_i = X_i + Y_{i+1}` (taken when `r < -1`).
    YShift,
}

/// Ordered record of the substitutions applied so far.
#[derive(Debug, Clone, Default)]
pub struct SubstitutionLog(pub Vec<Move>);

impl SubstitutionLog {
    pub fn push(&mut self, m: Move) {
        self.0.push(m);
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Replays the log forward from `form`; reproduces the final form.
    pub fn replay_forward(&self, form: &BQForm) -> Result<BQForm> {
        let mut f = form.clone();
        for m in &self.0 {
            let (next, taken) = reduce_step(&f)?;
            if taken != *m {
                return Err(Error::ConditionViolated(format!(
                    "log replay diverged: expected {m:?}, reduction takes {taken:?}"
                )));
            }
            f = next;
        }
        Ok(f)
    }

    /// The unimodular matrix `P` with `(X_start, Y_start) = P (X_final, Y_final)`.
    pub fn matrix(&self) -> [[BigInt; 2]; 2] {
        let (mut p11, mut p12, mut p21, mut p22) =
            (BigInt::one(), BigInt::zero(), BigInt::zero(), BigInt::one());
        for m in &self.0 {
            match m {
                // X_cur = X_next + Y_next, Y_cur = Y_next
                Move::XShift => {
                    p12 = &p11 + &p12;
                    p22 = &p21 + &p22;
                }
                // X_cur = X_next, Y_cur = X_next + Y_next
                Move::YShift => {
                    p11 = &p11 + &p12;
                    p21 = &p21 + &p22;
                }
            }
        }
        [[p11, p12], [p21, p22]]
    }

    /// Start-variable values produced by substituting the given final
    /// values (forward replay of the variable chain).
    pub fn start_values(&self, x_final: &BigInt, y_final: &BigInt) -> (BigInt, BigInt) {
        let p = self.matrix();
        (
            &p[0][0] * x_final + &p[0][1] * y_final,
            &p[1][0] * x_final + &p[1][1] * y_final,
        )
    }

    /// Final-variable values corresponding to given start values
    /// (`det P = 1`, so the inverse is exact).
    pub fn final_values(&self, x_start: &BigInt, y_start: &BigInt) -> (BigInt, BigInt) {
        let p = self.matrix();
        (
            &p[1][1] * x_start - &p[0][1] * y_start,
            -&p[1][0] * x_start + &p[0][0] * y_start,
        )
    }
}

/// The five distinctive-form classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum FormClass {
    /// I: the square coefficients are equal.
    EqualSquares,
    /// II: one square coefficient is twice the other.
    DoubleSquares,
    /// III: the square coefficients sum to the cross coefficient.
    SumEqualsCross,
    /// IV: no cross term.
    NoCross,
    /// V: one square coefficient equals the cross coefficient.
    SquareEqualsCross,
}

impl fmt::Display for FormClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FormClass::EqualSquares => "I",
            FormClass::DoubleSquares => "II",
            FormClass::SumEqualsCross => "III",
            FormClass::NoCross => "IV",
            FormClass::SquareEqualsCross => "V",
        })
    }
}

/// The "start form" of the inverse calculations: from `k = floor(sqrt(A))`,
/// the ultimate form `b = (k+1)^2 - A`, `c = A - k^2`, `a = A - k(k+1)`
/// with the sign of `a` flipped (the cycle is symmetric in `+-a`).
pub fn start_form(radicand: u64) -> Result<BQForm> {
    let k = isqrt_u64(radicand);
    if k * k == radicand {
        return Err(Error::PerfectSquare(radicand));
    }
    let a = BigInt::from(k) * BigInt::from(k + 1) - BigInt::from(radicand);
    let b = BigInt::from(k + 1) * BigInt::from(k + 1) - BigInt::from(radicand);
    let c = BigInt::from(radicand) - BigInt::from(k) * BigInt::from(k);
    Ok(BQForm { a, b, c, radicand })
}

/// One reduction move: `r = b - c + 2a`; `r > 1` substitutes
/// `X = Y + X'`, `r < -1` substitutes `Y = X + Y'`. `r` in `{-1, 0, 1}`
/// means the form already represents a unit at `X = Y = 1` and the walk
/// ends (continuing past a unit leaves the reduced cycle).
pub fn reduce_step(form: &BQForm) -> Result<(BQForm, Move)> {
    let r = form.residual();
    if r > BigInt::one() {
        Ok((
            BQForm {
                a: &form.a - &form.c,
                b: r,
                c: form.c.clone(),
                radicand: form.radicand,
            },
            Move::XShift,
        ))
    } else if r < BigInt::from(-1) {
        Ok((
            BQForm {
                a: &form.a + &form.b,
                b: form.b.clone(),
                c: -r,
                radicand: form.radicand,
            },
            Move::YShift,
        ))
    } else {
        Err(Error::UltimateFormReached(form.clone()))
    }
}

/// Classifies a reduced form, most specific first. The no-cross test runs
/// before the double-squares test: a form with `a = 0` is a bare factor
/// pair even when its coefficients also happen to differ twice.
pub fn classify_form(form: &BQForm) -> Option<FormClass> {
    let two = BigInt::from(2);
    let cross = &two * form.a.abs();
    if form.b == form.c {
        Some(FormClass::EqualSquares)
    } else if form.a.is_zero() {
        Some(FormClass::NoCross)
    } else if form.b == &two * &form.c || form.c == &two * &form.b {
        Some(FormClass::DoubleSquares)
    } else if &form.b + &form.c == cross {
        Some(FormClass::SumEqualsCross)
    } else if form.b == cross || form.c == cross {
        Some(FormClass::SquareEqualsCross)
    } else {
        None
    }
}

/// Like [`classify_form`], but an unmatched form is an error.
pub fn classify(form: &BQForm) -> Result<FormClass> {
    classify_form(form).ok_or(Error::Unclassifiable {
        radicand: form.radicand,
        steps: 0,
    })
}

/// Parameters recovered by the inverse calculations.
#[derive(Debug, Clone)]
pub enum InverseParams {
    /// Classes I-III: distinctive parameters feeding the case formulas.
    Distinctive(DistinctiveParams),
    /// Classes IV-V: a factor pair `p1 S^2 - p2 Q^2 = cond` in `{1, +-2}`.
    FactorPair {
        p1: u64,
        p2: u64,
        s: BigUint,
        q: BigUint,
        cond: i64,
    },
}

/// Outcome of [`inverse_solve`].
#[derive(Debug, Clone)]
pub struct InverseSolve {
    pub solution: PellSolution,
    pub cls: FormClass,
    /// Reduction steps from the start form to the winning final form.
    pub steps: usize,
    pub params: InverseParams,
    /// The representation of the radicand discovered along the way, when
    /// the winning parameters expose one.
    pub representation: Option<Representation>,
    /// Full log of the walk (through its terminal form).
    pub log: SubstitutionLog,
}

struct Candidate {
    x: BigInt,
    y: BigInt,
    cls: FormClass,
    steps: usize,
    params: InverseParams,
    representation: Option<Representation>,
}

/// Runs the full pipeline: start form, reduction walk with classification
/// at every step, back-substitution of unit start-parameters with one sign
/// change, candidate verification against the Pell identity, and selection
/// of the smallest verified solution.
pub fn inverse_solve(radicand: u64) -> Result<InverseSolve> {
    let budget = 20 * isqrt_u64(radicand) as usize + 40;
    let mut form = start_form(radicand)?;
    let mut log = SubstitutionLog::default();
    // Running matrix of the log, updated move by move.
    let (mut p11, mut p12, mut p21, mut p22) =
        (BigInt::one(), BigInt::zero(), BigInt::zero(), BigInt::one());
    let mut best: Option<Candidate> = None;
    let mut steps = 0usize;
    loop {
        if let Some(cls) = classify_form(&form) {
            // Back-substitution: final-variable values for start parameters
            // (+-1, +-1) with one sign changed, plus the plain unit pair.
            let mut pairs: Vec<(BigUint, BigUint)> = Vec::new();
            for (xn, yn) in [(-1i32, 1i32), (1, -1), (1, 1)] {
                let xf = &p22 * BigInt::from(xn) - &p12 * BigInt::from(yn);
                let yf = -&p21 * BigInt::from(xn) + &p11 * BigInt::from(yn);
                let pair = (xf.magnitude().clone(), yf.magnitude().clone());
                if !pairs.contains(&pair) {
                    pairs.push(pair);
                }
            }
            let unit = (BigUint::one(), BigUint::one());
            if !pairs.contains(&unit) {
                pairs.push(unit);
            }
            for cand in candidates_for(&form, cls, steps, &pairs) {
                if best.as_ref().is_none_or(|b| cand.x < b.x) {
                    best = Some(cand);
                }
            }
        }
        match reduce_step(&form) {
            Ok((next, mv)) => {
                match mv {
                    Move::XShift => {
                        p12 = &p11 + &p12;
                        p22 = &p21 + &p22;
                    }
                    Move::YShift => {
                        p11 = &p11 + &p12;
                        p21 = &p21 + &p22;
                    }
                }
                log.push(mv);
                form = next;
                steps += 1;
                if steps > budget {
                    break;
                }
            }
            Err(Error::UltimateFormReached(_)) => break,
            Err(e) => return Err(e),
        }
    }
    let Some(c) = best else {
        return Err(Error::Unclassifiable { radicand, steps });
    };
    let solution = PellSolution::verified(
        radicand,
        c.x.magnitude().clone(),
        c.y.magnitude().clone(),
        1,
    )?;
    Ok(InverseSolve {
        solution,
        cls: c.cls,
        steps: c.steps,
        params: c.params,
        representation: c.representation,
        log,
    })
}

/// Verified solution candidates a classified form offers for the given
/// back-substituted value pairs.
fn candidates_for(
    form: &BQForm,
    cls: FormClass,
    steps: usize,
    pairs: &[(BigUint, BigUint)],
) -> Vec<Candidate> {
    let radicand = form.radicand;
    let mut out = Vec::new();
    let mut push_distinctive = |a: &BigInt, b: &BigInt, l: &BigUint, m: &BigUint| {
        let (Some(au), Some(bu)) = (a.to_biguint(), b.to_biguint()) else {
            return;
        };
        let Ok(p) = DistinctiveParams::new(cls, au, bu, l.clone(), m.clone()) else {
            return;
        };
        let solved = match cls {
            FormClass::EqualSquares => crate::cases::solve_4n1(&p),
            FormClass::DoubleSquares => crate::cases::solve_8n3(&p),
            FormClass::SumEqualsCross => crate::cases::solve_8n7(&p),
            _ => unreachable!(),
        };
        if let Ok(s) = solved {
            if s.radicand == radicand {
                let representation = representation_of(cls, a, b);
                out.push(Candidate {
                    x: s.x.clone().into(),
                    y: s.y.clone().into(),
                    cls,
                    steps,
                    params: InverseParams::Distinctive(p),
                    representation,
                });
            }
        }
    };
    match cls {
        FormClass::EqualSquares => {
            let a = form.a.abs();
            let b = form.b.clone();
            for (u, v) in pairs {
                push_distinctive(&a, &b, u, v);
                push_distinctive(&a, &b, v, u);
            }
        }
        FormClass::DoubleSquares => {
            let a = form.a.abs();
            let two = BigInt::from(2);
            let mut opts = Vec::new();
            if form.b == &two * &form.c {
                opts.push(form.c.clone());
            }
            if form.c == &two * &form.b {
                opts.push(form.b.clone());
            }
            for b in opts {
                for (u, v) in pairs {
                    push_distinctive(&a, &b, u, v);
                    push_distinctive(&a, &b, v, u);
                }
            }
        }
        FormClass::SumEqualsCross => {
            for (b, other) in [(&form.c, &form.b), (&form.b, &form.c)] {
                let num = other + BigInt::from(3) * b;
                if (&num % BigInt::from(2)).is_zero() {
                    let a = num / BigInt::from(2);
                    for (u, v) in pairs {
                        for (mz, z) in [(v, u), (u, v)] {
                            let l = mz + z;
                            push_distinctive(&a, b, &l, mz);
                        }
                    }
                }
            }
        }
        FormClass::NoCross | FormClass::SquareEqualsCross => {
            composite_candidates(form, cls, steps, pairs, &mut out);
        }
    }
    out
}

fn representation_of(cls: FormClass, a: &BigInt, b: &BigInt) -> Option<Representation> {
    let (a, b) = (a.to_u64()?, b.to_u64()?);
    match cls {
        FormClass::EqualSquares => Some(Representation::SumSq { a, b }),
        FormClass::DoubleSquares => Some(Representation::Sum2Sq { a, b }),
        FormClass::SumEqualsCross => Some(Representation::Diff2Sq { a, b }),
        _ => None,
    }
}

/// Factor-pair recovery for classes IV and V: every plausible `(S, Q)`
/// assignment is tested against both the even (`= 1`) and odd (`= +-2`)
/// conditions, and for class V also through the reshaped pair
/// `p2 = cross/2`, `p1 = 2 * other + p2`. The Pell identity is the final
/// filter, so a generous candidate set is harmless.
fn composite_candidates(
    form: &BQForm,
    cls: FormClass,
    steps: usize,
    pairs: &[(BigUint, BigUint)],
    out: &mut Vec<Candidate>,
) {
    let radicand = form.radicand;
    let big_a = BigInt::from(radicand);
    let mut try_pair = |p1: &BigInt, p2: &BigInt, s: &BigUint, q: &BigUint| {
        if p1.is_negative() || p2.is_negative() {
            return;
        }
        let sb = BigInt::from(s.clone());
        let qb = BigInt::from(q.clone());
        let cond = p1 * &sb * &sb - p2 * &qb * &qb;
        let (x, y) = if cond.is_one() {
            // y + 1 = 2 p1 S^2, y - 1 = 2 p2 Q^2
            (
                BigInt::from(2) * &qb * &sb,
                BigInt::from(2) * p1 * &sb * &sb - BigInt::one(),
            )
        } else if cond.abs() == BigInt::from(2) {
            (
                &sb * &qb,
                (p1 * &sb * &sb + p2 * &qb * &qb) / BigInt::from(2),
            )
        } else {
            return;
        };
        if x.is_zero() {
            return;
        }
        if &y * &y - &big_a * &x * &x != BigInt::one() {
            return;
        }
        let (Some(p1u), Some(p2u)) = (p1.to_u64(), p2.to_u64()) else {
            return;
        };
        let representation = (gcd_u64(p1u, p2u) == 1 && p1u.checked_mul(p2u) == Some(radicand))
            .then_some(Representation::CoprimeFactors { p1: p1u, p2: p2u });
        out.push(Candidate {
            x,
            y,
            cls,
            steps,
            params: InverseParams::FactorPair {
                p1: p1u,
                p2: p2u,
                s: s.clone(),
                q: q.clone(),
                cond: cond.to_i64().unwrap_or_default(),
            },
            representation,
        });
    };
    for (u, v) in pairs {
        for (s, q) in [(u, v), (v, u)] {
            try_pair(&form.b, &form.c, s, q);
            try_pair(&form.c, &form.b, s, q);
        }
    }
    if cls == FormClass::SquareEqualsCross {
        let two = BigInt::from(2);
        let cross = &two * form.a.abs();
        let mut reshaped = Vec::new();
        if form.c == cross && (&form.c % &two).is_zero() {
            let p2 = &form.c / &two;
            reshaped.push((&two * &form.b + &p2, p2));
        }
        if form.b == cross && (&form.b % &two).is_zero() {
            let p2 = &form.b / &two;
            reshaped.push((&two * &form.c + &p2, p2));
        }
        for (p1, p2) in reshaped {
            for (u, v) in pairs {
                // reshaped coordinates: q-transform Q = S + 2q ...
                for (s, qq) in [(v, u), (u, v)] {
                    let q_full = s + &(BigUint::from(2u32) * qq);
                    try_pair(&p1, &p2, s, &q_full);
                }
                // ... and the factor pair applied to the values directly
                for (s, q) in [(u, v), (v, u)] {
                    try_pair(&p1, &p2, s, q);
                }
            }
        }
    }
}

/// Renders the reduction walk from `form`, one numbered substitution per
/// line, stopping at the first unit form or after `max_steps` moves.
pub fn reduction_transcript(form: &BQForm, max_steps: usize) -> (String, BQForm) {
    let mut f = form.clone();
    let mut lines = Vec::new();
    for i in 1..=max_steps {
        match reduce_step(&f) {
            Ok((next, mv)) => {
                let subst = match mv {
                    Move::XShift => "X = Y + X'",
                    Move::YShift => "Y = X + Y'",
                };
                lines.push(format!("{i}) {subst}  =>  {next}"));
                f = next;
            }
            Err(_) => break,
        }
    }
    (lines.join("\n"), f)
}
