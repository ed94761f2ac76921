//! Horizontal and vertical solution families: one verified seed yields
//! infinitely many `(A_i, x_i)` pairs.
//!
//! A family fixes coprime `(l, m)` and shifts the representation
//! `(a_i, b_i) = (a_0 + ik, b_0 + it)`, which preserves the distinctive
//! condition `b k - a t = +-1` verbatim; the solution formulas then move
//! linearly in `i`. Vertical generators produce seed representations in
//! closed form from a unimodular-style side condition such as
//! `ld - mg = +-1`.

use crate::error::{Error, Result};
use crate::forms::FormClass;
use crate::minus3::Minus3Family;
use crate::solution::PellSolution;
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A family of Pell solutions over shifted representations.
#[derive(Debug, Clone)]
pub struct SolutionFamily {
    pub cls: FormClass,
    pub l: BigInt,
    pub m: BigInt,
    /// Derived pair rewriting the distinctive condition as `bk - at = +-1`.
    pub k: BigInt,
    pub t: BigInt,
    /// Family modulus: `x` moves by `|S^3|` per unit shift. Signed for the
    /// difference class, where `l^2 - 2m^2` may be negative.
    pub s: BigInt,
    pub a0: BigInt,
    pub b0: BigInt,
    /// Signed right side of the seed condition; shifts never change it.
    pub sign: i8,
}

/// One emitted family member, verified at construction.
#[derive(Debug, Clone)]
pub struct FamilyPoint {
    pub i: i64,
    pub radicand: BigUint,
    pub x: BigUint,
    pub y: BigUint,
    pub a_i: BigInt,
    pub b_i: BigInt,
    /// Set when the shifted index is the `i = -1` neighbor, which the
    /// minimality statement explicitly excludes.
    pub minimality_excluded: bool,
}

impl FamilyPoint {
    /// Converts to a [`PellSolution`] when the radicand fits the solver's
    /// working range.
    pub fn to_solution(&self) -> Option<PellSolution> {
        let a = self.radicand.to_u64()?;
        PellSolution::verified(a, self.x.clone(), self.y.clone(), 1).ok()
    }
}

impl SolutionFamily {
    /// Builds a family from a seed representation, deriving `(k, t, S)` for
    /// the class and validating the seed condition exactly.
    pub fn new(cls: FormClass, l: i64, m: i64, a0: BigInt, b0: BigInt) -> Result<Self> {
        Self::from_big(cls, BigInt::from(l), BigInt::from(m), a0, b0)
    }

    pub fn from_big(cls: FormClass, l: BigInt, m: BigInt, a0: BigInt, b0: BigInt) -> Result<Self> {
        let two = BigInt::from(2);
        let (k, t, s) = match cls {
            FormClass::EqualSquares => (&l * &l - &m * &m, &two * &l * &m, &l * &l + &m * &m),
            FormClass::DoubleSquares => (
                (&l * &l - &two * &m * &m).abs(),
                &two * &l * &m,
                &l * &l + &two * &m * &m,
            ),
            FormClass::SumEqualsCross => (
                &l * &l + &two * &m * &m,
                &two * &l * &m,
                &l * &l - &two * &m * &m,
            ),
            other => {
                return Err(Error::ConditionViolated(format!(
                    "representation families exist for classes I-III, not {other:?}"
                )))
            }
        };
        let cond = match cls {
            // bk - at = +-1 for the sum classes, at - bk for the difference
            FormClass::SumEqualsCross => &a0 * &t - &b0 * &k,
            _ => &b0 * &k - &a0 * &t,
        };
        let sign = if cond.is_one() {
            1
        } else if cond == BigInt::from(-1) {
            -1
        } else {
            return Err(Error::ConditionViolated(format!(
                "seed fails bk - at = +-1: got {cond} for l={l} m={m} a0={a0} b0={b0}"
            )));
        };
        Ok(SolutionFamily {
            cls,
            l,
            m,
            k,
            t,
            s,
            a0,
            b0,
            sign,
        })
    }

    /// Whether the derived `(k, t)` is the minimal positive solution of the
    /// seed condition in the sense required by the minimality statement:
    /// `|k| < |a0|` and `|t| < |b0|`.
    pub fn seed_is_minimal(&self) -> bool {
        self.k.abs() < self.a0.abs() && self.t.abs() < self.b0.abs()
    }

    /// Shifts the representation by `i` and returns the verified member.
    pub fn shift(&self, i: i64) -> Result<FamilyPoint> {
        let ib = BigInt::from(i);
        let a_i = &self.a0 + &ib * &self.k;
        let b_i = &self.b0 + &ib * &self.t;
        let two = BigInt::from(2);
        let (radicand, x, y) = match self.cls {
            FormClass::EqualSquares => {
                let radicand = &a_i * &a_i + &b_i * &b_i;
                let inner = &b_i * &self.t + &a_i * &self.k;
                let x = &two * inner.abs() * &self.s;
                let y = &two * &radicand * &self.s * &self.s - BigInt::one();
                (radicand, x, y)
            }
            FormClass::DoubleSquares => {
                let radicand = &a_i * &a_i + &two * &b_i * &b_i;
                let inner = &a_i * &self.k + &two * &b_i * &self.t;
                let x = inner.abs() * &self.s;
                let y = &radicand * &self.s * &self.s - BigInt::one();
                (radicand, x, y)
            }
            FormClass::SumEqualsCross => {
                let radicand = &a_i * &a_i - &two * &b_i * &b_i;
                let inner = &a_i * &self.k - &two * &b_i * &self.t;
                let x = (inner * &self.s).abs();
                let y = &radicand * &self.s * &self.s + BigInt::one();
                (radicand, x, y)
            }
            _ => unreachable!("constructor admits classes I-III only"),
        };
        if !radicand.is_positive() {
            return Err(Error::SquareTarget(format!(
                "A_{i} = {radicand} is outside the equation's domain"
            )));
        }
        if let Some(root) = crate::arith::exact_sqrt_bigint(&radicand) {
            return Err(Error::SquareTarget(format!(
                "A_{i} = {radicand} = {root}^2"
            )));
        }
        let lhs = &y * &y - &radicand * &x * &x;
        if lhs != BigInt::one() {
            return Err(Error::IdentityViolated(format!(
                "family member i={i}: y^2 - A x^2 = {lhs} (A = {radicand})"
            )));
        }
        Ok(FamilyPoint {
            i,
            radicand: radicand.magnitude().clone(),
            x: x.magnitude().clone(),
            y: y.magnitude().clone(),
            a_i,
            b_i,
            minimality_excluded: i == -1,
        })
    }
}

/// Composite-radicand family: shifted coprime factor pairs.
#[derive(Debug, Clone)]
pub struct CompositeFamily {
    /// Even case (`p1 S^2 - p2 Q^2 = 1`, `x = 2QS`) or odd case
    /// (`... = +-2`, `x = SQ`).
    pub even: bool,
    pub p01: BigInt,
    pub p02: BigInt,
    pub s: BigInt,
    pub q: BigInt,
    /// Signed condition value of the seed: `1` or `+-2`.
    pub cond: i64,
}

#[derive(Debug, Clone)]
pub struct CompositePoint {
    pub i: i64,
    pub p1: BigInt,
    pub p2: BigInt,
    pub radicand: BigUint,
    pub x: BigUint,
    pub y: BigUint,
}

impl CompositeFamily {
    pub fn new(even: bool, p01: BigInt, p02: BigInt, s: BigInt, q: BigInt) -> Result<Self> {
        let c = &p01 * &s * &s - &p02 * &q * &q;
        let expected: &[i64] = if even { &[1] } else { &[2, -2] };
        let cond = c.to_i64().filter(|v| expected.contains(v)).ok_or_else(|| {
            Error::ConditionViolated(format!("p1 S^2 - p2 Q^2 = {c}, expected {expected:?}"))
        })?;
        if s.is_zero() || q.is_zero() {
            return Err(Error::ConditionViolated("S and Q must be nonzero".into()));
        }
        if !even {
            let two: BigInt = 2.into();
            if (&s % &two).is_zero() || (&q % &two).is_zero() {
                return Err(Error::ConditionViolated(
                    "odd-case families need odd S and Q".into(),
                ));
            }
        }
        Ok(CompositeFamily {
            even,
            p01,
            p02,
            s,
            q,
            cond,
        })
    }

    /// `p1_i = p01 + iQ^2`, `p2_i = p02 + iS^2`; the condition value is
    /// carried over verbatim and `x` stays constant across the family.
    pub fn shift(&self, i: i64) -> Result<CompositePoint> {
        let ib = BigInt::from(i);
        let p1 = &self.p01 + &ib * &self.q * &self.q;
        let p2 = &self.p02 + &ib * &self.s * &self.s;
        if !p1.is_positive() || !p2.is_positive() {
            return Err(Error::NonPositiveFactor(format!(
                "i={i} gives p1={p1}, p2={p2}"
            )));
        }
        let radicand = &p1 * &p2;
        if let Some(root) = crate::arith::exact_sqrt_bigint(&radicand) {
            return Err(Error::SquareTarget(format!(
                "A_{i} = {radicand} = {root}^2"
            )));
        }
        let (x, y) = if self.even {
            (
                BigInt::from(2) * &self.q * &self.s,
                BigInt::from(2) * &p1 * &self.s * &self.s - BigInt::one(),
            )
        } else {
            (
                &self.s * &self.q,
                (&p1 * &self.s * &self.s + &p2 * &self.q * &self.q) / BigInt::from(2),
            )
        };
        let lhs = &y * &y - &radicand * &x * &x;
        if lhs != BigInt::one() {
            return Err(Error::IdentityViolated(format!(
                "composite member i={i}: y^2 - A x^2 = {lhs}"
            )));
        }
        Ok(CompositePoint {
            i,
            p1,
            p2,
            radicand: radicand.magnitude().clone(),
            x: x.magnitude().clone(),
            y: y.magnitude().clone(),
        })
    }
}

fn unimodular_sign(cond: &BigInt, what: &str) -> Result<i64> {
    cond.to_i64()
        .filter(|v| *v == 1 || *v == -1)
        .ok_or_else(|| Error::ConditionViolated(format!("{what} = {cond}, expected +-1")))
}

/// Seed representation for the equal-squares class:
/// `b0 = m g^3 + l d^3`, `a0 = -(1/2)(m d^3 - l g^3 -+ 3gd)` under
/// `ld - mg = +-1`, the inner sign tied to the condition's.
pub fn vertical_4n1(g: i64, d: i64, l: i64, m: i64) -> Result<(BigInt, BigInt)> {
    let (gb, db, lb, mb) = big4(g, d, l, m);
    let sigma = unimodular_sign(&(&lb * &db - &mb * &gb), "ld - mg")?;
    let b0 = &mb * &gb * &gb * &gb + &lb * &db * &db * &db;
    let bracket =
        &mb * &db * &db * &db - &lb * &gb * &gb * &gb - BigInt::from(3 * sigma) * &gb * &db;
    if !(&bracket % BigInt::from(2)).is_zero() {
        return Err(Error::ParityViolation(format!(
            "md^3 - lg^3 -+ 3gd = {bracket}"
        )));
    }
    let a0 = -bracket / BigInt::from(2);
    Ok((a0, b0))
}

/// Seed for the double-squares class: `b0 = 4 m g1^3 + l d^3`,
/// `a0 = |m d^3 - 2 l g1^3 -+ 3 g1 d|` under `ld - 2 m g1 = +-1`.
pub fn vertical_8n3(g1: i64, d: i64, l: i64, m: i64) -> Result<(BigInt, BigInt)> {
    let (gb, db, lb, mb) = big4(g1, d, l, m);
    let sigma = unimodular_sign(&(&lb * &db - BigInt::from(2) * &mb * &gb), "ld - 2m g1")?;
    let b0 = BigInt::from(4) * &mb * &gb * &gb * &gb + &lb * &db * &db * &db;
    let a0 = (&mb * &db * &db * &db
        - BigInt::from(2) * &lb * &gb * &gb * &gb
        - BigInt::from(3 * sigma) * &gb * &db)
        .abs();
    Ok((a0, b0))
}

/// Seed for the difference class: `a0 = m d^3 - 2 l g1^3 +- 3 g1 d`,
/// `b0 = l d^3 - 4 m g1^3` under `ld - 2 m g1 = +-1`.
pub fn vertical_8n7(g1: i64, d: i64, l: i64, m: i64) -> Result<(BigInt, BigInt)> {
    let (gb, db, lb, mb) = big4(g1, d, l, m);
    let sigma = unimodular_sign(&(&lb * &db - BigInt::from(2) * &mb * &gb), "ld - 2m g1")?;
    let a0 = &mb * &db * &db * &db - BigInt::from(2) * &lb * &gb * &gb * &gb
        + BigInt::from(3 * sigma) * &gb * &db;
    let b0 = &lb * &db * &db * &db - BigInt::from(4) * &mb * &gb * &gb * &gb;
    Ok((a0, b0))
}

/// Seed factor pair for composite families: even case
/// `p01 = m^2 (3Ql - Sm)`, `p02 = l^2 (3Sm - Ql)`; odd case doubles both.
/// Valid under `Ql - Sm = 1`.
pub fn vertical_composite(l: i64, m: i64, q: i64, s: i64, even: bool) -> Result<(BigInt, BigInt)> {
    let (lb, mb, qb, sb) = big4(l, m, q, s);
    let cond = &qb * &lb - &sb * &mb;
    if !cond.is_one() {
        return Err(Error::ConditionViolated(format!(
            "Ql - Sm = {cond}, expected 1"
        )));
    }
    let three = BigInt::from(3);
    let p01 = &mb * &mb * (&three * &qb * &lb - &sb * &mb);
    let p02 = &lb * &lb * (&three * &sb * &mb - &qb * &lb);
    if even {
        Ok((p01, p02))
    } else {
        Ok((BigInt::from(2) * p01, BigInt::from(2) * p02))
    }
}

fn big4(a: i64, b: i64, c: i64, d: i64) -> (BigInt, BigInt, BigInt, BigInt) {
    (a.into(), b.into(), c.into(), d.into())
}

/// The closed-form identity families. Each derives `(g, d, l, m)` from its
/// free variables so that the side condition holds identically, then feeds
/// the matching vertical generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyId {
    /// Equal squares, `d = 1`, `l = mg +- 1`; free `(g, m, sign)`.
    Es1,
    /// Equal squares, `d = g - 1`, `l = gT + 1`, `m = T(g-1) + 1`;
    /// free `(g, T)`.
    Es2,
    /// Equal squares, `g = rd -+ 1`, `m = 2dT + 1`, `l = rm -+ 2T`;
    /// free `(r, d, T, sign)`.
    Es3,
    /// Equal squares through nested offsets: `g = J + T(J-1)`, `d = J - 1`,
    /// `l = 2g n1 + (TJ + J + 1)`, `m = 2d n1 + J`; free `(J, T, n1)`.
    Es4,
    /// Equal squares, `l = n1 + Tm`, `g = 1 + dT`, `m = n1 d -+ 1`;
    /// free `(n1, d, T, sign)`.
    Es5,
    /// Double squares, `d = 1`, `l = 2 g1 m +- 1`; free `(g1, m, sign)`.
    Ds1,
    /// Double squares, `d = 2T g1 +- 1`, `l = 2 g1 K + 1`, `m = Tl +- K`;
    /// free `(g1, K, T, sign)`.
    Ds2,
    /// Difference class, `d = 1`, `m = 1`, `l = 2 g1 + 1`; free `g1`.
    Df1,
    /// Difference class, `d = 1`, `m = 2 g1`, `l = 4 g1^2 +- 1`;
    /// free `(g1, sign)`.
    Df2,
    /// Right side -3, `d = 1`, `l = 3gm + 1`; free `(g, m)`.
    M3,
}

impl std::str::FromStr for FamilyId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "es1" => FamilyId::Es1,
            "es2" => FamilyId::Es2,
            "es3" => FamilyId::Es3,
            "es4" => FamilyId::Es4,
            "es5" => FamilyId::Es5,
            "ds1" => FamilyId::Ds1,
            "ds2" => FamilyId::Ds2,
            "df1" => FamilyId::Df1,
            "df2" => FamilyId::Df2,
            "m3" => FamilyId::M3,
            other => return Err(Error::UnknownFamily(other.into())),
        })
    }
}

/// Free variables for [`identity_family`]; families read the fields they
/// need and reject missing ones.
#[derive(Debug, Clone, Copy, Default)]
pub struct FamilyParams {
    pub g: Option<i64>,
    pub g1: Option<i64>,
    pub d: Option<i64>,
    pub m: Option<i64>,
    pub t: Option<i64>,
    pub k: Option<i64>,
    pub j: Option<i64>,
    pub n1: Option<i64>,
    pub r: Option<i64>,
    /// Top (`+1`) or bottom (`-1`) sign branch; defaults to top.
    pub top: bool,
}

impl FamilyParams {
    fn req(&self, field: Option<i64>, name: &str, id: FamilyId) -> Result<i64> {
        field.ok_or_else(|| {
            Error::ConditionViolated(format!("family {id:?} requires parameter `{name}`"))
        })
    }
}

/// A constructed identity-family seed.
#[derive(Debug, Clone)]
pub enum FamilySeed {
    Pell(SolutionFamily),
    Minus3(Minus3Family),
}

/// Instantiates one of the parametric identity families.
pub fn identity_family(id: FamilyId, p: &FamilyParams) -> Result<FamilySeed> {
    let sign: i64 = if p.top { 1 } else { -1 };
    let pell = |cls: FormClass, g: i64, d: i64, l: i64, m: i64| -> Result<FamilySeed> {
        let (a0, b0) = match cls {
            FormClass::EqualSquares => vertical_4n1(g, d, l, m)?,
            FormClass::DoubleSquares => vertical_8n3(g, d, l, m)?,
            FormClass::SumEqualsCross => vertical_8n7(g, d, l, m)?,
            _ => unreachable!(),
        };
        Ok(FamilySeed::Pell(SolutionFamily::new(cls, l, m, a0, b0)?))
    };
    match id {
        FamilyId::Es1 => {
            let (g, m) = (p.req(p.g, "g", id)?, p.req(p.m, "m", id)?);
            pell(FormClass::EqualSquares, g, 1, m * g + sign, m)
        }
        FamilyId::Es2 => {
            let (g, t) = (p.req(p.g, "g", id)?, p.req(p.t, "t", id)?);
            pell(
                FormClass::EqualSquares,
                g,
                g - 1,
                g * t + 1,
                t * (g - 1) + 1,
            )
        }
        FamilyId::Es3 => {
            let (r, d, t) = (
                p.req(p.r, "r", id)?,
                p.req(p.d, "d", id)?,
                p.req(p.t, "t", id)?,
            );
            let g = r * d - sign;
            let m = 2 * d * t + 1;
            let l = r * m - sign * 2 * t;
            pell(FormClass::EqualSquares, g, d, l, m)
        }
        FamilyId::Es4 => {
            let (j, t, n1) = (
                p.req(p.j, "j", id)?,
                p.req(p.t, "t", id)?,
                p.req(p.n1, "n1", id)?,
            );
            let g = j + t * (j - 1);
            let d = j - 1;
            let r = t * j + j + 1;
            let l = 2 * g * n1 + r;
            let m = 2 * d * n1 + j;
            pell(FormClass::EqualSquares, g, d, l, m)
        }
        FamilyId::Es5 => {
            let (n1, d, t) = (
                p.req(p.n1, "n1", id)?,
                p.req(p.d, "d", id)?,
                p.req(p.t, "t", id)?,
            );
            let m = n1 * d - sign;
            let g = 1 + d * t;
            let l = n1 + t * m;
            pell(FormClass::EqualSquares, g, d, l, m)
        }
        FamilyId::Ds1 => {
            let (g1, m) = (p.req(p.g1, "g1", id)?, p.req(p.m, "m", id)?);
            pell(FormClass::DoubleSquares, g1, 1, 2 * g1 * m + sign, m)
        }
        FamilyId::Ds2 => {
            let (g1, k, t) = (
                p.req(p.g1, "g1", id)?,
                p.req(p.k, "k", id)?,
                p.req(p.t, "t", id)?,
            );
            let d = 2 * t * g1 + sign;
            let l = 2 * g1 * k + 1;
            let m = t * l + sign * k;
            pell(FormClass::DoubleSquares, g1, d, l, m)
        }
        FamilyId::Df1 => {
            let g1 = p.req(p.g1, "g1", id)?;
            pell(FormClass::SumEqualsCross, g1, 1, 2 * g1 + 1, 1)
        }
        FamilyId::Df2 => {
            let g1 = p.req(p.g1, "g1", id)?;
            pell(FormClass::SumEqualsCross, g1, 1, 4 * g1 * g1 + sign, 2 * g1)
        }
        FamilyId::M3 => {
            let (g, m) = (p.req(p.g, "g", id)?, p.req(p.m, "m", id)?);
            let l = 3 * g * m + 1;
            let (a0, b0) = crate::minus3::vertical_minus3(g, 1, l, m)?;
            Ok(FamilySeed::Minus3(Minus3Family::new(
                a0,
                b0,
                l.into(),
                m.into(),
            )?))
        }
    }
}
