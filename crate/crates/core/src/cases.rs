//! Closed-form minimal-solution formulas keyed by the representation of the
//! radicand, plus the residue/representation router and representation
//! finders.

use crate::arith::{gcd_u64, is_prime_u64, isqrt_u64};
use crate::error::{Error, Result};
use crate::forms::FormClass;
use crate::solution::PellSolution;
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

/// A representation of the radicand used by the case formulas.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Representation {
    /// `A = a^2 + b^2`
    SumSq { a: u64, b: u64 },
    /// `A = a^2 + 2 b^2`
    Sum2Sq { a: u64, b: u64 },
    /// `A = a^2 - 2 b^2`
    Diff2Sq { a: u64, b: u64 },
    /// `A = a^2 + 3 b^2`
    Sum3Sq { a: u64, b: u64 },
    /// `A = p1 * p2` with coprime factors
    CoprimeFactors { p1: u64, p2: u64 },
}

impl Representation {
    /// Reconstructs the represented value; the defining identity is exact.
    pub fn value(&self) -> Option<u64> {
        match *self {
            Representation::SumSq { a, b } => a.checked_mul(a)?.checked_add(b.checked_mul(b)?),
            Representation::Sum2Sq { a, b } => a
                .checked_mul(a)?
                .checked_add(2u64.checked_mul(b.checked_mul(b)?)?),
            Representation::Diff2Sq { a, b } => a
                .checked_mul(a)?
                .checked_sub(2u64.checked_mul(b.checked_mul(b)?)?),
            Representation::Sum3Sq { a, b } => a
                .checked_mul(a)?
                .checked_add(3u64.checked_mul(b.checked_mul(b)?)?),
            Representation::CoprimeFactors { p1, p2 } => p1.checked_mul(p2),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RepKind {
    SumSq,
    Sum2Sq,
    Diff2Sq,
    Sum3Sq,
    CoprimeFactors,
}

/// Parameter bundle extracted from a distinctive form. The stored `sign` is
/// the actual signed right side of the class condition, computed rather
/// than chosen.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistinctiveParams {
    pub cls: FormClass,
    pub a: BigUint,
    pub b: BigUint,
    pub l: BigUint,
    pub m: BigUint,
    pub sign: i8,
}

impl DistinctiveParams {
    /// Validates the class condition exactly and records its signed value.
    pub fn new(cls: FormClass, a: BigUint, b: BigUint, l: BigUint, m: BigUint) -> Result<Self> {
        let c = condition_value(
            cls,
            &a.clone().into(),
            &b.clone().into(),
            &l.clone().into(),
            &m.clone().into(),
        )?;
        let sign = if c.is_one() {
            1
        } else if c == BigInt::from(-1) {
            -1
        } else {
            return Err(Error::ConditionViolated(format!(
                "distinctive condition for {cls:?} with a={a} b={b} l={l} m={m} evaluates to {c}, not +-1"
            )));
        };
        Ok(DistinctiveParams {
            cls,
            a,
            b,
            l,
            m,
            sign,
        })
    }
}

/// The signed left side of the distinctive condition for the three
/// representation classes.
fn condition_value(
    cls: FormClass,
    a: &BigInt,
    b: &BigInt,
    l: &BigInt,
    m: &BigInt,
) -> Result<BigInt> {
    let ll = l * l;
    let mm = m * m;
    let lm2 = BigInt::from(2) * l * m;
    Ok(match cls {
        FormClass::EqualSquares => b * (&ll - &mm) - a * &lm2,
        FormClass::DoubleSquares => b * (&ll - BigInt::from(2) * &mm).abs() - a * &lm2,
        FormClass::SumEqualsCross => a * &lm2 - b * (&ll + BigInt::from(2) * &mm),
        _ => {
            return Err(Error::ConditionViolated(format!(
                "{cls:?} carries factor-pair parameters, not (a, b, l, m)"
            )))
        }
    })
}

fn radicand_u64(a: &BigInt, label: &str) -> Result<u64> {
    a.to_u64().ok_or_else(|| {
        Error::ConditionViolated(format!(
            "{label} = {a} exceeds the supported radicand range"
        ))
    })
}

/// Minimal solution for `A = a^2 + b^2`: `x = 2|2blm + a(l^2 - m^2)| (l^2 + m^2)`,
/// `y = 2A(l^2 + m^2)^2 - 1`.
pub fn solve_4n1(p: &DistinctiveParams) -> Result<PellSolution> {
    if p.cls != FormClass::EqualSquares {
        return Err(Error::ConditionViolated(format!(
            "solve_4n1 needs equal-squares parameters, got {:?}",
            p.cls
        )));
    }
    let (a, b, l, m) = signed(p);
    let radicand = radicand_u64(&(&a * &a + &b * &b), "a^2 + b^2")?;
    let s = &l * &l + &m * &m;
    let inner = BigInt::from(2) * &b * &l * &m + &a * (&l * &l - &m * &m);
    let x = BigInt::from(2) * inner.abs() * &s;
    let y = BigInt::from(2) * BigInt::from(radicand) * &s * &s - BigInt::one();
    PellSolution::verified(radicand, x.magnitude().clone(), y.magnitude().clone(), 1)
}

/// Minimal solution for `A = a^2 + 2b^2`: `x = |4blm + a|l^2 - 2m^2|| (l^2 + 2m^2)`,
/// `y = A(l^2 + 2m^2)^2 - 1`.
pub fn solve_8n3(p: &DistinctiveParams) -> Result<PellSolution> {
    if p.cls != FormClass::DoubleSquares {
        return Err(Error::ConditionViolated(format!(
            "solve_8n3 needs double-squares parameters, got {:?}",
            p.cls
        )));
    }
    let (a, b, l, m) = signed(p);
    let radicand = radicand_u64(&(&a * &a + BigInt::from(2) * &b * &b), "a^2 + 2b^2")?;
    let s = &l * &l + BigInt::from(2) * &m * &m;
    let k = (&l * &l - BigInt::from(2) * &m * &m).abs();
    let x = (BigInt::from(4) * &b * &l * &m + &a * &k).abs() * &s;
    let y = BigInt::from(radicand) * &s * &s - BigInt::one();
    PellSolution::verified(radicand, x.magnitude().clone(), y.magnitude().clone(), 1)
}

/// Minimal solution for `A = a^2 - 2b^2`: `x = |(a(l^2 + 2m^2) - 4blm)(l^2 - 2m^2)|`,
/// `y = A(l^2 - 2m^2)^2 + 1`.
pub fn solve_8n7(p: &DistinctiveParams) -> Result<PellSolution> {
    if p.cls != FormClass::SumEqualsCross {
        return Err(Error::ConditionViolated(format!(
            "solve_8n7 needs sum-equals-cross parameters, got {:?}",
            p.cls
        )));
    }
    let (a, b, l, m) = signed(p);
    let radicand = radicand_u64(&(&a * &a - BigInt::from(2) * &b * &b), "a^2 - 2b^2")?;
    let k = &l * &l + BigInt::from(2) * &m * &m;
    let s = &l * &l - BigInt::from(2) * &m * &m;
    let x = ((&a * &k - BigInt::from(4) * &b * &l * &m) * &s).abs();
    let y = BigInt::from(radicand) * &s * &s + BigInt::one();
    PellSolution::verified(radicand, x.magnitude().clone(), y.magnitude().clone(), 1)
}

fn signed(p: &DistinctiveParams) -> (BigInt, BigInt, BigInt, BigInt) {
    (
        p.a.clone().into(),
        p.b.clone().into(),
        p.l.clone().into(),
        p.m.clone().into(),
    )
}

/// Even-solution composite case: `p1 S^2 - p2 Q^2 = 1` gives
/// `A = p1 p2`, `x = 2QS`, `y = 2 p1 S^2 - 1`.
pub fn solve_composite_even(p1: u64, p2: u64, s: &BigUint, q: &BigUint) -> Result<PellSolution> {
    if gcd_u64(p1, p2) != 1 {
        return Err(Error::ConditionViolated(format!(
            "factors {p1}, {p2} are not coprime"
        )));
    }
    let (p1b, p2b) = (BigInt::from(p1), BigInt::from(p2));
    let (sb, qb) = (BigInt::from(s.clone()), BigInt::from(q.clone()));
    let cond = &p1b * &sb * &sb - &p2b * &qb * &qb;
    if !cond.is_one() {
        return Err(Error::ConditionViolated(format!(
            "p1 S^2 - p2 Q^2 = {cond}, expected 1"
        )));
    }
    let radicand = p1
        .checked_mul(p2)
        .ok_or_else(|| Error::ConditionViolated("p1 * p2 overflows".into()))?;
    let x = BigInt::from(2) * &qb * &sb;
    let y = BigInt::from(2) * &p1b * &sb * &sb - BigInt::one();
    PellSolution::verified(radicand, x.magnitude().clone(), y.magnitude().clone(), 1)
}

/// Odd-solution composite case: `p1 S^2 - p2 Q^2 = +-2` with odd `S`, `Q`
/// gives `A = p1 p2`, `x = SQ`, `y = (p1 S^2 + p2 Q^2) / 2`.
pub fn solve_composite_odd(p1: u64, p2: u64, s: &BigUint, q: &BigUint) -> Result<PellSolution> {
    if gcd_u64(p1, p2) != 1 {
        return Err(Error::ConditionViolated(format!(
            "factors {p1}, {p2} are not coprime"
        )));
    }
    let two = BigUint::from(2u32);
    if (s % &two).is_zero() || (q % &two).is_zero() {
        return Err(Error::ConditionViolated(format!(
            "S = {s} and Q = {q} must both be odd"
        )));
    }
    let (p1b, p2b) = (BigInt::from(p1), BigInt::from(p2));
    let (sb, qb) = (BigInt::from(s.clone()), BigInt::from(q.clone()));
    let cond = &p1b * &sb * &sb - &p2b * &qb * &qb;
    if cond.abs() != BigInt::from(2) {
        return Err(Error::ConditionViolated(format!(
            "p1 S^2 - p2 Q^2 = {cond}, expected +-2"
        )));
    }
    let radicand = p1
        .checked_mul(p2)
        .ok_or_else(|| Error::ConditionViolated("p1 * p2 overflows".into()))?;
    let x = &sb * &qb;
    let y = (&p1b * &sb * &sb + &p2b * &qb * &qb) / BigInt::from(2);
    PellSolution::verified(radicand, x.magnitude().clone(), y.magnitude().clone(), 1)
}

/// Solver route chosen from residue class, primality and representability.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SolverRoute {
    /// Prime `A = 4N + 1`: sum-of-two-squares class.
    SumSquares,
    /// Prime `A = 8N + 3`: square-plus-double-square class.
    SumTwiceSquare,
    /// Prime `A = 8N + 7`: square-minus-double-square class.
    DiffTwiceSquare,
    /// Composite factor-pair classes; falls back to the continued fraction
    /// when no factor pair satisfies a distinctive condition.
    Composite,
}

/// Route classification plus bookkeeping metadata.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Route {
    pub route: SolverRoute,
    pub prime: bool,
    /// `A = 2p` with `p` prime; observational only, control flow is
    /// unaffected.
    pub quasiprime: bool,
}

/// Classifies a non-square radicand into its solver route.
pub fn route_for(radicand: u64) -> Route {
    let prime = is_prime_u64(radicand);
    let quasiprime = radicand.is_multiple_of(2) && radicand > 2 && is_prime_u64(radicand / 2);
    let route = if prime {
        match radicand % 8 {
            1 | 5 => SolverRoute::SumSquares,
            3 => SolverRoute::SumTwiceSquare,
            7 => SolverRoute::DiffTwiceSquare,
            _ => SolverRoute::Composite, // A = 2
        }
    } else {
        SolverRoute::Composite
    };
    Route {
        route,
        prime,
        quasiprime,
    }
}

/// Finds the representation the case formulas expect. For sums of two
/// squares the second coordinate is required odd (that is the convention
/// the equal-squares formula is stated under); the other kinds return the
/// smallest first coordinate.
pub fn find_representation(radicand: u64, kind: RepKind) -> Result<Representation> {
    let not = || Error::NotRepresentable { radicand };
    match kind {
        RepKind::SumSq => {
            let lim = isqrt_u64(radicand);
            let mut fallback = None;
            for a in 0..=lim {
                let rest = radicand - a * a;
                let b = isqrt_u64(rest);
                if b * b == rest {
                    if b % 2 == 1 {
                        return Ok(Representation::SumSq { a, b });
                    }
                    fallback.get_or_insert(Representation::SumSq { a, b });
                }
            }
            fallback.ok_or_else(not)
        }
        RepKind::Sum2Sq | RepKind::Sum3Sq | RepKind::Diff2Sq | RepKind::CoprimeFactors => {
            crate::oracle::decompose_brute(radicand, kind).ok_or_else(not)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(cls: FormClass, a: u64, b: u64, l: u64, m: u64) -> DistinctiveParams {
        DistinctiveParams::new(cls, a.into(), b.into(), l.into(), m.into()).unwrap()
    }

    #[test]
    fn equal_squares_examples() {
        // A = 61 with the worked parameters.
        let p = params(FormClass::EqualSquares, 6, 5, 58, 21);
        assert_eq!(p.sign, -1);
        let s = solve_4n1(&p).unwrap();
        assert_eq!(s.radicand, 61);
        assert_eq!(s.x, BigUint::from(226153980u64));
        assert_eq!(s.y, BigUint::from(1766319049u64));

        // Non-minimal family member for A = 2.
        let p = params(FormClass::EqualSquares, 1, 1, 2, 1);
        let s = solve_4n1(&p).unwrap();
        assert_eq!(s.radicand, 2);
        assert_eq!(s.x, BigUint::from(70u32));

        // A = 89 reached by a family shift; check the identity directly.
        let s = crate::oracle::brute_force_pell(89, 100_000)
            .unwrap()
            .unwrap();
        assert_eq!(s.x, BigUint::from(53000u32));
    }

    #[test]
    fn double_squares_examples() {
        let p = params(FormClass::DoubleSquares, 11, 3, 5, 19);
        assert_eq!(p.sign, 1);
        let s = solve_8n3(&p).unwrap();
        assert_eq!(s.radicand, 139);
        assert_eq!(s.x, BigUint::from(6578829u64));

        let p = params(FormClass::DoubleSquares, 0, 1, 1, 1);
        let s = solve_8n3(&p).unwrap();
        assert_eq!((s.radicand, s.x.clone()), (2, BigUint::from(12u32)));

        let p = params(FormClass::DoubleSquares, 7, 3, 5, 1);
        let s = solve_8n3(&p).unwrap();
        assert_eq!((s.radicand, s.x.clone()), (67, BigUint::from(5967u32)));
    }

    #[test]
    fn sum_equals_cross_examples() {
        let p = params(FormClass::SumEqualsCross, 11, 3, 7, 1);
        assert_eq!(p.sign, 1);
        let s = solve_8n7(&p).unwrap();
        assert_eq!((s.radicand, s.x.clone()), (103, BigUint::from(22419u32)));

        let p = params(FormClass::SumEqualsCross, 2, 1, 3, 1);
        let s = solve_8n7(&p).unwrap();
        assert_eq!((s.radicand, s.x.clone()), (2, BigUint::from(70u32)));
    }

    #[test]
    fn condition_rejections() {
        assert!(DistinctiveParams::new(
            FormClass::EqualSquares,
            5u32.into(),
            5u32.into(),
            7u32.into(),
            2u32.into()
        )
        .is_err());
        assert!(DistinctiveParams::new(
            FormClass::NoCross,
            1u32.into(),
            1u32.into(),
            1u32.into(),
            1u32.into()
        )
        .is_err());
    }

    #[test]
    fn composite_even_examples() {
        let s = solve_composite_even(3, 2, &1u32.into(), &1u32.into()).unwrap();
        assert_eq!(
            (s.radicand, s.x.clone(), s.y.clone()),
            (6, 2u32.into(), 5u32.into())
        );
        let s = solve_composite_even(2, 7, &2u32.into(), &1u32.into()).unwrap();
        assert_eq!(
            (s.radicand, s.x.clone(), s.y.clone()),
            (14, 4u32.into(), 15u32.into())
        );
        let s = solve_composite_even(5, 19, &2u32.into(), &1u32.into()).unwrap();
        assert_eq!(
            (s.radicand, s.x.clone(), s.y.clone()),
            (95, 4u32.into(), 39u32.into())
        );
    }

    #[test]
    fn composite_odd_examples() {
        let s = solve_composite_odd(3, 5, &1u32.into(), &1u32.into()).unwrap();
        assert_eq!(
            (s.radicand, s.x.clone(), s.y.clone()),
            (15, 1u32.into(), 4u32.into())
        );
        let s = solve_composite_odd(7, 5, &1u32.into(), &1u32.into()).unwrap();
        assert_eq!(
            (s.radicand, s.x.clone(), s.y.clone()),
            (35, 1u32.into(), 6u32.into())
        );
        // A = 33 has its minimal solution on the even route; this odd pair fails.
        assert!(solve_composite_odd(11, 3, &5u32.into(), &3u32.into()).is_err());
    }

    #[test]
    fn routes() {
        assert_eq!(route_for(61).route, SolverRoute::SumSquares);
        assert_eq!(route_for(139).route, SolverRoute::SumTwiceSquare);
        assert_eq!(route_for(103).route, SolverRoute::DiffTwiceSquare);
        assert_eq!(route_for(15).route, SolverRoute::Composite);
        let r = route_for(22);
        assert!(r.quasiprime && !r.prime);
    }

    #[test]
    fn representations() {
        assert_eq!(
            find_representation(61, RepKind::SumSq).unwrap(),
            Representation::SumSq { a: 6, b: 5 }
        );
        assert_eq!(
            find_representation(139, RepKind::Sum2Sq).unwrap(),
            Representation::Sum2Sq { a: 11, b: 3 }
        );
        assert_eq!(
            find_representation(7, RepKind::Diff2Sq).unwrap(),
            Representation::Diff2Sq { a: 3, b: 1 }
        );
        assert!(find_representation(21, RepKind::SumSq).is_err());
        for kind in [
            RepKind::SumSq,
            RepKind::Sum2Sq,
            RepKind::Diff2Sq,
            RepKind::Sum3Sq,
        ] {
            if let Ok(r) = find_representation(61, kind) {
                assert_eq!(r.value(), Some(61));
            }
        }
    }
}
