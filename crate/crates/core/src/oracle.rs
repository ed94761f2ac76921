//! Brute-force ground truth, kept deliberately independent of the
//! continued-fraction and form-reduction code paths. The only shared
//! machinery is big-integer arithmetic itself.

use crate::arith::{exact_sqrt_big, isqrt_u64, square_residue_u64};
use crate::cases::{RepKind, Representation};
use crate::error::{Error, Result};
use crate::solution::PellSolution;
use num_bigint::{BigInt, BigUint};

/// Smallest `x` in `[1, x_bound]` with `A x^2 + 1` a perfect square,
/// by linear scan with exact square testing. `None` when the bound is
/// exhausted; the bound is explicit so "absent within bound" is always
/// distinguishable from nonexistence.
pub fn brute_force_pell(radicand: u64, x_bound: u64) -> Result<Option<PellSolution>> {
    let k = isqrt_u64(radicand);
    if k * k == radicand {
        return Err(Error::PerfectSquare(radicand));
    }
    Ok(scan_rhs(radicand, 1, x_bound)
        .map(|(x, y)| PellSolution::verified(radicand, x, y, 1).expect("scan hit verifies")))
}

/// Smallest `x` in `[1, x_bound]` with `A x^2 + rhs` a non-negative perfect
/// square. Works for any integer right side.
pub fn brute_force_rhs(radicand: u64, rhs: i64, x_bound: u64) -> Option<(BigUint, BigUint)> {
    scan_rhs(radicand, rhs, x_bound)
}

fn scan_rhs(radicand: u64, rhs: i64, x_bound: u64) -> Option<(BigUint, BigUint)> {
    // Machine-word fast path while A x^2 + rhs fits in u64.
    let fast_limit = {
        let head = (u64::MAX - rhs.unsigned_abs()) / radicand.max(1);
        isqrt_u64(head).min(x_bound)
    };
    let mut x = 1u64;
    while x <= fast_limit {
        let t = radicand
            .checked_mul(x * x)
            .and_then(|v| v.checked_add_signed(rhs));
        if let Some(t) = t {
            if square_residue_u64(t) {
                let s = isqrt_u64(t);
                if s * s == t {
                    return Some((BigUint::from(x), BigUint::from(s)));
                }
            }
        }
        x += 1;
    }
    // Arbitrary-precision tail for the rare oversized scans.
    let a = BigUint::from(radicand);
    while x <= x_bound {
        let xx = BigUint::from(x) * BigUint::from(x);
        let t = BigInt::from(&a * xx) + rhs;
        if let Some(t) = t.to_biguint() {
            if let Some(s) = exact_sqrt_big(&t) {
                return Some((BigUint::from(x), s));
            }
        }
        x += 1;
    }
    None
}

/// Brahmagupta composition: from two solutions on the same radicand,
/// `(yY + AxX, yX + xY)` (plus sign) or the conjugate (minus sign).
pub fn compose(s1: &PellSolution, s2: &PellSolution, plus: bool) -> Result<PellSolution> {
    if s1.radicand != s2.radicand {
        return Err(Error::MixedRadicand(s1.radicand, s2.radicand));
    }
    let a = BigInt::from(s1.radicand);
    let (x1, y1) = (BigInt::from(s1.x.clone()), BigInt::from(s1.y.clone()));
    let (x2, y2) = (BigInt::from(s2.x.clone()), BigInt::from(s2.y.clone()));
    let (y, x) = if plus {
        (&y1 * &y2 + &a * &x1 * &x2, &y1 * &x2 + &x1 * &y2)
    } else {
        (&y1 * &y2 - &a * &x1 * &x2, &y1 * &x2 - &x1 * &y2)
    };
    PellSolution::verified(s1.radicand, x.magnitude().clone(), y.magnitude().clone(), 1)
}

/// Exhaustive representation search, smallest first coordinate wins.
/// Backs `cases::find_representation` as its independent cross-check.
pub fn decompose_brute(radicand: u64, kind: RepKind) -> Option<Representation> {
    match kind {
        RepKind::SumSq => {
            let lim = isqrt_u64(radicand);
            (0..=lim).find_map(|a| {
                let rest = radicand - a * a;
                let b = isqrt_u64(rest);
                (b * b == rest).then_some(Representation::SumSq { a, b })
            })
        }
        RepKind::Sum2Sq => {
            let lim = isqrt_u64(radicand);
            (0..=lim).find_map(|a| {
                let rest = radicand - a * a;
                if !rest.is_multiple_of(2) {
                    return None;
                }
                let b = isqrt_u64(rest / 2);
                (2 * b * b == rest).then_some(Representation::Sum2Sq { a, b })
            })
        }
        RepKind::Diff2Sq => {
            let r = isqrt_u64(radicand);
            let lo = if r * r >= radicand { r } else { r + 1 };
            (lo..=radicand).find_map(|a| {
                let rest = a * a - radicand;
                if !rest.is_multiple_of(2) {
                    return None;
                }
                let b = isqrt_u64(rest / 2);
                (2 * b * b == rest).then_some(Representation::Diff2Sq { a, b })
            })
        }
        RepKind::Sum3Sq => {
            let lim = isqrt_u64(radicand);
            (0..=lim).find_map(|a| {
                let rest = radicand - a * a;
                if !rest.is_multiple_of(3) {
                    return None;
                }
                let b = isqrt_u64(rest / 3);
                (3 * b * b == rest).then_some(Representation::Sum3Sq { a, b })
            })
        }
        RepKind::CoprimeFactors => (2..=radicand / 2)
            .find(|p2| {
                radicand.is_multiple_of(*p2) && crate::arith::gcd_u64(*p2, radicand / p2) == 1
            })
            .map(|p2| Representation::CoprimeFactors {
                p1: radicand / p2,
                p2,
            }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, ToPrimitive};

    #[test]
    fn pell_small_values() {
        let s = brute_force_pell(13, 1000).unwrap().unwrap();
        assert_eq!((s.x.to_u64().unwrap(), s.y.to_u64().unwrap()), (180, 649));
        let s = brute_force_pell(3, 10).unwrap().unwrap();
        assert_eq!((s.x.to_u64().unwrap(), s.y.to_u64().unwrap()), (1, 2));
        assert!(brute_force_pell(16, 10).is_err());
        assert!(brute_force_pell(1621, 1000).unwrap().is_none());
    }

    #[test]
    fn pell_famous_case() {
        // The hard Fermat case: the scan really does reach it.
        let s = brute_force_pell(61, 1_000_000_000).unwrap().unwrap();
        assert_eq!(s.x.to_u64().unwrap(), 226153980);
        assert_eq!(s.y.to_u64().unwrap(), 1766319049);
    }

    #[test]
    fn rhs_minus_three() {
        assert_eq!(
            brute_force_rhs(7, -3, 100),
            Some((BigUint::one(), BigUint::from(2u32)))
        );
        let (x, y) = brute_force_rhs(1729, -3, 10_000).unwrap();
        assert_eq!((x.to_u64().unwrap(), y.to_u64().unwrap()), (2954, 122831));
        // y^2 = 2 mod 5 is impossible, so nothing is ever found.
        assert_eq!(brute_force_rhs(5, -3, 10_000), None);
    }

    #[test]
    fn compose_powers() {
        let s1 = PellSolution::verified(2, 2u32.into(), 3u32.into(), 1).unwrap();
        let s2 = compose(&s1, &s1, true).unwrap();
        assert_eq!((s2.x.to_u64().unwrap(), s2.y.to_u64().unwrap()), (12, 17));
        let s3 = compose(&s2, &s1, true).unwrap();
        assert_eq!((s3.x.to_u64().unwrap(), s3.y.to_u64().unwrap()), (70, 99));
        let a3 = PellSolution::verified(3, 1u32.into(), 2u32.into(), 1).unwrap();
        let a6 = compose(&a3, &a3, true).unwrap();
        assert_eq!((a6.x.to_u64().unwrap(), a6.y.to_u64().unwrap()), (4, 7));
        let other = PellSolution::verified(3, 1u32.into(), 2u32.into(), 1).unwrap();
        assert!(compose(&s1, &other, true).is_err());
    }

    #[test]
    fn decompose_orderings() {
        assert_eq!(
            decompose_brute(61, RepKind::SumSq),
            Some(Representation::SumSq { a: 5, b: 6 })
        );
        assert_eq!(decompose_brute(21, RepKind::SumSq), None);
        assert_eq!(
            decompose_brute(103, RepKind::Diff2Sq),
            Some(Representation::Diff2Sq { a: 11, b: 3 })
        );
        assert_eq!(
            decompose_brute(6, RepKind::CoprimeFactors),
            Some(Representation::CoprimeFactors { p1: 3, p2: 2 })
        );
    }
}
