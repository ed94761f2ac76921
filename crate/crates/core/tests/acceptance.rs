//! Acceptance suite: one test per criterion, each printing a PASS line
//! (run with `--nocapture` to see them). Every tolerance is pinned here.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive};
use pell_core::arith::{is_prime_u64, isqrt_u64};
use pell_core::forms::FormClass;
use pell_core::relations::{
    vertical_4n1, vertical_8n3, vertical_8n7, vertical_composite, CompositeFamily, SolutionFamily,
};
use pell_core::scan::{self, TableMethod};
use pell_core::{cf, minus3, oracle, Error, SolveMethod};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::time::Instant;

fn non_square(a: u64) -> bool {
    let k = isqrt_u64(a);
    k * k != a
}

/// Criterion 1: the twelve golden worked examples plus the -3 case, exact,
/// in under ten seconds.
#[test]
fn c1_golden_worked_examples() {
    let t0 = Instant::now();
    let golden: &[(u64, u64)] = &[
        (61, 226153980),
        (67, 5967),
        (73, 267000),
        (89, 53000),
        (97, 6377352),
        (103, 22419),
        (113, 113296),
        (118, 28254),
        (127, 419775),
        (137, 519712),
        (139, 6578829),
        (149, 2113761020),
    ];
    for &(a, x) in golden {
        let f = cf::solve_fast(a).unwrap();
        assert_eq!(
            f.solution.x,
            BigUint::from(x),
            "A = {a}: expected x = {x}, got {} via {}",
            f.solution.x,
            f.method
        );
    }
    let m3 = minus3::solve_minus3(1729, minus3::DEFAULT_SEARCH_BOUND)
        .unwrap()
        .expect("1729 has a -3 solution");
    assert_eq!(m3.solution.x, BigUint::from(2954u32));
    assert_eq!(m3.solution.y, BigUint::from(122831u32));
    let dt = t0.elapsed();
    assert!(dt.as_secs_f64() < 10.0, "golden set took {dt:?}");
    println!("acceptance: criterion 1 (golden worked examples) PASS in {dt:?}");
}

/// Criterion 2: the shortcut solver agrees with the period walk on every
/// non-square radicand up to 20000, and both agree with the brute-force
/// oracle up to 2000 wherever its bound (1e7) suffices.
#[test]
fn c2_oracle_equivalence() {
    let t0 = Instant::now();
    (2..=20000u64)
        .into_par_iter()
        .filter(|&a| non_square(a))
        .for_each(|a| {
            let f = cf::solve_fast(a).unwrap();
            let s = cf::solve_standard(a).unwrap();
            assert_eq!(
                f.solution.x, s.x,
                "fast/standard mismatch at A = {a} via {}",
                f.method
            );
            assert_eq!(f.solution.y, s.y, "y mismatch at A = {a}");
        });
    let oracle_checked: u64 = (2..=2000u64)
        .into_par_iter()
        .filter(|&a| non_square(a))
        .map(|a| {
            match oracle::brute_force_pell(a, 10_000_000).unwrap() {
                Some(o) => {
                    let s = cf::solve_standard(a).unwrap();
                    assert_eq!(o.x, s.x, "oracle mismatch at A = {a}");
                    assert_eq!(o.y, s.y);
                    1
                }
                None => 0, // fundamental solution beyond the oracle's bound
            }
        })
        .sum();
    println!(
        "acceptance: criterion 2 (oracle equivalence, {oracle_checked} oracle hits <= 2000) PASS in {:?}",
        t0.elapsed()
    );
}

/// Criterion 3: the four hard classical cases all resolve through a
/// shortcut pattern, not the fallback, and match the standard method.
#[test]
fn c3_fermat_set_shortcut_tags() {
    for a in [61u64, 109, 149, 433] {
        let f = cf::solve_fast(a).unwrap();
        assert!(f.method.is_shortcut(), "A = {a} fell back to {}", f.method);
        let s = cf::solve_standard(a).unwrap();
        assert_eq!(f.solution.x, s.x);
    }
    // Frozen from an independent computation: the toughest of the four.
    let f = cf::solve_fast(433).unwrap();
    assert_eq!(f.solution.x, BigUint::from(5025068784834899736u64));
    assert_eq!(
        f.solution.y,
        "104564907854286695713".parse::<BigUint>().unwrap()
    );
    println!("acceptance: criterion 3 (Fermat set via shortcuts) PASS");
}

/// Deterministic random family pool shared by criteria 4 and 5.
fn random_families(rng: &mut ChaCha8Rng) -> Vec<SolutionFamily> {
    let mut fams = Vec::new();
    let classes = [
        FormClass::EqualSquares,
        FormClass::DoubleSquares,
        FormClass::SumEqualsCross,
    ];
    for cls in classes {
        let mut made = 0;
        while made < 60 {
            let g = rng.gen_range(-6i64..=6);
            let d = rng.gen_range(-6i64..=6);
            let m = rng.gen_range(0i64..=8);
            if g == 0 || d == 0 {
                continue;
            }
            let mult = if cls == FormClass::EqualSquares { 1 } else { 2 };
            for sig in [1i64, -1] {
                let num = mult * m * g + sig;
                if num % d != 0 {
                    continue;
                }
                let l = num / d;
                let seed = match cls {
                    FormClass::EqualSquares => vertical_4n1(g, d, l, m),
                    FormClass::DoubleSquares => vertical_8n3(g, d, l, m),
                    _ => vertical_8n7(g, d, l, m),
                };
                let Ok((a0, b0)) = seed else { continue };
                if let Ok(f) = SolutionFamily::new(cls, l, m, a0, b0) {
                    fams.push(f);
                    made += 1;
                }
            }
        }
    }
    fams
}

fn random_composites(rng: &mut ChaCha8Rng) -> Vec<CompositeFamily> {
    let mut fams = Vec::new();
    while fams.len() < 30 {
        let l = rng.gen_range(1i64..=6);
        let m = rng.gen_range(1i64..=6);
        let s = rng.gen_range(1i64..=6);
        let q = rng.gen_range(1i64..=6);
        if q * l - s * m != 1 {
            continue;
        }
        for even in [true, false] {
            if let Ok((p01, p02)) = vertical_composite(l, m, q, s, even) {
                if let Ok(f) = CompositeFamily::new(even, p01, p02, s.into(), q.into()) {
                    fams.push(f);
                }
            }
        }
    }
    fams
}

fn random_minus3(rng: &mut ChaCha8Rng) -> Vec<minus3::Minus3Family> {
    let mut fams = Vec::new();
    while fams.len() < 30 {
        let g = rng.gen_range(-4i64..=4);
        let d = rng.gen_range(-4i64..=4);
        let m = rng.gen_range(1i64..=6);
        if g == 0 || d == 0 {
            continue;
        }
        for sig in [1i64, -1] {
            let num = 3 * g * m + sig;
            if num % d != 0 {
                continue;
            }
            let l = num / d;
            if let Ok((a0, b0)) = minus3::vertical_minus3(g, d, l, m) {
                if let Ok(f) = minus3::Minus3Family::new(a0, b0, l.into(), m.into()) {
                    fams.push(f);
                }
            }
        }
    }
    fams
}

/// Criterion 4: at least 200 randomly parameterized families across all
/// five shapes; every emitted member satisfies its defining identity
/// exactly. Square targets and non-positive factors are skipped, nothing
/// else is tolerated.
#[test]
fn c4_family_identity_suite() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x9413);
    let fams = random_families(&mut rng);
    let comps = random_composites(&mut rng);
    let m3s = random_minus3(&mut rng);
    let total = fams.len() + comps.len() + m3s.len();
    assert!(total >= 200, "only {total} families generated");
    let mut points = 0u64;
    for f in &fams {
        for i in -10..=10 {
            match f.shift(i) {
                Ok(p) => {
                    let y = BigInt::from(p.y.clone());
                    let x = BigInt::from(p.x.clone());
                    let a = BigInt::from(p.radicand.clone());
                    assert_eq!(&y * &y - a * &x * &x, BigInt::one(), "family {f:?} i={i}");
                    points += 1;
                }
                Err(Error::SquareTarget(_)) => {}
                Err(e) => panic!("family {f:?} i={i}: {e}"),
            }
        }
    }
    for f in &comps {
        for i in -10..=10 {
            match f.shift(i) {
                Ok(p) => {
                    let y = BigInt::from(p.y.clone());
                    let x = BigInt::from(p.x.clone());
                    let a = BigInt::from(p.radicand.clone());
                    assert_eq!(
                        &y * &y - a * &x * &x,
                        BigInt::one(),
                        "composite {f:?} i={i}"
                    );
                    points += 1;
                }
                Err(Error::SquareTarget(_)) | Err(Error::NonPositiveFactor(_)) => {}
                Err(e) => panic!("composite {f:?} i={i}: {e}"),
            }
        }
    }
    for f in &m3s {
        for i in -10..=10 {
            match f.shift(i) {
                Ok(p) => {
                    let y = BigInt::from(p.y.clone());
                    let x = BigInt::from(p.x.clone());
                    let a = BigInt::from(p.radicand.clone());
                    assert_eq!(
                        &y * &y - a * &x * &x,
                        BigInt::from(-3),
                        "minus3 family {f:?} i={i}"
                    );
                    points += 1;
                }
                Err(Error::SquareTarget(_)) => {}
                Err(e) => panic!("minus3 family {f:?} i={i}: {e}"),
            }
        }
    }
    println!(
        "acceptance: criterion 4 (family identities: {total} families, {points} members, 0 failures) PASS"
    );
}

/// Criterion 5: empirical minimality. For members inside the proof's
/// regime (the derived pair stays componentwise below the shifted
/// representation, `i != -1`) with radicand at most 1e5, the family value
/// equals the classical minimal solution, itself anchored to the brute
/// oracle by criterion 2. Members outside the regime are reported only.
#[test]
fn c5_family_minimality() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x9413);
    let fams = random_families(&mut rng);
    let mut asserted = 0u64;
    let mut out_of_regime = 0u64;
    for f in fams.iter().filter(|f| f.seed_is_minimal()) {
        for i in -10i64..=10 {
            if i == -1 {
                continue; // documented exclusion
            }
            let Ok(p) = f.shift(i) else { continue };
            let Some(a) = p.radicand.to_u64() else {
                continue;
            };
            if !(2..=100_000).contains(&a) || !non_square(a) {
                continue;
            }
            let in_regime =
                f.k.magnitude() < p.a_i.magnitude() && f.t.magnitude() < p.b_i.magnitude();
            if !in_regime {
                out_of_regime += 1;
                continue;
            }
            let minimal = cf::solve_standard(a).unwrap();
            assert_eq!(
                p.x, minimal.x,
                "family l={} m={} a0={} b0={} i={i}: x = {} but minimal(A={a}) = {}",
                f.l, f.m, f.a0, f.b0, p.x, minimal.x
            );
            asserted += 1;
        }
    }
    assert!(asserted > 500, "too few in-regime members: {asserted}");
    println!(
        "acceptance: criterion 5 (family minimality: {asserted} members asserted, {out_of_regime} outside the proof regime reported only) PASS"
    );
}

/// Criterion 6: step counts. The worked cases pin 6-vs-12 and 5-vs-19;
/// across the equal-remainder hits on primes `4N + 1` up to 20000 the mean
/// fast steps stay at or below 0.7 of the mean standard steps.
#[test]
fn c6_step_count_reduction() {
    let f = cf::solve_fast(61).unwrap();
    let (_, std_steps) = cf::solve_standard_with_steps(61).unwrap();
    assert_eq!((f.steps, std_steps), (6, 12));
    let f = cf::solve_fast(139).unwrap();
    let (_, std_steps) = cf::solve_standard_with_steps(139).unwrap();
    assert_eq!((f.steps, std_steps), (5, 19));

    let pairs: Vec<(usize, usize)> = (2..=20000u64)
        .into_par_iter()
        .filter(|&a| non_square(a) && is_prime_u64(a) && a % 4 == 1)
        .filter_map(|a| {
            let f = cf::solve_fast(a).unwrap();
            if f.method != SolveMethod::EqualR {
                return None;
            }
            let (_, s) = cf::solve_standard_with_steps(a).unwrap();
            Some((f.steps, s))
        })
        .collect();
    assert!(!pairs.is_empty());
    let mean_fast: f64 = pairs.iter().map(|p| p.0 as f64).sum::<f64>() / pairs.len() as f64;
    let mean_std: f64 = pairs.iter().map(|p| p.1 as f64).sum::<f64>() / pairs.len() as f64;
    let ratio = mean_fast / mean_std;
    assert!(
        ratio <= 0.7,
        "mean step ratio {ratio:.3} exceeds 0.7 over {} primes",
        pairs.len()
    );
    println!(
        "acceptance: criterion 6 (step counts: 6/12, 5/19, mean ratio {ratio:.3} over {} equal-remainder primes) PASS",
        pairs.len()
    );
}

/// Criterion 7: scaled benchmark over [2, 1e5]. Zero mismatches is a hard
/// property of `bench`; the deterministic step ratio must be below 1 and
/// both ratios are reported.
#[test]
fn c7_benchmark_scaled() {
    let report = scan::bench(2, 100_000).unwrap();
    assert_eq!(report.mismatches, 0);
    assert!(
        report.step_ratio_fast_over_standard < 1.0,
        "step ratio {}",
        report.step_ratio_fast_over_standard
    );
    println!(
        "acceptance: criterion 7 (bench [2, 1e5]: step ratio {:.3}, wall ratio standard/fast {:.3}, 0 mismatches) PASS",
        report.step_ratio_fast_over_standard, report.wall_ratio_standard_over_fast
    );
}

/// Criterion 8: the property suites, zero violations.
#[test]
fn c8_property_suites() {
    // (a) remainder product identity on 1000 random radicands below 1e6
    let mut rng = ChaCha8Rng::seed_from_u64(0x61);
    let mut tested = 0;
    while tested < 1000 {
        let a = rng.gen_range(2u64..1_000_000);
        if !non_square(a) {
            continue;
        }
        tested += 1;
        let exp = cf::expand_sqrt(a, cf::default_max_steps(a)).unwrap();
        let mut prev = BigUint::one();
        for st in &exp.steps {
            assert_eq!(
                &prev * &st.remainder + &st.shift * &st.shift,
                BigUint::from(a),
                "remainder identity fails at A = {a}, step {}",
                st.index
            );
            prev = st.remainder.clone();
        }
    }

    // (b) determinant invariance through 1000 full reductions below 1e5
    let mut tested = 0;
    while tested < 1000 {
        let a = rng.gen_range(2u64..100_000);
        if !non_square(a) {
            continue;
        }
        tested += 1;
        let mut form = pell_core::start_form(a).unwrap();
        let budget = 20 * isqrt_u64(a) as usize + 40;
        let mut steps = 0;
        loop {
            assert_eq!(
                form.determinant(),
                BigInt::from(a),
                "determinant drifts at A = {a}"
            );
            match pell_core::reduce_step(&form) {
                Ok((next, _)) => form = next,
                Err(Error::UltimateFormReached(_)) => break,
                Err(e) => panic!("A = {a}: {e}"),
            }
            steps += 1;
            assert!(
                steps <= budget,
                "reduction of A = {a} exceeded {budget} steps"
            );
        }
    }

    // (c) composition identity on 500 random compositions
    let mut done = 0;
    while done < 500 {
        let a = rng.gen_range(2u64..2000);
        if !non_square(a) {
            continue;
        }
        done += 1;
        let s1 = cf::solve_standard(a).unwrap();
        let s2 = oracle::compose(&s1, &s1, true).unwrap();
        let s3 = oracle::compose(&s2, &s1, rng.gen_bool(0.5)).unwrap();
        for s in [&s2, &s3] {
            let y = BigInt::from(s.y.clone());
            let x = BigInt::from(s.x.clone());
            assert_eq!(&y * &y - BigInt::from(a) * &x * &x, BigInt::one());
        }
    }

    // (d) parity laws over every odd prime up to 20000
    (3..=20000u64)
        .into_par_iter()
        .filter(|&p| is_prime_u64(p))
        .for_each(|p| {
            let s = cf::solve_standard(p).unwrap();
            let x_even = (&s.x % BigUint::from(2u32)) == BigUint::ZERO;
            match p % 8 {
                1 | 5 => assert!(x_even, "prime {p} = 4N+1 must have even x, got {}", s.x),
                3 | 7 => assert!(
                    !x_even,
                    "prime {p} = 8N+{} must have odd x, got {}",
                    p % 8,
                    s.x
                ),
                _ => unreachable!("odd prime"),
            }
        });

    println!("acceptance: criterion 8 (property suites: remainders, determinants, composition, parity) PASS");
}

/// Criterion 9: over complete square-bounded intervals through 20163,
/// every absolute maximum beyond 46 is a prime congruent to 1 mod 4.
#[test]
fn c9_maxima_observation() {
    let table = scan::build_table(2, 20163, TableMethod::Fast).unwrap();
    let report = scan::find_maxima(&table).unwrap();
    let beyond: Vec<u64> = report
        .absolutes
        .iter()
        .map(|r| r.a)
        .filter(|&a| a > 46)
        .collect();
    assert!(!beyond.is_empty());
    for &a in &beyond {
        assert!(
            is_prime_u64(a) && a % 4 == 1,
            "absolute maximum at A = {a} is not a 4N+1 prime"
        );
    }
    // The small ones are pinned from an independent sweep.
    let prefix: Vec<u64> = report
        .absolutes
        .iter()
        .map(|r| r.a)
        .take_while(|&a| a <= 150)
        .collect();
    assert_eq!(prefix, vec![2, 5, 10, 13, 29, 46, 53, 61, 109]);
    println!(
        "acceptance: criterion 9 (absolute maxima beyond 46: {beyond:?}, all 4N+1 primes) PASS"
    );
}
