//! Exact integer helpers shared across the solver: machine-word square
//! roots, squareness tests, and deterministic primality for `u64`.

use num_bigint::{BigInt, BigUint};
use num_traits::Signed;

/// Floor square root of a `u64`, exact.
pub fn isqrt_u64(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    let mut s = (n as f64).sqrt() as u64;
    // f64 has 53 bits of mantissa; fix up the seed exactly.
    while (s as u128) * (s as u128) > n as u128 {
        s -= 1;
    }
    while ((s + 1) as u128) * ((s + 1) as u128) <= n as u128 {
        s += 1;
    }
    s
}

/// Returns `Some(sqrt)` when `n` is a perfect square.
pub fn exact_sqrt_u64(n: u64) -> Option<u64> {
    if !square_residue_u64(n) {
        return None;
    }
    let s = isqrt_u64(n);
    (s * s == n).then_some(s)
}

// Squares mod 64 and mod 63; a cheap reject before the full root.
const QR64: u64 = {
    let mut mask = 0u64;
    let mut i = 0u64;
    while i < 64 {
        mask |= 1 << ((i * i) % 64);
        i += 1;
    }
    mask
};
const QR63: u64 = {
    let mut mask = 0u64;
    let mut i = 0u64;
    while i < 63 {
        mask |= 1 << ((i * i) % 63);
        i += 1;
    }
    mask
};

/// Quadratic-residue filter: false means `n` is certainly not a square.
pub fn square_residue_u64(n: u64) -> bool {
    (QR64 >> (n % 64)) & 1 == 1 && (QR63 >> (n % 63)) & 1 == 1
}

/// Floor square root of a `BigUint`.
pub fn isqrt_big(n: &BigUint) -> BigUint {
    n.sqrt()
}

/// Returns `Some(sqrt)` when `n` is a perfect square.
pub fn exact_sqrt_big(n: &BigUint) -> Option<BigUint> {
    let s = n.sqrt();
    (&s * &s == *n).then_some(s)
}

/// Perfect-square test for a signed value (negative values are never squares).
pub fn exact_sqrt_bigint(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let s = n.sqrt();
    (&s * &s == *n).then_some(s)
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u64(b, a % b)
    }
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a, m);
        }
        a = mulmod(a, a, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for `u64`; the witness set below is exact for
/// all 64-bit inputs.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
