//! Small-integer arithmetic: primality, modular powers, Legendre symbols and
//! trial-division factorization with an explicit bound.

use crate::error::{Error, Result};

/// Default trial-division bound for factoring symbol entries.
pub const DEFAULT_FACTOR_BOUND: u64 = 1_000_000;

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &q in &SMALL {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &SMALL {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Smallest prime strictly greater than `n`.
pub fn next_prime(n: u64) -> u64 {
    let mut q = n + 1;
    while !is_prime(q) {
        q += 1;
    }
    q
}

/// All primes `<= bound`, ascending.
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter_map(|(k, &is_p)| is_p.then_some(k as u64))
        .collect()
}

/// Legendre symbol `(a/q)` for an odd prime `q`, as -1, 0 or 1.
pub fn legendre(a: i128, q: u64) -> i8 {
    let r = a.rem_euclid(q as i128) as u64;
    if r == 0 {
        return 0;
    }
    if pow_mod(r, (q - 1) / 2, q) == 1 {
        1
    } else {
        -1
    }
}

/// Splits `a = q^v * u` with `q` not dividing `u`.
pub fn split_valuation(a: i128, q: u64) -> (u32, i128) {
    debug_assert!(a != 0);
    let q = q as i128;
    let mut v = 0;
    let mut u = a;
    while u % q == 0 {
        u /= q;
        v += 1;
    }
    (v, u)
}

pub fn is_perfect_square(a: i128) -> bool {
    if a < 0 {
        return false;
    }
    let r = isqrt(a as u128);
    r * r == a as u128
}

pub fn isqrt(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

/// The distinct prime divisors of `a`, ascending.
///
/// Trial division runs up to `bound`; a leftover cofactor below `bound^2` is
/// prime. Anything larger is rejected rather than guessed.
pub fn prime_divisors(a: i128, bound: u64) -> Result<Vec<u64>> {
    if a == 0 {
        return Err(Error::ZeroArgument);
    }
    let mut n = a.unsigned_abs();
    let mut out = Vec::new();
    let mut d: u64 = 2;
    while (d as u128) * (d as u128) <= n {
        if d > bound {
            break;
        }
        if n.is_multiple_of(d as u128) {
            out.push(d);
            while n.is_multiple_of(d as u128) {
                n /= d as u128;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        let within = (d as u128) * (d as u128) > n || n <= u64::MAX as u128 && is_prime(n as u64);
        if !within || n > u64::MAX as u128 {
            return Err(Error::FactorBound { value: a, bound });
        }
        out.push(n as u64);
    }
    Ok(out)
}

/// Square-free part of `a`, keeping the sign.
pub fn squarefree_part(a: i128, bound: u64) -> Result<i128> {
    let mut out: i128 = a.signum();
    for q in prime_divisors(a, bound)? {
        let (v, _) = split_valuation(a, q);
        if v % 2 == 1 {
            out = out.checked_mul(q as i128).ok_or(Error::Overflow)?;
        }
    }
    Ok(out)
}
