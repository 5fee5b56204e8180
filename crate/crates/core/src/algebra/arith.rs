//! Integer helpers: factorization by trial division, multiplicative orders, prime-power parts.

use num_integer::Integer;

use crate::error::{Error, Result};

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a.lcm(&b)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorization as (prime, exponent) pairs in increasing order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn prime_divisors(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut ds = vec![1u64];
    for (p, e) in factorize(n) {
        let cur = ds.clone();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            ds.extend(cur.iter().map(|d| d * pk));
        }
    }
    ds.sort_unstable();
    ds
}

pub fn totient(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// Splits `n` as `p^k * rest` with `p` not dividing `rest`.
pub fn split_prime_part(n: u64, p: u64) -> (u32, u64) {
    let mut k = 0;
    let mut m = n;
    while m.is_multiple_of(p) && m > 0 {
        m /= p;
        k += 1;
    }
    (k, m)
}

/// The largest divisor of `n` prime to `p`.
pub fn p_prime_part(n: u64, p: u64) -> u64 {
    split_prime_part(n, p).1
}

/// `Some(k)` when `n == p^k` with `k >= 0`.
pub fn log_exact(n: u64, p: u64) -> Option<u32> {
    let (k, rest) = split_prime_part(n, p);
    (rest == 1).then_some(k)
}

pub fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut r = 1u128;
    let mut b = (a % m) as u128;
    let mm = m as u128;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % mm;
        }
        b = b * b % mm;
        e >>= 1;
    }
    a = r as u64;
    a
}

/// Least `k > 0` with `a^k = 1 (mod n)`.
pub fn mult_order(a: u64, n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::Domain("modulus must be positive".into()));
    }
    if gcd(a % n.max(1), n) != 1 && n != 1 {
        return Err(Error::Domain(format!("gcd({a}, {n}) != 1")));
    }
    if n == 1 {
        return Ok(1);
    }
    let phi = totient(n);
    let mut k = phi;
    for (p, _) in factorize(phi) {
        while k.is_multiple_of(p) && pow_mod(a, k / p, n) == 1 {
            k /= p;
        }
    }
    Ok(k)
}

pub fn checked_pow(b: u64, e: u32) -> Option<u64> {
    b.checked_pow(e)
}

/// `Some((root, n))` with `n >= 2` maximal such that `d = root^n`.
pub fn perfect_power(d: u64) -> Option<(u64, u32)> {
    if d < 4 {
        return None;
    }
    let fac = factorize(d);
    let g = fac.iter().fold(0u32, |acc, &(_, e)| acc.gcd(&e));
    if g < 2 {
        return None;
    }
    let root = fac.iter().map(|&(p, e)| p.pow(e / g)).product();
    Some((root, g))
}

pub fn mobius(n: u64) -> i64 {
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

pub fn least_prime_divisor(d: u64) -> Result<u64> {
    if d < 2 {
        return Err(Error::Domain(format!("least prime divisor of {d} is undefined")));
    }
    Ok(factorize(d)[0].0)
}
