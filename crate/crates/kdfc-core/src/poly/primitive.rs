use alloc::vec::Vec;

use super::mersenne::MERSENNE_FACTORS;
use super::Gf2Poly;
use crate::{Error, Result};

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's test: `p` of degree `n` is irreducible iff `x^(2^n) = x mod p` and
/// `gcd(x^(2^(n/q)) - x, p) = 1` for every prime `q | n`.
pub fn is_irreducible(p: &Gf2Poly) -> bool {
    let Some(n) = p.degree() else { return false };
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    if !p.coeff(0) {
        return false;
    }
    let mut checkpoints: Vec<usize> = prime_divisors(n).into_iter().map(|q| n / q).collect();
    checkpoints.sort_unstable();
    let x = Gf2Poly::x();
    let mut acc = x.clone();
    let mut k = 0;
    for cp in checkpoints {
        while k < cp {
            acc = acc.square().rem(p).expect("nonzero modulus");
            k += 1;
        }
        if !acc.add(&x).gcd(p).is_one() {
            return false;
        }
    }
    while k < n {
        acc = acc.square().rem(p).expect("nonzero modulus");
        k += 1;
    }
    acc == x
}

/// Distinct prime factors of `2^d - 1`, available for `1 <= d <= 64`.
pub fn mersenne_factors(d: usize) -> Result<&'static [u64]> {
    if d == 0 || d > 64 {
        return Err(Error::DegreeOutOfTable { degree: d });
    }
    Ok(MERSENNE_FACTORS[d])
}

/// Euler's totient of `2^d - 1`.
pub fn euler_phi_mersenne(d: usize) -> Result<u128> {
    let fs = mersenne_factors(d)?;
    let mut phi: u128 = (1u128 << d) - 1;
    for &q in fs {
        phi = phi / q as u128 * (q as u128 - 1);
    }
    Ok(phi)
}

/// True iff `p` is irreducible and `x` has order `2^d - 1` modulo `p`.
/// Needs the factorization of `2^d - 1`, so only degrees up to 64 are accepted.
pub fn is_primitive(p: &Gf2Poly) -> Result<bool> {
    let d = p.degree().unwrap_or(0);
    let fs = mersenne_factors(d)?;
    if !is_irreducible(p) {
        return Ok(false);
    }
    let order: u128 = (1u128 << d) - 1;
    let x = Gf2Poly::x();
    for &q in fs {
        if x.powmod(order / q as u128, p)?.is_one() {
            return Ok(false);
        }
    }
    Ok(true)
}
