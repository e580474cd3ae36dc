//! Squarefree decomposition of radicands.
//!
//! Radicands are split as `s² · p₁ · … · pⱼ` with distinct primes `pᵢ`. Trial
//! division strips small factors; whatever survives must fit in a `u64` (then
//! Pollard–Brent finishes the job) or be a perfect square of something that
//! does.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::ExactError;

const TRIAL_LIMIT: u64 = 1 << 14;

/// `n = square² · Π primes`, primes sorted and distinct.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Squarefree {
    pub square: BigUint,
    pub primes: Vec<u64>,
}

pub fn squarefree_decompose(n: &BigUint) -> Result<Squarefree, ExactError> {
    if n.is_zero() {
        return Err(ExactError::NotRepresentable("square root of zero radicand".into()));
    }
    let mut exps: Vec<(u64, u32)> = Vec::new();
    let mut rest = n.clone();
    let mut p = 2u64;
    while p < TRIAL_LIMIT {
        let bp = BigUint::from(p);
        if &bp * &bp > rest {
            break;
        }
        let mut e = 0;
        loop {
            let (q, r) = rest.div_rem(&bp);
            if !r.is_zero() {
                break;
            }
            rest = q;
            e += 1;
        }
        if e > 0 {
            exps.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if !rest.is_one() {
        factor_large(&rest, 1, &mut exps)?;
    }

    exps.sort_unstable();
    let mut merged: Vec<(u64, u32)> = Vec::new();
    for (p, e) in exps {
        match merged.last_mut() {
            Some((q, f)) if *q == p => *f += e,
            _ => merged.push((p, e)),
        }
    }
    let mut square = BigUint::one();
    let mut primes = Vec::new();
    for (p, e) in merged {
        square *= BigUint::from(p).pow(e / 2);
        if e % 2 == 1 {
            primes.push(p);
        }
    }
    Ok(Squarefree { square, primes })
}

fn factor_large(n: &BigUint, mult: u32, out: &mut Vec<(u64, u32)>) -> Result<(), ExactError> {
    if let Some(small) = n.to_u64() {
        for p in factor_u64(small) {
            out.push((p, mult));
        }
        return Ok(());
    }
    let r = n.sqrt();
    if &r * &r == *n {
        return factor_large(&r, mult * 2, out);
    }
    Err(ExactError::Unfactorable(n.to_string()))
}

/// Prime factors with multiplicity (unsorted).
pub fn factor_u64(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    factor_into(n, &mut out);
    out
}

fn factor_into(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    for p in [2u64, 3, 5, 7, 11, 13] {
        if n % p == 0 {
            out.push(p);
            factor_into(n / p, out);
            return;
        }
    }
    let d = pollard_brent(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller–Rabin for 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'outer: for a in BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

fn pollard_brent(n: u64) -> u64 {
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut g) = (2u64, 2u64, 1u64);
        let mut q = 1u64;
        let mut r = 1u64;
        let mut ys = 2u64;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..(128.min(r - k)) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = q.gcd(&n);
                k += 128;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = x.abs_diff(ys).gcd(&n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
        c += 1;
    }
}
