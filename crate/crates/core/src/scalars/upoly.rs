//! Dense univariate integer polynomials, used for gcds in one variable.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Coefficients, constant term first, no trailing zeros.
pub(super) type Dense = Vec<BigInt>;

fn trim(mut p: Dense) -> Dense {
    while p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
    p
}

fn degree(p: &Dense) -> usize {
    p.len().saturating_sub(1)
}

fn content(p: &Dense) -> BigInt {
    p.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Divides out the integer content and makes the leading coefficient positive.
pub(super) fn primitive(p: Dense) -> Dense {
    let p = trim(p);
    if p.is_empty() {
        return p;
    }
    let mut c = content(&p);
    if p.last().unwrap().is_negative() {
        c = -c;
    }
    if c.is_one() {
        p
    } else {
        p.into_iter().map(|x| x / &c).collect()
    }
}

fn pseudo_rem(a: &Dense, b: &Dense) -> Dense {
    let db = degree(b);
    let lb = b.last().unwrap().clone();
    let mut r = a.clone();
    while !r.is_empty() && degree(&r) >= db {
        let dr = degree(&r);
        let lr = r.last().unwrap().clone();
        for x in r.iter_mut() {
            *x *= &lb;
        }
        for (i, c) in b.iter().enumerate() {
            r[dr - db + i] -= &lr * c;
        }
        r = trim(r);
        // keep the integers small
        r = primitive(r);
    }
    r
}

const PRIME: u64 = 2_305_843_009_213_693_951; // 2^61 - 1

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % PRIME as u128) as u64
}

fn powmod(mut a: u64, mut e: u64) -> u64 {
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a);
        }
        a = mulmod(a, a);
        e >>= 1;
    }
    acc
}

fn reduce_mod(p: &Dense) -> Vec<u64> {
    let m = BigInt::from(PRIME);
    let mut v: Vec<u64> = p
        .iter()
        .map(|c| c.mod_floor(&m).to_u64().expect("reduced below the prime"))
        .collect();
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn degree_of_gcd_mod(a: &Dense, b: &Dense) -> Option<usize> {
    let (mut x, mut y) = (reduce_mod(a), reduce_mod(b));
    if x.len() != a.len() || y.len() != b.len() {
        return None; // the prime divides a leading coefficient
    }
    while !y.is_empty() {
        let inv = powmod(*y.last().unwrap(), PRIME - 2);
        while x.len() >= y.len() {
            let shift = x.len() - y.len();
            let f = mulmod(*x.last().unwrap(), inv);
            for (i, &c) in y.iter().enumerate() {
                let s = mulmod(f, c);
                x[shift + i] = (x[shift + i] + PRIME - s) % PRIME;
            }
            while x.last() == Some(&0) {
                x.pop();
            }
        }
        std::mem::swap(&mut x, &mut y);
    }
    Some(x.len().saturating_sub(1))
}

/// Gcd of two nonzero integer polynomials, primitive with positive leading coefficient.
pub(super) fn gcd(a: Dense, b: Dense) -> Dense {
    let a = primitive(a);
    let b = primitive(b);
    let cont_gcd = content(&a).gcd(&content(&b));
    debug_assert!(cont_gcd.is_one());
    if degree_of_gcd_mod(&a, &b) == Some(0) {
        return vec![BigInt::one()];
    }
    let (mut r0, mut r1) = if degree(&a) >= degree(&b) { (a, b) } else { (b, a) };
    loop {
        if r1.is_empty() {
            return r0;
        }
        let r = pseudo_rem(&r0, &r1);
        if r.len() == 1 {
            return vec![BigInt::one()];
        }
        r0 = r1;
        r1 = r;
    }
}
