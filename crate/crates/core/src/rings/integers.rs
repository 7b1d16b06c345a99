//! Arbitrary-precision integer arithmetic helpers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Iterative extended Euclid: `(g, s, t)` with `s*a + t*b = g`, `g` possibly
/// negative.
pub(crate) fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let (mut old_r, mut r) = (a.clone(), b.clone());
    let (mut old_s, mut s) = (BigInt::one(), BigInt::zero());
    let (mut old_t, mut t) = (BigInt::zero(), BigInt::one());
    while !r.is_zero() {
        let q = &old_r / &r;
        let next_r = &old_r - &q * &r;
        old_r = std::mem::replace(&mut r, next_r);
        let next_s = &old_s - &q * &s;
        old_s = std::mem::replace(&mut s, next_s);
        let next_t = &old_t - &q * &t;
        old_t = std::mem::replace(&mut t, next_t);
    }
    (old_r, old_s, old_t)
}

/// `(d, p, q, a0, b0)` with `d >= 0`.
pub(crate) fn bezout(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt, BigInt, BigInt) {
    let (mut d, mut p, mut q) = ext_gcd(a, b);
    if d.is_negative() {
        d = -d;
        p = -p;
        q = -q;
    }
    if d.is_zero() {
        return (d, BigInt::zero(), BigInt::zero(), BigInt::zero(), BigInt::zero());
    }
    let a0 = a / &d;
    let b0 = b / &d;
    (d, p, q, a0, b0)
}

pub(crate) fn exact_divide(a: &BigInt, d: &BigInt) -> Option<BigInt> {
    if d.is_zero() {
        return a.is_zero().then(BigInt::zero);
    }
    let (q, r) = a.div_rem(d);
    r.is_zero().then_some(q)
}

pub(crate) fn is_unit(a: &BigInt) -> bool {
    a.abs().is_one()
}
