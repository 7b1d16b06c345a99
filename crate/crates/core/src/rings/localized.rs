//! Rationals whose reduced denominator is coprime to a fixed prime `p`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Reduces `num/den`; `None` when the reduced denominator is divisible by `p`
/// or zero.
pub(crate) fn reduce(num: BigInt, den: BigInt, p: u64) -> Option<(BigInt, BigInt)> {
    if den.is_zero() {
        return None;
    }
    let g = num.gcd(&den);
    let (mut n, mut d) = (num / &g, den / &g);
    if d.is_negative() {
        n = -n;
        d = -d;
    }
    if (&d % p).is_zero() {
        return None;
    }
    Some((n, d))
}

pub(crate) fn reduce_in_ring(num: BigInt, den: BigInt, p: u64) -> (BigInt, BigInt) {
    reduce(num, den, p).expect("arithmetic stays inside the localization")
}

/// `p`-adic valuation of a nonzero integer and its `p`-free part.
pub(crate) fn split_valuation(num: &BigInt, p: u64) -> (u32, BigInt) {
    debug_assert!(!num.is_zero());
    let p = BigInt::from(p);
    let mut k = 0;
    let mut w = num.clone();
    loop {
        let (q, r) = w.div_rem(&p);
        if !r.is_zero() {
            return (k, w);
        }
        w = q;
        k += 1;
    }
}

pub(crate) fn is_unit(num: &BigInt, p: u64) -> bool {
    !num.is_zero() && !(num % p).is_zero()
}

/// Canonical associate `p^k` (or 0) and the unit `u` with `u * a = p^k`.
pub(crate) fn normalize(num: &BigInt, den: &BigInt, p: u64) -> ((BigInt, BigInt), (BigInt, BigInt)) {
    if num.is_zero() {
        return ((BigInt::zero(), BigInt::one()), (BigInt::one(), BigInt::one()));
    }
    let (k, w) = split_valuation(num, p);
    let canonical = (BigInt::from(p).pow(k), BigInt::one());
    let unit = reduce_in_ring(den.clone(), w, p);
    (canonical, unit)
}
