//! Dense univariate polynomials over GF(p), coefficients least-degree first.
//!
//! The zero polynomial is the empty vector; every other value has a nonzero
//! last coefficient.

use std::cmp::Ordering;

use super::modular;

pub(crate) type Coeffs = Vec<u64>;

pub(crate) fn trim(mut a: Coeffs) -> Coeffs {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

/// Degree, `None` for the zero polynomial.
pub(crate) fn degree(a: &[u64]) -> Option<usize> {
    a.len().checked_sub(1)
}

pub(crate) fn constant(c: u64, p: u64) -> Coeffs {
    trim(vec![c % p])
}

pub(crate) fn add(a: &[u64], b: &[u64], p: u64) -> Coeffs {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            modular::add(x, y, p)
        })
        .collect();
    trim(out)
}

pub(crate) fn neg(a: &[u64], p: u64) -> Coeffs {
    a.iter().map(|&c| modular::neg(c, p)).collect()
}

pub(crate) fn sub(a: &[u64], b: &[u64], p: u64) -> Coeffs {
    add(a, &neg(b, p), p)
}

pub(crate) fn scale(a: &[u64], c: u64, p: u64) -> Coeffs {
    trim(a.iter().map(|&x| modular::mul(x, c, p)).collect())
}

pub(crate) fn mul(a: &[u64], b: &[u64], p: u64) -> Coeffs {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = modular::add(out[i + j], modular::mul(x, y, p), p);
        }
    }
    trim(out)
}

/// Division with remainder; `b` must be nonzero.
pub(crate) fn div_rem(a: &[u64], b: &[u64], p: u64) -> (Coeffs, Coeffs) {
    let db = degree(b).expect("division by the zero polynomial");
    let lead_inv = modular::inverse(b[db], p).expect("field coefficient");
    let mut rem = a.to_vec();
    if rem.len() <= db {
        return (Vec::new(), rem);
    }
    let mut quot = vec![0u64; rem.len() - db];
    while let Some(dr) = degree(&rem) {
        if dr < db {
            break;
        }
        let c = modular::mul(rem[dr], lead_inv, p);
        let shift = dr - db;
        quot[shift] = c;
        for (j, &y) in b.iter().enumerate() {
            rem[shift + j] = modular::sub(rem[shift + j], modular::mul(c, y, p), p);
        }
        rem = trim(rem);
    }
    (trim(quot), rem)
}

/// Monic associate together with the scalar that produces it.
pub(crate) fn normalize(a: &[u64], p: u64) -> (Coeffs, u64) {
    match a.last() {
        None => (Vec::new(), 1),
        Some(&lead) => {
            let u = modular::inverse(lead, p).expect("nonzero coefficient");
            (scale(a, u, p), u)
        }
    }
}

/// `(d, s, t)` with `s*a + t*b = d`, `d` monic (or zero).
pub(crate) fn ext_gcd(a: &[u64], b: &[u64], p: u64) -> (Coeffs, Coeffs, Coeffs) {
    let (mut old_r, mut r) = (a.to_vec(), b.to_vec());
    let (mut old_s, mut s) = (constant(1, p), Vec::new());
    let (mut old_t, mut t) = (Vec::new(), constant(1, p));
    while !r.is_empty() {
        let (q, rem) = div_rem(&old_r, &r, p);
        old_r = std::mem::replace(&mut r, rem);
        let next_s = sub(&old_s, &mul(&q, &s, p), p);
        old_s = std::mem::replace(&mut s, next_s);
        let next_t = sub(&old_t, &mul(&q, &t, p), p);
        old_t = std::mem::replace(&mut t, next_t);
    }
    let (d, u) = normalize(&old_r, p);
    (d, scale(&old_s, u, p), scale(&old_t, u, p))
}

/// Degree-then-lexicographic order, leading coefficients compared first.
pub(crate) fn cmp(a: &[u64], b: &[u64]) -> Ordering {
    a.len()
        .cmp(&b.len())
        .then_with(|| a.iter().rev().cmp(b.iter().rev()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn div_rem_reconstructs_dividend() {
        let p = 7;
        let a = vec![3, 0, 5, 1, 6];
        let b = vec![2, 4, 1];
        let (q, r) = div_rem(&a, &b, p);
        assert!(degree(&r) < degree(&b));
        assert_eq!(add(&mul(&q, &b, p), &r, p), a);
    }

    #[test]
    fn ext_gcd_of_difference_of_squares() {
        // x^2 - 1 and x - 1 over GF(5)
        let (d, s, t) = ext_gcd(&[4, 0, 1], &[4, 1], 5);
        assert_eq!(d, vec![4, 1]);
        assert!(s.is_empty());
        assert_eq!(t, vec![1]);
    }
}
