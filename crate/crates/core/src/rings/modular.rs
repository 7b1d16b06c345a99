//! Residue arithmetic in Z/n. Residues are kept in `[0, n)`.

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

pub(crate) fn add(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 + b as u128) % n as u128) as u64
}

pub(crate) fn sub(a: u64, b: u64, n: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        ((a as u128 + n as u128 - b as u128) % n as u128) as u64
    }
}

pub(crate) fn neg(a: u64, n: u64) -> u64 {
    if a == 0 {
        0
    } else {
        n - a
    }
}

pub(crate) fn mul(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

pub(crate) fn reduce_i128(a: i128, n: u64) -> u64 {
    a.rem_euclid(n as i128) as u64
}

/// Returns `(g, s, t)` with `s*a + t*b = g = gcd(a, b)`.
fn ext_gcd(a: u64, b: u64) -> (u64, i128, i128) {
    let (mut old_r, mut r) = (a as i128, b as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    (old_r as u64, old_s, old_t)
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`. Modulo 1 every residue is 0.
pub(crate) fn inverse(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (g, s, _) = ext_gcd(a % m, m);
    (g == 1).then(|| reduce_i128(s, m))
}

pub(crate) fn is_unit(a: u64, n: u64) -> bool {
    gcd(a, n) == 1
}

/// Largest divisor of `n` coprime to `m`.
fn coprime_part(n: u64, m: u64) -> u64 {
    let mut r = n;
    loop {
        let g = gcd(r, m);
        if g == 1 {
            return r;
        }
        r /= g;
    }
}

/// Lifts `u0` (a unit modulo `m`, `m | n`) to a unit modulo `n` congruent to
/// `u0` modulo `m`.
pub(crate) fn lift_unit(u0: u64, m: u64, n: u64) -> u64 {
    debug_assert_eq!(n % m, 0);
    let r = coprime_part(n, m);
    if r == 1 {
        return u0 % n;
    }
    let m_inv = inverse(m % r, r).expect("m and its coprime cofactor are coprime");
    let k = mul(sub(1 % r, u0 % r, r), m_inv, r);
    ((u0 as u128 + m as u128 * k as u128) % n as u128) as u64
}

/// Canonical associate `gcd(a, n)` together with a unit `u` such that
/// `u * a = gcd(a, n)`.
pub(crate) fn normalize(a: u64, n: u64) -> (u64, u64) {
    if a == 0 {
        return (0, 1);
    }
    let g = gcd(a, n);
    let m = n / g;
    let u0 = inverse((a / g) % m, m).expect("a/g is coprime to n/g");
    (g, lift_unit(u0, m, n))
}

/// `(d, p, q, a0, b0)` with `p*a + q*b = d`, `a = d*a0`, `b = d*b0` and
/// `p*a0 + q*b0 = 1` whenever `(a, b) != (0, 0)`.
pub(crate) fn bezout(a: u64, b: u64, n: u64) -> (u64, u64, u64, u64, u64) {
    match (a, b) {
        (0, 0) => (0, 0, 0, 0, 0),
        (_, 0) => {
            let (d, u) = normalize(a, n);
            (d, u, 0, inverse(u, n).expect("unit"), 0)
        }
        (0, _) => {
            let (d, u) = normalize(b, n);
            (d, 0, u, 0, inverse(u, n).expect("unit"))
        }
        _ => {
            let g = gcd(gcd(a, b), n);
            let m = n / g;
            // a/g and b/g are coprime at every prime dividing m; at the other
            // primes of n, force a0 to be 1.
            let r = coprime_part(n, m);
            let mut a0 = a / g;
            let b0 = b / g;
            if r > 1 {
                let m_inv = inverse(m % r, r).expect("coprime");
                let k = mul(sub(1 % r, a0 % r, r), m_inv, r);
                a0 = ((a0 as u128 + m as u128 * k as u128) % n as u128) as u64;
            }
            let (g1, s, t) = ext_gcd(a0, b0);
            let g1_inv = inverse(g1 % n, n).expect("a0, b0 generate the unit ideal");
            let p = mul(reduce_i128(s, n), g1_inv, n);
            let q = mul(reduce_i128(t, n), g1_inv, n);
            (g % n, p, q, a0 % n, b0 % n)
        }
    }
}

/// Least `x` in `[0, n)` with `d*x = a`.
pub(crate) fn solve(d: u64, a: u64, n: u64) -> Option<u64> {
    let g = gcd(d, n);
    if !a.is_multiple_of(g) {
        return None;
    }
    let m = n / g;
    let inv = inverse((d / g) % m, m)?;
    Some(mul((a / g) % m, inv, m))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bezout_identities_hold_exhaustively() {
        for n in 2..=36u64 {
            for a in 0..n {
                for b in 0..n {
                    let (d, p, q, a0, b0) = bezout(a, b, n);
                    assert_eq!(add(mul(p, a, n), mul(q, b, n), n), d, "n={n} a={a} b={b}");
                    assert_eq!(mul(d, a0, n), a);
                    assert_eq!(mul(d, b0, n), b);
                    assert_eq!(d, gcd(gcd(a, b), n) % n);
                    if (a, b) != (0, 0) {
                        assert_eq!(add(mul(p, a0, n), mul(q, b0, n), n), 1);
                    }
                }
            }
        }
    }

    #[test]
    fn normalize_gives_unit_multiplier() {
        for n in 2..=40u64 {
            for a in 0..n {
                let (c, u) = normalize(a, n);
                assert!(is_unit(u, n));
                assert_eq!(mul(u, a, n), c);
                assert_eq!(normalize(c, n).1, 1);
            }
        }
    }

    #[test]
    fn solve_returns_least_solution() {
        for n in 2..=24u64 {
            for d in 0..n {
                for a in 0..n {
                    let brute = (0..n).find(|&x| mul(d, x, n) == a);
                    assert_eq!(solve(d, a, n), brute);
                }
            }
        }
    }
}
