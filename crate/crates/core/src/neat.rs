//! Neat factorizations, neat shifts, clean decompositions of quotients
//! `R/cR`, and the two constructions relating the `(p, q)` condition to
//! factorizations `b + lambda*c = v*u`.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::edr::PQWitness;
use crate::error::{Error, Result};
use crate::ring::{bezout_certificate, exact_divide, solve_linear, Element, Ring};
use crate::rings::modular;
use crate::rings::scan::{self, SearchBounds};
use crate::stable_range::require_coprime;

fn coprime(a: &Element, b: &Element) -> bool {
    bezout_certificate(a, b).map(|c| c.is_unimodular()).unwrap_or(false)
}

/// `a = r*s` with `r` coprime to `b`, `s` coprime to `c`, `r` coprime to `s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NeatWitness {
    pub a: Element,
    pub b: Element,
    pub c: Element,
    pub r: Element,
    pub s: Element,
}

impl NeatWitness {
    fn holds(a: &Element, b: &Element, c: &Element, r: &Element, s: &Element) -> bool {
        &(r * s) == a && coprime(r, b) && coprime(s, c) && coprime(r, s)
    }

    pub fn verify(&self) -> Result<()> {
        if NeatWitness::holds(&self.a, &self.b, &self.c, &self.r, &self.s) {
            Ok(())
        } else {
            Err(Error::CheckFailed(format!(
                "{} = ({})*({}) is not a neat factorization for ({}, {})",
                self.a, self.r, self.s, self.b, self.c
            )))
        }
    }
}

/// Finite rings: least `(r, s)` lexicographically. Elsewhere `s` collects
/// every prime power of `a` shared with `b` and `r` keeps the rest.
pub fn neat_witness(a: &Element, b: &Element, c: &Element) -> Result<NeatWitness> {
    require_coprime(b, c)?;
    if a.is_zero() {
        return Err(Error::PreconditionViolated("neat factorizations are defined for a != 0".into()));
    }
    let ring = a.ring();
    let make = |r: Element, s: Element| NeatWitness { a: a.clone(), b: b.clone(), c: c.clone(), r, s };
    if let Ring::Modular(n) = ring {
        for r in 0..n {
            for s in 0..n {
                let (r, s) = (ring.residue(r), ring.residue(s));
                if NeatWitness::holds(a, b, c, &r, &s) {
                    return Ok(make(r, s));
                }
            }
        }
        return Err(Error::NotNeat(format!("{a} has no factorization for ({b}, {c}) in {ring}")));
    }
    let mut rest = a.clone();
    let mut s = ring.one();
    loop {
        let g = bezout_certificate(&rest, b)?.d;
        if g.is_unit() {
            break;
        }
        rest = exact_divide(&rest, &g)?;
        s = &s * &g;
    }
    let w = make(rest, s);
    w.verify().map_err(|e| Error::ConstructionFailed(e.to_string()))?;
    Ok(w)
}

/// `a != 0` and every coprime pair `(b, c)` admits a neat factorization of
/// `a`. Exhaustive in `Z/n`; in the unique factorization rings every
/// nonzero element qualifies.
pub fn is_neat(a: &Element) -> bool {
    if a.is_zero() {
        return false;
    }
    match a.ring() {
        Ring::Modular(n) => modular_is_neat(a.as_residue().unwrap(), n),
        _ => true,
    }
}

pub(crate) fn modular_is_neat(a: u64, n: u64) -> bool {
    if a.is_multiple_of(n) {
        return false;
    }
    let co = |x: u64, y: u64| modular::gcd(modular::gcd(x, y), n) == 1;
    let factors: Vec<(u64, u64)> = (0..n)
        .flat_map(|r| (0..n).map(move |s| (r, s)))
        .filter(|&(r, s)| modular::mul(r, s, n) == a && co(r, s))
        .collect();
    (0..n).all(|b| {
        (0..n).all(|c| !co(b, c) || factors.iter().any(|&(r, s)| co(r, b) && co(s, c)))
    })
}

/// Least `t` in scan order with `a + b*t` neat.
pub fn neat_range1_shift(a: &Element, b: &Element, bounds: &SearchBounds) -> Result<Element> {
    require_coprime(a, b)?;
    let ring = a.ring();
    (0..scan::scan_len(ring, bounds))
        .map(|i| scan::scan_element(ring, i))
        .find(|t| is_neat(&(a + &(b * t))))
        .ok_or_else(|| Error::WitnessNotFound(format!("no neat shift of {a} by {b} ({})", bounds.describe(ring))))
}

/// `x = e + u` in `R/cR` with the idempotent from the factorization
/// `c = r*s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CleanDecomposition {
    pub r: Element,
    pub s: Element,
    pub a: Element,
    pub modulus: Element,
    /// Order of `R/cR`.
    pub quotient_order: u64,
    /// `s*v mod c` where `r*u + s*v = 1`.
    pub proof_idempotent: u64,
    pub x: u64,
    pub idempotent: u64,
    pub unit: u64,
}

impl CleanDecomposition {
    pub fn verify(&self) -> Result<()> {
        let m = self.quotient_order;
        let fail = |what: String| Err(Error::CheckFailed(format!("clean decomposition mod {m}: {what}")));
        let a = residue_of(&self.a, m)?;
        let e = self.proof_idempotent;
        if modular::mul(e, e, m) != e % m {
            return fail(format!("{e} is not idempotent"));
        }
        if !in_principal_ideal(e, a, m) || !in_principal_ideal(modular::sub(1 % m, e, m), modular::sub(1 % m, a, m), m) {
            return fail(format!("{e} is not in the ideals generated by a and 1 - a"));
        }
        let f = self.idempotent;
        if modular::mul(f, f, m) != f % m || !modular::is_unit(self.unit, m) || modular::add(f, self.unit, m) != self.x % m {
            return fail(format!("{} != {f} + {} with idempotent and unit parts", self.x, self.unit));
        }
        Ok(())
    }
}

fn in_principal_ideal(x: u64, g: u64, m: u64) -> bool {
    m == 1 || x.is_multiple_of(modular::gcd(g, m))
}

/// Residue of an element of `Z` or `Z/n` modulo `m`.
fn residue_of(e: &Element, m: u64) -> Result<u64> {
    match e.ring() {
        Ring::Integers => {
            let k = e.as_bigint().unwrap() % BigInt::from(m);
            let k = if k.is_negative() { k + BigInt::from(m) } else { k };
            Ok(k.to_u64().unwrap())
        }
        Ring::Modular(_) => Ok(e.as_residue().unwrap() % m),
        other => Err(Error::UnsupportedRing(format!("clean decomposition needs Z or Z/n, not {other}"))),
    }
}

/// Size of `R/cR` for `R = Z` or `Z/n`.
fn quotient_order(c: &Element) -> Result<u64> {
    match c.ring() {
        Ring::Integers => {
            let k = c.as_bigint().unwrap().abs();
            if k.is_zero() {
                return Err(Error::PreconditionViolated("Z/0Z is not finite".into()));
            }
            k.to_u64().ok_or_else(|| Error::NotSupported(format!("modulus {k} exceeds 64 bits")))
        }
        Ring::Modular(n) => Ok(modular::gcd(c.as_residue().unwrap(), n)),
        other => Err(Error::UnsupportedRing(format!("clean decomposition needs Z or Z/n, not {other}"))),
    }
}

/// Idempotents of `Z/m` in increasing order, one per set of prime powers.
pub fn idempotents(m: u64) -> Vec<u64> {
    if m == 1 {
        return vec![0];
    }
    let mut parts = Vec::new();
    let mut rest = m;
    let mut d = 2u64;
    while d * d <= rest {
        if rest.is_multiple_of(d) {
            let mut q = 1;
            while rest.is_multiple_of(d) {
                rest /= d;
                q *= d;
            }
            parts.push(q);
        }
        d += 1;
    }
    if rest > 1 {
        parts.push(rest);
    }
    // e_q = 1 mod q and 0 mod m/q
    let basic: Vec<u64> = parts
        .iter()
        .map(|&q| {
            let other = m / q;
            modular::mul(other, modular::inverse(other % q, q).unwrap(), m)
        })
        .collect();
    let mut out: Vec<u64> = (0u64..1 << basic.len())
        .map(|mask| {
            basic
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .fold(0, |acc, (_, &e)| modular::add(acc, e, m))
        })
        .collect();
    out.sort_unstable();
    out
}

/// Least idempotent `e` with `x - e` a unit of `Z/m`.
pub fn clean_split(x: u64, m: u64) -> Option<(u64, u64)> {
    idempotents(m).into_iter().find_map(|e| {
        let u = modular::sub(x % m, e, m);
        (m == 1 || modular::is_unit(u, m)).then_some((e, u))
    })
}

pub fn clean_decompose(r: &Element, s: &Element, a: &Element, x: &Element) -> Result<CleanDecomposition> {
    let ring = crate::ring::check_same_ring(&[r, s, a, x])?;
    if !matches!(ring, Ring::Integers | Ring::Modular(_)) {
        return Err(Error::UnsupportedRing(format!("clean decomposition needs Z or Z/n, not {ring}")));
    }
    let one = ring.one();
    let pre = |ok: bool, what: &str| {
        if ok {
            Ok(())
        } else {
            Err(Error::PreconditionViolated(what.to_string()))
        }
    };
    pre(coprime(r, a), "r and a must be coprime")?;
    pre(coprime(s, &(&one - a)), "s and 1 - a must be coprime")?;
    pre(coprime(r, s), "r and s must be coprime")?;
    let c = r * s;
    let m = quotient_order(&c)?;
    let cert = bezout_certificate(r, s)?;
    let v = &cert.q * &cert.d.unit_inverse()?;
    let e = residue_of(&(s * &v), m)?;
    let xr = residue_of(x, m)?;
    let (idempotent, unit) = clean_split(xr, m)
        .ok_or_else(|| Error::ConstructionFailed(format!("{xr} is not clean in Z/{m}")))?;
    let out = CleanDecomposition {
        r: r.clone(),
        s: s.clone(),
        a: a.clone(),
        modulus: c,
        quotient_order: m,
        proof_idempotent: e,
        x: xr,
        idempotent,
        unit,
    };
    out.verify().map_err(|e| Error::ConstructionFailed(e.to_string()))?;
    Ok(out)
}

/// `b + lambda*c = v*u` with `u` coprime to `a` and `v` coprime to `c`,
/// built from a `(p, q)` witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prop5Forward {
    pub a: Element,
    pub b: Element,
    pub c: Element,
    pub lambda: Element,
    pub u: Element,
    pub v: Element,
    /// Whether `u` and `v` are also coprime.
    pub uv_coprime: bool,
}

impl Prop5Forward {
    pub fn verify(&self) -> Result<()> {
        check_factorization(&self.a, &self.b, &self.c, &self.lambda, &self.u, &self.v)
            .map_err(Error::CheckFailed)?;
        if self.uv_coprime != coprime(&self.u, &self.v) {
            return Err(Error::CheckFailed("u, v coprimality flag is wrong".into()));
        }
        Ok(())
    }
}

fn check_factorization(a: &Element, b: &Element, c: &Element, lambda: &Element, u: &Element, v: &Element) -> std::result::Result<(), String> {
    if (b + &(lambda * c)) != (v * u) {
        return Err(format!("{b} + ({lambda})*({c}) != ({v})*({u})"));
    }
    if !coprime(u, a) {
        return Err(format!("u = {u} is not coprime to a = {a}"));
    }
    if !coprime(v, c) {
        return Err(format!("v = {v} is not coprime to c = {c}"));
    }
    Ok(())
}

/// `(x, y)` with `x*p + y*c = 1`; `(p^-1, 0)` when `p` is a unit.
fn unit_cofactors(p: &Element, c: &Element) -> Result<(Element, Element)> {
    if let Ok(inv) = p.unit_inverse() {
        return Ok((inv, p.ring().zero()));
    }
    let cert = bezout_certificate(p, c)?;
    let k = cert.d.unit_inverse()?;
    Ok((&cert.p * &k, &cert.q * &k))
}

/// `u = p*b + q*c`, `v*p + j*c = 1` and `lambda` the least solution of
/// `c*lambda = v*u - b`.
pub fn prop5_forward(a: &Element, b: &Element, c: &Element, p: &Element, q: &Element) -> Result<Prop5Forward> {
    crate::ring::check_same_ring(&[a, b, c, p, q])?;
    let unimodular = crate::ring::ideal_generator(&[a.clone(), b.clone(), c.clone()])?.is_unit();
    if !unimodular || !PQWitness::holds(a, b, c, p, q) {
        return Err(Error::PreconditionViolated(format!(
            "need aR + bR + cR = R and ({p}*{a}, {p}*{b} + {q}*{c}) unimodular"
        )));
    }
    let u = &(p * b) + &(q * c);
    let (v, j) = unit_cofactors(p, c).map_err(|_| Error::ConstructionFailed(format!("{p} and {c} are not coprime")))?;
    let lambda = solve_linear(c, &(&(&v * &u) - b))
        .map_err(|e| Error::ConstructionFailed(format!("c*lambda = v*u - b: {e}")))?;
    debug_assert_eq!(c * &lambda, c * &(&(&v * q) - &(&j * b)));
    check_factorization(a, b, c, &lambda, &u, &v).map_err(Error::ConstructionFailed)?;
    Ok(Prop5Forward {
        a: a.clone(),
        b: b.clone(),
        c: c.clone(),
        uv_coprime: coprime(&u, &v),
        lambda,
        u,
        v,
    })
}

/// `p*v + j*c = 1` and `q = j*u + p*lambda`, so `p*b + q*c = u`. When `p`
/// shares a factor with `u` it is moved along `p + k*c` (with
/// `j - k*v`), which keeps both identities.
pub fn prop5_backward(
    a: &Element,
    b: &Element,
    c: &Element,
    lambda: &Element,
    u: &Element,
    v: &Element,
    bounds: &SearchBounds,
) -> Result<PQWitness> {
    let ring = crate::ring::check_same_ring(&[a, b, c, lambda, u, v])?;
    check_factorization(a, b, c, lambda, u, v).map_err(Error::PreconditionViolated)?;
    let (p0, j0) = unit_cofactors(v, c)?;
    let hit = (0..scan::scan_len(ring, bounds)).map(|i| scan::scan_element(ring, i)).find_map(|k| {
        let p = &p0 + &(&k * c);
        let j = &j0 - &(&k * v);
        let q = &(&j * u) + &(&p * lambda);
        PQWitness::holds(a, b, c, &p, &q).then(|| PQWitness { a: a.clone(), b: b.clone(), c: c.clone(), p, q })
    });
    hit.ok_or_else(|| Error::ConstructionFailed(format!("no shift of p = {p0} along {c} is coprime to {u} ({})", bounds.describe(ring))))
}
