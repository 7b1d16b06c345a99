use num_bigint::BigInt;
use num_traits::Zero;

use super::{check_same_ring, Element, Ring, Value};
use crate::error::{Error, Result};
use crate::rings::{integers, localized, modular, poly};

/// Principal generator `d` of `aR + bR` with cofactors and quotients.
///
/// Invariants: `p*a + q*b = d`, `a = d*a0`, `b = d*b0`, `d` canonical, and
/// `p*a0 + q*b0 = 1` unless `a = b = 0` (then every field is zero).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BezoutCertificate {
    pub a: Element,
    pub b: Element,
    pub d: Element,
    pub p: Element,
    pub q: Element,
    pub a0: Element,
    pub b0: Element,
}

impl BezoutCertificate {
    /// Replays every identity by ring multiplication.
    pub fn verify(&self) -> Result<()> {
        let fail = |what: &str| Err(Error::CheckFailed(format!("bezout certificate: {what}")));
        if &(&self.p * &self.a) + &(&self.q * &self.b) != self.d {
            return fail("p*a + q*b != d");
        }
        if &self.d * &self.a0 != self.a || &self.d * &self.b0 != self.b {
            return fail("a != d*a0 or b != d*b0");
        }
        if normalize_associate(&self.d).0 != self.d {
            return fail("d is not canonical");
        }
        if self.d.is_zero() {
            if !(self.a.is_zero() && self.b.is_zero()) {
                return fail("d = 0 for a nonzero pair");
            }
        } else if !(&(&self.p * &self.a0) + &(&self.q * &self.b0)).is_one() {
            return fail("p*a0 + q*b0 != 1");
        }
        Ok(())
    }

    /// `aR + bR = R`.
    pub fn is_unimodular(&self) -> bool {
        self.d.is_unit()
    }
}

pub fn bezout_certificate(a: &Element, b: &Element) -> Result<BezoutCertificate> {
    let ring = check_same_ring(&[a, b])?;
    let w = |v: Value| Element::new(ring, v);
    let (d, p, q, a0, b0) = match (a.value(), b.value(), ring) {
        (Value::Int(x), Value::Int(y), _) => {
            let (d, p, q, a0, b0) = integers::bezout(x, y);
            (w(Value::Int(d)), w(Value::Int(p)), w(Value::Int(q)), w(Value::Int(a0)), w(Value::Int(b0)))
        }
        (Value::Residue(x), Value::Residue(y), Ring::Modular(n)) => {
            let (d, p, q, a0, b0) = modular::bezout(*x, *y, n);
            let r = |v| w(Value::Residue(v));
            (r(d), r(p), r(q), r(a0), r(b0))
        }
        (Value::Poly(x), Value::Poly(y), Ring::PolyOverPrimeField(pr)) => {
            let (d, s, t) = poly::ext_gcd(x, y, pr);
            if d.is_empty() {
                let z = ring.zero();
                (z.clone(), z.clone(), z.clone(), z.clone(), z)
            } else {
                let a0 = poly::div_rem(x, &d, pr).0;
                let b0 = poly::div_rem(y, &d, pr).0;
                let pw = |v| w(Value::Poly(v));
                (pw(d), pw(s), pw(t), pw(a0), pw(b0))
            }
        }
        (Value::Frac(..), Value::Frac(..), Ring::IntegersLocalizedAt(_)) => localized_bezout(a, b),
        _ => unreachable!("payload matches its ring"),
    };
    Ok(BezoutCertificate { a: a.clone(), b: b.clone(), d, p, q, a0, b0 })
}

/// In a discrete valuation ring the element of least valuation generates.
fn localized_bezout(a: &Element, b: &Element) -> (Element, Element, Element, Element, Element) {
    let ring = a.ring();
    let z = ring.zero();
    let (an, _) = a.as_fraction().expect("fraction");
    let (bn, _) = b.as_fraction().expect("fraction");
    let Ring::IntegersLocalizedAt(p) = ring else { unreachable!() };
    let val = |n: &BigInt| (!n.is_zero()).then(|| localized::split_valuation(n, p).0);
    match (val(an), val(bn)) {
        (None, None) => (z.clone(), z.clone(), z.clone(), z.clone(), z),
        (Some(va), vb) if vb.is_none_or(|vb| va <= vb) => {
            let (d, u) = normalize_associate(a);
            let a0 = u.unit_inverse().expect("unit");
            let b0 = exact_divide(b, &d).expect("valuation of b dominates");
            (d, u, z, a0, b0)
        }
        _ => {
            let (d, u) = normalize_associate(b);
            let b0 = u.unit_inverse().expect("unit");
            let a0 = exact_divide(a, &d).expect("valuation of a dominates");
            (d, z, u, a0, b0)
        }
    }
}

/// Canonical associate of `a` and the unit `u` with `u*a` equal to it.
pub fn normalize_associate(a: &Element) -> (Element, Element) {
    let ring = a.ring();
    let w = |v: Value| Element::new(ring, v);
    match (a.value(), ring) {
        (Value::Int(k), _) => {
            if k.sign() == num_bigint::Sign::Minus {
                (w(Value::Int(-k)), ring.from_i64(-1))
            } else {
                (a.clone(), ring.one())
            }
        }
        (Value::Residue(r), Ring::Modular(n)) => {
            let (c, u) = modular::normalize(*r, n);
            (w(Value::Residue(c)), w(Value::Residue(u)))
        }
        (Value::Poly(c), Ring::PolyOverPrimeField(p)) => {
            let (m, u) = poly::normalize(c, p);
            (w(Value::Poly(m)), w(Value::Poly(poly::constant(u, p))))
        }
        (Value::Frac(n, d), Ring::IntegersLocalizedAt(p)) => {
            let ((cn, cd), (un, ud)) = localized::normalize(n, d, p);
            (w(Value::Frac(cn, cd)), w(Value::Frac(un, ud)))
        }
        _ => unreachable!("payload matches its ring"),
    }
}

/// Some `x` with `d*x = a`; the least one in canonical order where several
/// exist.
pub fn exact_divide(a: &Element, d: &Element) -> Result<Element> {
    let ring = check_same_ring(&[a, d])?;
    let none = || Error::NoSolution(format!("{d} does not divide {a} in {ring}"));
    if d.is_zero() {
        return if a.is_zero() { Ok(ring.zero()) } else { Err(none()) };
    }
    let w = |v: Value| Element::new(ring, v);
    match (a.value(), d.value(), ring) {
        (Value::Int(x), Value::Int(y), _) => integers::exact_divide(x, y).map(|q| w(Value::Int(q))).ok_or_else(none),
        (Value::Residue(x), Value::Residue(y), Ring::Modular(n)) => {
            modular::solve(*y, *x, n).map(|q| w(Value::Residue(q))).ok_or_else(none)
        }
        (Value::Poly(x), Value::Poly(y), Ring::PolyOverPrimeField(p)) => {
            let (q, r) = poly::div_rem(x, y, p);
            if r.is_empty() {
                Ok(w(Value::Poly(q)))
            } else {
                Err(none())
            }
        }
        (Value::Frac(an, ad), Value::Frac(dn, dd), Ring::IntegersLocalizedAt(p)) => {
            if an.is_zero() {
                return Ok(ring.zero());
            }
            let (va, _) = localized::split_valuation(an, p);
            let (vd, _) = localized::split_valuation(dn, p);
            if va < vd {
                return Err(none());
            }
            let (n, den) = localized::reduce_in_ring(an * dd, ad * dn, p);
            Ok(w(Value::Frac(n, den)))
        }
        _ => unreachable!("payload matches its ring"),
    }
}

/// Least `x` (canonical order) with `c*x = r`.
pub fn solve_linear(c: &Element, r: &Element) -> Result<Element> {
    exact_divide(r, c)
}


/// Canonical generator of the ideal spanned by `elems` (zero for an empty
/// or all-zero list).
pub fn ideal_generator(elems: &[Element]) -> Result<Element> {
    Ok(content_decomposition(elems)?.0)
}

/// Writes `elems = g * cofactors` with `g` the canonical generator and the
/// cofactors spanning the unit ideal. For an all-zero list `g` and every
/// cofactor are zero.
pub fn content_decomposition(elems: &[Element]) -> Result<(Element, Vec<Element>)> {
    let refs: Vec<&Element> = elems.iter().collect();
    let ring = check_same_ring(&refs)?;
    let mut cofactors = vec![ring.zero(); elems.len()];
    let Some(first) = elems.iter().position(|e| !e.is_zero()) else {
        return Ok((ring.zero(), cofactors));
    };
    let (mut g, u) = normalize_associate(&elems[first]);
    cofactors[first] = u.unit_inverse().expect("normalizing multiplier is a unit");
    for (i, x) in elems.iter().enumerate().skip(first + 1) {
        let cert = bezout_certificate(&g, x)?;
        for c in cofactors[..i].iter_mut() {
            *c = &*c * &cert.a0;
        }
        cofactors[i] = cert.b0;
        g = cert.d;
    }
    Ok((g, cofactors))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(k: i64) -> Element {
        Ring::Integers.from_i64(k)
    }

    #[test]
    fn integer_certificate_matches_extended_euclid() {
        let c = bezout_certificate(&z(12), &z(18)).unwrap();
        assert_eq!((c.d.clone(), c.p.clone(), c.q.clone()), (z(6), z(-1), z(1)));
        assert_eq!((c.a0.clone(), c.b0.clone()), (z(2), z(3)));
        c.verify().unwrap();
    }

    #[test]
    fn one_argument_gcd() {
        let c = bezout_certificate(&z(-7), &z(0)).unwrap();
        assert_eq!((c.d.clone(), c.p.clone(), c.q.clone()), (z(7), z(-1), z(0)));
        let r = Ring::Modular(6);
        let c = bezout_certificate(&r.residue(4), &r.zero()).unwrap();
        assert_eq!(c.d, r.residue(2));
        assert!(c.p.is_unit());
        assert_eq!(&c.p * &r.residue(4), c.d);
        assert!(c.q.is_zero());
        c.verify().unwrap();
    }

    #[test]
    fn zero_pair_is_all_zero() {
        for ring in [Ring::Integers, Ring::Modular(9), Ring::PolyOverPrimeField(3), Ring::IntegersLocalizedAt(5)] {
            let c = bezout_certificate(&ring.zero(), &ring.zero()).unwrap();
            assert!(c.d.is_zero() && c.p.is_zero() && c.q.is_zero() && c.a0.is_zero() && c.b0.is_zero());
            c.verify().unwrap();
        }
    }

    #[test]
    fn polynomial_certificate() {
        let r = Ring::PolyOverPrimeField(5);
        let c = bezout_certificate(&r.poly(&[4, 0, 1]), &r.poly(&[4, 1])).unwrap();
        assert_eq!(c.d, r.poly(&[4, 1]));
        assert_eq!(c.p, r.zero());
        assert_eq!(c.q, r.one());
        assert_eq!(c.a0, r.poly(&[1, 1]));
        assert_eq!(c.b0, r.one());
        c.verify().unwrap();
    }

    #[test]
    fn localized_certificate_picks_least_valuation() {
        let r = Ring::IntegersLocalizedAt(5);
        let a = r.fraction(BigInt::from(50), BigInt::from(3)).unwrap();
        let b = r.fraction(BigInt::from(10), BigInt::from(7)).unwrap();
        let c = bezout_certificate(&a, &b).unwrap();
        assert_eq!(c.d, r.from_i64(5));
        c.verify().unwrap();
    }

    #[test]
    fn ring_mismatch_is_reported() {
        let e = bezout_certificate(&z(1), &Ring::Modular(4).one()).unwrap_err();
        assert_eq!(e.code(), "RingMismatch");
    }

    #[test]
    fn units_and_inverses() {
        let r = Ring::Modular(6);
        assert!(r.residue(5).is_unit());
        assert_eq!(r.residue(5).unit_inverse().unwrap(), r.residue(5));
        assert_eq!(z(1).unit_inverse().unwrap(), z(1));
        let l = Ring::IntegersLocalizedAt(5);
        let seven = l.from_i64(7);
        assert!(seven.is_unit());
        let inv = seven.unit_inverse().unwrap();
        assert_eq!(inv, l.fraction(BigInt::from(1), BigInt::from(7)).unwrap());
        assert!((&inv * &seven).is_one());
        assert_eq!(r.residue(3).unit_inverse().unwrap_err().code(), "NotAUnit");
    }

    #[test]
    fn solve_and_divide_examples() {
        let r = Ring::Modular(6);
        assert_eq!(solve_linear(&r.residue(5), &r.residue(4)).unwrap(), r.residue(2));
        assert_eq!(exact_divide(&r.zero(), &r.residue(3)).unwrap(), r.zero());
        assert_eq!(solve_linear(&z(3), &z(5)).unwrap_err().code(), "NoSolution");
        assert_eq!(exact_divide(&z(0), &z(0)).unwrap(), z(0));
    }

    #[test]
    fn content_decomposition_gives_unimodular_cofactors() {
        let r = Ring::Modular(12);
        for a in 0..12 {
            for b in 0..12 {
                for c in [0, 4, 6, 9] {
                    let elems = [r.residue(a), r.residue(b), r.residue(c)];
                    let (g, cof) = content_decomposition(&elems).unwrap();
                    for (e, k) in elems.iter().zip(&cof) {
                        assert_eq!(&g * k, *e);
                    }
                    if !g.is_zero() {
                        assert!(ideal_generator(&cof).unwrap().is_one());
                    }
                }
            }
        }
        let (g, _) = content_decomposition(&[Ring::Integers.from_i64(0), Ring::Integers.from_i64(-4), Ring::Integers.from_i64(6)]).unwrap();
        assert_eq!(g, Ring::Integers.from_i64(2));
    }

    #[test]
    fn normalization_examples() {
        assert_eq!(normalize_associate(&z(-6)), (z(6), z(-1)));
        let r = Ring::PolyOverPrimeField(5);
        assert_eq!(normalize_associate(&r.poly(&[1, 3])), (r.poly(&[2, 1]), r.poly(&[2])));
        for ring in [Ring::Integers, Ring::Modular(10), Ring::PolyOverPrimeField(7), Ring::IntegersLocalizedAt(3)] {
            assert_eq!(normalize_associate(&ring.zero()), (ring.zero(), ring.one()));
        }
        let l = Ring::IntegersLocalizedAt(5);
        let x = l.fraction(BigInt::from(-75), BigInt::from(4)).unwrap();
        let (c, u) = normalize_associate(&x);
        assert_eq!(c, l.from_i64(25));
        assert_eq!(&u * &x, c);
    }
}
