//! The ring abstraction every algorithm in this crate is written against.
//!
//! A [`Ring`] names one of the four shipped commutative Bezout rings and an
//! [`Element`] carries its ring together with a canonical payload, so
//! equality of elements is payload equality. Arithmetic operators panic when
//! the operands live in different rings; the fallible entry points
//! ([`bezout_certificate`], [`exact_divide`], ...) report
//! [`Error::RingMismatch`] instead.

mod bezout;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rings::{integers, localized, modular, poly};

pub use bezout::{
    bezout_certificate, content_decomposition, exact_divide, ideal_generator, normalize_associate,
    solve_linear, BezoutCertificate,
};

/// One of the four concrete rings, with its parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ring {
    Integers,
    Modular(u64),
    PolyOverPrimeField(u64),
    IntegersLocalizedAt(u64),
}

/// Largest prime accepted for `GF(p)[x]` and `Z_(p)`; keeps coefficient
/// products inside `u64` and trial division cheap.
pub const MAX_PRIME: u64 = (1 << 32) - 1;

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Ring {
    pub fn modular(n: u64) -> Result<Ring> {
        if n < 2 {
            return Err(Error::Parse(format!("modulus must be at least 2, got {n}")));
        }
        Ok(Ring::Modular(n))
    }

    pub fn poly_over(p: u64) -> Result<Ring> {
        Self::check_prime(p)?;
        Ok(Ring::PolyOverPrimeField(p))
    }

    pub fn localized_at(p: u64) -> Result<Ring> {
        Self::check_prime(p)?;
        Ok(Ring::IntegersLocalizedAt(p))
    }

    fn check_prime(p: u64) -> Result<()> {
        if p > MAX_PRIME {
            return Err(Error::NotSupported(format!("prime {p} exceeds {MAX_PRIME}")));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(())
    }

    /// Number of elements for finite rings.
    pub fn order(&self) -> Option<u64> {
        match *self {
            Ring::Modular(n) => Some(n),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.order().is_some()
    }

    /// Rings where division with remainder drives Euclid's algorithm.
    pub fn is_euclidean(&self) -> bool {
        matches!(self, Ring::Integers | Ring::PolyOverPrimeField(_))
    }

    pub fn zero(&self) -> Element {
        self.from_i64(0)
    }

    pub fn one(&self) -> Element {
        self.from_i64(1)
    }

    pub fn from_i64(&self, k: i64) -> Element {
        self.from_bigint(&BigInt::from(k))
    }

    /// Image of an integer under the canonical map `Z -> R`.
    pub fn from_bigint(&self, k: &BigInt) -> Element {
        let value = match *self {
            Ring::Integers => Value::Int(k.clone()),
            Ring::Modular(n) => Value::Residue(bigint_mod(k, n)),
            Ring::PolyOverPrimeField(p) => Value::Poly(poly::constant(bigint_mod(k, p), p)),
            Ring::IntegersLocalizedAt(_) => Value::Frac(k.clone(), BigInt::one()),
        };
        Element { ring: *self, value }
    }

    /// Residue `k mod n` of a finite ring.
    pub fn residue(&self, k: u64) -> Element {
        match *self {
            Ring::Modular(n) => Element { ring: *self, value: Value::Residue(k % n) },
            _ => panic!("residue() on infinite ring {self}"),
        }
    }

    /// Polynomial from coefficients (least degree first), reduced mod `p`.
    pub fn poly(&self, coeffs: &[u64]) -> Element {
        match *self {
            Ring::PolyOverPrimeField(p) => Element {
                ring: *self,
                value: Value::Poly(poly::trim(coeffs.iter().map(|c| c % p).collect())),
            },
            _ => panic!("poly() on non-polynomial ring {self}"),
        }
    }

    /// Fraction `num/den`; `None` when it does not lie in this ring.
    pub fn fraction(&self, num: BigInt, den: BigInt) -> Option<Element> {
        match *self {
            Ring::IntegersLocalizedAt(p) => {
                let (n, d) = localized::reduce(num, den, p)?;
                Some(Element { ring: *self, value: Value::Frac(n, d) })
            }
            Ring::Integers => {
                let (q, r) = num_integer::Integer::div_rem(&num, &den);
                (!den.is_zero() && r.is_zero()).then(|| self.from_bigint(&q))
            }
            _ => None,
        }
    }
}

fn bigint_mod(k: &BigInt, n: u64) -> u64 {
    let r = k % BigInt::from(n);
    let r = if r.is_negative() { r + BigInt::from(n) } else { r };
    u64::try_from(r).expect("reduced residue fits")
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Integers => write!(f, "Z"),
            Ring::Modular(n) => write!(f, "Z/{n}"),
            Ring::PolyOverPrimeField(p) => write!(f, "GF({p})[x]"),
            Ring::IntegersLocalizedAt(p) => write!(f, "Z_({p})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) enum Value {
    Int(BigInt),
    Residue(u64),
    Poly(poly::Coeffs),
    /// Reduced fraction, positive denominator coprime to the prime.
    Frac(BigInt, BigInt),
}

/// A ring element in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Element {
    ring: Ring,
    value: Value,
}

impl Element {
    pub(crate) fn new(ring: Ring, value: Value) -> Element {
        Element { ring, value }
    }

    pub(crate) fn value(&self) -> &Value {
        &self.value
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn as_bigint(&self) -> Option<&BigInt> {
        match &self.value {
            Value::Int(k) => Some(k),
            _ => None,
        }
    }

    pub fn as_residue(&self) -> Option<u64> {
        match self.value {
            Value::Residue(r) => Some(r),
            _ => None,
        }
    }

    pub fn as_poly_coeffs(&self) -> Option<&[u64]> {
        match &self.value {
            Value::Poly(c) => Some(c),
            _ => None,
        }
    }

    pub fn as_fraction(&self) -> Option<(&BigInt, &BigInt)> {
        match &self.value {
            Value::Frac(n, d) => Some((n, d)),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.value {
            Value::Int(k) => k.is_zero(),
            Value::Residue(r) => *r == 0,
            Value::Poly(c) => c.is_empty(),
            Value::Frac(n, _) => n.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        *self == self.ring.one()
    }

    pub fn is_unit(&self) -> bool {
        match (&self.value, self.ring) {
            (Value::Int(k), _) => integers::is_unit(k),
            (Value::Residue(r), Ring::Modular(n)) => modular::is_unit(*r, n),
            (Value::Poly(c), _) => c.len() == 1,
            (Value::Frac(n, _), Ring::IntegersLocalizedAt(p)) => localized::is_unit(n, p),
            _ => unreachable!("payload matches its ring"),
        }
    }

    pub fn unit_inverse(&self) -> Result<Element> {
        if !self.is_unit() {
            return Err(Error::NotAUnit(format!("{self} in {}", self.ring)));
        }
        let value = match (&self.value, self.ring) {
            (Value::Int(k), _) => Value::Int(k.clone()),
            (Value::Residue(r), Ring::Modular(n)) => {
                Value::Residue(modular::inverse(*r, n).expect("unit"))
            }
            (Value::Poly(c), Ring::PolyOverPrimeField(p)) => {
                Value::Poly(vec![modular::inverse(c[0], p).expect("unit")])
            }
            (Value::Frac(n, d), Ring::IntegersLocalizedAt(p)) => {
                let (n, d) = localized::reduce_in_ring(d.clone(), n.clone(), p);
                Value::Frac(n, d)
            }
            _ => unreachable!("payload matches its ring"),
        };
        Ok(Element { ring: self.ring, value })
    }

    /// `self^k` by repeated squaring.
    pub fn pow(&self, mut k: u32) -> Element {
        let mut base = self.clone();
        let mut acc = self.ring.one();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        acc
    }

    /// Quotient and remainder for the Euclidean rings; `None` elsewhere or
    /// when dividing by zero.
    pub fn div_rem(&self, d: &Element) -> Option<(Element, Element)> {
        assert_same_ring(self, d);
        match (&self.value, &d.value, self.ring) {
            (Value::Int(a), Value::Int(b), _) if !b.is_zero() => {
                let (q, r) = num_integer::Integer::div_rem(a, b);
                Some((self.ring.wrap(Value::Int(q)), self.ring.wrap(Value::Int(r))))
            }
            (Value::Poly(a), Value::Poly(b), Ring::PolyOverPrimeField(p)) if !b.is_empty() => {
                let (q, r) = poly::div_rem(a, b, p);
                Some((self.ring.wrap(Value::Poly(q)), self.ring.wrap(Value::Poly(r))))
            }
            _ => None,
        }
    }

    /// Euclidean size used to drive division steps: `|k|` or the degree.
    pub fn euclidean_size(&self) -> Option<BigInt> {
        match &self.value {
            Value::Int(k) => Some(k.abs()),
            Value::Poly(c) => Some(BigInt::from(c.len())),
            _ => None,
        }
    }
}

impl Ring {
    fn wrap(&self, value: Value) -> Element {
        Element { ring: *self, value }
    }
}

fn assert_same_ring(a: &Element, b: &Element) {
    assert!(
        a.ring == b.ring,
        "ring mismatch: {} in {} vs {} in {}",
        a,
        a.ring,
        b,
        b.ring
    );
}

pub(crate) fn check_same_ring(elements: &[&Element]) -> Result<Ring> {
    let ring = elements[0].ring;
    if let Some(bad) = elements.iter().find(|e| e.ring != ring) {
        return Err(Error::RingMismatch(format!("{ring} vs {}", bad.ring)));
    }
    Ok(ring)
}

impl<'a> Add<&'a Element> for &'a Element {
    type Output = Element;

    fn add(self, rhs: &'a Element) -> Element {
        assert_same_ring(self, rhs);
        let value = match (&self.value, &rhs.value, self.ring) {
            (Value::Int(a), Value::Int(b), _) => Value::Int(a + b),
            (Value::Residue(a), Value::Residue(b), Ring::Modular(n)) => {
                Value::Residue(modular::add(*a, *b, n))
            }
            (Value::Poly(a), Value::Poly(b), Ring::PolyOverPrimeField(p)) => {
                Value::Poly(poly::add(a, b, p))
            }
            (Value::Frac(an, ad), Value::Frac(bn, bd), Ring::IntegersLocalizedAt(p)) => {
                let (n, d) = localized::reduce_in_ring(an * bd + bn * ad, ad * bd, p);
                Value::Frac(n, d)
            }
            _ => unreachable!("payload matches its ring"),
        };
        self.ring.wrap(value)
    }
}

impl Neg for &Element {
    type Output = Element;

    fn neg(self) -> Element {
        let value = match (&self.value, self.ring) {
            (Value::Int(a), _) => Value::Int(-a),
            (Value::Residue(a), Ring::Modular(n)) => Value::Residue(modular::neg(*a, n)),
            (Value::Poly(a), Ring::PolyOverPrimeField(p)) => Value::Poly(poly::neg(a, p)),
            (Value::Frac(n, d), _) => Value::Frac(-n, d.clone()),
            _ => unreachable!("payload matches its ring"),
        };
        self.ring.wrap(value)
    }
}

impl<'a> Sub<&'a Element> for &'a Element {
    type Output = Element;

    fn sub(self, rhs: &'a Element) -> Element {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Element> for &'a Element {
    type Output = Element;

    fn mul(self, rhs: &'a Element) -> Element {
        assert_same_ring(self, rhs);
        let value = match (&self.value, &rhs.value, self.ring) {
            (Value::Int(a), Value::Int(b), _) => Value::Int(a * b),
            (Value::Residue(a), Value::Residue(b), Ring::Modular(n)) => {
                Value::Residue(modular::mul(*a, *b, n))
            }
            (Value::Poly(a), Value::Poly(b), Ring::PolyOverPrimeField(p)) => {
                Value::Poly(poly::mul(a, b, p))
            }
            (Value::Frac(an, ad), Value::Frac(bn, bd), Ring::IntegersLocalizedAt(p)) => {
                let (n, d) = localized::reduce_in_ring(an * bn, ad * bd, p);
                Value::Frac(n, d)
            }
            _ => unreachable!("payload matches its ring"),
        };
        self.ring.wrap(value)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<Element> for Element {
            type Output = Element;
            fn $method(self, rhs: Element) -> Element {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a Element> for Element {
            type Output = Element;
            fn $method(self, rhs: &'a Element) -> Element {
                (&self).$method(rhs)
            }
        }
        impl<'a> $tr<Element> for &'a Element {
            type Output = Element;
            fn $method(self, rhs: Element) -> Element {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Element {
    type Output = Element;

    fn neg(self) -> Element {
        -&self
    }
}

impl PartialOrd for Element {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical total order: numeric for integers, residues and fractions,
/// degree-then-lexicographic for polynomials. Elements of different rings
/// are ordered by ring first.
impl Ord for Element {
    fn cmp(&self, other: &Self) -> Ordering {
        self.ring.cmp(&other.ring).then_with(|| match (&self.value, &other.value) {
            (Value::Int(a), Value::Int(b)) => a.cmp(b),
            (Value::Residue(a), Value::Residue(b)) => a.cmp(b),
            (Value::Poly(a), Value::Poly(b)) => poly::cmp(a, b),
            (Value::Frac(an, ad), Value::Frac(bn, bd)) => (an * bd).cmp(&(bn * ad)),
            _ => unreachable!("same ring, same payload kind"),
        })
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::rings::render_element(self))
    }
}
