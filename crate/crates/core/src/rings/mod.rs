//! Concrete rings behind [`crate::ring`]: arithmetic kernels, the textual
//! grammar for rings and elements, and enumeration of finite rings.

pub(crate) mod integers;
pub(crate) mod localized;
pub(crate) mod modular;
pub(crate) mod poly;
pub mod scan;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ring::{Element, Ring, Value};

/// Parses `Z`, `Z/<n>`, `GF(<p>)[x]` or `Z_(<p>)`.
pub fn parse_ring(spec: &str) -> Result<Ring> {
    let s = spec.trim();
    let number = |t: &str| -> Result<u64> {
        t.trim()
            .parse::<u64>()
            .map_err(|_| Error::Parse(format!("bad ring parameter {t:?} in {spec:?}")))
    };
    if s == "Z" {
        return Ok(Ring::Integers);
    }
    if let Some(n) = s.strip_prefix("Z/") {
        return Ring::modular(number(n)?);
    }
    if let Some(rest) = s.strip_prefix("GF(").and_then(|r| r.strip_suffix(")[x]")) {
        return Ring::poly_over(number(rest)?);
    }
    if let Some(rest) = s.strip_prefix("Z_(").and_then(|r| r.strip_suffix(')')) {
        return Ring::localized_at(number(rest)?);
    }
    Err(Error::Parse(format!("unknown ring {spec:?}")))
}

fn parse_int(t: &str) -> Result<BigInt> {
    let t = t.trim();
    let body = t.strip_prefix('+').unwrap_or(t);
    body.parse::<BigInt>()
        .map_err(|_| Error::Parse(format!("bad integer literal {t:?}")))
}

/// Parses an element literal and returns it in canonical form.
pub fn parse_element(ring: Ring, text: &str) -> Result<Element> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err(Error::Parse("empty element literal".into()));
    }
    if let Some((num, den)) = t.split_once('/') {
        return match ring {
            Ring::IntegersLocalizedAt(p) => {
                let (num, den) = (parse_int(num)?, parse_int(den)?);
                if den.is_zero() {
                    return Err(Error::Parse(format!("zero denominator in {text:?}")));
                }
                ring.fraction(num, den).ok_or_else(|| {
                    Error::RingMismatch(format!("{text} has a denominator divisible by {p}"))
                })
            }
            _ => Err(Error::RingMismatch(format!("fraction literal {text:?} for {ring}"))),
        };
    }
    match ring {
        Ring::PolyOverPrimeField(p) => parse_poly(&t, p).map(|c| ring.poly(&c)),
        _ => {
            if t.contains('x') {
                return Err(Error::RingMismatch(format!("polynomial literal {text:?} for {ring}")));
            }
            Ok(ring.from_bigint(&parse_int(&t)?))
        }
    }
}

/// Signed sum of terms `c`, `c*x`, `cx`, `x^k`, `c*x^k`.
fn parse_poly(t: &str, p: u64) -> Result<Vec<u64>> {
    let bad = || Error::Parse(format!("bad polynomial literal {t:?}"));
    let mut coeffs: Vec<u64> = Vec::new();
    let mut terms: Vec<(bool, &str)> = Vec::new();
    let mut start = 0;
    let mut negative = false;
    for (i, ch) in t.char_indices() {
        if (ch == '+' || ch == '-') && i > 0 && !t[..i].ends_with('^') {
            terms.push((negative, &t[start..i]));
            negative = ch == '-';
            start = i + 1;
        } else if (ch == '+' || ch == '-') && i == 0 {
            negative = ch == '-';
            start = 1;
        }
    }
    terms.push((negative, &t[start..]));
    for (negative, term) in terms {
        if term.is_empty() {
            return Err(bad());
        }
        let (coef, degree) = match term.find('x') {
            None => (parse_int(term)?, 0usize),
            Some(pos) => {
                let head = term[..pos].strip_suffix('*').unwrap_or(&term[..pos]);
                let coef = if head.is_empty() { BigInt::one() } else { parse_int(head)? };
                let tail = &term[pos + 1..];
                let degree = if tail.is_empty() {
                    1
                } else {
                    tail.strip_prefix('^')
                        .and_then(|d| d.parse::<usize>().ok())
                        .ok_or_else(bad)?
                };
                (coef, degree)
            }
        };
        let coef = if negative { -coef } else { coef };
        let c = {
            let r = coef % BigInt::from(p);
            let r = if r < BigInt::zero() { r + BigInt::from(p) } else { r };
            u64::try_from(r).expect("reduced")
        };
        if coeffs.len() <= degree {
            coeffs.resize(degree + 1, 0);
        }
        coeffs[degree] = modular::add(coeffs[degree], c, p);
    }
    Ok(poly::trim(coeffs))
}

pub(crate) fn render_element(e: &Element) -> String {
    match e.value() {
        Value::Int(k) => k.to_string(),
        Value::Residue(r) => r.to_string(),
        Value::Frac(n, d) => {
            if d.is_one() {
                n.to_string()
            } else {
                format!("{n}/{d}")
            }
        }
        Value::Poly(c) => {
            if c.is_empty() {
                return "0".into();
            }
            let terms: Vec<String> = c
                .iter()
                .enumerate()
                .rev()
                .filter(|(_, &k)| k != 0)
                .map(|(deg, &k)| match (deg, k) {
                    (0, k) => k.to_string(),
                    (1, 1) => "x".into(),
                    (1, k) => format!("{k}*x"),
                    (d, 1) => format!("x^{d}"),
                    (d, k) => format!("{k}*x^{d}"),
                })
                .collect();
            terms.join("+")
        }
    }
}

/// All elements of a finite ring in canonical order.
#[derive(Clone, Debug)]
pub struct ElementStream {
    ring: Ring,
    next: u64,
    len: u64,
}

impl ElementStream {
    pub fn ring(&self) -> Ring {
        self.ring
    }
}

impl Iterator for ElementStream {
    type Item = Element;

    fn next(&mut self) -> Option<Element> {
        if self.next >= self.len {
            return None;
        }
        let e = self.ring.residue(self.next);
        self.next += 1;
        Some(e)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.len - self.next) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for ElementStream {}

pub fn enumerate_elements(ring: Ring) -> Result<ElementStream> {
    match ring.order() {
        Some(len) => Ok(ElementStream { ring, next: 0, len }),
        None => Err(Error::InfiniteRing(ring.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_grammar() {
        assert_eq!(parse_ring("Z/12").unwrap(), Ring::Modular(12));
        assert_eq!(parse_ring("GF(4)[x]").unwrap_err(), Error::NotPrime(4));
        assert_eq!(parse_ring("Z_(5)").unwrap(), Ring::IntegersLocalizedAt(5));
        assert_eq!(parse_ring("Z").unwrap(), Ring::Integers);
        assert_eq!(parse_ring("Z_(9)").unwrap_err().code(), "NotPrime");
        assert_eq!(parse_ring("Z/1").unwrap_err().code(), "ParseError");
        assert_eq!(parse_ring("Q").unwrap_err().code(), "ParseError");
        for r in [Ring::Integers, Ring::Modular(30), Ring::PolyOverPrimeField(7), Ring::IntegersLocalizedAt(3)] {
            assert_eq!(parse_ring(&r.to_string()).unwrap(), r);
        }
    }

    #[test]
    fn element_literals() {
        let z6 = Ring::Modular(6);
        assert_eq!(parse_element(z6, "13").unwrap(), z6.residue(1));
        assert_eq!(parse_element(z6, "-1").unwrap(), z6.residue(5));
        let g5 = Ring::PolyOverPrimeField(5);
        assert_eq!(parse_element(g5, "6*x+7").unwrap(), g5.poly(&[2, 1]));
        assert_eq!(parse_element(g5, "x^2-1").unwrap(), g5.poly(&[4, 0, 1]));
        assert_eq!(parse_element(g5, "3x^2 + x + 4").unwrap(), g5.poly(&[4, 1, 3]));
        assert_eq!(parse_element(g5, "-x").unwrap().to_string(), "4*x");
        let l5 = Ring::IntegersLocalizedAt(5);
        assert_eq!(parse_element(l5, "10/4").unwrap().to_string(), "5/2");
        assert_eq!(parse_element(l5, "1/5").unwrap_err().code(), "RingMismatch");
        assert_eq!(parse_element(Ring::Integers, "1/2").unwrap_err().code(), "RingMismatch");
        assert_eq!(parse_element(Ring::Integers, "abc").unwrap_err().code(), "ParseError");
    }

    #[test]
    fn render_polynomials() {
        let g5 = Ring::PolyOverPrimeField(5);
        assert_eq!(g5.poly(&[4, 1, 3]).to_string(), "3*x^2+x+4");
        assert_eq!(g5.zero().to_string(), "0");
        assert_eq!(g5.poly(&[0, 0, 1]).to_string(), "x^2");
    }

    #[test]
    fn enumeration() {
        let all: Vec<_> = enumerate_elements(Ring::Modular(4)).unwrap().map(|e| e.to_string()).collect();
        assert_eq!(all, ["0", "1", "2", "3"]);
        assert_eq!(enumerate_elements(Ring::Modular(2)).unwrap().len(), 2);
        assert_eq!(enumerate_elements(Ring::Integers).unwrap_err().code(), "InfiniteRing");
    }
}
