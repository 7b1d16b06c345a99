//! Witness searches for stable range 1, square stable range 1 and stable
//! range 2.
//!
//! All three reduce to finding `x` with `c0 + c1*x` a unit. In `Z/n` every
//! element is tried in canonical order. In `Z` and `GF(p)[x]` the unit group
//! is finite and explicit, so the equation `c0 + c1*x = u` is solved exactly
//! for every unit `u` and the solution earliest in scan order is kept; a
//! miss there is a proof that no witness exists. `Z_(p)` scans integers.

use crate::error::{Error, Result};
use crate::par::Exec;
use crate::ring::{bezout_certificate, exact_divide, ideal_generator, Element, Ring};
use crate::rings::scan::{self, SearchBounds};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessReport {
    pub found: bool,
    pub witness: Option<Element>,
    /// Human-readable description of the search space that was covered.
    pub searched_bound: String,
    /// A negative answer is conclusive (exhaustive scan or exact solve).
    pub exhaustive: bool,
}

impl WitnessReport {
    fn hit(witness: Element, searched_bound: String, exhaustive: bool) -> Self {
        WitnessReport { found: true, witness: Some(witness), searched_bound, exhaustive }
    }

    fn miss(searched_bound: String, exhaustive: bool) -> Self {
        WitnessReport { found: false, witness: None, searched_bound, exhaustive }
    }
}

pub(crate) fn require_coprime(a: &Element, b: &Element) -> Result<()> {
    let cert = bezout_certificate(a, b)?;
    if cert.is_unimodular() {
        Ok(())
    } else {
        Err(Error::NotCoprime(format!("({a}, {b}) generate ({})", cert.d)))
    }
}

pub(crate) fn require_unimodular(elems: &[Element]) -> Result<()> {
    let g = ideal_generator(elems)?;
    if g.is_unit() {
        Ok(())
    } else {
        let shown: Vec<String> = elems.iter().map(ToString::to_string).collect();
        Err(Error::NotCoprime(format!("({}) generate ({g})", shown.join(", "))))
    }
}

/// Earliest `x` in scan order with `c0 + c1*x` a unit.
pub fn affine_unit_witness(c0: &Element, c1: &Element, bounds: &SearchBounds) -> WitnessReport {
    let ring = c0.ring();
    match ring {
        Ring::Modular(n) => {
            let hit = Exec::default().find_first(n as usize, |x| {
                (c0 + &(c1 * &ring.residue(x as u64))).is_unit()
            });
            let desc = bounds.describe(ring);
            match hit {
                Some(x) => WitnessReport::hit(ring.residue(x as u64), desc, true),
                None => WitnessReport::miss(desc, true),
            }
        }
        Ring::Integers => {
            let desc = format!("exact: {c0} + ({c1})*x = u solved for every unit u in {{1, -1}}");
            let candidates = [ring.one(), ring.from_i64(-1)]
                .into_iter()
                .filter_map(|u| solve_affine(c0, c1, &u))
                .min_by(scan::scan_cmp);
            match candidates {
                Some(x) => WitnessReport::hit(x, desc, true),
                None => WitnessReport::miss(desc, true),
            }
        }
        Ring::PolyOverPrimeField(_) => {
            let desc = format!("exact: {c0} + ({c1})*x = u solved for every nonzero constant u");
            match poly_affine_witness(c0, c1) {
                Some(x) => WitnessReport::hit(x, desc, true),
                None => WitnessReport::miss(desc, true),
            }
        }
        Ring::IntegersLocalizedAt(_) => {
            let desc = bounds.describe(ring);
            let len = scan::scan_len(ring, bounds);
            (0..len)
                .map(|i| scan::scan_element(ring, i))
                .find(|x| (c0 + &(c1 * x)).is_unit())
                .map_or_else(|| WitnessReport::miss(desc.clone(), false), |x| WitnessReport::hit(x, desc.clone(), false))
        }
    }
}

/// Least `x` (canonical order) with `c0 + c1*x = u`, `c1` arbitrary.
fn solve_affine(c0: &Element, c1: &Element, u: &Element) -> Option<Element> {
    if c1.is_zero() {
        return (c0 == u).then(|| c0.ring().zero());
    }
    exact_divide(&(u - c0), c1).ok()
}

/// `c0 + c1*x` is a nonzero constant. The solution set is empty, a single
/// polynomial, or (for constant `c1`) a coset of the nonzero constants.
fn poly_affine_witness(c0: &Element, c1: &Element) -> Option<Element> {
    let ring = c0.ring();
    let Ring::PolyOverPrimeField(p) = ring else { unreachable!() };
    if c1.is_zero() {
        return c0.is_unit().then(|| ring.zero());
    }
    if c1.is_unit() {
        // x = y + k with y = -c0/c1 and k any nonzero constant
        let y = -(c0 * &c1.unit_inverse().expect("unit"));
        let mut coeffs = y.as_poly_coeffs().unwrap().to_vec();
        if coeffs.is_empty() {
            coeffs.push(0);
        }
        coeffs[0] = if coeffs[0] != 0 { 0 } else { 1 % p };
        return Some(ring.poly(&coeffs));
    }
    let (q, r) = c0.div_rem(c1).expect("nonzero divisor");
    r.is_unit().then(|| -q)
}

/// Witness `y` with `a + b*y` a unit.
pub fn sr1_witness(a: &Element, b: &Element, bounds: &SearchBounds) -> Result<WitnessReport> {
    require_coprime(a, b)?;
    Ok(affine_unit_witness(a, b, bounds))
}

/// Witness `x` with `a^2 + b*x` a unit.
pub fn ssr1_witness(a: &Element, b: &Element, bounds: &SearchBounds) -> Result<WitnessReport> {
    require_coprime(a, b)?;
    Ok(affine_unit_witness(&(a * a), b, bounds))
}

/// `b_1, ..., b_{r-1}` such that the `a_i + a_r*b_i` (`i < r`) generate the
/// unit ideal. Candidates are visited in order of total scan rank.
pub fn sr2_reduce(elems: &[Element], bounds: &SearchBounds) -> Result<Vec<Element>> {
    if elems.len() < 3 {
        return Err(Error::PreconditionViolated(format!(
            "stable range 2 reduction needs at least 3 elements, got {}",
            elems.len()
        )));
    }
    require_unimodular(elems)?;
    let ring = elems[0].ring();
    let (head, last) = elems.split_at(elems.len() - 1);
    let last = &last[0];
    let k = head.len();
    let len = scan::scan_len(ring, bounds);
    let top = scan::tuple_sum_bound(ring, k, bounds);
    let hit = scan::graded_tuples(k, len, top, |idx| {
        let shifted: Vec<Element> = head
            .iter()
            .zip(idx)
            .map(|(a, &i)| a + &(last * &scan::scan_element(ring, i)))
            .collect();
        ideal_generator(&shifted).map(|g| g.is_unit()).unwrap_or(false)
    });
    match hit {
        Some(idx) => Ok(idx.into_iter().map(|i| scan::scan_element(ring, i)).collect()),
        None => Err(Error::WitnessNotFound(format!(
            "no stable range 2 shift with total scan rank <= {top}; the internal bound is too small"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b() -> SearchBounds {
        SearchBounds::default()
    }

    #[test]
    fn sr1_examples() {
        let r = Ring::Modular(6);
        let w = sr1_witness(&r.residue(4), &r.residue(3), &b()).unwrap();
        assert_eq!(w.witness, Some(r.residue(1)));
        for ring in [Ring::Integers, Ring::Modular(10), Ring::PolyOverPrimeField(3), Ring::IntegersLocalizedAt(5)] {
            let w = sr1_witness(&ring.one(), &ring.from_i64(7), &b()).unwrap();
            assert_eq!(w.witness, Some(ring.zero()));
        }
        let l = Ring::IntegersLocalizedAt(5);
        let w = sr1_witness(&l.from_i64(5), &l.from_i64(2), &b()).unwrap();
        assert_eq!(w.witness, Some(l.one()));
        assert!((&l.from_i64(5) + &l.from_i64(2)).is_unit());
    }

    #[test]
    fn ssr1_examples() {
        let r = Ring::Modular(6);
        let w = ssr1_witness(&r.residue(2), &r.residue(3), &b()).unwrap();
        assert_eq!(w.witness, Some(r.residue(1)));
        let z = Ring::Integers;
        let w = ssr1_witness(&z.from_i64(2), &z.from_i64(5), &b()).unwrap();
        assert_eq!(w.witness, Some(z.from_i64(-1)));
        let w = ssr1_witness(&z.from_i64(3), &z.from_i64(7), &b()).unwrap();
        assert!(!w.found && w.exhaustive);
    }

    #[test]
    fn not_coprime_is_an_error() {
        let z = Ring::Integers;
        let e = ssr1_witness(&z.from_i64(4), &z.from_i64(6), &b()).unwrap_err();
        assert_eq!(e.code(), "NotCoprime");
    }

    #[test]
    fn integer_exact_solve_matches_bounded_scan() {
        let z = Ring::Integers;
        let small = SearchBounds { integer_bound: 60, ..b() };
        for a in -12i64..=12 {
            for bb in -12i64..=12 {
                let (a, bb) = (z.from_i64(a), z.from_i64(bb));
                if require_coprime(&a, &bb).is_err() {
                    continue;
                }
                let exact = ssr1_witness(&a, &bb, &small).unwrap();
                let scanned = (0..scan::scan_len(z, &small))
                    .map(|i| scan::scan_element(z, i))
                    .find(|x| (&(&a * &a) + &(&bb * x)).is_unit());
                match &exact.witness {
                    Some(w) if scan::within_bounds(w, &small) => assert_eq!(exact.witness, scanned, "a={a} b={bb}"),
                    _ => assert_eq!(scanned, None, "a={a} b={bb}"),
                }
            }
        }
    }

    #[test]
    fn polynomial_exact_solve_matches_bounded_scan() {
        let r = Ring::PolyOverPrimeField(3);
        let small = SearchBounds { poly_degree: 3, ..b() };
        let elems: Vec<Element> = (0..27).map(|i| scan::scan_element(r, i)).collect();
        for c0 in &elems {
            for c1 in &elems {
                let got = affine_unit_witness(c0, c1, &small).witness;
                let scanned = (0..scan::scan_len(r, &small))
                    .map(|i| scan::scan_element(r, i))
                    .find(|x| (c0 + &(c1 * x)).is_unit());
                assert_eq!(got, scanned, "c0={c0} c1={c1}");
            }
        }
    }

    #[test]
    fn sr2_examples() {
        let z = Ring::Integers;
        let e = |k| z.from_i64(k);
        let bs = sr2_reduce(&[e(6), e(10), e(15)], &b()).unwrap();
        let shifted = [&e(6) + &(&e(15) * &bs[0]), &e(10) + &(&e(15) * &bs[1])];
        assert!(ideal_generator(&shifted).unwrap().is_one());
        // the pair (1, 1) is also a valid reduction
        assert!(ideal_generator(&[e(21), e(25)]).unwrap().is_one());
        assert_eq!(sr2_reduce(&[e(1), e(4), e(8)], &b()).unwrap(), vec![e(0), e(0)]);

        let r = Ring::Modular(6);
        let xs = [r.residue(2), r.residue(3), r.residue(5)];
        let bs = sr2_reduce(&xs, &b()).unwrap();
        let shifted = [&xs[0] + &(&xs[2] * &bs[0]), &xs[1] + &(&xs[2] * &bs[1])];
        assert!(ideal_generator(&shifted).unwrap().is_unit());
        assert_eq!(sr2_reduce(&xs[..2], &b()).unwrap_err().code(), "PreconditionViolated");
        assert_eq!(sr2_reduce(&[e(2), e(4), e(6)], &b()).unwrap_err().code(), "NotCoprime");
    }
}
