//! Deterministic search order over ring elements.
//!
//! Finite rings are scanned in canonical order. Integers (and the integer
//! numerators used for `Z_(p)`) are scanned `0, 1, -1, 2, -2, ...`;
//! polynomials by degree, then lexicographically from the leading
//! coefficient down.

use std::cmp::Ordering;
use std::ops::ControlFlow;

use num_bigint::BigInt;
use num_traits::Signed;

use crate::ring::{Element, Ring};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBounds {
    /// Largest `|k|` tried in integer scans.
    pub integer_bound: u64,
    /// Largest polynomial degree tried.
    pub poly_degree: u32,
    /// Largest total scan rank for tuple searches over infinite rings.
    pub tuple_rank: u64,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds { integer_bound: 10_000, poly_degree: 6, tuple_rank: 2_000 }
    }
}

impl SearchBounds {
    pub fn describe(&self, ring: Ring) -> String {
        match ring {
            Ring::Modular(n) => format!("exhaustive over all {n} elements"),
            Ring::Integers => format!("integers with |k| <= {}", self.integer_bound),
            Ring::IntegersLocalizedAt(_) => format!("integers with |k| <= {}", self.integer_bound),
            Ring::PolyOverPrimeField(_) => format!("polynomials of degree <= {}", self.poly_degree),
        }
    }
}

/// Number of candidates in the scan.
pub fn scan_len(ring: Ring, bounds: &SearchBounds) -> u128 {
    match ring {
        Ring::Modular(n) => n as u128,
        Ring::Integers | Ring::IntegersLocalizedAt(_) => 2 * bounds.integer_bound as u128 + 1,
        Ring::PolyOverPrimeField(p) => (p as u128).saturating_pow(bounds.poly_degree + 1),
    }
}

/// The `idx`-th candidate.
pub fn scan_element(ring: Ring, idx: u128) -> Element {
    match ring {
        Ring::Modular(n) => ring.residue((idx % n as u128) as u64),
        Ring::Integers | Ring::IntegersLocalizedAt(_) => {
            let k = BigInt::from(idx.div_ceil(2));
            ring.from_bigint(&if idx.is_multiple_of(2) { -k } else { k })
        }
        Ring::PolyOverPrimeField(p) => {
            if idx == 0 {
                return ring.zero();
            }
            let p = p as u128;
            // idx lies in [p^d, p^(d+1)) for the degree d block
            let mut d = 0u32;
            let mut block = 1u128;
            while block * p <= idx {
                block *= p;
                d += 1;
            }
            let local = idx - block;
            let lead = 1 + local / block;
            let mut rest = local % block;
            let mut coeffs = vec![0u64; d as usize + 1];
            coeffs[d as usize] = lead as u64;
            for i in (0..d as usize).rev() {
                let place = p.pow(i as u32);
                coeffs[i] = (rest / place) as u64;
                rest %= place;
            }
            ring.poly(&coeffs)
        }
    }
}

/// Compares two elements by their position in the scan.
pub fn scan_cmp(a: &Element, b: &Element) -> Ordering {
    match a.ring() {
        Ring::Integers => {
            let (x, y) = (a.as_bigint().unwrap(), b.as_bigint().unwrap());
            x.abs().cmp(&y.abs()).then_with(|| y.cmp(x))
        }
        _ => a.cmp(b),
    }
}

/// Whether `e` falls inside the scanned range.
pub fn within_bounds(e: &Element, bounds: &SearchBounds) -> bool {
    match e.ring() {
        Ring::Integers => e.as_bigint().unwrap().abs() <= BigInt::from(bounds.integer_bound),
        Ring::PolyOverPrimeField(_) => {
            e.as_poly_coeffs().unwrap().len() <= bounds.poly_degree as usize + 1
        }
        _ => true,
    }
}

/// Visits `k`-tuples of scan indices in order of increasing index sum, then
/// lexicographically, stopping when `visit` breaks. Every coordinate stays
/// below `len`; sums stop at `max_sum`.
pub fn graded_tuples<F>(k: usize, len: u128, max_sum: u128, mut visit: F) -> Option<Vec<u128>>
where
    F: FnMut(&[u128]) -> bool,
{
    fn fill<F: FnMut(&[u128]) -> bool>(
        tuple: &mut Vec<u128>,
        k: usize,
        remaining: u128,
        len: u128,
        visit: &mut F,
    ) -> ControlFlow<()> {
        if tuple.len() == k - 1 {
            if remaining < len {
                tuple.push(remaining);
                let hit = visit(tuple);
                tuple.pop();
                if hit {
                    return ControlFlow::Break(());
                }
            }
            return ControlFlow::Continue(());
        }
        let slots_after = (k - 1 - tuple.len()) as u128;
        let lo = remaining.saturating_sub(slots_after.saturating_mul(len - 1));
        for x in lo..=remaining.min(len - 1) {
            tuple.push(x);
            let flow = fill(tuple, k, remaining - x, len, visit);
            tuple.pop();
            flow?;
        }
        ControlFlow::Continue(())
    }

    assert!(k > 0 && len > 0);
    let top = max_sum.min(k as u128 * (len - 1));
    let mut found = None;
    let mut tuple = Vec::with_capacity(k);
    let mut wrapped = |t: &[u128]| {
        if visit(t) {
            found = Some(t.to_vec());
            true
        } else {
            false
        }
    };
    for sum in 0..=top {
        if fill(&mut tuple, k, sum, len, &mut wrapped).is_break() {
            break;
        }
    }
    found
}

/// Largest index sum visited for tuple searches.
pub fn tuple_sum_bound(ring: Ring, k: usize, bounds: &SearchBounds) -> u128 {
    let len = scan_len(ring, bounds);
    match ring {
        Ring::Modular(_) => k as u128 * (len - 1),
        _ => (bounds.tuple_rank as u128).min(k as u128 * (len - 1)),
    }
}
