//! Elementary-divisor reductions that do not need Toeplitz form: Hermite
//! reduction of a row, the `(p, q)` condition for unimodular triples, and
//! Smith normal form through elementary matrices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::certificate::{CutPoint, ReductionCertificate, Transform};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::ring::{bezout_certificate, exact_divide, normalize_associate, Element, Ring};
use crate::rings::scan::{self, SearchBounds};
use crate::stable_range::{affine_unit_witness, require_unimodular};

/// `p, q` with `(p*a)R + (p*b + q*c)R = R`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PQWitness {
    pub a: Element,
    pub b: Element,
    pub c: Element,
    pub p: Element,
    pub q: Element,
}

impl PQWitness {
    pub fn holds(a: &Element, b: &Element, c: &Element, p: &Element, q: &Element) -> bool {
        let first = p * a;
        let second = &(p * b) + &(q * c);
        bezout_certificate(&first, &second).map(|c| c.is_unimodular()).unwrap_or(false)
    }

    pub fn verify(&self) -> Result<()> {
        if PQWitness::holds(&self.a, &self.b, &self.c, &self.p, &self.q) {
            Ok(())
        } else {
            Err(Error::CheckFailed(format!(
                "({p}*{a}, {p}*{b} + {q}*{c}) is not unimodular",
                p = self.p,
                q = self.q,
                a = self.a,
                b = self.b,
                c = self.c
            )))
        }
    }
}

/// `(a, b) * Q = (d, 0)` with `Q` invertible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermiteRow {
    pub a: Element,
    pub b: Element,
    pub d: Element,
    pub matrix: Matrix,
    pub inverse: Matrix,
}

impl HermiteRow {
    pub fn verify(&self) -> Result<()> {
        let row = Matrix::from_rows(self.a.ring(), vec![vec![self.a.clone(), self.b.clone()]])?;
        let out = &row * &self.matrix;
        if out.get(0, 0) != &self.d || !out.get(0, 1).is_zero() {
            return Err(Error::CheckFailed(format!("(a, b)*Q = {out}, expected ({}, 0)", self.d)));
        }
        Transform::new("Q", self.matrix.clone(), self.inverse.clone()).verify()
    }
}

/// `Q = [[p, -b0], [q, a0]]` from the Bezout certificate; determinant
/// `p*a0 + q*b0 = 1`.
pub fn hermite_row(a: &Element, b: &Element) -> Result<HermiteRow> {
    let cert = bezout_certificate(a, b)?;
    let ring = cert.d.ring();
    let (matrix, inverse) = if cert.d.is_zero() {
        (Matrix::identity(ring, 2), Matrix::identity(ring, 2))
    } else {
        (
            Matrix::square2(cert.p.clone(), -&cert.b0, cert.q.clone(), cert.a0.clone()),
            Matrix::square2(cert.a0.clone(), cert.b0.clone(), -&cert.q, cert.p.clone()),
        )
    };
    Ok(HermiteRow { a: a.clone(), b: b.clone(), d: cert.d, matrix, inverse })
}

/// Least `(p, q)` by total scan rank, visiting `(q, p)` lexicographically
/// within a rank.
pub fn find_pq(a: &Element, b: &Element, c: &Element, bounds: &SearchBounds) -> Result<PQWitness> {
    require_unimodular(&[a.clone(), b.clone(), c.clone()])?;
    let ring = a.ring();
    let len = scan::scan_len(ring, bounds);
    let top = scan::tuple_sum_bound(ring, 2, bounds);
    let hit = scan::graded_tuples(2, len, top, |idx| {
        let q = scan::scan_element(ring, idx[0]);
        let p = scan::scan_element(ring, idx[1]);
        PQWitness::holds(a, b, c, &p, &q)
    });
    match hit {
        Some(idx) => Ok(PQWitness {
            a: a.clone(),
            b: b.clone(),
            c: c.clone(),
            p: scan::scan_element(ring, idx[1]),
            q: scan::scan_element(ring, idx[0]),
        }),
        None => Err(Error::WitnessNotFound(format!("no (p, q) with total scan rank <= {top}"))),
    }
}

/// Over `Z`: `p = 1` and `q` chosen by the Chinese remainder theorem so
/// that `b + q*c` avoids every prime of `a` not dividing `c`.
pub fn find_pq_constructive(a: &Element, b: &Element, c: &Element) -> Result<PQWitness> {
    if a.ring() != Ring::Integers {
        return Err(Error::NotSupported(format!("constructive (p, q) is implemented over Z only, not {}", a.ring())));
    }
    require_unimodular(&[a.clone(), b.clone(), c.clone()])?;
    let ring = a.ring();
    let (ai, bi, ci) = (a.as_bigint().unwrap(), b.as_bigint().unwrap(), c.as_bigint().unwrap());
    let witness = |p: Element, q: Element| PQWitness { a: a.clone(), b: b.clone(), c: c.clone(), p, q };
    if ai.is_zero() {
        let cert = bezout_certificate(b, c)?;
        let s = cert.d.unit_inverse()?;
        return Ok(witness(&cert.p * &s, &cert.q * &s));
    }
    let mut modulus = BigInt::one();
    let mut q = BigInt::zero();
    for l in prime_divisors(&ai.abs()) {
        let (l, target) = if (ci % &l).is_zero() {
            (l, BigInt::zero())
        } else {
            let cinv = ci.extended_gcd(&l).x;
            let bad = (-(bi * cinv)).mod_floor(&l);
            let t = (bad + 1u32).mod_floor(&l);
            (l, t)
        };
        // q = q (mod modulus), q = target (mod l)
        let step = ((&target - &q) * modulus.extended_gcd(&l).x).mod_floor(&l);
        q += &modulus * step;
        modulus *= &l;
        q = q.mod_floor(&modulus);
    }
    let w = witness(ring.one(), ring.from_bigint(&q));
    w.verify().map_err(|e| Error::ConstructionFailed(e.to_string()))?;
    Ok(w)
}

fn prime_divisors(n: &BigInt) -> Vec<BigInt> {
    let mut n = n.clone();
    let mut out = Vec::new();
    let mut d = BigInt::from(2);
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            out.push(d.clone());
            while (&n % &d).is_zero() {
                n /= &d;
            }
        }
        d += 1u32;
    }
    if n > BigInt::one() {
        out.push(n);
    }
    out
}

pub fn smith_2x2(input: &Matrix, bounds: &SearchBounds) -> Result<ReductionCertificate> {
    if input.rows() != 2 || input.cols() != 2 {
        return Err(Error::PreconditionViolated(format!(
            "expected a 2x2 matrix, got {}x{}",
            input.rows(),
            input.cols()
        )));
    }
    smith_nxm(input, bounds)
}

/// Smith normal form as a product of elementary matrices. For `n, m > 2`
/// the certificate marks where `min(n, m) - 2` diagonal entries have been
/// peeled and a `2 x k` or `k x 2` block remains.
pub fn smith_nxm(input: &Matrix, bounds: &SearchBounds) -> Result<ReductionCertificate> {
    let mut red = Reducer::new(input, bounds);
    let (n, m) = (input.rows(), input.cols());
    let cut_at = (n > 2 && m > 2).then(|| n.min(m) - 2);
    let mut cut_point = None;
    for t in 0..n.min(m) {
        if cut_at == Some(t) {
            cut_point = Some(red.cut(t));
        }
        if !red.pivot(t) {
            break;
        }
        red.reduce_at(t)?;
    }
    if cut_at.is_some() && cut_point.is_none() {
        cut_point = Some(red.cut(n.min(m) - 2));
    }
    let result = red.work.clone();
    if !result.is_diagonal() {
        return Err(Error::ConstructionFailed(format!("reduction left {result}")));
    }
    Ok(ReductionCertificate { input: input.clone(), left: red.left, right: red.right, result, cut_point })
}

struct Reducer<'a> {
    work: Matrix,
    left: Vec<Transform>,
    right: Vec<Transform>,
    bounds: &'a SearchBounds,
}

impl<'a> Reducer<'a> {
    fn new(input: &Matrix, bounds: &'a SearchBounds) -> Self {
        Reducer { work: input.clone(), left: Vec::new(), right: Vec::new(), bounds }
    }

    fn ring(&self) -> Ring {
        self.work.ring()
    }

    fn cut(&self, peeled: usize) -> CutPoint {
        CutPoint { peeled, left: self.left.len(), right: self.right.len(), matrix: self.work.clone() }
    }

    fn elementary(&self, n: usize, i: usize, j: usize, f: &Element) -> (Matrix, Matrix) {
        let mut e = Matrix::identity(self.ring(), n);
        let mut inv = e.clone();
        e.set(i, j, f.clone());
        inv.set(i, j, -f);
        (e, inv)
    }

    /// `row[target] += f * row[source]`.
    fn add_row(&mut self, target: usize, source: usize, f: &Element) {
        if f.is_zero() {
            return;
        }
        let (e, inv) = self.elementary(self.work.rows(), target, source, f);
        self.left.push(Transform::new(format!("row{target} += ({f})*row{source}"), e, inv));
        self.work.add_row_multiple(target, source, f);
    }

    /// `col[target] += f * col[source]`.
    fn add_col(&mut self, target: usize, source: usize, f: &Element) {
        if f.is_zero() {
            return;
        }
        let (e, inv) = self.elementary(self.work.cols(), source, target, f);
        self.right.push(Transform::new(format!("col{target} += ({f})*col{source}"), e, inv));
        self.work.add_col_multiple(target, source, f);
    }

    /// Rows `i, j` become `row j, -row i`.
    fn swap_rows(&mut self, i: usize, j: usize) {
        let ring = self.ring();
        let mut e = Matrix::identity(ring, self.work.rows());
        for k in [i, j] {
            e.set(k, k, ring.zero());
        }
        e.set(i, j, ring.one());
        e.set(j, i, -ring.one());
        let inv = e.transpose();
        self.left.push(Transform::new(format!("swap rows {i}, {j}"), e, inv));
        let (ri, rj) = (self.work.row(i).to_vec(), self.work.row(j).to_vec());
        for (k, (x, y)) in ri.into_iter().zip(rj).enumerate() {
            self.work.set(i, k, y);
            self.work.set(j, k, -x);
        }
    }

    /// Columns `i, j` become `col j, -col i`.
    fn swap_cols(&mut self, i: usize, j: usize) {
        let ring = self.ring();
        let mut e = Matrix::identity(ring, self.work.cols());
        for k in [i, j] {
            e.set(k, k, ring.zero());
        }
        e.set(j, i, ring.one());
        e.set(i, j, -ring.one());
        let inv = e.transpose();
        self.right.push(Transform::new(format!("swap cols {i}, {j}"), e, inv));
        for k in 0..self.work.rows() {
            let (x, y) = (self.work.get(k, i).clone(), self.work.get(k, j).clone());
            self.work.set(k, i, y);
            self.work.set(k, j, -x);
        }
    }

    fn scale_row(&mut self, i: usize, u: &Element) -> Result<()> {
        let ring = self.ring();
        let mut e = Matrix::identity(ring, self.work.rows());
        let mut inv = e.clone();
        e.set(i, i, u.clone());
        inv.set(i, i, u.unit_inverse()?);
        self.left.push(Transform::new(format!("row{i} *= {u}"), e, inv));
        self.work.scale_row(i, u);
        Ok(())
    }

    /// Moves an entry of smallest size in the trailing block to `(t, t)`;
    /// false when the block is zero.
    fn pivot(&mut self, t: usize) -> bool {
        let mut best: Option<(BigInt, usize, usize)> = None;
        for i in t..self.work.rows() {
            for j in t..self.work.cols() {
                let e = self.work.get(i, j);
                if e.is_zero() {
                    continue;
                }
                let key = pivot_key(e);
                if best.as_ref().is_none_or(|(k, _, _)| key < *k) {
                    best = Some((key, i, j));
                }
            }
        }
        let Some((_, i, j)) = best else { return false };
        if i != t {
            self.swap_rows(t, i);
        }
        if j != t {
            self.swap_cols(t, j);
        }
        true
    }

    fn reduce_at(&mut self, t: usize) -> Result<()> {
        let (n, m) = (self.work.rows(), self.work.cols());
        loop {
            for i in t + 1..n {
                self.clear(t, i, true)?;
            }
            for j in t + 1..m {
                self.clear(t, j, false)?;
            }
            let column_clear = (t + 1..n).all(|i| self.work.get(i, t).is_zero());
            if !column_clear {
                continue;
            }
            let pivot = self.work.get(t, t).clone();
            let stray = (t + 1..n)
                .flat_map(|i| (t + 1..m).map(move |j| (i, j)))
                .find(|&(i, j)| exact_divide(self.work.get(i, j), &pivot).is_err());
            match stray {
                Some((i, _)) => {
                    let one = self.ring().one();
                    self.add_row(t, i, &one);
                }
                None => break,
            }
        }
        let (_, u) = normalize_associate(self.work.get(t, t));
        if !u.is_one() {
            self.scale_row(t, &u)?;
        }
        Ok(())
    }

    /// Zeroes the entry in row `k` (`rows`) or column `k` of the pivot line.
    fn clear(&mut self, t: usize, k: usize, rows: bool) -> Result<()> {
        loop {
            let a = self.work.get(t, t).clone();
            let b = if rows { self.work.get(k, t) } else { self.work.get(t, k) }.clone();
            if b.is_zero() {
                return Ok(());
            }
            if let Ok(f) = exact_divide(&b, &a) {
                let f = -f;
                if rows { self.add_row(k, t, &f) } else { self.add_col(k, t, &f) }
                return Ok(());
            }
            if a.is_zero() {
                if rows { self.swap_rows(t, k) } else { self.swap_cols(t, k) }
                continue;
            }
            if self.ring().is_euclidean() {
                let (q, _) = b.div_rem(&a).expect("nonzero divisor");
                let f = -q;
                if rows {
                    self.add_row(k, t, &f);
                    self.swap_rows(t, k);
                } else {
                    self.add_col(k, t, &f);
                    self.swap_cols(t, k);
                }
                continue;
            }
            // a + w*b = d*(a0 + w*b0) is an associate of gcd(a, b)
            let cert = bezout_certificate(&a, &b)?;
            let w = affine_unit_witness(&cert.a0, &cert.b0, self.bounds).witness.ok_or_else(|| {
                Error::ConstructionFailed(format!("no stable range 1 witness for ({}, {})", cert.a0, cert.b0))
            })?;
            if rows { self.add_row(t, k, &w) } else { self.add_col(t, k, &w) }
        }
    }
}

/// Smaller keys generate larger ideals more often: absolute value or degree
/// in the Euclidean rings, the canonical associate elsewhere.
fn pivot_key(e: &Element) -> BigInt {
    if let Some(size) = e.euclidean_size() {
        return size;
    }
    let canon = normalize_associate(e).0;
    match (canon.as_residue(), canon.as_fraction()) {
        (Some(r), _) => BigInt::from(r),
        (_, Some((num, _))) => num.clone(),
        _ => unreachable!("non-Euclidean rings are Z/n and Z_(p)"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b() -> SearchBounds {
        SearchBounds::default()
    }

    fn m(ring: Ring, rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(ring, rows.iter().map(|row| row.iter().map(|&k| ring.from_i64(k)).collect()).collect()).unwrap()
    }

    #[test]
    fn hermite_examples() {
        let z = Ring::Integers;
        let h = hermite_row(&z.from_i64(4), &z.from_i64(6)).unwrap();
        assert_eq!(h.d, z.from_i64(2));
        assert_eq!(h.matrix, m(z, &[&[-1, -3], &[1, 2]]));
        h.verify().unwrap();
        let h = hermite_row(&z.zero(), &z.zero()).unwrap();
        assert!(h.matrix.is_identity() && h.d.is_zero());
        let g = Ring::PolyOverPrimeField(5);
        let h = hermite_row(&g.poly(&[4, 0, 1]), &g.poly(&[4, 1])).unwrap();
        assert_eq!(h.d, g.poly(&[4, 1]));
        h.verify().unwrap();
    }

    #[test]
    fn pq_examples() {
        let z = Ring::Integers;
        let e = |k| z.from_i64(k);
        let w = find_pq(&e(6), &e(10), &e(15), &b()).unwrap();
        assert_eq!((w.p.clone(), w.q.clone()), (e(1), e(1)));
        w.verify().unwrap();
        let w = find_pq(&e(1), &e(4), &e(9), &b()).unwrap();
        assert_eq!((w.p, w.q), (e(1), e(0)));
        let r = Ring::Modular(6);
        let w = find_pq(&r.residue(2), &r.residue(3), &r.residue(5), &b()).unwrap();
        w.verify().unwrap();
        assert!(PQWitness::holds(&r.residue(2), &r.residue(3), &r.residue(5), &r.residue(1), &r.residue(2)));
        assert_eq!(find_pq(&e(2), &e(4), &e(6), &b()).unwrap_err().code(), "NotCoprime");
    }

    #[test]
    fn constructive_pq_agrees_on_validity() {
        let z = Ring::Integers;
        for a in -15i64..=15 {
            for bb in -6i64..=6 {
                for c in -6i64..=6 {
                    let (a, bb, c) = (z.from_i64(a), z.from_i64(bb), z.from_i64(c));
                    match find_pq_constructive(&a, &bb, &c) {
                        Ok(w) => w.verify().unwrap(),
                        Err(e) => assert_eq!(e.code(), "NotCoprime"),
                    }
                }
            }
        }
    }

    #[test]
    fn smith_examples() {
        let z = Ring::Integers;
        let cert = smith_2x2(&m(z, &[&[2, 4], &[6, 8]]), &b()).unwrap();
        cert.verify().unwrap();
        assert_eq!(cert.diagonal(), vec![z.from_i64(2), z.from_i64(4)]);

        let cert = smith_nxm(&m(z, &[&[4, 0, 0], &[0, 6, 0], &[0, 0, 10]]), &b()).unwrap();
        cert.verify().unwrap();
        assert_eq!(cert.diagonal(), vec![z.from_i64(2), z.from_i64(2), z.from_i64(60)]);
        let cut = cert.cut_point.as_ref().unwrap();
        assert_eq!(cut.peeled, 1);

        let cert = smith_nxm(&m(z, &[&[6, 10, 15]]), &b()).unwrap();
        cert.verify().unwrap();
        assert_eq!(cert.diagonal(), vec![z.one()]);

        let cert = smith_nxm(&Matrix::zeros(z, 3, 4), &b()).unwrap();
        assert!(cert.left.is_empty() && cert.right.is_empty());

        let d = m(z, &[&[2, 0], &[0, 4]]);
        let cert = smith_2x2(&d, &b()).unwrap();
        assert_eq!(cert.result, d);
        assert!(cert.left.is_empty() && cert.right.is_empty());

        let r = Ring::Modular(6);
        let cert = smith_2x2(&m(r, &[&[2, 3], &[0, 5]]), &b()).unwrap();
        cert.verify().unwrap();
        assert_eq!(cert.diagonal(), vec![r.residue(1), r.residue(2)]);
    }

    #[test]
    fn smith_over_other_rings() {
        let g = Ring::PolyOverPrimeField(3);
        let a = Matrix::from_rows(
            g,
            vec![vec![g.poly(&[1, 0, 1]), g.poly(&[0, 1])], vec![g.poly(&[2, 1]), g.poly(&[1, 1, 1])]],
        )
        .unwrap();
        let cert = smith_nxm(&a, &b()).unwrap();
        cert.verify().unwrap();
        let l = Ring::IntegersLocalizedAt(3);
        let cert = smith_nxm(&m(l, &[&[9, 6, 3], &[27, 2, 18]]), &b()).unwrap();
        cert.verify().unwrap();
        assert_eq!(cert.diagonal(), vec![l.one(), l.from_i64(3)]);
    }
}
