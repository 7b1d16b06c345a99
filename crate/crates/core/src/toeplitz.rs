//! Order-2 Toeplitz matrices `[[a, b], [c, a]]` and the reductions built
//! from them: reducing a row to `(d, 0)`, completing a unimodular row to an
//! invertible Toeplitz matrix, and diagonalizing a 2x2 matrix with Toeplitz
//! factors on both sides.

use crate::certificate::{ReductionCertificate, Transform};
use crate::edr::find_pq;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::ring::{bezout_certificate, content_decomposition, Element};
use crate::rings::scan::SearchBounds;
use crate::stable_range::{affine_unit_witness, require_coprime};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToeplitzMatrix {
    pub a: Element,
    pub b: Element,
    pub c: Element,
}

impl ToeplitzMatrix {
    pub fn new(a: Element, b: Element, c: Element) -> ToeplitzMatrix {
        ToeplitzMatrix { a, b, c }
    }

    pub fn identity_like(e: &Element) -> ToeplitzMatrix {
        let r = e.ring();
        ToeplitzMatrix::new(r.one(), r.zero(), r.zero())
    }

    pub fn from_matrix(m: &Matrix) -> Option<ToeplitzMatrix> {
        m.is_toeplitz()
            .then(|| ToeplitzMatrix::new(m.get(0, 0).clone(), m.get(0, 1).clone(), m.get(1, 0).clone()))
    }

    pub fn det(&self) -> Element {
        &(&self.a * &self.a) - &(&self.b * &self.c)
    }

    pub fn to_matrix(&self) -> Matrix {
        Matrix::square2(self.a.clone(), self.b.clone(), self.c.clone(), self.a.clone())
    }

    pub fn transpose(&self) -> ToeplitzMatrix {
        ToeplitzMatrix::new(self.a.clone(), self.c.clone(), self.b.clone())
    }

    pub fn scale(&self, k: &Element) -> ToeplitzMatrix {
        ToeplitzMatrix::new(k * &self.a, k * &self.b, k * &self.c)
    }

    /// Transform carrying this matrix and its Toeplitz inverse.
    pub fn transform(&self, label: &str) -> Result<Transform> {
        let inv = toeplitz_invert(self)?;
        Ok(Transform::new(label, self.to_matrix(), inv.to_matrix()))
    }
}

/// `det^-1 * [[a, -b], [-c, a]]`.
pub fn toeplitz_invert(t: &ToeplitzMatrix) -> Result<ToeplitzMatrix> {
    let det = t.det();
    let inv = det
        .unit_inverse()
        .map_err(|_| Error::NotInvertible(format!("determinant {det} is not a unit")))?;
    Ok(ToeplitzMatrix::new(&inv * &t.a, -(&inv * &t.b), -(&inv * &t.c)))
}

/// An invertible Toeplitz `T` with `(a, b) * T = (d, 0)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowReduction {
    pub a: Element,
    pub b: Element,
    pub matrix: ToeplitzMatrix,
    pub d: Element,
    /// `t` with `a0^2 + b0*t = u` a unit, for the reduced pair `(a0, b0)`.
    pub witness: Element,
    pub unit: Element,
}

impl RowReduction {
    pub fn verify(&self) -> Result<()> {
        let m = self.matrix.to_matrix();
        let row = Matrix::from_rows(self.a.ring(), vec![vec![self.a.clone(), self.b.clone()]])?;
        let out = &row * &m;
        if out.get(0, 0) != &self.d || !out.get(0, 1).is_zero() {
            return Err(Error::CheckFailed(format!("(a, b)*T = {out}, expected ({}, 0)", self.d)));
        }
        if !self.matrix.det().is_unit() {
            return Err(Error::CheckFailed("T is not invertible".into()));
        }
        Ok(())
    }
}

/// `T = [[a0, -b0], [t, a0]] * u^-1` where `a = d*a0`, `b = d*b0` and
/// `u = a0^2 + b0*t` is a unit.
pub fn toeplitz_row_reduce(a: &Element, b: &Element, bounds: &SearchBounds) -> Result<RowReduction> {
    let cert = bezout_certificate(a, b)?;
    let ring = cert.d.ring();
    if cert.d.is_zero() {
        return Ok(RowReduction {
            a: a.clone(),
            b: b.clone(),
            matrix: ToeplitzMatrix::identity_like(a),
            d: ring.zero(),
            witness: ring.zero(),
            unit: ring.one(),
        });
    }
    let (a0, b0) = (&cert.a0, &cert.b0);
    let report = affine_unit_witness(&(a0 * a0), b0, bounds);
    let Some(t) = report.witness else {
        return Err(Error::WitnessNotFound(format!(
            "no t with {a0}^2 + ({b0})*t a unit ({})",
            report.searched_bound
        )));
    };
    let u = &(a0 * a0) + &(b0 * &t);
    let s = ToeplitzMatrix::new(a0.clone(), -b0, t.clone());
    let matrix = s.scale(&u.unit_inverse()?);
    Ok(RowReduction { a: a.clone(), b: b.clone(), matrix, d: cert.d, witness: t, unit: u })
}

/// `[[a, b], [x, a]]` with unit determinant `a^2 - b*x`.
pub fn toeplitz_complete(a: &Element, b: &Element, bounds: &SearchBounds) -> Result<ToeplitzMatrix> {
    require_coprime(a, b)?;
    let report = affine_unit_witness(&(a * a), &(-b), bounds);
    match report.witness {
        Some(x) => Ok(ToeplitzMatrix::new(a.clone(), b.clone(), x)),
        None => Err(Error::WitnessNotFound(format!(
            "no x with {a}^2 - ({b})*x a unit ({})",
            report.searched_bound
        ))),
    }
}

/// Diagonalization `S P L A Q T = diag(e1, e2)` by Toeplitz factors.
///
/// `L` triangularizes the first column, `P = [[p, q], [*, p]]` and
/// `Q = [[r, *], [s, r]]` complete the rows of the `(p, q)` witness and of
/// its Bezout cofactors, and `S`, `T` clear the off-diagonal entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToeplitzDiagonalization {
    pub certificate: ReductionCertificate,
    pub e1: Element,
    pub e2: Element,
    pub p: Element,
    pub q: Element,
    pub r: Element,
    pub s: Element,
    /// `S * P * L`.
    pub p_total: Matrix,
    /// `Q * T`.
    pub q_total: Matrix,
    pub p_total_is_toeplitz: bool,
    pub q_total_is_toeplitz: bool,
}

impl ToeplitzDiagonalization {
    pub fn verify(&self) -> Result<()> {
        let cert = &self.certificate;
        cert.verify()?;
        if !cert.result.is_diagonal() || cert.result.diagonal() != [self.e1.clone(), self.e2.clone()] {
            return Err(Error::CheckFailed("result is not diag(e1, e2)".into()));
        }
        if crate::ring::exact_divide(&self.e2, &self.e1).is_err() {
            return Err(Error::CheckFailed(format!("{} does not divide {}", self.e1, self.e2)));
        }
        if crate::ring::normalize_associate(&self.e1).0 != self.e1 {
            return Err(Error::CheckFailed(format!("e1 = {} is not canonical", self.e1)));
        }
        if let Some(bad) = cert.left.iter().chain(&cert.right).find(|t| !t.is_toeplitz()) {
            return Err(Error::CheckFailed(format!("factor {} is not Toeplitz", bad.label)));
        }
        if self.p_total != cert.left_total() || self.q_total != cert.right_total() {
            return Err(Error::CheckFailed("composed products do not match the factors".into()));
        }
        Ok(())
    }
}

pub fn toeplitz_diag_2x2(input: &Matrix, bounds: &SearchBounds) -> Result<ToeplitzDiagonalization> {
    if input.rows() != 2 || input.cols() != 2 {
        return Err(Error::PreconditionViolated(format!(
            "expected a 2x2 matrix, got {}x{}",
            input.rows(),
            input.cols()
        )));
    }
    let ring = input.ring();
    let (zero, one) = (ring.zero(), ring.one());

    let col = toeplitz_row_reduce(input.get(0, 0), input.get(1, 0), bounds)?;
    let l = col.matrix.transpose();
    let tri = &l.to_matrix() * input;
    let (g, cof) = content_decomposition(&[tri.get(0, 0).clone(), tri.get(0, 1).clone(), tri.get(1, 1).clone()])?;

    let mut left = vec![l.transform("L")?];
    let mut right = Vec::new();
    let (mut p, mut q, mut r, mut s) = (one.clone(), zero.clone(), one.clone(), zero.clone());
    if !g.is_zero() {
        let (a1, b1, c1) = (&cof[0], &cof[1], &cof[2]);
        let pq = find_pq(a1, b1, c1, bounds).map_err(|e| match e {
            Error::WitnessNotFound(m) => Error::NotSupported(format!("(p, q) search failed: {m}")),
            other => other,
        })?;
        (p, q) = (pq.p, pq.q);
        let cert = bezout_certificate(&(&p * a1), &(&(&p * b1) + &(&q * c1)))?;
        let dinv = cert.d.unit_inverse()?;
        (r, s) = (&cert.p * &dinv, &cert.q * &dinv);

        let pm = toeplitz_complete(&p, &q, bounds)?;
        let qm = toeplitz_complete(&r, &s, bounds)?.transpose();
        let reduced = Matrix::square2(a1.clone(), b1.clone(), zero.clone(), c1.clone());
        let a_1 = &(&pm.to_matrix() * &reduced) * &qm.to_matrix();
        debug_assert!(a_1.get(0, 0).is_one());
        let (x, y) = (a_1.get(0, 1).clone(), a_1.get(1, 0).clone());
        let sm = ToeplitzMatrix::new(one.clone(), zero.clone(), -&y);
        let tm = ToeplitzMatrix::new(one.clone(), -&x, zero.clone());
        left.push(pm.transform("P")?);
        left.push(sm.transform("S")?);
        right.push(qm.transform("Q")?);
        right.push(tm.transform("T")?);
    }

    let mut certificate = ReductionCertificate {
        input: input.clone(),
        left,
        right,
        result: Matrix::zeros(ring, 2, 2),
        cut_point: None,
    };
    let p_total = certificate.left_total();
    let q_total = certificate.right_total();
    certificate.result = &(&p_total * input) * &q_total;
    if !certificate.result.is_diagonal() {
        return Err(Error::ConstructionFailed(format!("reduction left {}", certificate.result)));
    }
    let (e1, e2) = (certificate.result.get(0, 0).clone(), certificate.result.get(1, 1).clone());
    Ok(ToeplitzDiagonalization {
        e1,
        e2,
        p,
        q,
        r,
        s,
        p_total_is_toeplitz: p_total.is_toeplitz(),
        q_total_is_toeplitz: q_total.is_toeplitz(),
        p_total,
        q_total,
        certificate,
    })
}
