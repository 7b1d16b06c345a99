//! Reduction certificates: a matrix, the invertible transforms applied to
//! it on either side, and the result, all replayable.

use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// One invertible factor together with its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transform {
    pub label: String,
    pub matrix: Matrix,
    pub inverse: Matrix,
}

impl Transform {
    pub fn new(label: impl Into<String>, matrix: Matrix, inverse: Matrix) -> Transform {
        Transform { label: label.into(), matrix, inverse }
    }

    pub fn is_toeplitz(&self) -> bool {
        self.matrix.is_toeplitz()
    }

    /// Both products with the stored inverse are the identity.
    pub fn verify(&self) -> Result<()> {
        let n = self.matrix.rows();
        let ok = self.matrix.is_square()
            && self.inverse.rows() == n
            && self.inverse.is_square()
            && (&self.matrix * &self.inverse).is_identity()
            && (&self.inverse * &self.matrix).is_identity();
        if ok {
            Ok(())
        } else {
            Err(Error::CheckFailed(format!("transform {} is not inverted by its stored inverse", self.label)))
        }
    }
}

/// Position of the partial block form reached after peeling `peeled`
/// diagonal entries: the first `left` left factors and `right` right
/// factors turn the input into `matrix`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutPoint {
    pub peeled: usize,
    pub left: usize,
    pub right: usize,
    pub matrix: Matrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionCertificate {
    pub input: Matrix,
    /// Left factors in application order (innermost first).
    pub left: Vec<Transform>,
    /// Right factors in application order (innermost first).
    pub right: Vec<Transform>,
    pub result: Matrix,
    pub cut_point: Option<CutPoint>,
}

impl ReductionCertificate {
    /// Product of the left factors, outermost on the left.
    pub fn left_total(&self) -> Matrix {
        compose_left(&self.input, &self.left, self.input.rows())
    }

    /// Product of the right factors, innermost on the left.
    pub fn right_total(&self) -> Matrix {
        compose_right(&self.input, &self.right, self.input.cols())
    }

    pub fn diagonal(&self) -> Vec<crate::ring::Element> {
        self.result.diagonal()
    }

    pub fn toeplitz_flags(&self) -> (Vec<bool>, Vec<bool>) {
        (
            self.left.iter().map(Transform::is_toeplitz).collect(),
            self.right.iter().map(Transform::is_toeplitz).collect(),
        )
    }

    /// Replays `L_k ... L_1 * input * R_1 ... R_m = result` and checks every
    /// factor against its inverse.
    pub fn verify(&self) -> Result<()> {
        let ring = self.input.ring();
        let all = self.left.iter().chain(&self.right);
        for t in all {
            if t.matrix.ring() != ring {
                return Err(Error::CheckFailed(format!("transform {} lives in another ring", t.label)));
            }
            t.verify()?;
        }
        if self.left.iter().any(|t| t.matrix.rows() != self.input.rows())
            || self.right.iter().any(|t| t.matrix.rows() != self.input.cols())
        {
            return Err(Error::CheckFailed("transform size does not match the input".into()));
        }
        let replay = &(&self.left_total() * &self.input) * &self.right_total();
        if replay != self.result {
            return Err(Error::CheckFailed(format!("replay gives {replay}, certificate claims {}", self.result)));
        }
        if let Some(cut) = &self.cut_point {
            if cut.left > self.left.len() || cut.right > self.right.len() {
                return Err(Error::CheckFailed("cut point outside the transform list".into()));
            }
            let l = compose_left(&self.input, &self.left[..cut.left], self.input.rows());
            let r = compose_right(&self.input, &self.right[..cut.right], self.input.cols());
            if &(&l * &self.input) * &r != cut.matrix {
                return Err(Error::CheckFailed("cut point matrix does not replay".into()));
            }
        }
        Ok(())
    }
}

fn compose_left(input: &Matrix, factors: &[Transform], n: usize) -> Matrix {
    factors
        .iter()
        .fold(Matrix::identity(input.ring(), n), |acc, t| &t.matrix * &acc)
}

fn compose_right(input: &Matrix, factors: &[Transform], n: usize) -> Matrix {
    factors
        .iter()
        .fold(Matrix::identity(input.ring(), n), |acc, t| &acc * &t.matrix)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Ring;

    fn z(rows: &[&[i64]]) -> Matrix {
        let r = Ring::Integers;
        Matrix::from_rows(r, rows.iter().map(|row| row.iter().map(|&k| r.from_i64(k)).collect()).collect()).unwrap()
    }

    #[test]
    fn replay_detects_tampering() {
        let a = z(&[&[2, 4], &[6, 8]]);
        let l = Transform::new("add", z(&[&[1, 0], &[-3, 1]]), z(&[&[1, 0], &[3, 1]]));
        let r = Transform::new("add", z(&[&[1, -2], &[0, 1]]), z(&[&[1, 2], &[0, 1]]));
        let mut cert = ReductionCertificate {
            input: a,
            left: vec![l],
            right: vec![r],
            result: z(&[&[2, 0], &[0, -4]]),
            cut_point: None,
        };
        cert.verify().unwrap();
        cert.result = z(&[&[2, 0], &[0, 4]]);
        assert_eq!(cert.verify().unwrap_err().code(), "CheckFailed");
        cert.result = z(&[&[2, 0], &[0, -4]]);
        cert.left[0].inverse = z(&[&[1, 0], &[0, 1]]);
        assert_eq!(cert.verify().unwrap_err().code(), "CheckFailed");
    }
}
