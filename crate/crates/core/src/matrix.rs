//! Dense rectangular matrices over a ring.

use std::fmt;
use std::ops::Mul;

use crate::error::{Error, Result};
use crate::ring::{Element, Ring};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    data: Vec<Element>,
}

impl Matrix {
    pub fn from_rows(ring: Ring, rows: Vec<Vec<Element>>) -> Result<Matrix> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::Parse("matrix rows have different lengths".into()));
        }
        let data: Vec<Element> = rows.into_iter().flatten().collect();
        if let Some(bad) = data.iter().find(|e| e.ring() != ring) {
            return Err(Error::RingMismatch(format!("entry {bad} of {} in a {ring} matrix", bad.ring())));
        }
        Ok(Matrix { ring, rows: nrows, cols: ncols, data })
    }

    pub fn zeros(ring: Ring, rows: usize, cols: usize) -> Matrix {
        Matrix { ring, rows, cols, data: vec![ring.zero(); rows * cols] }
    }

    pub fn identity(ring: Ring, n: usize) -> Matrix {
        let mut m = Matrix::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, ring.one());
        }
        m
    }

    /// 2x2 matrix `[[a, b], [c, d]]`.
    pub fn square2(a: Element, b: Element, c: Element, d: Element) -> Matrix {
        let ring = a.ring();
        Matrix::from_rows(ring, vec![vec![a, b], vec![c, d]]).expect("2x2 entries share a ring")
    }

    pub fn diagonal_matrix(ring: Ring, rows: usize, cols: usize, diag: &[Element]) -> Matrix {
        let mut m = Matrix::zeros(ring, rows, cols);
        for (i, e) in diag.iter().enumerate() {
            m.set(i, i, e.clone());
        }
        m
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Element {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, e: Element) {
        assert_eq!(e.ring(), self.ring);
        self.data[i * self.cols + j] = e;
    }

    pub fn row(&self, i: usize) -> &[Element] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[Element] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<Element>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Element::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Matrix::identity(self.ring, self.rows)
    }

    /// All off-diagonal entries vanish.
    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn diagonal(&self) -> Vec<Element> {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).collect()
    }

    /// 2x2 matrix of the form `[[a, b], [c, a]]`.
    pub fn is_toeplitz(&self) -> bool {
        self.rows == 2 && self.cols == 2 && self.get(0, 0) == self.get(1, 1)
    }

    /// Determinant by cofactor expansion; intended for small matrices.
    pub fn det(&self) -> Element {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        match n {
            0 => self.ring.one(),
            1 => self.get(0, 0).clone(),
            2 => self.get(0, 0) * self.get(1, 1) - self.get(0, 1) * self.get(1, 0),
            _ => {
                let mut acc = self.ring.zero();
                for j in 0..n {
                    if self.get(0, j).is_zero() {
                        continue;
                    }
                    let minor = self.submatrix(&(1..n).collect::<Vec<_>>(), &(0..n).filter(|&c| c != j).collect::<Vec<_>>());
                    let term = self.get(0, j) * &minor.det();
                    acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
                }
                acc
            }
        }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let data = rows
            .iter()
            .flat_map(|&i| cols.iter().map(move |&j| (i, j)))
            .map(|(i, j)| self.get(i, j).clone())
            .collect();
        Matrix { ring: self.ring, rows: rows.len(), cols: cols.len(), data }
    }

    pub fn try_mul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.ring != rhs.ring {
            return Err(Error::RingMismatch(format!("{} vs {}", self.ring, rhs.ring)));
        }
        if self.cols != rhs.rows {
            return Err(Error::PreconditionViolated(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Matrix::zeros(self.ring, self.rows, rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = self.ring.zero();
                for k in 0..self.cols {
                    let (x, y) = (self.get(i, k), rhs.get(k, j));
                    if !x.is_zero() && !y.is_zero() {
                        acc = &acc + &(x * y);
                    }
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    /// `row[target] += factor * row[source]`.
    pub fn add_row_multiple(&mut self, target: usize, source: usize, factor: &Element) {
        for j in 0..self.cols {
            let v = self.get(target, j) + &(factor * self.get(source, j));
            self.set(target, j, v);
        }
    }

    /// `col[target] += factor * col[source]`.
    pub fn add_col_multiple(&mut self, target: usize, source: usize, factor: &Element) {
        for i in 0..self.rows {
            let v = self.get(i, target) + &(factor * self.get(i, source));
            self.set(i, target, v);
        }
    }

    pub fn scale_row(&mut self, i: usize, factor: &Element) {
        for j in 0..self.cols {
            let v = factor * self.get(i, j);
            self.set(i, j, v);
        }
    }

    pub fn scale_col(&mut self, j: usize, factor: &Element) {
        for i in 0..self.rows {
            let v = factor * self.get(i, j);
            self.set(i, j, v);
        }
    }
}

impl<'a> Mul<&'a Matrix> for &'a Matrix {
    type Output = Matrix;

    fn mul(self, rhs: &'a Matrix) -> Matrix {
        self.try_mul(rhs).expect("compatible matrices")
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(rows: &[&[i64]]) -> Matrix {
        let r = Ring::Integers;
        Matrix::from_rows(r, rows.iter().map(|row| row.iter().map(|&k| r.from_i64(k)).collect()).collect()).unwrap()
    }

    #[test]
    fn determinant_by_expansion() {
        assert_eq!(z(&[&[2, 4], &[6, 8]]).det(), Ring::Integers.from_i64(-8));
        assert_eq!(z(&[&[4, 0, 0], &[0, 6, 0], &[0, 0, 10]]).det(), Ring::Integers.from_i64(240));
        assert_eq!(z(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 10]]).det(), Ring::Integers.from_i64(-3));
    }

    #[test]
    fn product_and_transpose() {
        let a = z(&[&[1, 2], &[3, 4]]);
        let b = z(&[&[0, 1], &[1, 0]]);
        assert_eq!(&a * &b, z(&[&[2, 1], &[4, 3]]));
        assert_eq!(a.transpose(), z(&[&[1, 3], &[2, 4]]));
        assert!(z(&[&[5, 2], &[12, 5]]).is_toeplitz());
        assert!(z(&[&[1, 0], &[0, 1]]).is_identity());
    }

    #[test]
    fn ragged_rows_rejected() {
        let r = Ring::Integers;
        let e = Matrix::from_rows(r, vec![vec![r.one()], vec![r.one(), r.zero()]]).unwrap_err();
        assert_eq!(e.code(), "ParseError");
    }
}
