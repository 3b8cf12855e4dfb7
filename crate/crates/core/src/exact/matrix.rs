use std::fmt;
use std::ops::{Index, IndexMut};

use num_traits::Zero;

use super::poly::Poly;
use super::scalar::Scalar;
use super::ExactError;

/// Dense row-major matrix over an exact field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

/// `Σ x_i y_i`, skipping zero terms.
pub fn dot<F: Scalar>(xs: &[F], ys: &[F]) -> F {
    xs.iter()
        .zip(ys)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(F::zero(), |acc, (x, y)| {
            if x.is_one() {
                acc + y.clone()
            } else {
                acc + x.clone() * y.clone()
            }
        })
}

impl<F: fmt::Display> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> =
                self.data[r * self.cols..(r + 1) * self.cols].iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl<F> Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (r, c): (usize, usize)) -> &F {
        &self.data[r * self.cols + c]
    }
}

impl<F> IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut F {
        &mut self.data[r * self.cols + c]
    }
}

impl<F: Scalar> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = F::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> F) -> Self {
        let data = (0..rows * cols).map(|k| f(k / cols.max(1), k % cols.max(1))).collect();
        Self { rows, cols, data }
    }

    /// Panics if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, cols: &[Vec<F>]) -> Self {
        Self::from_fn(rows, cols.len(), |r, c| cols[c][r].clone())
    }

    pub fn from_i64s(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| F::from_i64(x)).collect()).collect())
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

    pub fn row(&self, r: usize) -> &[F] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<F> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    /// Entrywise conjugate.
    pub fn conj(&self) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(F::conj).collect() }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, ExactError> {
        if self.cols != other.rows {
            return Err(ExactError::ShapeMismatch);
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        let acc = std::mem::replace(&mut out[(i, j)], F::zero());
                        out[(i, j)] = acc + a.clone() * b.clone();
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[F]) -> Result<Vec<F>, ExactError> {
        if v.len() != self.cols {
            return Err(ExactError::ShapeMismatch);
        }
        Ok((0..self.rows).map(|r| dot(self.row(r), v)).collect())
    }

    pub fn add(&self, other: &Self) -> Result<Self, ExactError> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(ExactError::ShapeMismatch);
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.clone() + b.clone()).collect();
        Ok(Self { rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, s: &F) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.clone() * s.clone()).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].inv().expect("nonzero pivot");
            for j in c..m.cols {
                m[(r, j)] = m[(r, j)].clone() * inv.clone();
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..m.cols {
                    m[(i, j)] = m[(i, j)].clone() - f.clone() * m[(r, j)].clone();
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// A basis of the null space `{x : M x = 0}`, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<F>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![F::zero(); self.cols];
                v[f] = F::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r[(row, f)].clone();
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Result<Self, ExactError> {
        if !self.is_square() {
            return Err(ExactError::NotSquare);
        }
        let n = self.rows;
        let aug = Self::from_fn(n, 2 * n, |r, c| {
            if c < n {
                self[(r, c)].clone()
            } else if c - n == r {
                F::one()
            } else {
                F::zero()
            }
        });
        let (red, pivots) = aug.rref();
        if n > 0 && pivots.get(n - 1) != Some(&(n - 1)) {
            return Err(ExactError::SingularMatrix);
        }
        Ok(Self::from_fn(n, n, |r, c| red[(r, c + n)].clone()))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Some `x` with `M x = b`, if the system is consistent.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        assert_eq!(b.len(), self.rows, "right-hand side length");
        let aug = Self::from_fn(self.rows, self.cols + 1, |r, c| {
            if c < self.cols {
                self[(r, c)].clone()
            } else {
                b[r].clone()
            }
        });
        let (red, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![F::zero(); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = red[(row, self.cols)].clone();
        }
        Some(x)
    }

    /// Characteristic polynomial `det(t·I − M)` by the division-free Berkowitz recursion.
    pub fn char_poly(&self) -> Result<Poly<F>, ExactError> {
        if !self.is_square() {
            return Err(ExactError::NotSquare);
        }
        let n = self.rows;
        // coefficients, highest degree first
        let mut v: Vec<F> = vec![F::one()];
        for r in 0..n {
            let lead = Self::from_fn(r, r, |i, j| self[(i, j)].clone());
            let s: Vec<F> = (0..r).map(|i| self[(i, r)].clone()).collect();
            let row: Vec<F> = (0..r).map(|j| self[(r, j)].clone()).collect();
            let mut col = Vec::with_capacity(r + 2);
            col.push(F::one());
            col.push(-self[(r, r)].clone());
            let mut w = s;
            for _ in 0..r {
                let dot = row.iter().zip(&w).fold(F::zero(), |acc, (a, b)| acc + a.clone() * b.clone());
                col.push(-dot);
                w = lead.mul_vec(&w)?;
            }
            v = (0..r + 2)
                .map(|i| {
                    (0..=i.min(r))
                        .filter(|&j| j < v.len())
                        .fold(F::zero(), |acc, j| acc + col[i - j].clone() * v[j].clone())
                })
                .collect();
        }
        v.reverse();
        Ok(Poly::new(v))
    }

    /// `p(M)` by Horner's rule.
    pub fn eval_poly(&self, p: &Poly<F>) -> Result<Self, ExactError> {
        if !self.is_square() {
            return Err(ExactError::NotSquare);
        }
        let n = self.rows;
        let mut acc = Self::zeros(n, n);
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(self)?.add(&Self::identity(n).scale(c))?;
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::{int, Rational};

    type M = Matrix<Rational>;

    #[test]
    fn char_poly_examples() {
        assert_eq!(M::identity(2).char_poly().unwrap(), Poly::from_i64s(&[1, -2, 1]));
        assert_eq!(M::from_i64s(&[&[2, 0], &[0, 3]]).char_poly().unwrap(), Poly::from_i64s(&[6, -5, 1]));
        assert_eq!(M::from_i64s(&[&[0, 1], &[1, 0]]).char_poly().unwrap(), Poly::from_i64s(&[-1, 0, 1]));
        assert_eq!(M::zeros(2, 3).char_poly(), Err(ExactError::NotSquare));
    }

    #[test]
    fn char_poly_of_empty_matrix_is_one() {
        assert_eq!(M::zeros(0, 0).char_poly().unwrap(), Poly::from_i64s(&[1]));
    }

    #[test]
    fn char_poly_3x3() {
        // det(tI - A) for A = [[1,2,0],[0,1,3],[4,0,1]] = (t-1)^3 - 24
        let a = M::from_i64s(&[&[1, 2, 0], &[0, 1, 3], &[4, 0, 1]]);
        assert_eq!(a.char_poly().unwrap(), Poly::from_i64s(&[-25, 3, -3, 1]));
    }

    #[test]
    fn kernel_examples() {
        assert!(M::identity(3).kernel_basis().is_empty());
        assert_eq!(M::zeros(2, 2).kernel_basis().len(), 2);
        let k = M::from_i64s(&[&[1, 1], &[1, 1]]).kernel_basis();
        assert_eq!(k, vec![vec![int(-1), int(1)]]);
    }

    #[test]
    fn inverse_and_singular() {
        let a = M::from_i64s(&[&[1, 1], &[0, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), M::identity(2));
        assert_eq!(M::from_i64s(&[&[1, 2], &[2, 4]]).inverse(), Err(ExactError::SingularMatrix));
        assert_eq!(M::zeros(0, 0).inverse().unwrap(), M::zeros(0, 0));
    }

    #[test]
    fn solve_consistent_and_not() {
        let a = M::from_i64s(&[&[1, 1], &[1, 1]]);
        assert!(a.solve(&[int(1), int(2)]).is_none());
        let x = a.solve(&[int(3), int(3)]).unwrap();
        assert_eq!(a.mul_vec(&x).unwrap(), vec![int(3), int(3)]);
    }
}
