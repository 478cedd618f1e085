use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::Rational;
use crate::error::{Error, Result};

/// Dense rational matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Shape("dimensions must be at least 1x1".into()));
        }
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "expected {} entries for {rows}x{cols}, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    /// Convenience constructor from machine integers.
    pub fn from_int_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&x| super::rat_int(x)).collect())
                .collect(),
        )
    }

    pub fn identity(n: usize) -> Self {
        let mut data = vec![Rational::zero(); n * n];
        for i in 0..n {
            data[i * n + i] = Rational::one();
        }
        Self { rows: n, cols: n, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols, "vector length must match column count");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (RatMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.at(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.at(r, c).recip();
            for j in c..m.cols {
                let scaled = m.at(r, j) * &inv;
                *m.at_mut(r, j) = scaled;
            }
            for i in 0..m.rows {
                if i != r && !m.at(i, c).is_zero() {
                    let f = m.at(i, c).clone();
                    for j in c..m.cols {
                        let v = m.at(i, j) - &(m.at(r, j) * &f);
                        *m.at_mut(i, j) = v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    /// Basis of the right nullspace `{v : A v = 0}`.
    ///
    /// One basis vector per free column: the free coordinate is set to 1 and
    /// the pivot coordinates are read off the reduced echelon form. Ordering
    /// follows ascending free columns, so the output is deterministic.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        let mut pivot_of_col = vec![None; self.cols];
        for (row, &col) in pivots.iter().enumerate() {
            pivot_of_col[col] = Some(row);
        }
        for free in 0..self.cols {
            if pivot_of_col[free].is_some() {
                continue;
            }
            let mut v = vec![Rational::zero(); self.cols];
            v[free] = Rational::one();
            for (row, &col) in pivots.iter().enumerate() {
                v[col] = -r.at(row, free).clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Rank by fraction-free elimination on a denominator-cleared copy.
    pub fn rank(&self) -> usize {
        let mut m = self.cleared();
        let (rows, cols) = (self.rows, self.cols);
        let mut prev = BigInt::one();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !m[i * cols + c].is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..cols {
                    m.swap(r * cols + j, p * cols + j);
                }
            }
            for i in r + 1..rows {
                for j in c + 1..cols {
                    let t = &m[i * cols + j] * &m[r * cols + c] - &m[i * cols + c] * &m[r * cols + j];
                    m[i * cols + j] = t / &prev;
                }
                m[i * cols + c] = BigInt::zero();
            }
            prev = m[r * cols + c].clone();
            r += 1;
        }
        r
    }

    /// Exact determinant by Bareiss fraction-free elimination.
    pub fn det(&self) -> Result<Rational> {
        if self.rows != self.cols {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let mut scale = BigInt::one();
        let mut m = Vec::with_capacity(n * n);
        for i in 0..n {
            let mut l = BigInt::one();
            for j in 0..n {
                l = l.lcm(self.at(i, j).denom());
            }
            for j in 0..n {
                let e = self.at(i, j);
                m.push(e.numer() * (&l / e.denom()));
            }
            scale *= l;
        }
        let mut sign = 1i32;
        let mut prev = BigInt::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !m[i * n + k].is_zero()) else {
                return Ok(Rational::zero());
            };
            if p != k {
                for j in 0..n {
                    m.swap(k * n + j, p * n + j);
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = &m[i * n + j] * &m[k * n + k] - &m[i * n + k] * &m[k * n + j];
                    m[i * n + j] = t / &prev;
                }
                m[i * n + k] = BigInt::zero();
            }
            prev = m[k * n + k].clone();
        }
        let mut det = Rational::new(m[n * n - 1].clone(), scale);
        if sign < 0 {
            det = -det;
        }
        Ok(det)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Integer copy with each row scaled by the lcm of its denominators.
    fn cleared(&self) -> Vec<BigInt> {
        let mut m = Vec::with_capacity(self.rows * self.cols);
        for i in 0..self.rows {
            let mut l = BigInt::one();
            for j in 0..self.cols {
                l = l.lcm(self.at(i, j).denom());
            }
            for j in 0..self.cols {
                let e = self.at(i, j);
                m.push(e.numer() * (&l / e.denom()));
            }
        }
        m
    }
}
