//! Exact integral-lattice engine.
//!
//! A lattice is presented by the Gram matrix of a basis: symmetric, integer,
//! positive definite. Everything downstream — shell enumeration, spans,
//! inner-product profiles, design sums — works in basis coordinates, so a
//! vector is a row of integers and its norm is `x^T G x`.

mod enumerate;
mod shells;

pub use shells::{ProfileCounts, Shell, ShellVector, SpanResult};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{RatMatrix, Rational};

/// Symmetric positive-definite integer Gram matrix.
///
/// Positive definiteness is established at construction by the exact LDL^T
/// factorization: its pivots are the ratios of consecutive leading principal
/// minors, so requiring every pivot positive is the minor test. The
/// factorization is kept for the enumeration engine.
#[derive(Debug, Clone)]
pub struct GramMatrix {
    rank: usize,
    entries: Vec<BigInt>,
    /// Unit lower-triangular L of G = L D L^T; row i holds entries j < i.
    ldl_l: Vec<Vec<Rational>>,
    /// Positive diagonal D.
    ldl_d: Vec<Rational>,
}

impl GramMatrix {
    pub fn new(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let rank = rows.len();
        if rank == 0 || rows.iter().any(|r| r.len() != rank) {
            return Err(Error::Shape("Gram matrix must be square and nonempty".into()));
        }
        let entries: Vec<BigInt> = rows.into_iter().flatten().collect();
        for i in 0..rank {
            for j in 0..i {
                if entries[i * rank + j] != entries[j * rank + i] {
                    return Err(Error::NotSymmetric { row: i, col: j });
                }
            }
        }
        let (ldl_l, ldl_d) = ldl(rank, &entries)?;
        Ok(Self { rank, entries, ldl_l, ldl_d })
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    /// Parse the plain-text format: first line the rank, then rank lines of
    /// rank space-separated integers.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        let (header_line, rank) = loop {
            match lines.next() {
                Some((i, l)) if !l.trim().is_empty() => {
                    let tok = l.trim();
                    let rank: usize = tok.parse().map_err(|_| Error::Parse {
                        line: i + 1,
                        message: format!("expected the rank, found {tok:?}"),
                    })?;
                    if rank == 0 {
                        return Err(Error::Parse {
                            line: i + 1,
                            message: "rank must be at least 1".into(),
                        });
                    }
                    break (i + 1, rank);
                }
                Some(_) => continue,
                None => {
                    return Err(Error::Parse { line: 1, message: "empty input".into() })
                }
            }
        };
        let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(rank);
        let mut row_lines = Vec::with_capacity(rank);
        for (i, l) in lines {
            if l.trim().is_empty() {
                continue;
            }
            if rows.len() == rank {
                return Err(Error::Parse {
                    line: i + 1,
                    message: format!("unexpected content after {rank} matrix rows"),
                });
            }
            let mut row = Vec::with_capacity(rank);
            for (c, tok) in l.split_whitespace().enumerate() {
                let v: BigInt = tok.parse().map_err(|_| Error::Parse {
                    line: i + 1,
                    message: format!("column {}: {tok:?} is not an integer", c + 1),
                })?;
                row.push(v);
            }
            if row.len() != rank {
                return Err(Error::Parse {
                    line: i + 1,
                    message: format!("expected {rank} entries, found {}", row.len()),
                });
            }
            rows.push(row);
            row_lines.push(i + 1);
        }
        if rows.len() != rank {
            return Err(Error::Parse {
                line: header_line,
                message: format!("expected {rank} matrix rows, found {}", rows.len()),
            });
        }
        // report asymmetry against the offending line and column
        for i in 0..rank {
            for j in 0..i {
                if rows[i][j] != rows[j][i] {
                    return Err(Error::Parse {
                        line: row_lines[i],
                        message: format!(
                            "column {}: entry {} breaks symmetry with entry ({},{}) = {}",
                            j + 1,
                            rows[i][j],
                            j + 1,
                            i + 1,
                            rows[j][i]
                        ),
                    });
                }
            }
        }
        Self::new(rows)
    }

    pub fn read_file(path: &std::path::Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.rank + j]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[BigInt]> {
        self.entries.chunks(self.rank)
    }

    pub(crate) fn ldl(&self) -> (&[Vec<Rational>], &[Rational]) {
        (&self.ldl_l, &self.ldl_d)
    }

    /// `x^T G y` for coordinate vectors.
    pub fn inner(&self, x: &[i64], y: &[i64]) -> BigInt {
        assert_eq!(x.len(), self.rank);
        assert_eq!(y.len(), self.rank);
        let gy = self.apply(y);
        x.iter().zip(&gy).map(|(&xi, gyi)| gyi * xi).sum()
    }

    /// `x^T G x`.
    pub fn norm(&self, x: &[i64]) -> BigInt {
        self.inner(x, x)
    }

    /// `G x` as big integers.
    pub(crate) fn apply(&self, x: &[i64]) -> Vec<BigInt> {
        (0..self.rank)
            .map(|i| {
                x.iter()
                    .enumerate()
                    .map(|(j, &xj)| self.entry(i, j) * xj)
                    .sum()
            })
            .collect()
    }

    /// Exact determinant of the Gram matrix.
    pub fn det(&self) -> BigInt {
        let rows: Vec<Vec<Rational>> = self
            .rows()
            .map(|r| r.iter().map(|x| Rational::from_integer(x.clone())).collect())
            .collect();
        let det = RatMatrix::from_rows(rows).unwrap().det().unwrap();
        debug_assert!(det.is_integer());
        det.to_integer()
    }

    /// Smallest norm of a nonzero lattice vector, by emptiness checks of
    /// increasing shells. The smallest diagonal entry bounds the search.
    pub fn min_norm(&self) -> Result<BigInt> {
        let even = self.is_even();
        let bound = self.rows().enumerate().map(|(i, r)| r[i].clone()).min().unwrap();
        let step = if even { 2 } else { 1 };
        let mut j = BigInt::from(step);
        while j <= bound {
            if !self.shell_is_empty(&j)? {
                return Ok(j);
            }
            j += step;
        }
        Ok(bound)
    }

    fn is_even(&self) -> bool {
        (0..self.rank).all(|i| self.entry(i, i).is_even())
    }

    /// Structural classification of the lattice.
    pub fn classify(&self) -> Result<LatticeClass> {
        // integral off-diagonals plus an even diagonal force every norm even,
        // by expanding <x,x> = sum x_i^2 g_ii + 2 sum_{i<j} x_i x_j g_ij
        let even = self.is_even();
        let determinant = self.det();
        let unimodular = determinant.is_one();
        let type_ii = even && unimodular;
        let min_norm = self.min_norm()?;
        let extremal_bound = BigInt::from(2 * (self.rank as u64 / 24) + 2);
        Ok(LatticeClass {
            even,
            unimodular,
            type_ii,
            extremal: type_ii && min_norm == extremal_bound,
            min_norm,
            determinant,
        })
    }
}

/// Result of `GramMatrix::classify`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeClass {
    pub even: bool,
    pub unimodular: bool,
    pub type_ii: bool,
    pub min_norm: BigInt,
    pub extremal: bool,
    pub determinant: BigInt,
}

/// Exact LDL^T of a symmetric matrix; fails unless positive definite.
fn ldl(n: usize, entries: &[BigInt]) -> Result<(Vec<Vec<Rational>>, Vec<Rational>)> {
    let at = |i: usize, j: usize| Rational::from_integer(entries[i * n + j].clone());
    let mut l: Vec<Vec<Rational>> = (0..n).map(|i| vec![Rational::zero(); i]).collect();
    let mut d: Vec<Rational> = Vec::with_capacity(n);
    for i in 0..n {
        for j in 0..i {
            let mut s = at(i, j);
            for k in 0..j {
                s = s - &l[i][k] * &l[j][k] * &d[k];
            }
            l[i][j] = s / &d[j];
        }
        let mut s = at(i, i);
        for k in 0..i {
            s = s - &l[i][k] * &l[i][k] * &d[k];
        }
        if !s.is_positive() {
            return Err(Error::NotPositiveDefinite(i + 1));
        }
        d.push(s);
    }
    Ok((l, d))
}
