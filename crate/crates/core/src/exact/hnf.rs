use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Row-style Hermite normal form of the span of `rows`.
///
/// The result is in echelon profile with positive pivots, entries above each
/// pivot reduced into `[0, pivot)`, and zero rows dropped; it is the canonical
/// basis of the integer row span. All-zero input yields an empty matrix.
pub fn hnf(rows: &[Vec<BigInt>]) -> Result<Vec<Vec<BigInt>>> {
    if rows.is_empty() {
        return Err(Error::Shape("HNF needs at least one row".into()));
    }
    let cols = rows[0].len();
    if rows.iter().any(|r| r.len() != cols) {
        return Err(Error::Shape("ragged rows".into()));
    }
    let mut h: Vec<Vec<BigInt>> = rows.to_vec();
    hnf_in_place(&mut h, cols);
    Ok(h)
}

/// Euclidean reduction into Hermite normal form; `h` keeps only the
/// nonzero rows afterwards.
fn hnf_in_place(h: &mut Vec<Vec<BigInt>>, cols: usize) {
    let mut top = 0;
    for c in 0..cols {
        if top == h.len() {
            break;
        }
        // euclidean elimination below the working row
        loop {
            let mut best: Option<usize> = None;
            for i in top..h.len() {
                if !h[i][c].is_zero()
                    && best.is_none_or(|b| h[i][c].abs() < h[b][c].abs())
                {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            h.swap(top, b);
            let mut clean = true;
            for i in top + 1..h.len() {
                if !h[i][c].is_zero() {
                    let q = &h[i][c] / &h[top][c];
                    if !q.is_zero() {
                        for j in 0..cols {
                            let t = &h[i][j] - &q * &h[top][j];
                            h[i][j] = t;
                        }
                    }
                    if !h[i][c].is_zero() {
                        clean = false;
                    }
                }
            }
            if clean {
                break;
            }
        }
        if h[top][c].is_zero() {
            continue;
        }
        if h[top][c].is_negative() {
            for x in h[top].iter_mut() {
                *x = -&*x;
            }
        }
        // reduce entries above the pivot into [0, pivot)
        for i in 0..top {
            let q = h[i][c].div_floor(&h[top][c]);
            if !q.is_zero() {
                for j in 0..cols {
                    let t = &h[i][j] - &q * &h[top][j];
                    h[i][j] = t;
                }
            }
        }
        top += 1;
    }
    h.truncate(top);
}

/// Streaming Hermite-normal-form builder.
///
/// Rows are folded in one at a time; the canonical form of everything seen so
/// far is available at any point. Used to compute shell spans without holding
/// the shell in memory. Merging two accumulators gives the form of the union
/// of their inputs, so folds may be split across workers.
#[derive(Debug, Clone)]
pub struct HnfAccumulator {
    cols: usize,
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

impl HnfAccumulator {
    pub fn new(cols: usize) -> Self {
        Self { cols, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn push(&mut self, v: &[i64]) {
        let v: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
        self.push_big(v);
    }

    pub fn push_big(&mut self, mut v: Vec<BigInt>) {
        assert_eq!(v.len(), self.cols, "row width mismatch");
        // reduce against the current pivots first; most rows vanish
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let q = v[p].div_floor(&row[p]);
                if !q.is_zero() {
                    for j in 0..self.cols {
                        let t = &v[j] - &q * &row[j];
                        v[j] = t;
                    }
                }
            }
        }
        if v.iter().all(Zero::is_zero) {
            return;
        }
        self.rows.push(v);
        hnf_in_place(&mut self.rows, self.cols);
        self.recompute_pivots();
    }

    pub fn merge(mut self, other: HnfAccumulator) -> Self {
        for row in other.rows {
            self.push_big(row);
        }
        self
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Span equals all of `Z^cols`: full rank with every pivot 1.
    /// Nothing pushed later can enlarge the span, so callers may stop early.
    pub fn is_full_unimodular(&self) -> bool {
        self.rows.len() == self.cols
            && self
                .rows
                .iter()
                .zip(&self.pivots)
                .all(|(r, &p)| r[p].is_one())
    }

    /// Index of the span in `Z^cols`: product of the pivots when the span has
    /// full rank, `None` (infinite) otherwise.
    pub fn index(&self) -> Option<BigInt> {
        if self.rows.len() != self.cols {
            return None;
        }
        let mut idx = BigInt::one();
        for (r, &p) in self.rows.iter().zip(&self.pivots) {
            idx *= &r[p];
        }
        Some(idx)
    }

    pub fn into_rows(self) -> Vec<Vec<BigInt>> {
        self.rows
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    fn recompute_pivots(&mut self) {
        self.pivots = self
            .rows
            .iter()
            .map(|r| r.iter().position(|x| !x.is_zero()).unwrap())
            .collect();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rows(xs: &[&[i64]]) -> Vec<Vec<BigInt>> {
        xs.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    #[test]
    fn hnf_fixes_already_normal_input() {
        let b = rows(&[&[2, 0], &[0, 2]]);
        assert_eq!(hnf(&b).unwrap(), b);
    }

    #[test]
    fn hnf_drops_redundant_generator() {
        let b = rows(&[&[1, 0], &[0, 1], &[1, 1]]);
        assert_eq!(hnf(&b).unwrap(), rows(&[&[1, 0], &[0, 1]]));
    }

    #[test]
    fn hnf_of_nontrivial_plane_lattice() {
        let b = rows(&[&[2, 0], &[3, 3]]);
        let h = hnf(&b).unwrap();
        assert_eq!(h, rows(&[&[1, 3], &[0, 6]]));
        // both generator sets lie in each other's span: compare the point
        // sets produced by small integer combinations, clipped to a box
        let points = |gens: &[Vec<BigInt>]| {
            let mut set = std::collections::BTreeSet::new();
            for a in -8i64..=8 {
                for b in -8i64..=8 {
                    let x = a * gens[0][0].clone() + b * gens[1][0].clone();
                    let y = a * gens[0][1].clone() + b * gens[1][1].clone();
                    if x.abs() <= BigInt::from(6) && y.abs() <= BigInt::from(6) {
                        set.insert((x, y));
                    }
                }
            }
            set
        };
        assert_eq!(points(&b), points(&h));
    }

    #[test]
    fn hnf_of_zero_rows_is_empty() {
        assert!(hnf(&rows(&[&[0, 0], &[0, 0]])).unwrap().is_empty());
    }

    #[test]
    fn accumulator_matches_batch_hnf() {
        let b = rows(&[&[2, 0], &[3, 3], &[5, 3], &[0, 0]]);
        let mut acc = HnfAccumulator::new(2);
        for r in &b {
            acc.push_big(r.clone());
        }
        assert_eq!(acc.rows(), hnf(&b).unwrap().as_slice());
        assert_eq!(acc.index(), Some(BigInt::from(6)));
    }

    #[test]
    fn accumulator_detects_full_unimodular_span() {
        let mut acc = HnfAccumulator::new(3);
        acc.push(&[1, 0, 0]);
        assert!(!acc.is_full_unimodular());
        acc.push(&[4, 1, 0]);
        acc.push(&[-2, 7, 1]);
        assert!(acc.is_full_unimodular());
        assert_eq!(acc.index(), Some(BigInt::one()));
    }

    proptest! {
        #[test]
        fn hnf_idempotent_and_pivot_product_is_abs_det(
            seed in proptest::collection::vec(-9i64..9, 9),
        ) {
            let n = 3;
            let b: Vec<Vec<BigInt>> = (0..n)
                .map(|i| (0..n).map(|j| BigInt::from(seed[i * n + j])).collect())
                .collect();
            let h = hnf(&b).unwrap();
            if !h.is_empty() {
                prop_assert_eq!(hnf(&h).unwrap(), h.clone());
            }
            let a = crate::exact::RatMatrix::from_int_rows(
                &b.iter()
                    .map(|r| r.iter().map(|x| i64::try_from(x).unwrap()).collect())
                    .collect::<Vec<_>>(),
            ).unwrap();
            let det = a.det().unwrap();
            if h.len() == n {
                let mut prod = BigInt::one();
                let mut prev_pivot = None;
                for row in &h {
                    let p = row.iter().position(|x| !x.is_zero()).unwrap();
                    prop_assert!(prev_pivot.is_none_or(|q| p > q));
                    prev_pivot = Some(p);
                    prod *= &row[p];
                }
                prop_assert_eq!(Rational::from_integer(prod), det.abs());
            } else {
                prop_assert!(det.is_zero());
            }
        }
    }

    use crate::exact::Rational;
}
