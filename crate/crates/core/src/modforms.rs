//! Exact q-expansions: Eisenstein series, the discriminant cusp form, and
//! the extremal theta series of even unimodular lattices.
//!
//! A rank-n Type II lattice has a theta series that is a weight-n/2 modular
//! form for the full modular group; since n is a multiple of 8 the weight is
//! a multiple of 4 and the ring generated by `E4` and the cusp form delta
//! suffices. The extremal series is the unique form in that space whose
//! expansion starts `1 + 0 q + ... + 0 q^floor(n/24)`; its coefficient of
//! `q^k` is the number of lattice vectors of norm `2k` in any extremal
//! lattice of that rank.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::ops::{Add, Mul, Sub};

use crate::error::{Error, Result};

/// Truncated integer power series in q; `coeffs[k]` is the coefficient of
/// `q^k` and the precision is the number of known coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QSeries {
    coeffs: Vec<BigInt>,
}

impl QSeries {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least one coefficient");
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn one(precision: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); precision.max(1)];
        coeffs[0] = BigInt::one();
        Self { coeffs }
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, k: usize) -> &BigInt {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn truncated(&self, precision: usize) -> QSeries {
        QSeries::new(self.coeffs[..precision.min(self.coeffs.len())].to_vec())
    }

    pub fn scaled(&self, c: &BigInt) -> QSeries {
        QSeries::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Power by repeated squaring; precision is preserved.
    pub fn pow(&self, e: u32) -> QSeries {
        let mut result = QSeries::one(self.precision());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Exact division by an integer constant; panics if any coefficient is
    /// not divisible (callers divide only where divisibility is a theorem).
    fn div_exact(&self, d: &BigInt) -> QSeries {
        QSeries::new(
            self.coeffs
                .iter()
                .map(|c| {
                    let (q, r) = num_integer::Integer::div_rem(c, d);
                    assert!(r.is_zero(), "non-exact series division");
                    q
                })
                .collect(),
        )
    }
}

impl Add for &QSeries {
    type Output = QSeries;
    fn add(self, rhs: &QSeries) -> QSeries {
        let p = self.precision().min(rhs.precision());
        QSeries::new((0..p).map(|k| &self.coeffs[k] + &rhs.coeffs[k]).collect())
    }
}

impl Sub for &QSeries {
    type Output = QSeries;
    fn sub(self, rhs: &QSeries) -> QSeries {
        let p = self.precision().min(rhs.precision());
        QSeries::new((0..p).map(|k| &self.coeffs[k] - &rhs.coeffs[k]).collect())
    }
}

impl Mul for &QSeries {
    type Output = QSeries;
    fn mul(self, rhs: &QSeries) -> QSeries {
        let p = self.precision().min(rhs.precision());
        let mut out = vec![BigInt::zero(); p];
        for (i, a) in self.coeffs.iter().take(p).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(p - i).enumerate() {
                out[i + j] += a * b;
            }
        }
        QSeries::new(out)
    }
}

/// Divisor power sum by trial division.
fn sigma(power: u32, n: u64) -> BigInt {
    let mut total = BigInt::zero();
    for d in 1..=n {
        if n % d == 0 {
            total += BigInt::from(d).pow(power);
        }
    }
    total
}

/// Normalized Eisenstein series: `E4 = 1 + 240 sum sigma_3(k) q^k` and
/// `E6 = 1 - 504 sum sigma_5(k) q^k`.
pub fn eisenstein(weight: u32, precision: usize) -> Result<QSeries> {
    if precision == 0 {
        return Err(Error::PrecisionTooSmall { given: 0, needed: 1 });
    }
    let (mult, power) = match weight {
        4 => (BigInt::from(240), 3),
        6 => (BigInt::from(-504), 5),
        w => return Err(Error::UnsupportedWeight(w)),
    };
    let mut coeffs = Vec::with_capacity(precision);
    coeffs.push(BigInt::one());
    for k in 1..precision as u64 {
        coeffs.push(&mult * sigma(power, k));
    }
    Ok(QSeries::new(coeffs))
}

/// The discriminant cusp form `delta = (E4^3 - E6^2)/1728`.
pub fn delta(precision: usize) -> QSeries {
    let precision = precision.max(1);
    let e4 = eisenstein(4, precision).unwrap();
    let e6 = eisenstein(6, precision).unwrap();
    (&e4.pow(3) - &e6.pow(2)).div_exact(&BigInt::from(1728))
}

/// Extremal theta series of a rank-n Type II lattice.
#[derive(Debug, Clone)]
pub struct ExtremalTheta {
    rank: u32,
    min_norm: u32,
    series: QSeries,
}

impl ExtremalTheta {
    pub fn rank(&self) -> u32 {
        self.rank
    }

    /// The extremality bound `2 floor(n/24) + 2`.
    pub fn min_norm(&self) -> u32 {
        self.min_norm
    }

    pub fn series(&self) -> &QSeries {
        &self.series
    }
}

/// Number of leading coefficients forced to `1, 0, ..., 0`.
fn forced_terms(rank: u32) -> usize {
    (rank / 24) as usize + 1
}

/// Compute the extremal theta series of rank `rank` to `precision` terms.
///
/// The form is the unique combination of `E4^((n/2-12i)/4) delta^i` for
/// `0 <= i <= floor(n/24)` with expansion `1 + O(q^(floor(n/24)+1))`. Since
/// `delta^i` starts at `q^i` the defining system is unitriangular and the
/// combination coefficients come out as integers.
pub fn extremal_theta(rank: u32, precision: usize) -> Result<ExtremalTheta> {
    if rank == 0 || rank % 8 != 0 {
        return Err(Error::RankNotMultipleOf8(rank));
    }
    let k = (rank / 24) as usize;
    if precision < k + 2 {
        return Err(Error::PrecisionTooSmall { given: precision, needed: k + 2 });
    }
    let e4 = eisenstein(4, precision)?;
    let dl = delta(precision);
    let basis: Vec<QSeries> = (0..=k)
        .map(|i| {
            let e4_power = (rank / 2 - 12 * i as u32) / 4;
            let mut b = e4.pow(e4_power);
            if i > 0 {
                b = &b * &dl.pow(i as u32);
            }
            b
        })
        .collect();
    let mut combo: Vec<BigInt> = Vec::with_capacity(k + 1);
    for j in 0..=k {
        let target = if j == 0 { BigInt::one() } else { BigInt::zero() };
        let partial: BigInt = (0..j).map(|i| &combo[i] * basis[i].coeff(j)).sum();
        combo.push(target - partial);
    }
    let mut series = QSeries::new(vec![BigInt::zero(); precision]);
    for (a, b) in combo.iter().zip(&basis) {
        series = &series + &b.scaled(a);
    }
    Ok(ExtremalTheta {
        rank,
        min_norm: 2 * (rank / 24) + 2,
        series,
    })
}

/// Extremal theta series at the default precision, which covers the minimal
/// norm and minimal norm + 2 with margin.
pub fn extremal_theta_default(rank: u32) -> Result<ExtremalTheta> {
    extremal_theta(rank, (rank / 24) as usize + 4)
}

/// Size of the norm-`norm` shell of an extremal Type II lattice of the given
/// rank, read off the extremal theta series.
pub fn shell_size(rank: u32, norm: u64) -> Result<BigInt> {
    if norm % 2 != 0 {
        return Err(Error::OddShellNorm(norm));
    }
    let k = (norm / 2) as usize;
    let precision = (k + 1).max(forced_terms(rank) + 1);
    Ok(extremal_theta(rank, precision)?.series.coeff(k).clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn eisenstein_four() {
        assert_eq!(eisenstein(4, 3).unwrap(), QSeries::from_i64(&[1, 240, 2160]));
        assert_eq!(eisenstein(4, 1).unwrap(), QSeries::from_i64(&[1]));
    }

    #[test]
    fn eisenstein_six() {
        assert_eq!(eisenstein(6, 2).unwrap(), QSeries::from_i64(&[1, -504]));
    }

    #[test]
    fn eisenstein_rejects_other_weights() {
        assert!(matches!(eisenstein(8, 4), Err(Error::UnsupportedWeight(8))));
    }

    #[test]
    fn delta_expansion() {
        assert_eq!(delta(2), QSeries::from_i64(&[0, 1]));
        assert_eq!(delta(3), QSeries::from_i64(&[0, 1, -24]));
        assert_eq!(delta(4), QSeries::from_i64(&[0, 1, -24, 252]));
    }

    #[test]
    fn delta_identity_holds_at_every_precision() {
        for p in 1..=12 {
            let e4 = eisenstein(4, p).unwrap();
            let e6 = eisenstein(6, p).unwrap();
            assert_eq!(
                delta(p).scaled(&big(1728)),
                &e4.pow(3) - &e6.pow(2),
                "precision {p}"
            );
        }
    }

    #[test]
    fn extremal_theta_rank8_is_e4() {
        let t = extremal_theta(8, 3).unwrap();
        assert_eq!(t.min_norm(), 2);
        assert_eq!(t.series(), &eisenstein(4, 3).unwrap());
    }

    #[test]
    fn extremal_theta_rank40() {
        let t = extremal_theta(40, 4).unwrap();
        assert_eq!(t.min_norm(), 4);
        assert_eq!(t.series().coeffs(), &[big(1), big(0), big(39600), big(87859200)]);
    }

    #[test]
    fn extremal_theta_rank80() {
        let t = extremal_theta(80, 6).unwrap();
        assert_eq!(t.series().coeff(5), &BigInt::from(7541401190400u64));
    }

    #[test]
    fn extremal_theta_rejects_bad_rank() {
        assert!(matches!(extremal_theta(12, 4), Err(Error::RankNotMultipleOf8(12))));
        assert!(matches!(extremal_theta(0, 4), Err(Error::RankNotMultipleOf8(0))));
    }

    #[test]
    fn extremal_theta_rejects_short_precision() {
        assert!(matches!(
            extremal_theta(40, 2),
            Err(Error::PrecisionTooSmall { given: 2, needed: 3 })
        ));
    }

    #[test]
    fn extremal_series_shape_across_ranks() {
        for rank in [8u32, 16, 24, 32, 40, 48, 56, 64, 72, 80, 120] {
            let t = extremal_theta_default(rank).unwrap();
            let k = (rank / 24) as usize;
            assert!(t.series().coeff(0).is_one(), "rank {rank}");
            for j in 1..=k {
                assert!(t.series().coeff(j).is_zero(), "rank {rank} q^{j}");
            }
            assert!(
                t.series().coeffs().iter().all(|c| c.sign() != num_bigint::Sign::Minus),
                "rank {rank} has a negative coefficient"
            );
        }
    }

    #[test]
    fn shell_sizes_quoted_in_the_source() {
        assert_eq!(shell_size(40, 6).unwrap(), big(87859200));
        assert_eq!(shell_size(80, 10).unwrap(), BigInt::from(7541401190400u64));
        assert_eq!(shell_size(40, 2).unwrap(), big(0));
        assert_eq!(shell_size(24, 4).unwrap(), big(196560));
        assert_eq!(shell_size(8, 2).unwrap(), big(240));
        assert_eq!(shell_size(40, 0).unwrap(), big(1));
    }

    #[test]
    fn shell_size_rejects_odd_norm() {
        assert!(matches!(shell_size(40, 5), Err(Error::OddShellNorm(5))));
    }

    proptest! {
        #[test]
        fn series_product_commutes_and_associates(
            a in proptest::collection::vec(-20i64..20, 1..8),
            b in proptest::collection::vec(-20i64..20, 1..8),
            c in proptest::collection::vec(-20i64..20, 1..8),
        ) {
            let (a, b, c) = (QSeries::from_i64(&a), QSeries::from_i64(&b), QSeries::from_i64(&c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        }
    }
}
