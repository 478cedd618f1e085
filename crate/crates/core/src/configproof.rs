//! The configuration linear system over inner-product counts.
//!
//! Fix an extremal Type II lattice of rank n with minimal norm m0 and a
//! hypothetical minimal vector u outside the span of the (m0+2)-shell. Each
//! even design degree s gives one homogeneous linear equation
//!
//! ```text
//!   Q_s(0) N_0 + 2 sum_{j in J, j > 0} Q_s(j) N_j = 0
//! ```
//!
//! in the counts `N_j = #{x in the (m0+2)-shell : <x, u> = j}`, where the
//! admissible inner products J omit m0/2 (such an x would put u back in the
//! span) and everything beyond m0/2 + 1 (excluded by minimality). When the
//! system has a one-dimensional solution space whose sign pattern is mixed,
//! no nonnegative counts can exist and the hypothesis collapses; when all
//! signs agree the computation is inconclusive.

use num_bigint::BigInt;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::exact::{normalize_primitive, RatMatrix, Rational};
use crate::harmonics::{zonal_poly, ZonalPolynomial};

/// Parameters of the configuration system for one rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigInstance {
    /// Lattice rank, a multiple of 8.
    pub rank: u32,
    /// Extremal minimal norm `2 floor(n/24) + 2`.
    pub min_norm: u32,
    /// Design strength t of the nonempty shells.
    pub strength: u32,
    /// Even degrees S usable in the vanishing identity, ascending.
    pub degrees: Vec<u32>,
    /// Admissible absolute inner products J, ascending.
    pub indices: Vec<u32>,
}

/// Design strength and usable even degrees for a given rank.
///
/// The strength is 11, 7, or 3 according as the rank is 0, 8, or 16 mod 24;
/// the identity applies in degrees 1..=t and additionally t + 3, of which
/// only the even ones restrict to polynomials in the inner product.
pub fn design_degrees(rank: u32) -> Result<(u32, Vec<u32>)> {
    if rank == 0 || rank % 8 != 0 {
        return Err(Error::RankNotMultipleOf8(rank));
    }
    let strength = match rank % 24 {
        0 => 11,
        8 => 7,
        _ => 3,
    };
    let mut degrees: Vec<u32> = (2..=strength).step_by(2).collect();
    degrees.push(strength + 3);
    Ok((strength, degrees))
}

/// Admissible absolute inner products `{0, ..., m0/2 - 1, m0/2 + 1}` of a
/// minimal vector against the (m0+2)-shell.
pub fn index_set(min_norm: u32) -> Result<Vec<u32>> {
    if min_norm % 2 != 0 || min_norm < 4 {
        return Err(Error::MinNormTooSmall(min_norm));
    }
    let half = min_norm / 2;
    let mut indices: Vec<u32> = (0..half).collect();
    indices.push(half + 1);
    Ok(indices)
}

/// The assembled system: one row per degree in S, one column per index in J,
/// with entry `Q_s(0)` at j = 0 and `2 Q_s(j)` at j > 0.
#[derive(Debug, Clone)]
pub struct ConfigSystem {
    pub instance: ConfigInstance,
    pub zonals: Vec<ZonalPolynomial>,
    pub matrix: RatMatrix,
}

/// Outcome of the sign analysis of the solution ray.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    /// Mixed signs: nonnegative counts cannot realize the ratio, so no
    /// minimal vector escapes the span of the (m0+2)-shell.
    Contradiction,
    /// All entries nonnegative: the sign argument proves nothing.
    Inconclusive,
    /// Nullspace dimension differs from 1; no canonical ray to inspect.
    Degenerate,
}

impl Outcome {
    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::Contradiction => "contradiction",
            Outcome::Inconclusive => "inconclusive",
            Outcome::Degenerate => "degenerate",
        }
    }
}

/// Solution ray and its classification.
#[derive(Debug, Clone)]
pub struct ConfigVerdict {
    /// Primitive integer solution indexed by J, sign-anchored so the j = 0
    /// entry is positive. Empty when the outcome is `Degenerate`.
    pub solution: Vec<BigInt>,
    pub outcome: Outcome,
    /// Nullspace dimension of the system matrix.
    pub nullity: usize,
}

/// Build the configuration system for the given rank.
///
/// Ranks 40, 80, 120 are the ones whose degree count matches m0/2 exactly;
/// any rank that is a multiple of 8 with minimal norm at least 4 is accepted
/// for exploration.
pub fn build_system(rank: u32) -> Result<ConfigSystem> {
    let (strength, degrees) = design_degrees(rank)?;
    let min_norm = 2 * (rank / 24) + 2;
    let indices = index_set(min_norm)?;
    let shell_norm = BigInt::from(min_norm + 2);
    let axis_norm = BigInt::from(min_norm);
    let mut zonals = Vec::with_capacity(degrees.len());
    let mut rows = Vec::with_capacity(degrees.len());
    for &s in &degrees {
        let q = zonal_poly(rank, s as usize, &shell_norm, &axis_norm)?;
        let row: Vec<Rational> = indices
            .iter()
            .map(|&j| {
                let v = q.eval(&BigInt::from(j));
                let v = if j == 0 { v } else { 2 * v };
                Rational::from_integer(v)
            })
            .collect();
        zonals.push(q);
        rows.push(row);
    }
    Ok(ConfigSystem {
        instance: ConfigInstance { rank, min_norm, strength, degrees, indices },
        zonals,
        matrix: RatMatrix::from_rows(rows)?,
    })
}

impl ConfigSystem {
    /// Solve the system and classify the sign pattern of the solution ray.
    pub fn solve(&self) -> Result<ConfigVerdict> {
        let basis = self.matrix.nullspace();
        if basis.len() != 1 {
            return Ok(ConfigVerdict {
                solution: Vec::new(),
                outcome: Outcome::Degenerate,
                nullity: basis.len(),
            });
        }
        let mut solution = normalize_primitive(&basis[0])?;
        if solution[0].is_negative() {
            for x in solution.iter_mut() {
                *x = -&*x;
            }
        }
        let has_negative = solution.iter().any(|x| x.is_negative());
        let has_positive = solution.iter().any(|x| x.is_positive());
        let outcome = if has_negative && has_positive {
            Outcome::Contradiction
        } else {
            Outcome::Inconclusive
        };
        Ok(ConfigVerdict { solution, outcome, nullity: 1 })
    }
}

/// Build and solve in one step.
pub fn solve_configuration(rank: u32) -> Result<ConfigVerdict> {
    build_system(rank)?.solve()
}
