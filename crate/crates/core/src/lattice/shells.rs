//! Shells and the aggregates computed over them.
//!
//! Small shells are materialized and sorted; large ones are consumed by
//! streaming folds that keep only the aggregate, so the sixteen-million
//! vector shells of rank-24 lattices never sit in memory at once.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use std::collections::BTreeMap;
use std::ops::ControlFlow;

use crate::error::{Error, Result};
use crate::exact::HnfAccumulator;
use crate::harmonics::zonal_poly;

use super::enumerate::Enumerator;
use super::GramMatrix;

/// A lattice vector in basis coordinates together with its norm.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShellVector {
    pub coords: Vec<i64>,
    pub norm: BigInt,
}

impl ShellVector {
    pub fn new(gram: &GramMatrix, coords: Vec<i64>) -> Self {
        let norm = gram.norm(&coords);
        Self { coords, norm }
    }
}

/// The complete set of vectors of one norm, sorted lexicographically by
/// coordinates and closed under negation.
#[derive(Debug, Clone)]
pub struct Shell {
    pub gram: GramMatrix,
    pub norm: BigInt,
    pub vectors: Vec<ShellVector>,
    /// Whether the vector list is the whole shell.
    pub complete: bool,
}

impl Shell {
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &ShellVector> {
        self.vectors.iter()
    }

    /// Inner-product profile of the shell against `x0`, from the stored
    /// vectors.
    pub fn profile(&self, x0: &[i64]) -> ProfileCounts {
        let weights = self.gram.apply(x0);
        let mut counts = ProfileCounts::new(
            ShellVector::new(&self.gram, x0.to_vec()),
            self.norm.clone(),
        );
        for v in &self.vectors {
            counts.record(dot(&weights, &v.coords));
        }
        counts
    }

    /// Exact zonal design sum `sum_x Q_s(<probe, x>)` over the stored shell.
    pub fn design_sum(&self, degree: usize, probe: &[i64]) -> Result<BigInt> {
        design_from_profile(&self.gram, degree, &self.profile(probe))
    }
}

/// Hermite normal form of a union of shells, with the index of their span.
#[derive(Debug, Clone)]
pub struct SpanResult {
    /// Canonical basis of the span of the shell vectors, one row per basis
    /// vector.
    pub hnf_basis: Vec<Vec<BigInt>>,
    pub rank: usize,
    /// `[L : span]` when the span has full rank, `None` when infinite.
    pub index: Option<BigInt>,
}

/// Counts `N_j` of shell vectors at each nonnegative inner product `j`
/// against a fixed vector. Negation symmetry pairs `j` with `-j`, so the
/// nonnegative half determines the whole distribution.
#[derive(Debug, Clone)]
pub struct ProfileCounts {
    pub x0: ShellVector,
    pub shell_norm: BigInt,
    counts: BTreeMap<BigInt, u64>,
    visited: u64,
}

impl ProfileCounts {
    fn new(x0: ShellVector, shell_norm: BigInt) -> Self {
        Self { x0, shell_norm, counts: BTreeMap::new(), visited: 0 }
    }

    fn record(&mut self, inner: BigInt) {
        self.visited += 1;
        if !inner.is_negative() {
            *self.counts.entry(inner).or_insert(0) += 1;
        }
    }

    fn merge(mut self, other: ProfileCounts) -> ProfileCounts {
        self.visited += other.visited;
        for (j, c) in other.counts {
            *self.counts.entry(j).or_insert(0) += c;
        }
        self
    }

    /// `N_j` for `j >= 0`.
    pub fn count(&self, j: &BigInt) -> u64 {
        self.counts.get(j).copied().unwrap_or(0)
    }

    /// The nonzero counts in ascending `j`.
    pub fn counts(&self) -> &BTreeMap<BigInt, u64> {
        &self.counts
    }

    /// Number of shell vectors seen, i.e. `N_0 + 2 sum_{j>0} N_j`.
    pub fn shell_size(&self) -> u64 {
        self.visited
    }
}

fn dot(weights: &[BigInt], coords: &[i64]) -> BigInt {
    weights.iter().zip(coords).map(|(w, &c)| w * c).sum()
}

fn design_from_profile(
    gram: &GramMatrix,
    degree: usize,
    profile: &ProfileCounts,
) -> Result<BigInt> {
    if profile.x0.norm.is_zero() {
        return Err(Error::ZeroProbe);
    }
    let q = zonal_poly(
        gram.rank() as u32,
        degree,
        &profile.shell_norm,
        &profile.x0.norm,
    )?;
    let mut total = BigInt::zero();
    for (j, &n) in profile.counts() {
        let weight: u64 = if j.is_zero() { n } else { 2 * n };
        total += q.eval(j) * weight;
    }
    Ok(total)
}

impl GramMatrix {
    /// Enumerate the complete norm-`norm` shell.
    pub fn enumerate_shell(&self, norm: &BigInt) -> Result<Shell> {
        let enumerator = Enumerator::new(self)?;
        let mut coords = enumerator.fold(
            norm,
            Vec::new,
            |acc: &mut Vec<Vec<i64>>, x| acc.push(x.to_vec()),
            |mut a, b| {
                a.extend(b);
                a
            },
        )?;
        coords.sort_unstable();
        let vectors = coords
            .into_iter()
            .map(|c| ShellVector { coords: c, norm: norm.clone() })
            .collect();
        Ok(Shell {
            gram: self.clone(),
            norm: norm.clone(),
            vectors,
            complete: true,
        })
    }

    /// Cardinality of the shell without materializing it.
    pub fn shell_count(&self, norm: &BigInt) -> Result<u64> {
        Enumerator::new(self)?.fold(norm, || 0u64, |acc, _| *acc += 1, |a, b| a + b)
    }

    /// Whether the shell is empty, stopping at the first vector found.
    pub fn shell_is_empty(&self, norm: &BigInt) -> Result<bool> {
        Enumerator::new(self)?.visit(norm, |_| ControlFlow::Break(()))
    }

    /// Hermite normal form and index of the sublattice generated by the
    /// shells of the given norms.
    ///
    /// Stops streaming as soon as the accumulated span is all of the lattice,
    /// which happens within the first few vectors for shells that generate.
    pub fn span_shell(&self, norms: &[BigInt]) -> Result<SpanResult> {
        let mut acc = HnfAccumulator::new(self.rank());
        for norm in norms {
            let enumerator = Enumerator::new(self)?;
            enumerator.visit(norm, |x| {
                acc.push(x);
                if acc.is_full_unimodular() {
                    ControlFlow::Break(())
                } else {
                    ControlFlow::Continue(())
                }
            })?;
            if acc.is_full_unimodular() {
                break;
            }
        }
        Ok(SpanResult {
            rank: acc.rank(),
            index: acc.index(),
            hnf_basis: acc.into_rows(),
        })
    }

    /// Inner-product profile of the norm-`shell_norm` shell against `x0`,
    /// computed by a streaming fold.
    pub fn inner_product_profile(
        &self,
        x0: &[i64],
        shell_norm: &BigInt,
    ) -> Result<ProfileCounts> {
        let weights = self.apply(x0);
        let make = || {
            ProfileCounts::new(
                ShellVector::new(self, x0.to_vec()),
                shell_norm.clone(),
            )
        };
        Enumerator::new(self)?.fold(
            shell_norm,
            make,
            |acc, x| acc.record(dot(&weights, x)),
            ProfileCounts::merge,
        )
    }

    /// Exact zonal design sum `sum_x Q_s(<probe, x>)` over the shell,
    /// streaming. Zero certifies degree-`degree` zonal vanishing for this
    /// probe.
    pub fn design_test(
        &self,
        shell_norm: &BigInt,
        degree: usize,
        probe: &[i64],
    ) -> Result<BigInt> {
        let profile = self.inner_product_profile(probe, shell_norm)?;
        design_from_profile(self, degree, &profile)
    }
}
