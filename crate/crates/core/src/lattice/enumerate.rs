//! Exact branch-and-bound enumeration of fixed-norm lattice vectors.
//!
//! The LDL^T factorization turns the norm into a sum of weighted squares,
//!
//! ```text
//!   x^T G x = sum_i d_i (x_i + c_i)^2,   c_i = sum_{j>i} L_ji x_j,
//! ```
//!
//! which is searched depth-first from the last coordinate: at each level the
//! admissible values of `x_i` form a contiguous range around `-c_i`, and the
//! first coordinate is recovered by solving the remaining quadratic exactly
//! instead of scanning. All bounds are exact — no floating point, no
//! epsilons — so the output is the shell, not an approximation of it.
//!
//! Denominators are cleared once, up front. Column j of L is scaled by the
//! lcm `s_j` of its denominators, making the running centers integers, and
//! the norm budget is tracked at a fixed global denominator so that the
//! candidate test is one big-integer multiply and compare. Everything else
//! in the inner loop is machine arithmetic.
//!
//! Enumeration covers the half-shell whose highest-index nonzero coordinate
//! is positive; callers see both signs. Work may be split across workers at
//! the top branch; every consumer folds with order-insensitive merges, so
//! results do not depend on the worker count.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use std::ops::ControlFlow;
use std::sync::atomic::{AtomicBool, Ordering};

use crate::error::{Error, Result};

use super::GramMatrix;

pub(crate) struct Enumerator {
    n: usize,
    /// Column scale: `scale[j]` clears the denominators of column j of L.
    scale: Vec<i64>,
    /// `scaled_l[i][j] = L_ij * scale[j]` for j < i.
    scaled_l: Vec<Vec<i64>>,
    /// Numerator of the pivot `d_i` (the denominator is folded into
    /// `level_factor`).
    d_num: Vec<i64>,
    /// Budget denominator: lcm over i of `d_den[i] * scale[i]^2`.
    rem_den: BigInt,
    /// `level_factor[i] = rem_den / (d_den[i] * scale[i]^2)`.
    level_factor: Vec<BigInt>,
    overflowed: AtomicBool,
}

fn to_i64(x: &BigInt, what: &str) -> Result<i64> {
    x.to_i64()
        .ok_or_else(|| Error::Overflow(format!("{what} {x} does not fit in 64 bits")))
}

impl Enumerator {
    pub(crate) fn new(gram: &GramMatrix) -> Result<Self> {
        let (l, d) = gram.ldl();
        let n = gram.rank();
        let mut scale = vec![1i64; n];
        for j in 0..n {
            let mut s = BigInt::one();
            for li in l.iter().skip(j + 1) {
                s = s.lcm(li[j].denom());
            }
            scale[j] = to_i64(&s, "column scale")?;
        }
        let scaled_l: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                (0..i)
                    .map(|j| {
                        let v = l[i][j].numer() * (scale[j] / l[i][j].denom().to_i64().unwrap());
                        to_i64(&v, "scaled Gram-Schmidt coefficient")
                    })
                    .collect::<Result<_>>()
            })
            .collect::<Result<_>>()?;
        let mut d_num = Vec::with_capacity(n);
        let mut d_den = Vec::with_capacity(n);
        let mut rem_den = BigInt::one();
        for (i, di) in d.iter().enumerate() {
            d_num.push(to_i64(di.numer(), "pivot numerator")?);
            d_den.push(di.denom().clone());
            let s2 = BigInt::from(scale[i]) * scale[i];
            rem_den = rem_den.lcm(&(di.denom() * s2));
        }
        let level_factor = (0..n)
            .map(|i| &rem_den / (&d_den[i] * scale[i] * scale[i]))
            .collect();
        Ok(Self {
            n,
            scale,
            scaled_l,
            d_num,
            rem_den,
            level_factor,
            overflowed: AtomicBool::new(false),
        })
    }

    /// Scaled contribution `d_i (z + c_i)^2 * rem_den` of choosing `z` at
    /// level `i`, or `None` on machine overflow (recorded in the flag).
    fn contribution(&self, level: usize, z: i64, center: i128) -> Option<BigInt> {
        let y = (z as i128).checked_mul(self.scale[level] as i128)?.checked_add(center)?;
        let y2 = y.checked_mul(y)?;
        let num = y2.checked_mul(self.d_num[level] as i128)?;
        Some(BigInt::from(num) * &self.level_factor[level])
    }

    fn flag_overflow(&self) {
        self.overflowed.store(true, Ordering::Relaxed);
    }

    /// Centers gain `L_i* x_i` when coordinate i is set; `sign` undoes it.
    fn shift_centers(&self, centers: &mut [i128], level: usize, z: i64, sign: i64) {
        let row = &self.scaled_l[level];
        for (c, &lij) in centers.iter_mut().zip(row) {
            *c += (lij as i128) * (z as i128) * (sign as i128);
        }
    }

    /// Solve `d_0 (z + c_0)^2 = rem` exactly at the deepest level.
    ///
    /// In scaled terms `y^2 = rem / (d_num[0] * level_factor[0])` with
    /// `y = z * scale[0] + center`; there is a solution only when the
    /// division is exact, the quotient is a perfect square, and the root is
    /// compatible with the center modulo the scale.
    fn solve_level_zero(&self, rem: &BigInt, center: i128) -> [Option<i64>; 2] {
        let mut out = [None, None];
        let denom = BigInt::from(self.d_num[0]) * &self.level_factor[0];
        let (q, r) = rem.div_rem(&denom);
        if !r.is_zero() || q.is_negative() {
            return out;
        }
        let root = q.sqrt();
        if &root * &root != q {
            return out;
        }
        let Some(root) = root.to_i128() else {
            self.flag_overflow();
            return out;
        };
        let s = self.scale[0] as i128;
        let mut push = |y: i128| {
            let num = y - center;
            if num % s == 0 {
                if let Ok(z) = i64::try_from(num / s) {
                    if out[0] != Some(z) {
                        if out[0].is_none() {
                            out[0] = Some(z);
                        } else {
                            out[1] = Some(z);
                        }
                    }
                } else {
                    self.flag_overflow();
                }
            }
        };
        push(root);
        if root != 0 {
            push(-root);
        }
        out
    }

    /// Nearest integer to `-c_i`, the minimizer of the level contribution.
    fn center_round(&self, level: usize, center: i128) -> i64 {
        let s = self.scale[level] as i128;
        // floor((-2c + s) / (2s))
        let num = -2 * center + s;
        i64::try_from(Integer::div_floor(&num, &(2 * s))).unwrap_or_else(|_| {
            self.flag_overflow();
            0
        })
    }

    fn depth_first<F>(
        &self,
        level: usize,
        rem: &BigInt,
        zero_above: bool,
        coords: &mut [i64],
        centers: &mut [i128],
        emit: &mut F,
    ) -> ControlFlow<()>
    where
        F: FnMut(&[i64]) -> ControlFlow<()>,
    {
        if level == 0 {
            for z in self.solve_level_zero(rem, centers[0]).into_iter().flatten() {
                if zero_above && z <= 0 {
                    continue;
                }
                coords[0] = z;
                emit(coords)?;
            }
            return ControlFlow::Continue(());
        }
        let start = if zero_above { 0 } else { self.center_round(level, centers[level]) };
        // scan up from the minimizer, then down; each direction stops at the
        // first budget violation because the admissible set is contiguous
        for dir in [1i64, -1] {
            if zero_above && dir < 0 {
                break;
            }
            let mut z = if dir > 0 { start } else { start - 1 };
            loop {
                let Some(contrib) = self.contribution(level, z, centers[level]) else {
                    self.flag_overflow();
                    break;
                };
                if &contrib > rem {
                    break;
                }
                let next_rem = rem - contrib;
                coords[level] = z;
                self.shift_centers(centers, level, z, 1);
                let flow = self.depth_first(
                    level - 1,
                    &next_rem,
                    zero_above && z == 0,
                    coords,
                    centers,
                    emit,
                );
                self.shift_centers(centers, level, z, -1);
                flow?;
                z += dir;
            }
        }
        ControlFlow::Continue(())
    }

    fn check_overflow(&self) -> Result<()> {
        if self.overflowed.load(Ordering::Relaxed) {
            Err(Error::Overflow(
                "enumeration exceeded the engine's machine-integer range".into(),
            ))
        } else {
            Ok(())
        }
    }

    /// Top-level branches `(z, remaining budget)` for the parallel driver.
    fn top_candidates(&self, budget: &BigInt) -> Vec<(i64, BigInt)> {
        let top = self.n - 1;
        let mut out = Vec::new();
        let mut z = 0i64;
        loop {
            let Some(contrib) = self.contribution(top, z, 0) else {
                self.flag_overflow();
                break;
            };
            if &contrib > budget {
                break;
            }
            out.push((z, budget - contrib));
            z += 1;
        }
        out
    }

    /// Visit every shell vector sequentially; `emit` may stop the search.
    /// Returns whether the traversal ran to completion.
    pub(crate) fn visit<F>(&self, norm: &BigInt, mut emit: F) -> Result<bool>
    where
        F: FnMut(&[i64]) -> ControlFlow<()>,
    {
        if norm.is_negative() {
            return Ok(true);
        }
        if norm.is_zero() {
            let zero = vec![0i64; self.n];
            return Ok(emit(&zero).is_continue());
        }
        let budget = norm * &self.rem_den;
        let mut coords = vec![0i64; self.n];
        let mut centers = vec![0i128; self.n];
        let mut neg = vec![0i64; self.n];
        let mut both = |x: &[i64]| -> ControlFlow<()> {
            emit(x)?;
            for (n, &v) in neg.iter_mut().zip(x) {
                *n = -v;
            }
            emit(&neg)
        };
        let completed = self
            .depth_first(self.n - 1, &budget, true, &mut coords, &mut centers, &mut both)
            .is_continue();
        self.check_overflow()?;
        Ok(completed)
    }

    /// Fold over the whole shell with work split across the top branch.
    ///
    /// `visit` must be insensitive to visiting order; merging is done in
    /// branch order, so the result is deterministic for any worker count.
    pub(crate) fn fold<A, I, V, M>(&self, norm: &BigInt, init: I, visit: V, merge: M) -> Result<A>
    where
        A: Send,
        I: Fn() -> A + Sync,
        V: Fn(&mut A, &[i64]) + Sync,
        M: Fn(A, A) -> A,
    {
        if norm.is_negative() {
            return Ok(init());
        }
        if norm.is_zero() {
            let mut acc = init();
            visit(&mut acc, &vec![0i64; self.n]);
            return Ok(acc);
        }
        let budget = norm * &self.rem_den;
        if self.n == 1 {
            let mut acc = init();
            let mut coords = [0i64];
            for z in self.solve_level_zero(&budget, 0).into_iter().flatten() {
                if z <= 0 {
                    continue;
                }
                coords[0] = z;
                visit(&mut acc, &coords);
                coords[0] = -z;
                visit(&mut acc, &coords);
            }
            self.check_overflow()?;
            return Ok(acc);
        }
        let top = self.n - 1;
        let branches = self.top_candidates(&budget);
        let folded = branches
            .into_par_iter()
            .map(|(z, rem)| {
                let mut acc = init();
                let mut coords = vec![0i64; self.n];
                let mut centers = vec![0i128; self.n];
                let mut neg = vec![0i64; self.n];
                coords[top] = z;
                self.shift_centers(&mut centers, top, z, 1);
                let mut both = |x: &[i64]| -> ControlFlow<()> {
                    visit(&mut acc, x);
                    for (n, &v) in neg.iter_mut().zip(x) {
                        *n = -v;
                    }
                    visit(&mut acc, &neg);
                    ControlFlow::Continue(())
                };
                let _ = self.depth_first(top - 1, &rem, z == 0, &mut coords, &mut centers, &mut both);
                acc
            })
            .collect_vec_list();
        self.check_overflow()?;
        let mut iter = folded.into_iter().flatten();
        let first = iter.next().unwrap_or_else(&init);
        Ok(iter.fold(first, merge))
    }
}
