//! Exact arbitrary-precision arithmetic and linear algebra.
//!
//! Everything in this crate computes over `BigInt` and reduced `Rational`
//! values; there is no floating point anywhere. The matrix routines follow
//! two conventions fixed once and for all so that results are reproducible:
//!
//! - nullspace bases come from the reduced row echelon form with one basis
//!   vector per free column, free columns taken in ascending order;
//! - determinants and ranks use fraction-free (Bareiss) elimination on a
//!   denominator-cleared integer copy, which keeps intermediate entries at
//!   single-minor size.

mod hnf;
mod matrix;

pub use hnf::{hnf, HnfAccumulator};
pub use matrix::RatMatrix;

pub use num_bigint::BigInt;

/// Reduced rational number: `num_rational` keeps the denominator positive
/// and the fraction in lowest terms after every operation.
pub type Rational = num_rational::BigRational;

use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// Shorthand for an integral `Rational`.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for the fraction `n/d`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Scale a nonzero rational vector to the unique proportional integer vector
/// with coprime entries and positive first nonzero entry.
pub fn normalize_primitive(v: &[Rational]) -> Result<Vec<BigInt>> {
    if v.iter().all(Zero::is_zero) {
        return Err(Error::ZeroVector);
    }
    let mut denom_lcm = BigInt::from(1);
    for x in v {
        denom_lcm = denom_lcm.lcm(x.denom());
    }
    let mut out: Vec<BigInt> = v
        .iter()
        .map(|x| x.numer() * (&denom_lcm / x.denom()))
        .collect();
    let mut g = BigInt::zero();
    for x in &out {
        g = g.gcd(x);
    }
    let flip = out.iter().find(|x| !x.is_zero()).unwrap().is_negative();
    for x in out.iter_mut() {
        *x = &*x / &g;
        if flip {
            *x = -&*x;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rv(xs: &[(i64, i64)]) -> Vec<Rational> {
        xs.iter().map(|&(n, d)| rat(n, d)).collect()
    }

    fn iv(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn primitive_clears_denominators_and_fixes_sign() {
        assert_eq!(
            normalize_primitive(&rv(&[(1, 2), (-3, 2)])).unwrap(),
            iv(&[1, -3])
        );
    }

    #[test]
    fn primitive_matches_printed_configuration_vector() {
        assert_eq!(
            normalize_primitive(&rv(&[(-4688, 1), (-4293, 1), (37, 1)])).unwrap(),
            iv(&[4688, 4293, -37])
        );
    }

    #[test]
    fn primitive_skips_leading_zero_for_sign_rule() {
        assert_eq!(
            normalize_primitive(&rv(&[(0, 1), (2, 3), (4, 3)])).unwrap(),
            iv(&[0, 1, 2])
        );
    }

    #[test]
    fn primitive_rejects_zero_vector() {
        assert!(matches!(
            normalize_primitive(&rv(&[(0, 1), (0, 5)])),
            Err(Error::ZeroVector)
        ));
    }

    proptest! {
        // scale invariance: c*v and v normalize identically for c > 0, and
        // the sign rule absorbs negation entirely
        #[test]
        fn primitive_scale_invariance(
            v in proptest::collection::vec((-50i64..50, 1i64..20), 1..6),
            c_num in 1i64..40, c_den in 1i64..40,
        ) {
            let v: Vec<Rational> = v.iter().map(|&(n, d)| rat(n, d)).collect();
            prop_assume!(v.iter().any(|x| !x.is_zero()));
            let c = rat(c_num, c_den);
            let scaled: Vec<Rational> = v.iter().map(|x| x * &c).collect();
            let base = normalize_primitive(&v).unwrap();
            prop_assert_eq!(&normalize_primitive(&scaled).unwrap(), &base);
            let negated: Vec<Rational> = v.iter().map(|x| -x).collect();
            prop_assert_eq!(&normalize_primitive(&negated).unwrap(), &base);
        }

        // idempotence: normalizing an already-primitive vector is the identity
        #[test]
        fn primitive_idempotent(v in proptest::collection::vec(-50i64..50, 1..6)) {
            prop_assume!(v.iter().any(|&x| x != 0));
            let v: Vec<Rational> = v.iter().map(|&x| rat_int(x)).collect();
            let once = normalize_primitive(&v).unwrap();
            let again: Vec<Rational> =
                once.iter().map(|x| Rational::from_integer(x.clone())).collect();
            prop_assert_eq!(normalize_primitive(&again).unwrap(), once);
        }
    }
}
