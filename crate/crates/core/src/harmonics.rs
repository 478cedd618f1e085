//! Gegenbauer polynomials and zonal restrictions.
//!
//! A degree-s zonal spherical harmonic with axis u, evaluated at a point x,
//! depends only on the inner product t = <x, u> once the norms of x and u are
//! fixed: up to a positive scalar it equals
//! `(r m)^(s/2) C_s^(n/2-1)(t / sqrt(r m))` with `r = <x,x>` and `m = <u,u>`.
//! For even s the substitution clears the square root, leaving an even
//! polynomial in t with rational coefficients; we return its primitive
//! integer form (coprime coefficients, positive leading coefficient). Any
//! positive multiple spans the same design equations, so the primitive form
//! is just a canonical representative.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::Rational;

/// Gegenbauer polynomial `C_d^lambda` with exact rational coefficients,
/// stored by ascending power of the variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GegenbauerPoly {
    degree: usize,
    lambda: Rational,
    coeffs: Vec<Rational>,
}

impl GegenbauerPoly {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn lambda(&self) -> &Rational {
        &self.lambda
    }

    /// Coefficient of `u^i`; zero whenever `i` and the degree have
    /// opposite parity.
    pub fn coeff(&self, i: usize) -> &Rational {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn eval(&self, u: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * u + c;
        }
        acc
    }
}

/// `C_d^lambda` by the standard three-term recurrence
/// `d C_d = 2(d + lambda - 1) u C_{d-1} - (d + 2 lambda - 2) C_{d-2}`.
pub fn gegenbauer(degree: usize, lambda: &Rational) -> Result<GegenbauerPoly> {
    if !lambda.is_positive() {
        return Err(Error::NonPositiveLambda);
    }
    let mut prev = vec![Rational::one()]; // C_0
    if degree == 0 {
        return Ok(GegenbauerPoly { degree, lambda: lambda.clone(), coeffs: prev });
    }
    let two = Rational::from_integer(BigInt::from(2));
    let mut cur = vec![Rational::zero(), &two * lambda]; // C_1 = 2 lambda u
    for d in 2..=degree {
        let d_rat = Rational::from_integer(BigInt::from(d as i64));
        let a = (&d_rat + lambda - Rational::one()) * &two / &d_rat;
        let b = (&d_rat + lambda * &two - &two) / &d_rat;
        let mut next = vec![Rational::zero(); d + 1];
        for (i, c) in cur.iter().enumerate() {
            if !c.is_zero() {
                next[i + 1] = &next[i + 1] + &(&a * c);
            }
        }
        for (i, c) in prev.iter().enumerate() {
            if !c.is_zero() {
                next[i] = &next[i] - &(&b * c);
            }
        }
        prev = cur;
        cur = next;
    }
    Ok(GegenbauerPoly { degree, lambda: lambda.clone(), coeffs: cur })
}

/// Even integer polynomial `Q_s(t)` recording a degree-s zonal harmonic
/// restricted to inner products against a fixed axis vector.
///
/// `dim` is the ambient dimension, `shell_norm` the norm of the points the
/// polynomial will be summed over, `axis_norm` the norm of the axis vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZonalPolynomial {
    dim: u32,
    degree: usize,
    shell_norm: BigInt,
    axis_norm: BigInt,
    coeffs: Vec<BigInt>,
}

impl ZonalPolynomial {
    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn shell_norm(&self) -> &BigInt {
        &self.shell_norm
    }

    pub fn axis_norm(&self) -> &BigInt {
        &self.axis_norm
    }

    /// Coefficients by ascending power of t; odd entries are zero.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Exact evaluation at an integer inner product; even in t.
    pub fn eval(&self, t: &BigInt) -> BigInt {
        let t2 = t * t;
        let mut acc = BigInt::zero();
        // only even powers are populated, so run Horner in t^2
        for c in self.coeffs.iter().rev().step_by(2) {
            acc = acc * &t2 + c;
        }
        acc
    }
}

/// Build `Q_s(t)`: substitute `u = t / sqrt(r m)` into `C_s^(n/2-1)`, clear
/// the factor `(r m)^(s/2)`, and take the primitive integer form.
pub fn zonal_poly(
    dim: u32,
    degree: usize,
    shell_norm: &BigInt,
    axis_norm: &BigInt,
) -> Result<ZonalPolynomial> {
    if degree % 2 != 0 {
        return Err(Error::OddZonalDegree(degree));
    }
    if !shell_norm.is_positive() || !axis_norm.is_positive() {
        return Err(Error::NonPositiveZonalNorm);
    }
    let lambda = Rational::new(BigInt::from(dim) - BigInt::from(2), BigInt::from(2));
    let geg = gegenbauer(degree, &lambda)?;
    let rm = shell_norm * axis_norm;
    // c_k u^k  ->  c_k (r m)^((s-k)/2) t^k, nonzero only for k even
    let mut rational: Vec<Rational> = Vec::with_capacity(degree + 1);
    let mut rm_power = Rational::from_integer(BigInt::one());
    let rm_rat = Rational::from_integer(rm);
    for k in (0..=degree).rev() {
        rational.push(geg.coeff(k) * &rm_power);
        if k % 2 == 0 && k > 0 {
            rm_power = &rm_power * &rm_rat;
        }
    }
    rational.reverse();
    // primitive integer form, descending-degree entries first for the sign
    let mut denom_lcm = BigInt::one();
    for c in &rational {
        denom_lcm = denom_lcm.lcm(c.denom());
    }
    let mut ints: Vec<BigInt> = rational
        .iter()
        .map(|c| c.numer() * (&denom_lcm / c.denom()))
        .collect();
    let mut g = BigInt::zero();
    for c in &ints {
        g = g.gcd(c);
    }
    let lead_negative = ints.iter().rev().find(|c| !c.is_zero()).unwrap().is_negative();
    for c in ints.iter_mut() {
        *c = &*c / &g;
        if lead_negative {
            *c = -&*c;
        }
    }
    Ok(ZonalPolynomial {
        dim,
        degree,
        shell_norm: shell_norm.clone(),
        axis_norm: axis_norm.clone(),
        coeffs: ints,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_int};
    use proptest::prelude::*;

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn zonal(dim: u32, degree: usize, r: i64, m: i64) -> ZonalPolynomial {
        zonal_poly(dim, degree, &big(r), &big(m)).unwrap()
    }

    #[test]
    fn gegenbauer_base_cases() {
        let lam = rat_int(19);
        assert_eq!(gegenbauer(0, &lam).unwrap().coeffs(), &[rat_int(1)]);
        assert_eq!(gegenbauer(1, &lam).unwrap().coeffs(), &[rat_int(0), rat_int(38)]);
    }

    #[test]
    fn gegenbauer_degree_two() {
        // C_2 = 2 lambda (lambda + 1) u^2 - lambda
        let g = gegenbauer(2, &rat_int(19)).unwrap();
        assert_eq!(g.coeffs(), &[rat_int(-19), rat_int(0), rat_int(760)]);
    }

    #[test]
    fn gegenbauer_closed_forms_low_degree() {
        for lam in [rat_int(3), rat_int(19), rat(7, 2), rat(39, 1)] {
            let c2 = gegenbauer(2, &lam).unwrap();
            let two_ll1 = rat_int(2) * &lam * (&lam + rat_int(1));
            assert_eq!(c2.coeffs(), &[-lam.clone(), rat_int(0), two_ll1.clone()]);
            let c3 = gegenbauer(3, &lam).unwrap();
            let lead = rat(4, 3) * &lam * (&lam + rat_int(1)) * (&lam + rat_int(2));
            assert_eq!(
                c3.coeffs(),
                &[rat_int(0), -(rat_int(2) * &lam * (&lam + rat_int(1))), rat_int(0), lead]
            );
        }
    }

    #[test]
    fn gegenbauer_rejects_nonpositive_lambda() {
        assert!(matches!(gegenbauer(2, &rat_int(0)), Err(Error::NonPositiveLambda)));
    }

    #[test]
    fn zonal_rank40_degree_two() {
        assert_eq!(zonal(40, 2, 6, 4).coeffs(), &[big(-3), big(0), big(5)]);
    }

    #[test]
    fn zonal_rank80_degree_two() {
        assert_eq!(zonal(80, 2, 10, 8).coeffs(), &[big(-1), big(0), big(1)]);
    }

    #[test]
    fn zonal_degree_zero_is_one() {
        assert_eq!(zonal(40, 0, 6, 4).coeffs(), &[big(1)]);
    }

    #[test]
    fn zonal_rank40_degree_six() {
        // independent expansion of (24)^3 C_6^19(t/sqrt(24)), primitive part
        assert_eq!(
            zonal(40, 6, 6, 4).coeffs(),
            &[big(-1080), big(0), big(5940), big(0), big(-3795), big(0), big(506)]
        );
    }

    #[test]
    fn zonal_rejects_odd_degree() {
        assert!(matches!(
            zonal_poly(40, 3, &big(6), &big(4)),
            Err(Error::OddZonalDegree(3))
        ));
    }

    #[test]
    fn zonal_eval_examples() {
        let q = zonal(40, 2, 6, 4); // 5 t^2 - 3
        assert_eq!(q.eval(&big(0)), big(-3));
        assert_eq!(q.eval(&big(3)), big(42));
        let r = zonal(80, 2, 10, 8); // t^2 - 1
        assert_eq!(r.eval(&big(1)), big(0));
        assert_eq!(r.eval(&big(-1)), big(0));
    }

    proptest! {
        // parity: C_d(-u) = (-1)^d C_d(u), coefficient-wise
        #[test]
        fn gegenbauer_parity(d in 0usize..9, lam_num in 1i64..30, lam_den in 1i64..4) {
            let g = gegenbauer(d, &rat(lam_num, lam_den)).unwrap();
            for (i, c) in g.coeffs().iter().enumerate() {
                if i % 2 != d % 2 {
                    prop_assert!(c.is_zero(), "C_{}^({}/{}) has mixed parity", d, lam_num, lam_den);
                }
            }
            prop_assert!(!g.coeffs().last().unwrap().is_zero(), "degree dropped");
        }

        // degree-2 moment identity: Q_2 is proportional to n t^2 - r m
        #[test]
        fn zonal_degree_two_moment_identity(
            n in 3u32..130, r in 1i64..40, m in 1i64..40,
        ) {
            let q = zonal_poly(n, 2, &big(r), &big(m)).unwrap();
            let raw = [big(-r * m), big(0), BigInt::from(n)];
            let g = raw[0].gcd(&raw[2]);
            let expect: Vec<BigInt> = raw.iter().map(|c| c / &g).collect();
            prop_assert_eq!(q.coeffs(), expect.as_slice());
        }

        // primitive and even in t, and evaluation is an even function
        #[test]
        fn zonal_primitive_even(
            n in 3u32..90, s in (0usize..5).prop_map(|x| 2 * x),
            r in 1i64..30, m in 1i64..30, t in -20i64..20,
        ) {
            let q = zonal_poly(n, s, &big(r), &big(m)).unwrap();
            let mut g = BigInt::zero();
            for c in q.coeffs() {
                g = g.gcd(c);
            }
            prop_assert!(g.is_one(), "not primitive: gcd {}", g);
            for (i, c) in q.coeffs().iter().enumerate() {
                if i % 2 == 1 {
                    prop_assert!(c.is_zero());
                }
            }
            prop_assert_eq!(q.eval(&big(t)), q.eval(&big(-t)));
        }
    }
}
