//! d-numbers, powers of algebraic integers, integer divisors and conjugate
//! statistics.

use alloc::format;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::algebraic::AlgebraicNumber;
use super::factor::factor_over_integers;
use super::intfactor::{prime_factors, valuation};
use super::matrix::{resultant_over_poly, IntMatrix};
use super::poly::IntPoly;
use super::sturm::isolate_real_roots;
use crate::{Error, Result};

fn check_monic_unit_free(p: &IntPoly, what: &str) -> Result<()> {
    if p.is_zero() || !p.is_monic() {
        return Err(Error::invalid(format!("{what} needs a monic polynomial, got {p}")));
    }
    if p.coeff(0).is_zero() {
        return Err(Error::invalid(format!("{what} needs a nonzero constant term, got {p}")));
    }
    Ok(())
}

/// Whether every ratio of two roots of `p` is an algebraic integer; for an
/// irreducible `p` this says its roots are d-numbers.
///
/// Degrees 2 and 3 use the coefficient criteria `b | a^2` and
/// `c | a^3, c^2 | b^3` for `x^2 - a x + b` and `x^3 - a x^2 + b x - c`.
/// Higher degrees go through [`ratio_integrality_oracle`] on the
/// squarefree part.
pub fn is_d_number(p: &IntPoly) -> Result<bool> {
    check_monic_unit_free(p, "d-number test")?;
    match p.degree() {
        1 => Ok(true),
        2 => {
            let (a, b) = (p.coeff(1), p.coeff(0));
            Ok((&a * &a).is_multiple_of(&b))
        }
        3 => {
            let (a, b, c) = (p.coeff(2), p.coeff(1), p.coeff(0));
            Ok(a.pow(3).is_multiple_of(&c) && b.pow(3).is_multiple_of(&(&c * &c)))
        }
        _ => ratio_integrality_oracle(&p.squarefree_part().primitive_part()),
    }
}

/// Ground-truth d-number test. Builds `S(x) = Res_y(p(y), p(x y))`, whose
/// roots are the ratios of roots of `p`, and checks that its primitive part
/// is monic. By Gauss's lemma that is the same as every irreducible factor
/// of the primitive part being monic, i.e. every ratio being integral.
pub fn ratio_integrality_oracle(p: &IntPoly) -> Result<bool> {
    check_monic_unit_free(p, "ratio integrality oracle")?;
    if !p.is_squarefree() {
        return Err(Error::invalid(format!("ratio integrality oracle needs a squarefree polynomial, got {p}")));
    }
    if p.degree() == 1 {
        return Ok(true);
    }
    let a: Vec<IntPoly> = p.coeffs().iter().map(|c| IntPoly::constant(c.clone())).collect();
    // p(x y) as a polynomial in y: coefficient of y^k is c_k x^k.
    let b: Vec<IntPoly> = p
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, c)| IntPoly::monomial(k).scale(c))
        .collect();
    let s = resultant_over_poly(&a, &b);
    Ok(s.primitive_part().is_monic())
}

/// Monic polynomial whose roots are the `m`-th powers of the conjugates of
/// `a`, as the characteristic polynomial of the `m`-th power of the
/// companion matrix.
pub fn power_char_poly(a: &AlgebraicNumber, m: u32) -> Result<IntPoly> {
    if m == 0 {
        return Err(Error::invalid("power must be at least 1"));
    }
    if m == 1 {
        return Ok(a.minpoly().clone());
    }
    Ok(IntMatrix::companion(a.minpoly()).pow(m).charpoly())
}

/// Largest positive `M` with `M^i | c_i` for `p = x^n + c_1 x^(n-1) + ... + c_n`.
pub fn largest_integer_divisor(p: &IntPoly) -> Result<BigInt> {
    if p.is_zero() || !p.is_monic() {
        return Err(Error::invalid(format!("largest integer divisor needs a monic polynomial, got {p}")));
    }
    let n = p.degree();
    if n == 0 {
        return Err(Error::invalid("largest integer divisor of a constant"));
    }
    // c_i is the coefficient of x^(n-i).
    let cs: Vec<(u32, BigInt)> = (1..=n)
        .map(|i| (i as u32, p.coeff(n - i)))
        .filter(|(_, c)| !c.is_zero())
        .collect();
    if cs.is_empty() {
        // x^n: every integer divides 0
        return Err(Error::invalid("largest integer divisor of x^n is unbounded"));
    }
    let g = cs.iter().fold(BigInt::zero(), |g, (_, c)| g.gcd(c));
    let mut m = BigInt::one();
    for (q, _) in prime_factors(&g) {
        let e = cs.iter().map(|(i, c)| valuation(c, &q) / i).min().unwrap_or(0);
        m *= q.pow(e);
    }
    Ok(m)
}

/// Smallest and largest root and the exact mean of the roots of a totally
/// real monic polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugateStats {
    pub min: AlgebraicNumber,
    pub max: AlgebraicNumber,
    pub mean: BigRational,
}

pub fn conjugate_stats(p: &IntPoly) -> Result<ConjugateStats> {
    if p.is_zero() || !p.is_monic() || p.degree() == 0 {
        return Err(Error::invalid(format!("conjugate statistics need a monic nonconstant polynomial, got {p}")));
    }
    if !isolate_real_roots(p)?.totally_real {
        return Err(Error::invalid(format!("{p} is not totally real")));
    }
    let mut roots = Vec::new();
    for (f, _) in factor_over_integers(p)? {
        roots.extend(AlgebraicNumber::real_roots_unchecked(&f));
    }
    roots.sort_by(|x, y| x.cmp_algebraic(y));
    let n = p.degree();
    let mean = BigRational::new(-p.coeff(n - 1), BigInt::from(n));
    let min = roots.first().expect("nonconstant").clone();
    let max = roots.last().expect("nonconstant").clone();
    debug_assert!(min.cmp_algebraic(&max) != Ordering::Greater);
    Ok(ConjugateStats { min, max, mean })
}
