//! Real quadratic surds `a + b*sqrt(n)`: the exact form of every bound
//! constant used by the obstructions and searches, such as `4*sqrt(3)/5`,
//! `(sqrt(41) - 1)/4` or `sqrt(32/17)`.

use alloc::format;
use alloc::string::String;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::interval::{certify_sign, rat_to_f64, sqrt_bounds, RatInterval};
use super::poly::IntPoly;
use crate::{Error, Result};

/// `a + b * sqrt(n)` with `n` a positive non-square integer, or a rational
/// (`b = 0`, `n = 1`).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Surd {
    a: BigRational,
    b: BigRational,
    n: BigInt,
}

impl Surd {
    pub fn new(a: BigRational, b: BigRational, n: BigInt) -> Result<Self> {
        if n.is_negative() {
            return Err(Error::invalid(format!("sqrt of negative integer {n}")));
        }
        let (sq, rest) = split_square(&n);
        let b = b * BigRational::from_integer(sq);
        if rest.is_one() || b.is_zero() || rest.is_zero() {
            let extra = if rest.is_zero() { BigRational::zero() } else { b };
            return Ok(Surd::rational(a + extra));
        }
        Ok(Surd { a, b, n: rest })
    }

    pub fn rational(q: BigRational) -> Self {
        Surd {
            a: q,
            b: BigRational::zero(),
            n: BigInt::one(),
        }
    }

    /// `sqrt(q)` for rational `q >= 0`.
    pub fn sqrt_of(q: &BigRational) -> Result<Self> {
        if q.is_negative() {
            return Err(Error::invalid(format!("sqrt of negative rational {q}")));
        }
        // sqrt(p/d) = sqrt(p d) / d
        let n = q.numer() * q.denom();
        let b = BigRational::new(BigInt::one(), q.denom().clone());
        Surd::new(BigRational::zero(), b, n)
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn surd_coeff(&self) -> &BigRational {
        &self.b
    }

    pub fn radicand(&self) -> &BigInt {
        &self.n
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        self.b.is_zero().then_some(&self.a)
    }

    pub fn enclose(&self, bits: u32) -> RatInterval {
        if self.b.is_zero() {
            return RatInterval::point(self.a.clone());
        }
        // |b| sqrt(n) with error below 2^-bits
        let extra = self.b.abs().ceil().to_integer().bits() as u32 + 1;
        let (lo, hi) = sqrt_bounds(&BigRational::from_integer(self.n.clone()), bits + extra);
        let iv = RatInterval::new_unchecked(lo, hi).mul_rat(&self.b);
        iv.add_rat(&self.a)
    }

    pub fn to_f64(&self) -> f64 {
        rat_to_f64(&self.a) + rat_to_f64(&self.b) * libm::sqrt(rat_to_f64(&BigRational::from_integer(self.n.clone())))
    }

    /// Exact comparison with a rational.
    pub fn cmp_rational(&self, q: &BigRational) -> Ordering {
        let diff = &self.a - q;
        if self.b.is_zero() {
            return diff.cmp(&BigRational::zero());
        }
        let s1 = diff.cmp(&BigRational::zero());
        let s2 = self.b.cmp(&BigRational::zero());
        use Ordering::*;
        match (s1, s2) {
            (Greater | Equal, Greater) => Greater,
            (Less | Equal, Less) => Less,
            (Greater, Less) => (&diff * &diff).cmp(&(&self.b * &self.b * BigRational::from_integer(self.n.clone()))),
            (Less, Greater) => (&self.b * &self.b * BigRational::from_integer(self.n.clone())).cmp(&(&diff * &diff)),
            (_, Equal) => unreachable!("b is nonzero"),
        }
    }

    /// Whether `p(self) = 0` exactly.
    pub fn is_root_of(&self, p: &IntPoly) -> bool {
        // Horner in Q(sqrt n): (u + v r)(a + b r) = (u a + v b n) + (u b + v a) r
        let n = BigRational::from_integer(self.n.clone());
        let mut u = BigRational::zero();
        let mut v = BigRational::zero();
        for c in p.coeffs().iter().rev() {
            let nu = &u * &self.a + &v * &self.b * &n + BigRational::from_integer(c.clone());
            let nv = &u * &self.b + &v * &self.a;
            u = nu;
            v = nv;
        }
        u.is_zero() && v.is_zero()
    }

    pub fn square(&self) -> Surd {
        // (a + b r)^2 = a^2 + b^2 n + 2ab r
        let n = BigRational::from_integer(self.n.clone());
        let a = &self.a * &self.a + &self.b * &self.b * n;
        let b = BigRational::from_integer(BigInt::from(2)) * &self.a * &self.b;
        Surd::new(a, b, self.n.clone()).expect("radicand stays valid")
    }

    pub fn neg(&self) -> Surd {
        Surd {
            a: -&self.a,
            b: -&self.b,
            n: self.n.clone(),
        }
    }

    pub fn add_rat(&self, q: &BigRational) -> Surd {
        Surd {
            a: &self.a + q,
            b: self.b.clone(),
            n: self.n.clone(),
        }
    }

    pub fn mul_rat(&self, q: &BigRational) -> Surd {
        if q.is_zero() {
            return Surd::rational(BigRational::zero());
        }
        Surd {
            a: &self.a * q,
            b: &self.b * q,
            n: self.n.clone(),
        }
    }

    /// `p(self)`, evaluated exactly in `Q(sqrt n)`.
    pub fn eval_poly(&self, p: &IntPoly) -> Surd {
        let n = BigRational::from_integer(self.n.clone());
        let mut u = BigRational::zero();
        let mut v = BigRational::zero();
        for c in p.coeffs().iter().rev() {
            let nu = &u * &self.a + &v * &self.b * &n + BigRational::from_integer(c.clone());
            let nv = &u * &self.b + &v * &self.a;
            u = nu;
            v = nv;
        }
        Surd::new(u, v, self.n.clone()).expect("radicand stays valid")
    }

    /// Comparison of two surds: exact over a common radicand, by certified
    /// refinement otherwise.
    pub fn cmp_surd(&self, other: &Surd) -> Result<Ordering> {
        if other.b.is_zero() {
            return Ok(self.cmp_rational(&other.a));
        }
        if self.b.is_zero() {
            return Ok(other.cmp_rational(&self.a).reverse());
        }
        if self.n == other.n {
            let diff = Surd {
                a: &self.a - &other.a,
                b: &self.b - &other.b,
                n: self.n.clone(),
            };
            return Ok(diff.cmp_rational(&BigRational::zero()));
        }
        certify_sign("difference of surds", |bits| Some(self.enclose(bits).sub(&other.enclose(bits))))
    }

    pub fn floor(&self) -> BigInt {
        let iv = self.enclose(8);
        let mut f = iv.lo().floor().to_integer();
        // the true floor lies in [floor(lo), floor(hi)]
        while self.cmp_rational(&BigRational::from_integer(&f + 1)) != Ordering::Less {
            f += 1;
        }
        f
    }

    pub fn ceil(&self) -> BigInt {
        -self.neg().floor()
    }

    /// Compact textual form, e.g. `4*sqrt(3)/5` or `-1/4 + sqrt(41)/4`.
    pub fn describe(&self) -> String {
        format!("{self}")
    }
}

/// `n = s^2 * rest`; square factors below 10^5 are removed and perfect
/// squares are always detected.
fn split_square(n: &BigInt) -> (BigInt, BigInt) {
    if n.is_zero() {
        return (BigInt::zero(), BigInt::zero());
    }
    let r = n.sqrt();
    if &r * &r == *n {
        return (r, BigInt::one());
    }
    let mut s = BigInt::one();
    let mut rest = n.clone();
    let mut d = BigInt::from(2);
    let limit = BigInt::from(100_000);
    while &d * &d <= rest && d < limit {
        let dd = &d * &d;
        while (&rest % &dd).is_zero() {
            rest /= &dd;
            s *= &d;
        }
        d += 1;
    }
    let r = rest.sqrt();
    if &r * &r == rest {
        s *= r;
        rest = BigInt::one();
    }
    (s, rest)
}

impl fmt::Debug for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Surd({self})")
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let coeff = |f: &mut fmt::Formatter<'_>, b: &BigRational| -> fmt::Result {
            let n = b.numer().abs();
            if !n.is_one() {
                write!(f, "{n}*")?;
            }
            write!(f, "sqrt({})", self.n)?;
            if !b.denom().is_one() {
                write!(f, "/{}", b.denom())?;
            }
            Ok(())
        };
        if self.a.is_zero() {
            if self.b.is_negative() {
                f.write_str("-")?;
            }
            return coeff(f, &self.b);
        }
        write!(f, "{}", self.a)?;
        f.write_str(if self.b.is_negative() { " - " } else { " + " })?;
        coeff(f, &self.b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algnum::interval::{int, rat};

    #[test]
    fn normalization_and_display() {
        let s = Surd::sqrt_of(&rat(48, 25)).unwrap();
        assert_eq!(alloc::format!("{s}"), "4*sqrt(3)/5");
        let t = Surd::sqrt_of(&rat(16, 9)).unwrap();
        assert_eq!(t.as_rational(), Some(&rat(4, 3)));
        let u = Surd::new(rat(-1, 4), rat(1, 4), BigInt::from(41)).unwrap();
        assert_eq!(alloc::format!("{u}"), "-1/4 + sqrt(41)/4");
    }

    #[test]
    fn exact_rational_comparisons() {
        let s = Surd::sqrt_of(&rat(32, 17)).unwrap();
        assert_eq!(s.cmp_rational(&rat(137198, 100000)), Ordering::Greater);
        assert_eq!(s.cmp_rational(&rat(137199, 100000)), Ordering::Less);
        let u = Surd::new(rat(-1, 4), rat(1, 4), BigInt::from(41)).unwrap();
        assert_eq!(u.cmp_rational(&rat(13507, 10000)), Ordering::Greater);
        assert_eq!(u.cmp_rational(&rat(13508, 10000)), Ordering::Less);
        let v = Surd::new(int(3), rat(-1, 1), BigInt::from(2)).unwrap();
        assert_eq!(v.cmp_rational(&rat(158, 100)), Ordering::Greater);
        assert_eq!(v.cmp_rational(&rat(159, 100)), Ordering::Less);
    }

    #[test]
    fn enclosure_contains_value() {
        let s = Surd::sqrt_of(&rat(48, 25)).unwrap();
        let iv = s.enclose(60);
        let (lo, hi) = iv.to_f64();
        assert!(lo <= 1.3856406460551018 && 1.3856406460551018 <= hi);
        assert!(iv.width() < crate::algnum::interval::pow2_neg(59));
    }

    #[test]
    fn floor_ceil_and_evaluation() {
        let s = Surd::sqrt_of(&rat(48, 25)).unwrap();
        assert_eq!(s.floor(), BigInt::from(1));
        assert_eq!(s.ceil(), BigInt::from(2));
        assert_eq!(s.neg().floor(), BigInt::from(-2));
        let two = Surd::rational(int(2));
        assert_eq!(two.floor(), BigInt::from(2));
        assert_eq!(two.ceil(), BigInt::from(2));
        // a d - d^2 at d = 4 sqrt(3)/5, a = 5: 4 sqrt(3) - 48/25
        let q = IntPoly::from_high_first(&[-1, 5, 0]);
        let v = s.eval_poly(&q);
        assert_eq!(v, Surd::new(rat(-48, 25), int(4), BigInt::from(3)).unwrap());
        assert_eq!(v.floor(), BigInt::from(5));
        let t = Surd::sqrt_of(&rat(32, 17)).unwrap();
        assert_eq!(t.cmp_surd(&s).unwrap(), Ordering::Less);
        assert_eq!(t.cmp_surd(&Surd::sqrt_of(&rat(2, 1)).unwrap()).unwrap(), Ordering::Less);
    }

    #[test]
    fn root_membership() {
        // (5 - sqrt 5)/2 is a root of x^2 - 5x + 5
        let d = Surd::new(rat(5, 2), rat(-1, 2), BigInt::from(5)).unwrap();
        assert!(d.is_root_of(&IntPoly::from_high_first(&[1, -5, 5])));
        assert!(!d.is_root_of(&IntPoly::from_high_first(&[1, -5, 4])));
    }
}
