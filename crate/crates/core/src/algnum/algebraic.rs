//! Real algebraic numbers designated by a monic irreducible minimal
//! polynomial and an isolating interval.

use alloc::format;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use super::factor::is_irreducible;
use super::interval::{pow2_neg, RatInterval};
use super::poly::IntPoly;
use super::real::Surd;
use super::sturm::{bisect_once, count_roots_closed, isolate_squarefree, refine_isolating};
use crate::{Error, Result};

/// A real root of a monic irreducible integer polynomial (so always an
/// algebraic integer), designated by an interval containing exactly that
/// root.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AlgebraicNumber {
    minpoly: IntPoly,
    isol: RatInterval,
}

impl AlgebraicNumber {
    /// Validates that `minpoly` is monic and irreducible and that `isol`
    /// holds exactly one of its real roots.
    pub fn new(minpoly: IntPoly, isol: RatInterval) -> Result<Self> {
        if !minpoly.is_monic() || minpoly.degree() == 0 {
            return Err(Error::invalid(format!("minimal polynomial {minpoly} is not monic of positive degree")));
        }
        if !is_irreducible(&minpoly)? {
            return Err(Error::invalid(format!("{minpoly} is reducible over the rationals")));
        }
        if count_roots_closed(&minpoly, isol.lo(), isol.hi()) != 1 {
            return Err(Error::invalid(format!("{isol} does not isolate a single root of {minpoly}")));
        }
        Ok(Self::from_parts(minpoly, isol))
    }

    /// Caller guarantees the invariants.
    pub(crate) fn from_parts(minpoly: IntPoly, isol: RatInterval) -> Self {
        // Degree-1 roots are always stored as exact points.
        let isol = if minpoly.degree() == 1 {
            RatInterval::point(BigRational::from_integer(-minpoly.coeff(0)))
        } else {
            isol
        };
        AlgebraicNumber { minpoly, isol }
    }

    pub fn from_integer(n: BigInt) -> Self {
        let p = IntPoly::linear_root(n.clone());
        AlgebraicNumber {
            minpoly: p,
            isol: RatInterval::point(BigRational::from_integer(n)),
        }
    }

    /// All real roots of a monic irreducible polynomial, ascending.
    pub fn real_roots_of(minpoly: &IntPoly) -> Result<Vec<AlgebraicNumber>> {
        if !minpoly.is_monic() {
            return Err(Error::invalid(format!("{minpoly} is not monic")));
        }
        if !is_irreducible(minpoly)? {
            return Err(Error::invalid(format!("{minpoly} is reducible over the rationals")));
        }
        Ok(Self::real_roots_unchecked(minpoly))
    }

    /// Same as [`Self::real_roots_of`] for a polynomial already known to be
    /// monic and irreducible.
    pub(crate) fn real_roots_unchecked(minpoly: &IntPoly) -> Vec<AlgebraicNumber> {
        isolate_squarefree(minpoly)
            .into_iter()
            .map(|iv| Self::from_parts(minpoly.clone(), iv))
            .collect()
    }

    pub fn minpoly(&self) -> &IntPoly {
        &self.minpoly
    }

    pub fn isolating_interval(&self) -> &RatInterval {
        &self.isol
    }

    pub fn degree(&self) -> usize {
        self.minpoly.degree()
    }

    pub fn as_integer(&self) -> Option<BigInt> {
        (self.degree() == 1).then(|| -self.minpoly.coeff(0))
    }

    /// Sub-interval of the isolating interval of width at most `width`,
    /// still containing the root. Bisection order is fixed, so the result
    /// is deterministic.
    pub fn refine(&self, width: &BigRational) -> Result<RatInterval> {
        if !width.is_positive() {
            return Err(Error::invalid(format!("refinement width {width} must be positive")));
        }
        Ok(refine_isolating(&self.minpoly, &self.isol, width))
    }

    /// Same root with a narrower designation.
    pub fn refined(&self, width: &BigRational) -> Result<AlgebraicNumber> {
        Ok(AlgebraicNumber {
            minpoly: self.minpoly.clone(),
            isol: self.refine(width)?,
        })
    }

    /// Enclosure of width at most `2^-bits`.
    pub fn enclose(&self, bits: u32) -> RatInterval {
        refine_isolating(&self.minpoly, &self.isol, &pow2_neg(bits))
    }

    pub fn to_f64(&self) -> f64 {
        self.enclose(60).mid_f64()
    }

    pub fn cmp_rational(&self, q: &BigRational) -> Ordering {
        if let Some(n) = self.as_integer() {
            return BigRational::from_integer(n).cmp(q);
        }
        // An irrational root never equals a rational: bisect until q falls
        // outside the interval.
        let mut iv = self.isol.clone();
        loop {
            match iv.cmp_rational(q) {
                Ordering::Equal => iv = bisect_once(&self.minpoly, &iv),
                o => return o,
            }
        }
    }

    /// Exact comparison with a quadratic surd.
    pub fn cmp_surd(&self, s: &Surd) -> Ordering {
        if let Some(q) = s.as_rational() {
            return self.cmp_rational(q);
        }
        if s.is_root_of(&self.minpoly) {
            // The surd is a conjugate; it is this root iff it lies in isol.
            let above_lo = s.cmp_rational(self.isol.lo()) != Ordering::Less;
            let below_hi = s.cmp_rational(self.isol.hi()) != Ordering::Greater;
            if above_lo && below_hi {
                return Ordering::Equal;
            }
        }
        // Distinct reals: refine both sides until the enclosures separate.
        let mut bits = 16;
        loop {
            let a = self.enclose(bits);
            let b = s.enclose(bits);
            if a.hi() < b.lo() {
                return Ordering::Less;
            }
            if a.lo() > b.hi() {
                return Ordering::Greater;
            }
            bits *= 2;
        }
    }

    /// Total order on real algebraic numbers.
    pub fn cmp_algebraic(&self, other: &AlgebraicNumber) -> Ordering {
        if self.minpoly == other.minpoly {
            let lo = self.isol.lo().clone().max(other.isol.lo().clone());
            let hi = self.isol.hi().clone().min(other.isol.hi().clone());
            if lo <= hi && count_roots_closed(&self.minpoly, &lo, &hi) == 1 {
                return Ordering::Equal;
            }
        } else if let (Some(a), Some(b)) = (self.as_integer(), other.as_integer()) {
            return a.cmp(&b);
        }
        let mut bits = 16;
        loop {
            let a = self.enclose(bits);
            let b = other.enclose(bits);
            if a.hi() < b.lo() {
                return Ordering::Less;
            }
            if a.lo() > b.hi() {
                return Ordering::Greater;
            }
            bits *= 2;
        }
    }

    /// All real conjugates (roots of the minimal polynomial), ascending.
    pub fn real_conjugates(&self) -> Vec<AlgebraicNumber> {
        Self::real_roots_unchecked(&self.minpoly)
    }

    /// Whether every conjugate is real.
    pub fn is_totally_real(&self) -> bool {
        self.real_conjugates().len() == self.degree()
    }

    pub fn is_totally_positive(&self) -> bool {
        let conj = self.real_conjugates();
        conj.len() == self.degree() && conj.iter().all(|c| c.cmp_rational(&BigRational::from_integer(BigInt::from(0))) == Ordering::Greater)
    }

    /// Largest real conjugate. Panics if there is none (totally complex).
    pub fn largest_conjugate(&self) -> AlgebraicNumber {
        self.real_conjugates().pop().expect("at least one real conjugate")
    }
}

impl fmt::Debug for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "root of {} in {}", self.minpoly, self.isol)
    }
}

impl fmt::Display for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_integer() {
            Some(n) => write!(f, "{n}"),
            None => write!(f, "root of {} near {:.12}", self.minpoly, self.to_f64()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algnum::interval::{int, rat};

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_high_first(c)
    }

    #[test]
    fn refine_root_examples() {
        let roots = AlgebraicNumber::real_roots_of(&p(&[1, -5, 5])).unwrap();
        let d = &roots[0];
        let iv = d.refine(&rat(1, 1_000_000)).unwrap();
        assert!(iv.is_subset_of(&RatInterval::new(rat(1_381_965, 1_000_000), rat(1_381_967, 1_000_000)).unwrap()));
        assert!(iv.is_subset_of(d.isolating_interval()));

        let two = AlgebraicNumber::new(p(&[1, -2]), RatInterval::point(int(2))).unwrap();
        assert_eq!(two.refine(&rat(1, 10)).unwrap(), RatInterval::point(int(2)));

        let sqrt2 = AlgebraicNumber::real_roots_of(&p(&[1, 0, -2])).unwrap().pop().unwrap();
        let iv = sqrt2.refine(&rat(1, 1000)).unwrap();
        assert!(iv.width() <= rat(1, 1000));
        assert!(iv.lo() * iv.lo() <= int(2) && iv.hi() * iv.hi() >= int(2));

        assert!(d.refine(&int(0)).is_err());
        assert!(d.refine(&rat(-1, 2)).is_err());
    }

    #[test]
    fn refinement_is_deterministic() {
        let d = AlgebraicNumber::real_roots_of(&p(&[1, -14, 49, -49])).unwrap().remove(0);
        let a = d.refine(&rat(1, 1 << 20)).unwrap();
        let b = d.refine(&rat(1, 1 << 20)).unwrap();
        assert_eq!(a, b);
        assert!((d.to_f64() - 1.84117).abs() < 1e-5);
    }

    #[test]
    fn constructor_checks() {
        assert!(AlgebraicNumber::new(p(&[2, -1]), RatInterval::from_ints(0, 1)).is_err());
        assert!(AlgebraicNumber::new(p(&[1, -3, 2]), RatInterval::from_ints(0, 3)).is_err());
        assert!(AlgebraicNumber::new(p(&[1, -5, 5]), RatInterval::from_ints(0, 5)).is_err());
        assert!(AlgebraicNumber::new(p(&[1, -5, 5]), RatInterval::from_ints(1, 2)).is_ok());
    }

    #[test]
    fn comparisons() {
        let roots = AlgebraicNumber::real_roots_of(&p(&[1, -5, 5])).unwrap();
        let yl = Surd::new(rat(5, 2), rat(-1, 2), BigInt::from(5)).unwrap();
        assert_eq!(roots[0].cmp_surd(&yl), Ordering::Equal);
        assert_eq!(roots[1].cmp_surd(&yl), Ordering::Greater);
        let dplus = Surd::sqrt_of(&rat(48, 25)).unwrap();
        assert_eq!(roots[0].cmp_surd(&dplus), Ordering::Less);
        assert_eq!(roots[0].cmp_rational(&rat(4, 3)), Ordering::Greater);
        assert_eq!(roots[0].cmp_algebraic(&roots[1]), Ordering::Less);
        let again = roots[0].refined(&rat(1, 1000)).unwrap();
        assert_eq!(again.cmp_algebraic(&roots[0]), Ordering::Equal);
        let sqrt2 = AlgebraicNumber::real_roots_of(&p(&[1, 0, -2])).unwrap().pop().unwrap();
        assert_eq!(roots[0].cmp_algebraic(&sqrt2), Ordering::Less);
    }
}
