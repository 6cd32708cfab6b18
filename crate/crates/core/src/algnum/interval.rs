//! Closed intervals with exact rational endpoints and outward-rounded
//! arithmetic on them.

use alloc::format;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

/// `[lo, hi]` with `lo <= hi`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatInterval {
    lo: BigRational,
    hi: BigRational,
}

impl RatInterval {
    pub fn new(lo: BigRational, hi: BigRational) -> Result<Self> {
        if lo > hi {
            return Err(Error::invalid(format!("empty interval [{lo}, {hi}]")));
        }
        Ok(RatInterval { lo, hi })
    }

    pub(crate) fn new_unchecked(lo: BigRational, hi: BigRational) -> Self {
        debug_assert!(lo <= hi);
        RatInterval { lo, hi }
    }

    pub fn point(x: BigRational) -> Self {
        RatInterval {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn from_ints(lo: i64, hi: i64) -> Self {
        RatInterval::new_unchecked(int(lo), int(hi))
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> BigRational {
        (&self.lo + &self.hi) / int(2)
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn is_subset_of(&self, other: &RatInterval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    pub fn overlaps(&self, other: &RatInterval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// `Less` if the whole interval is below `x`, `Greater` if above, and
    /// `Equal` when `x` is inside (not decided).
    pub fn cmp_rational(&self, x: &BigRational) -> Ordering {
        if &self.hi < x {
            Ordering::Less
        } else if &self.lo > x {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    }

    /// Certified sign, or `None` when the interval straddles zero without
    /// being the point zero.
    pub fn sign(&self) -> Option<Ordering> {
        if self.lo.is_positive() {
            Some(Ordering::Greater)
        } else if self.hi.is_negative() {
            Some(Ordering::Less)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    pub fn neg(&self) -> RatInterval {
        RatInterval::new_unchecked(-&self.hi, -&self.lo)
    }

    pub fn add(&self, o: &RatInterval) -> RatInterval {
        RatInterval::new_unchecked(&self.lo + &o.lo, &self.hi + &o.hi)
    }

    pub fn sub(&self, o: &RatInterval) -> RatInterval {
        RatInterval::new_unchecked(&self.lo - &o.hi, &self.hi - &o.lo)
    }

    pub fn add_rat(&self, x: &BigRational) -> RatInterval {
        RatInterval::new_unchecked(&self.lo + x, &self.hi + x)
    }

    pub fn mul_rat(&self, x: &BigRational) -> RatInterval {
        let a = &self.lo * x;
        let b = &self.hi * x;
        if a <= b {
            RatInterval::new_unchecked(a, b)
        } else {
            RatInterval::new_unchecked(b, a)
        }
    }

    pub fn mul(&self, o: &RatInterval) -> RatInterval {
        let p = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let lo = p.iter().min().cloned().unwrap();
        let hi = p.iter().max().cloned().unwrap();
        RatInterval::new_unchecked(lo, hi)
    }

    pub fn square(&self) -> RatInterval {
        let a = &self.lo * &self.lo;
        let b = &self.hi * &self.hi;
        if self.contains_zero() {
            RatInterval::new_unchecked(BigRational::zero(), a.max(b))
        } else if a <= b {
            RatInterval::new_unchecked(a, b)
        } else {
            RatInterval::new_unchecked(b, a)
        }
    }

    /// `1/x`, or `None` when zero is enclosed.
    pub fn recip(&self) -> Option<RatInterval> {
        if self.contains_zero() {
            return None;
        }
        Some(RatInterval::new_unchecked(
            self.hi.recip(),
            self.lo.recip(),
        ))
    }

    pub fn div(&self, o: &RatInterval) -> Option<RatInterval> {
        Some(self.mul(&o.recip()?))
    }

    /// Outward enclosure of `sqrt(x)` with extra error at most `2^-bits`;
    /// `None` if the interval reaches below zero.
    pub fn sqrt(&self, bits: u32) -> Option<RatInterval> {
        if self.lo.is_negative() {
            return None;
        }
        let lo = sqrt_bounds(&self.lo, bits).0;
        let hi = sqrt_bounds(&self.hi, bits).1;
        Some(RatInterval::new_unchecked(lo, hi))
    }

    /// Smallest interval containing both.
    pub fn hull(&self, o: &RatInterval) -> RatInterval {
        RatInterval::new_unchecked(
            self.lo.clone().min(o.lo.clone()),
            self.hi.clone().max(o.hi.clone()),
        )
    }

    /// Integer floor of every point, when it is the same across the
    /// interval.
    pub fn certified_floor(&self) -> Option<BigInt> {
        let a = self.lo.floor().to_integer();
        let b = self.hi.floor().to_integer();
        (a == b).then_some(a)
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (rat_to_f64(&self.lo), rat_to_f64(&self.hi))
    }

    pub fn mid_f64(&self) -> f64 {
        rat_to_f64(&self.mid())
    }
}

impl fmt::Debug for RatInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl fmt::Display for RatInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

pub(crate) fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

#[cfg(test)]
pub(crate) fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_to_f64(x: &BigRational) -> f64 {
    if let Some(v) = x.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    // Shift both parts down to f64 range.
    let nb = x.numer().bits() as i64;
    let db = x.denom().bits() as i64;
    let shift_n = (nb - 60).max(0) as usize;
    let shift_d = (db - 60).max(0) as usize;
    let n = (x.numer() >> shift_n).to_f64().unwrap_or(0.0);
    let d = (x.denom() >> shift_d).to_f64().unwrap_or(1.0);
    let e = shift_n as i32 - shift_d as i32;
    n / d * libm::pow(2.0, e as f64)
}

/// `2^-bits` as a rational.
pub(crate) fn pow2_neg(bits: u32) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << bits as usize)
}

/// Lower and upper rational bounds on `sqrt(x)` for `x >= 0`, each within
/// `2^-bits` of the true value.
pub(crate) fn sqrt_bounds(x: &BigRational, bits: u32) -> (BigRational, BigRational) {
    debug_assert!(!x.is_negative());
    if x.is_zero() {
        return (BigRational::zero(), BigRational::zero());
    }
    // sqrt(n/d) = sqrt(n d 4^b) / (d 2^b)
    let n = x.numer();
    let d = x.denom();
    let scale = BigInt::one() << (2 * bits as usize);
    let radicand = n * d * scale;
    let r = radicand.sqrt();
    let den = d * (BigInt::one() << bits as usize);
    let lo = BigRational::new(r.clone(), den.clone());
    let hi = if &r * &r == radicand {
        lo.clone()
    } else {
        BigRational::new(r + 1, den)
    };
    (lo, hi)
}

/// Width of enclosures below which an undecided sign is reported as an
/// ambiguity: `10^-40`.
pub fn precision_cap() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(10).pow(40u32))
}

/// Decides the sign of a real quantity given an enclosure generator:
/// `enclose(bits)` must return an interval containing the quantity whose
/// width tends to zero as `bits` grows (or `None` when the inputs are still
/// too coarse, e.g. a division by an interval containing zero).
///
/// Refinement doubles `bits` until the sign is certain. If the enclosure
/// width falls below [`precision_cap`] while still straddling zero, an
/// [`Error::Ambiguity`] naming `what` is returned.
pub fn certify_sign<F>(what: &str, mut enclose: F) -> Result<Ordering>
where
    F: FnMut(u32) -> Option<RatInterval>,
{
    let cap = precision_cap();
    let mut bits = 24;
    loop {
        if let Some(iv) = enclose(bits) {
            if let Some(s) = iv.sign() {
                return Ok(s);
            }
            if iv.width() < cap {
                return Err(Error::ambiguous(format!(
                    "sign of {what} undecided at enclosure width below 1e-40"
                )));
            }
        }
        if bits >= 8192 {
            return Err(Error::ambiguous(format!(
                "sign of {what} undecided after {bits} bits of refinement"
            )));
        }
        bits *= 2;
    }
}

/// Certified floor of a real quantity given an enclosure generator, with
/// the same refinement and cap policy as [`certify_sign`].
pub fn certify_floor<F>(what: &str, mut enclose: F) -> Result<BigInt>
where
    F: FnMut(u32) -> Option<RatInterval>,
{
    let cap = precision_cap();
    let mut bits = 24;
    loop {
        if let Some(iv) = enclose(bits) {
            if let Some(f) = iv.certified_floor() {
                return Ok(f);
            }
            if iv.width() < cap {
                return Err(Error::ambiguous(format!(
                    "floor of {what} undecided: within 1e-40 of the integer {}",
                    iv.hi().floor()
                )));
            }
        }
        if bits >= 8192 {
            return Err(Error::ambiguous(format!("floor of {what} undecided")));
        }
        bits *= 2;
    }
}
