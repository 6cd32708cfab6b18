//! The inequality tying the smallest root `d` of a candidate to its largest
//! conjugate `d*`, in two equivalent-on-the-grid encodings.

use alloc::format;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use crate::algnum::{certify_sign, AlgebraicNumber, RatInterval, Surd};
use crate::{Error, Result};

/// Which encoding of the main inequality to evaluate.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum MainIneqForm {
    /// `1/d^2 <= 9/16 - (1/4 - 1/d*)^2`.
    #[default]
    Rational,
    /// `d* <= K(d)` with `K(d) = 1/(1/4 - sqrt(9/16 - 1/d^2))`.
    KBound,
}

impl MainIneqForm {
    pub fn name(self) -> &'static str {
        match self {
            MainIneqForm::Rational => "rational",
            MainIneqForm::KBound => "k-bound",
        }
    }
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Outward-rounded enclosure of `K(d)` for `d` in the interval `d`, which
/// must lie strictly inside `(4/3, sqrt 2)`. `K` is increasing there, so
/// the endpoints map to the endpoints.
pub fn k_of(d: &RatInterval, bits: u32) -> Result<RatInterval> {
    if *d.lo() <= q(4, 3) || d.hi() * d.hi() >= q(2, 1) {
        return Err(Error::invalid(format!("K(d) needs 4/3 < d < sqrt 2, got d in {d}")));
    }
    let inner = |x: &BigRational| q(9, 16) - (x * x).recip();
    let quarter = q(1, 4);
    let s = RatInterval::new(inner(d.lo()), inner(d.hi()))?
        .sqrt(bits)
        .ok_or_else(|| Error::invalid("negative radicand in K(d)"))?;
    let den = RatInterval::new(&quarter - s.hi(), &quarter - s.lo())?;
    if !den.lo().is_positive() {
        return Err(Error::Precision(format!("enclosure of d in {d} too wide for K(d)")));
    }
    den.recip().ok_or_else(|| Error::Precision("K(d) denominator straddles zero".into()))
}

/// Whether the main inequality holds for smallest root `d` and largest
/// conjugate `dstar`.
pub fn main_inequality(d: &AlgebraicNumber, dstar: &AlgebraicNumber, form: MainIneqForm) -> Result<bool> {
    match form {
        MainIneqForm::Rational => {
            let s = certify_sign("main inequality slack", |bits| {
                let di = d.enclose(bits + 8);
                let si = dstar.enclose(bits + 8);
                let inv_d2 = di.square().recip()?;
                let t = si.recip()?.neg().add_rat(&q(1, 4));
                Some(t.square().neg().add_rat(&q(9, 16)).sub(&inv_d2))
            })?;
            Ok(s != Ordering::Less)
        }
        MainIneqForm::KBound => {
            if d.cmp_rational(&q(4, 3)) != Ordering::Greater {
                return Ok(false);
            }
            let root2 = Surd::sqrt_of(&q(2, 1))?;
            if d.cmp_surd(&root2) != Ordering::Less {
                // K is unbounded from sqrt 2 on
                return Ok(true);
            }
            let s = certify_sign("K(d) - d*", |bits| {
                let k = k_of(&d.enclose(bits + 8), bits + 8).ok()?;
                Some(k.sub(&dstar.enclose(bits + 8)))
            })?;
            Ok(s != Ordering::Less)
        }
    }
}
