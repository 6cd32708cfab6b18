//! Inequalities that a global dimension of a spherical fusion category must
//! satisfy, applied to codegree spectra as categorification obstructions.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::algnum::{
    is_d_number, largest_integer_divisor, power_char_poly, AlgebraicNumber, IntPoly, RatInterval, Surd,
};
use crate::fusionring::{formal_codegrees, CodegreeSpectrum, FusionRing};
use crate::{Error, Result};

/// Bits used for reported margins that are not exact.
const MARGIN_BITS: u32 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    Pass,
    Fail,
    /// The check does not apply (e.g. the conjugate-count bound on a
    /// rational orbit).
    Skipped,
}

impl Status {
    fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        }
    }
}

/// `rhs - lhs` of an inequality `lhs <= rhs`: nonnegative iff it holds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Margin {
    Exact(BigRational),
    Enclosure(RatInterval),
    None,
}

impl Margin {
    fn of(lhs: &Real, rhs: &Real) -> Margin {
        match (lhs.exact(), rhs.exact()) {
            (Some(a), Some(b)) => Margin::Exact(b - a),
            _ => Margin::Enclosure(rhs.enclose(MARGIN_BITS).sub(&lhs.enclose(MARGIN_BITS))),
        }
    }

    pub fn approx(&self) -> Option<f64> {
        match self {
            Margin::Exact(q) => Some(crate::algnum::rat_to_f64(q)),
            Margin::Enclosure(iv) => Some(iv.mid_f64()),
            Margin::None => None,
        }
    }
}

/// Names of the individual checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CheckKind {
    /// Smallest root of the orbit at least 4/3.
    GdimLower,
    /// Smallest root at least `sqrt((16k-16)/(8k-7))` for an orbit of `k > 1` conjugates.
    GdimConjugates,
    /// Orbit mean at least the rank.
    MeanRank,
    /// `sum 1/f_i^2 <= (1 + 1/f)/2` at one root `f` of the orbit.
    PseudoUnitary,
    /// Every orbit polynomial is a d-number polynomial.
    DNumber,
    /// Smallest codegree at least `sqrt(2r/(r+1))`.
    CodegreeLower,
}

impl CheckKind {
    pub fn name(self) -> &'static str {
        match self {
            CheckKind::GdimLower => "gdim-lower",
            CheckKind::GdimConjugates => "gdim-conjugates",
            CheckKind::MeanRank => "mean-rank",
            CheckKind::PseudoUnitary => "pseudo-unitary",
            CheckKind::DNumber => "d-number",
            CheckKind::CodegreeLower => "codegree-lower",
        }
    }
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub kind: CheckKind,
    pub status: Status,
    pub margin: Margin,
    /// Human-readable statement of what was compared.
    pub detail: String,
}

/// Real numbers appearing in the comparisons.
enum Real<'a> {
    Rat(BigRational),
    Alg(&'a AlgebraicNumber),
    Surd(Surd),
}

impl Real<'_> {
    fn exact(&self) -> Option<BigRational> {
        match self {
            Real::Rat(q) => Some(q.clone()),
            Real::Alg(a) => a.as_integer().map(BigRational::from_integer),
            Real::Surd(s) => s.as_rational().cloned(),
        }
    }

    fn enclose(&self, bits: u32) -> RatInterval {
        match self {
            Real::Rat(q) => RatInterval::point(q.clone()),
            Real::Alg(a) => a.enclose(bits),
            Real::Surd(s) => s.enclose(bits),
        }
    }
}

/// Which bound to build in [`threshold`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ThresholdKind {
    /// `4/3`, the lower bound for every global dimension other than 1.
    GdimI,
    /// `sqrt((16k-16)/(8k-7))` for a dimension with `k >= 2` conjugates.
    GdimK,
    /// `sqrt(2r/(r+1))` for codegrees of a rank-`r` category.
    CodegR,
    /// `sqrt(2F/(F+1))` for the pseudo-unitary comparison at FPdim `F`.
    PscF,
}

impl ThresholdKind {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "gdim_i" => Some(ThresholdKind::GdimI),
            "gdim_k" => Some(ThresholdKind::GdimK),
            "codeg_r" => Some(ThresholdKind::CodegR),
            "psc_F" | "psc_f" => Some(ThresholdKind::PscF),
            _ => None,
        }
    }
}

/// The bound as an exact quadratic surd. `param` is ignored for
/// [`ThresholdKind::GdimI`].
pub fn threshold(kind: ThresholdKind, param: &BigRational) -> Result<Surd> {
    let one = BigRational::one();
    let two = BigRational::from_integer(BigInt::from(2));
    match kind {
        ThresholdKind::GdimI => Ok(Surd::rational(BigRational::new(BigInt::from(4), BigInt::from(3)))),
        ThresholdKind::GdimK => {
            if !param.is_integer() || *param < two {
                return Err(Error::invalid(format!("gdim_k needs an integer k >= 2, got {param}")));
            }
            let k = param;
            let num = BigRational::from_integer(BigInt::from(16)) * k - BigRational::from_integer(BigInt::from(16));
            let den = BigRational::from_integer(BigInt::from(8)) * k - BigRational::from_integer(BigInt::from(7));
            Surd::sqrt_of(&(num / den))
        }
        ThresholdKind::CodegR => {
            if !param.is_integer() || *param < one {
                return Err(Error::invalid(format!("codeg_r needs an integer r >= 1, got {param}")));
            }
            Surd::sqrt_of(&(&two * param / (param + &one)))
        }
        ThresholdKind::PscF => {
            if *param < one {
                return Err(Error::invalid(format!("psc_F needs F >= 1, got {param}")));
            }
            Surd::sqrt_of(&(&two * param / (param + &one)))
        }
    }
}

/// `sqrt(2F/(F+1))` for an irrational FPdim `F`, as an enclosure.
pub fn psc_threshold_enclosure(fpdim: &AlgebraicNumber, bits: u32) -> Result<RatInterval> {
    if fpdim.cmp_rational(&BigRational::one()) == Ordering::Less {
        return Err(Error::invalid("psc_F needs F >= 1"));
    }
    let f = fpdim.enclose(bits + 4);
    let two = BigRational::from_integer(BigInt::from(2));
    // 2F/(F+1) = 2 - 2/(F+1) is increasing in F
    let g = |x: &BigRational| &two - &two / (x + BigRational::one());
    RatInterval::new(g(f.lo()), g(f.hi()))?
        .sqrt(bits + 4)
        .ok_or_else(|| Error::invalid("negative radicand"))
}

fn ge_check(kind: CheckKind, value: Real<'_>, bound: Real<'_>, detail: String) -> Check {
    let ord = match (&value, &bound) {
        (Real::Alg(a), Real::Rat(q)) => a.cmp_rational(q),
        (Real::Alg(a), Real::Surd(s)) => a.cmp_surd(s),
        (Real::Rat(a), Real::Rat(b)) => a.cmp(b),
        (Real::Rat(a), Real::Surd(s)) => s.cmp_rational(a).reverse(),
        _ => unreachable!("comparison shapes used by the battery"),
    };
    Check {
        kind,
        status: Status::from_bool(ord != Ordering::Less),
        margin: Margin::of(&bound, &value),
        detail,
    }
}

/// `sum 1/f_i^2 <= (1 + 1/f)/2` with the left side given exactly.
fn pseudo_check(lhs: &BigRational, f: Real<'_>) -> Check {
    let one = BigRational::one();
    let two = BigRational::from_integer(BigInt::from(2));
    let excess = &two * lhs - &one;
    // lhs <= (1 + 1/f)/2  <=>  2 lhs - 1 <= 1/f  <=>  (excess <= 0) or f <= 1/excess
    let holds = if !excess.is_positive() {
        true
    } else {
        let cap = excess.recip();
        match &f {
            Real::Alg(a) => a.cmp_rational(&cap) != Ordering::Greater,
            Real::Rat(q) => *q <= cap,
            Real::Surd(s) => s.cmp_rational(&cap) != Ordering::Greater,
        }
    };
    let margin = match f.exact() {
        Some(q) => Margin::Exact((&one + q.recip()) / &two - lhs),
        None => {
            let iv = f.enclose(MARGIN_BITS);
            let rhs = iv.recip().expect("positive codegree").add_rat(&one).mul_rat(&BigRational::new(1.into(), 2.into()));
            Margin::Enclosure(rhs.add_rat(&-lhs))
        }
    };
    let fdesc = match &f {
        Real::Alg(a) => format!("{a}"),
        Real::Rat(q) => format!("{q}"),
        Real::Surd(s) => format!("{s}"),
    };
    Check {
        kind: CheckKind::PseudoUnitary,
        status: Status::from_bool(holds),
        margin,
        detail: format!("sum 1/f_i^2 = {lhs} <= (1 + 1/f)/2 at f = {fdesc}"),
    }
}

/// `sum_i 1/f_i^2 <= (1 + 1/f)/2` for a root `f` of the spectrum, the left
/// side computed exactly from the characteristic polynomial.
pub fn pseudo_unitary_inequality(spectrum: &CodegreeSpectrum, f: &AlgebraicNumber) -> Result<Check> {
    if spectrum.orbit_of(f).is_none() {
        return Err(Error::invalid(format!("{f:?} is not a codegree of this spectrum")));
    }
    Ok(pseudo_check(&spectrum.inverse_square_sum(), Real::Alg(f)))
}

/// Same inequality for explicitly given rational codegrees (e.g. `Rep(G)`).
pub fn pseudo_unitary_rational(codegrees: &[BigRational], f: &BigRational) -> Result<Check> {
    if codegrees.iter().any(|q| !q.is_positive()) {
        return Err(Error::invalid("codegrees must be positive"));
    }
    if !codegrees.contains(f) {
        return Err(Error::invalid(format!("{f} is not among the codegrees")));
    }
    let lhs = codegrees
        .iter()
        .fold(BigRational::zero(), |acc, q| acc + (q * q).recip());
    Ok(pseudo_check(&lhs, Real::Rat(f.clone())))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitReport {
    pub index: usize,
    pub poly: IntPoly,
    pub multiplicity: usize,
    /// Whether the FP codegree lies in this orbit.
    pub contains_fpdim: bool,
    pub checks: Vec<Check>,
}

impl OrbitReport {
    pub fn survives(&self) -> bool {
        orbit_survives(&self.checks)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionReport {
    pub rank: usize,
    pub orbits: Vec<OrbitReport>,
    pub global: Vec<Check>,
}

impl ObstructionReport {
    /// Indices of orbits that pass every check.
    pub fn surviving_orbits(&self) -> Vec<usize> {
        self.orbits.iter().filter(|o| o.survives()).map(|o| o.index).collect()
    }

    /// True when no spherical fusion category can have this Grothendieck
    /// ring.
    pub fn no_spherical_categorification(&self) -> bool {
        verdict_obstructed(self.orbits.iter().map(|o| o.checks.as_slice()), &self.global)
    }
}

fn orbit_survives(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.status != Status::Fail)
}

/// The ring is obstructed iff some global check fails or no orbit survives.
pub fn verdict_obstructed<'a>(orbits: impl IntoIterator<Item = &'a [Check]>, global: &[Check]) -> bool {
    let any_orbit = orbits.into_iter().any(orbit_survives);
    !any_orbit || global.iter().any(|c| c.status == Status::Fail)
}

/// Runs every check on every orbit of the ring's codegree spectrum.
pub fn spherical_obstruction_report(ring: &FusionRing) -> Result<ObstructionReport> {
    let spectrum = formal_codegrees(ring)?;
    spectrum_obstruction_report(&spectrum)
}

/// Same as [`spherical_obstruction_report`] for a precomputed spectrum.
pub fn spectrum_obstruction_report(spectrum: &CodegreeSpectrum) -> Result<ObstructionReport> {
    let r = spectrum.rank();
    let rq = BigRational::from_integer(BigInt::from(r));
    let lhs = spectrum.inverse_square_sum();
    let four_thirds = BigRational::new(BigInt::from(4), BigInt::from(3));
    let mut orbits = Vec::new();
    for (index, o) in spectrum.orbits().iter().enumerate() {
        let mut checks = Vec::new();
        let min = o.min();
        checks.push(ge_check(
            CheckKind::GdimLower,
            Real::Alg(min),
            Real::Rat(four_thirds.clone()),
            format!("min = {min} >= 4/3"),
        ));
        let k = o.degree();
        if k > 1 {
            let t = threshold(ThresholdKind::GdimK, &BigRational::from_integer(BigInt::from(k)))?;
            let detail = format!("min = {min} >= {t} (k = {k})");
            checks.push(ge_check(CheckKind::GdimConjugates, Real::Alg(min), Real::Surd(t), detail));
        } else {
            checks.push(Check {
                kind: CheckKind::GdimConjugates,
                status: Status::Skipped,
                margin: Margin::None,
                detail: String::from("rational orbit"),
            });
        }
        let mean = o.mean();
        checks.push(ge_check(
            CheckKind::MeanRank,
            Real::Rat(mean.clone()),
            Real::Rat(rq.clone()),
            format!("mean = {mean} >= r = {r}"),
        ));
        for f in &o.roots {
            checks.push(pseudo_check(&lhs, Real::Alg(f)));
        }
        orbits.push(OrbitReport {
            index,
            poly: o.poly.clone(),
            multiplicity: o.multiplicity,
            contains_fpdim: spectrum.fp_position().0 == index,
            checks,
        });
    }
    let mut global = Vec::new();
    let mut bad = Vec::new();
    for o in spectrum.orbits() {
        if !is_d_number(&o.poly)? {
            bad.push(format!("{}", o.poly));
        }
    }
    global.push(Check {
        kind: CheckKind::DNumber,
        status: Status::from_bool(bad.is_empty()),
        margin: Margin::None,
        detail: if bad.is_empty() {
            String::from("every orbit polynomial is a d-number polynomial")
        } else {
            format!("not d-number polynomials: {}", bad.join(", "))
        },
    });
    let t = threshold(ThresholdKind::CodegR, &rq)?;
    let min = spectrum.min_codegree();
    let detail = format!("min codegree = {min} >= {t}");
    global.push(ge_check(CheckKind::CodegreeLower, Real::Alg(min), Real::Surd(t), detail));
    Ok(ObstructionReport { rank: r, orbits, global })
}

/// Upper bound on FPdim of any fusion category of global dimension `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FfibBound {
    pub largest_conjugate: AlgebraicNumber,
    /// `floor` of the largest conjugate, the power taken.
    pub power: u32,
    /// Characteristic polynomial of `d^power`.
    pub power_poly: IntPoly,
    pub bound: BigInt,
}

/// `M` = largest integer dividing `d^floor(f)`, `f` the largest conjugate
/// of `d`.
pub fn ffib_fpdim_bound(d: &AlgebraicNumber) -> Result<FfibBound> {
    if !d.is_totally_positive() {
        return Err(Error::invalid(format!("{d:?} is not totally positive")));
    }
    let f = d.largest_conjugate();
    let floor = algebraic_floor(&f);
    let power: u32 = u32::try_from(&floor).map_err(|_| Error::invalid("largest conjugate too large"))?;
    if power == 0 {
        return Err(Error::invalid("largest conjugate below 1"));
    }
    let power_poly = power_char_poly(d, power)?;
    let bound = largest_integer_divisor(&power_poly)?;
    Ok(FfibBound {
        largest_conjugate: f,
        power,
        power_poly,
        bound,
    })
}

/// Exact floor of a real algebraic number (an irrational root never
/// coincides with an integer, so the comparison always terminates).
pub fn algebraic_floor(a: &AlgebraicNumber) -> BigInt {
    if let Some(n) = a.as_integer() {
        return n;
    }
    let iv = a.enclose(8);
    let mut n = iv.lo().floor().to_integer();
    while a.cmp_rational(&BigRational::from_integer(&n + 1)) != Ordering::Less {
        n += 1;
    }
    while a.cmp_rational(&BigRational::from_integer(n.clone())) == Ordering::Less {
        n -= 1;
    }
    n
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algnum::rat;

    fn q(n: i64, d: i64) -> BigRational {
        rat(n, d)
    }

    #[test]
    fn pseudo_examples() {
        let s = formal_codegrees(&FusionRing::kn(1)).unwrap();
        let c = pseudo_unitary_inequality(&s, s.fp_codegree()).unwrap();
        assert_eq!(c.status, Status::Pass);
        assert!(c.detail.contains("3/5"));

        let s = formal_codegrees(&FusionRing::kn(2)).unwrap();
        assert_eq!(s.inverse_square_sum(), q(3, 4));
        let c = pseudo_unitary_inequality(&s, s.fp_codegree()).unwrap();
        assert_eq!(c.status, Status::Fail);
        match c.margin {
            Margin::Enclosure(iv) => assert!(iv.hi() < &q(-17, 100)),
            _ => panic!("irrational margin expected"),
        }

        let cods: Vec<BigRational> = [10, 5, 5, 2].iter().map(|&x| q(x, 1)).collect();
        let c = pseudo_unitary_rational(&cods, &q(10, 1)).unwrap();
        assert_eq!(c.status, Status::Pass);
        assert_eq!(c.margin, Margin::Exact(q(55, 100) - q(34, 100)));
    }

    #[test]
    fn threshold_examples() {
        let t2 = threshold(ThresholdKind::GdimK, &q(2, 1)).unwrap();
        assert_eq!(t2.as_rational(), Some(&q(4, 3)));
        let t3 = threshold(ThresholdKind::GdimK, &q(3, 1)).unwrap();
        assert!((t3.to_f64() - 1.371989).abs() < 1e-6);
        let r4 = threshold(ThresholdKind::CodegR, &q(4, 1)).unwrap();
        assert!((r4.to_f64() - 1.264911).abs() < 1e-6);
        assert!(threshold(ThresholdKind::GdimK, &q(1, 1)).is_err());
        assert!(threshold(ThresholdKind::CodegR, &q(0, 1)).is_err());
        assert!(threshold(ThresholdKind::PscF, &q(1, 2)).is_err());
        assert_eq!(threshold(ThresholdKind::PscF, &q(1, 1)).unwrap().as_rational(), Some(&q(1, 1)));
    }

    #[test]
    fn reports() {
        let rep = spherical_obstruction_report(&FusionRing::kn(2)).unwrap();
        assert!(rep.no_spherical_categorification());
        let o = &rep.orbits[0];
        assert_eq!(o.checks[0].kind, CheckKind::GdimLower);
        assert_eq!(o.checks[0].status, Status::Fail);
        assert_eq!(o.checks.last().unwrap().status, Status::Fail);

        let rep = spherical_obstruction_report(&FusionRing::kn(1)).unwrap();
        assert!(!rep.no_spherical_categorification());
        assert!(rep.orbits[0].checks.iter().all(|c| c.status == Status::Pass));

        let rep = spherical_obstruction_report(&FusionRing::cyclic(5).unwrap()).unwrap();
        assert!(!rep.no_spherical_categorification());
        let o = &rep.orbits[0];
        assert_eq!(o.checks[1].status, Status::Skipped);
        assert_eq!(o.checks[2].margin, Margin::Exact(q(0, 1)));
        assert_eq!(o.checks[3].margin, Margin::Exact(q(3, 5) - q(1, 5)));
    }

    #[test]
    fn ffib_examples() {
        let d = AlgebraicNumber::real_roots_of(&IntPoly::from_high_first(&[1, -5, 5])).unwrap();
        for root in &d {
            let b = ffib_fpdim_bound(root).unwrap();
            assert_eq!(b.power, 3);
            assert_eq!(b.power_poly, IntPoly::from_high_first(&[1, -50, 125]));
            assert_eq!(b.bound, BigInt::from(5));
        }
        let two = AlgebraicNumber::from_integer(BigInt::from(2));
        assert_eq!(ffib_fpdim_bound(&two).unwrap().bound, BigInt::from(4));
        let three = AlgebraicNumber::from_integer(BigInt::from(3));
        assert_eq!(ffib_fpdim_bound(&three).unwrap().bound, BigInt::from(27));
        let sqrt2 = AlgebraicNumber::real_roots_of(&IntPoly::from_high_first(&[1, 0, -2])).unwrap();
        assert!(ffib_fpdim_bound(&sqrt2[1]).is_err());
    }
}
