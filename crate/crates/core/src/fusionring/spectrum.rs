//! Exact codegree spectrum and Frobenius–Perron data.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::FusionRing;
use crate::algnum::{factor_over_integers, isolate_real_roots, AlgebraicNumber, IntPoly, RatInterval};
use crate::{Error, Result};

/// Default relative tolerance of the Perron power iteration.
pub const DEFAULT_PERRON_TOL: f64 = 1e-12;

/// One irreducible factor of the characteristic polynomial (a Galois orbit
/// of codegrees) with its multiplicity and ascending roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    pub poly: IntPoly,
    pub multiplicity: usize,
    pub roots: Vec<AlgebraicNumber>,
}

impl Orbit {
    pub fn degree(&self) -> usize {
        self.poly.degree()
    }

    pub fn min(&self) -> &AlgebraicNumber {
        &self.roots[0]
    }

    pub fn max(&self) -> &AlgebraicNumber {
        self.roots.last().expect("nonempty orbit")
    }

    /// Exact mean of the roots, `-c_{n-1} / n`.
    pub fn mean(&self) -> BigRational {
        let n = self.poly.degree();
        BigRational::new(-self.poly.coeff(n - 1), BigInt::from(n))
    }
}

/// Exact spectrum of a codegree matrix: characteristic polynomial, its
/// factorization into orbits, and the designated Frobenius–Perron root.
#[derive(Clone, Debug, PartialEq)]
pub struct CodegreeSpectrum {
    charpoly: IntPoly,
    orbits: Vec<Orbit>,
    fp: (usize, usize),
    approx: Vec<f64>,
}

impl CodegreeSpectrum {
    /// Spectrum with the given characteristic polynomial, which must be
    /// monic, totally real and have no zero root.
    pub fn from_charpoly(charpoly: IntPoly) -> Result<Self> {
        if charpoly.is_zero() || !charpoly.is_monic() || charpoly.degree() == 0 {
            return Err(Error::invalid(format!("{charpoly} is not a monic nonconstant polynomial")));
        }
        if charpoly.coeff(0).is_zero() {
            return Err(Error::invalid("zero is not a formal codegree"));
        }
        if !isolate_real_roots(&charpoly)?.totally_real {
            return Err(Error::invalid(format!("{charpoly} has non-real roots")));
        }
        let mut orbits = Vec::new();
        for (poly, multiplicity) in factor_over_integers(&charpoly)? {
            let roots = AlgebraicNumber::real_roots_unchecked(&poly);
            orbits.push(Orbit { poly, multiplicity, roots });
        }
        let mut fp = (0, orbits[0].roots.len() - 1);
        for (oi, o) in orbits.iter().enumerate().skip(1) {
            if o.max().cmp_algebraic(orbits[fp.0].max()) == Ordering::Greater {
                fp = (oi, o.roots.len() - 1);
            }
        }
        let mut approx = Vec::with_capacity(charpoly.degree());
        for o in &orbits {
            for r in &o.roots {
                let v = r.to_f64();
                approx.extend(core::iter::repeat(v).take(o.multiplicity));
            }
        }
        approx.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
        Ok(CodegreeSpectrum { charpoly, orbits, fp, approx })
    }

    /// Spectrum of exact rational codegrees (which must be integers for the
    /// characteristic polynomial to lie in `Z[x]`).
    pub fn from_integer_codegrees(values: &[BigInt]) -> Result<Self> {
        let p = values
            .iter()
            .fold(IntPoly::one(), |acc, v| acc.mul(&IntPoly::linear_root(v.clone())));
        Self::from_charpoly(p)
    }

    pub fn charpoly(&self) -> &IntPoly {
        &self.charpoly
    }

    pub fn orbits(&self) -> &[Orbit] {
        &self.orbits
    }

    pub fn rank(&self) -> usize {
        self.charpoly.degree()
    }

    /// The largest codegree, i.e. FPdim of the ring.
    pub fn fp_codegree(&self) -> &AlgebraicNumber {
        &self.orbits[self.fp.0].roots[self.fp.1]
    }

    /// Orbit index and root index of the FP codegree.
    pub fn fp_position(&self) -> (usize, usize) {
        self.fp
    }

    /// All codegrees with multiplicity, ascending, as floats.
    pub fn approx(&self) -> &[f64] {
        &self.approx
    }

    pub fn min_codegree(&self) -> &AlgebraicNumber {
        self.orbits
            .iter()
            .map(|o| o.min())
            .min_by(|a, b| a.cmp_algebraic(b))
            .expect("nonempty")
    }

    /// `e_i` with `charpoly = x^r - e_1 x^(r-1) + ... + (-1)^r e_r`.
    pub fn elementary(&self, i: usize) -> BigInt {
        let r = self.rank();
        assert!(i <= r);
        let c = self.charpoly.coeff(r - i);
        if i % 2 == 0 {
            c
        } else {
            -c
        }
    }

    /// `e_{r-1} = e_r`, the integer form of `sum 1/f_i = 1`.
    pub fn sum_identity_holds(&self) -> bool {
        let r = self.rank();
        self.elementary(r - 1) == self.elementary(r)
    }

    /// `sum 1/f_i = e_{r-1} / e_r`.
    pub fn inverse_sum(&self) -> BigRational {
        let r = self.rank();
        BigRational::new(self.elementary(r - 1), self.elementary(r))
    }

    /// `sum 1/f_i^2 = (e_{r-1}^2 - 2 e_r e_{r-2}) / e_r^2`.
    pub fn inverse_square_sum(&self) -> BigRational {
        let r = self.rank();
        let er = self.elementary(r);
        let er1 = self.elementary(r - 1);
        let er2 = if r >= 2 { self.elementary(r - 2) } else { BigInt::zero() };
        BigRational::new(&er1 * &er1 - BigInt::from(2) * &er * er2, &er * &er)
    }

    /// Orbit index of the root equal to `f`, if any.
    pub fn orbit_of(&self, f: &AlgebraicNumber) -> Option<usize> {
        self.orbits.iter().position(|o| &o.poly == f.minpoly())
    }
}

/// Exact formal codegrees of a validated commutative ring.
pub fn formal_codegrees(ring: &FusionRing) -> Result<CodegreeSpectrum> {
    ring.ensure_valid()?;
    if !ring.is_commutative() {
        return Err(Error::Unsupported(
            "formal codegrees of noncommutative rings (higher-dimensional representations)".into(),
        ));
    }
    CodegreeSpectrum::from_charpoly(ring.codegree_matrix().charpoly())
}

/// Frobenius–Perron dimensions of the basis and of the ring.
#[derive(Clone, Debug, PartialEq)]
pub struct FpData {
    /// Perron vector normalized so that `dims[0] = 1`.
    pub dims: Vec<f64>,
    /// Exact FPdim of the ring: the largest eigenvalue of `Z`.
    pub fpdim: AlgebraicNumber,
    /// Collatz–Wielandt enclosure `[min (Zv)_j / v_j, max (Zv)_j / v_j]`
    /// of the Perron root of `Z`, computed exactly from a rational copy of
    /// `dims`.
    pub perron_enclosure: RatInterval,
    /// Whether `fpdim` lies in `perron_enclosure`.
    pub certified: bool,
    pub iterations: usize,
}

/// Perron data by power iteration on `sum_i N_i` (strictly positive, with
/// the FP dimensions as its Perron vector), certified against `Z`.
pub fn fp_dimension_vector(ring: &FusionRing, tol: f64) -> Result<FpData> {
    ring.ensure_valid()?;
    if !(tol > 0.0) {
        return Err(Error::invalid("tolerance must be positive"));
    }
    let r = ring.rank();
    let mut s = vec![0f64; r * r];
    for i in 0..r {
        for j in 0..r {
            for k in 0..r {
                s[j * r + k] += ring.n(i, j, k) as f64;
            }
        }
    }
    let mut v = vec![1f64; r];
    let mut iterations = 0;
    for it in 1..=200_000 {
        iterations = it;
        let mut w = vec![0f64; r];
        for j in 0..r {
            w[j] = (0..r).map(|k| s[j * r + k] * v[k]).sum();
        }
        let w0 = w[0];
        for x in w.iter_mut() {
            *x /= w0;
        }
        let delta = v.iter().zip(&w).map(|(a, b)| libm::fabs(a - b) / b).fold(0.0, f64::max);
        v = w;
        if delta < tol {
            break;
        }
    }
    let scale = BigRational::from_integer(BigInt::one() << 52);
    let vq: Vec<BigRational> = v
        .iter()
        .map(|&x| {
            let m = libm::round(x * (1u64 << 52) as f64);
            BigRational::new(BigInt::from(m as i128).max(BigInt::one()), BigInt::one()) / &scale
        })
        .collect();
    let z = ring.codegree_matrix();
    let mut lo: Option<BigRational> = None;
    let mut hi: Option<BigRational> = None;
    for j in 0..r {
        let zv: BigRational = (0..r)
            .map(|k| BigRational::from_integer(z.get(j, k).clone()) * &vq[k])
            .fold(BigRational::zero(), |a, b| a + b);
        let ratio = zv / &vq[j];
        lo = Some(match lo {
            Some(x) if x <= ratio => x,
            _ => ratio.clone(),
        });
        hi = Some(match hi {
            Some(x) if x >= ratio => x,
            _ => ratio,
        });
    }
    let enclosure = RatInterval::new(lo.expect("rank >= 1"), hi.expect("rank >= 1"))?;
    let spectrum = CodegreeSpectrum::from_charpoly(z.charpoly())?;
    let fpdim = spectrum.fp_codegree().clone();
    let certified = fpdim.cmp_rational(enclosure.lo()) != Ordering::Less
        && fpdim.cmp_rational(enclosure.hi()) != Ordering::Greater;
    debug_assert!(enclosure.lo().is_positive());
    Ok(FpData {
        dims: v,
        fpdim,
        perron_enclosure: enclosure,
        certified,
        iterations,
    })
}
