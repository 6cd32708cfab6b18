//! Search over all degrees for a global dimension in `(4/3, d_max)`.
//!
//! A candidate of degree `k` is written `x^k - e_1 x^(k-1) + ... + (-1)^k e_k`
//! and its elementary symmetric functions are chosen one at a time. After
//! `e_1..e_i` are fixed, the normalized `(k-i)`-th derivative
//! `Q_i(x) = sum_j (-1)^j e_j C(i,j)/C(k,j) x^(i-j)` is determined and must
//! itself have all roots real and inside the root envelope. Its critical
//! points are the roots of `Q_(i-1)`, so the condition is a sign alternation
//! at already known points, which is linear in `e_i`.
//!
//! Candidates that can pass the orbit inequality have a smaller envelope
//! than the plain `[4/3, f_max]`: with `m = 1/d_max^2 > 1/2`, the largest root
//! `G` satisfies `m + (k-1)/G^2 <= (1 + 1/G)/2`, and every root other than the
//! smallest is at least `T`, where `1/T^2` bounds
//! `(1 + 1/G)/2 - m - (k-2)/G^2`. By interlacing, the `j`-th root of every
//! derivative is at least the `j`-th root of the polynomial, so each `Q_i`
//! has at most one root below `T`.
//!
//! The envelope arithmetic runs in floating point with generous widening;
//! every emitted polynomial is then decided exactly.

use alloc::format;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{Block, Candidate, Filter, RunKind, SearchOutcome};
use crate::algnum::{is_d_number, is_irreducible, AlgebraicNumber, IntPoly, Surd};
use crate::obstruct::{threshold, ThresholdKind};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapConfig {
    pub d_max: Surd,
    /// Allow the smallest root to equal `d_max`.
    pub inclusive: bool,
    /// Stop below the degree bound implied by `d_max`.
    pub max_degree: Option<usize>,
}

impl Default for GapConfig {
    /// `d_max = 4 sqrt(3)/5`, exclusive.
    fn default() -> Self {
        GapConfig::new(Surd::sqrt_of(&BigRational::new(BigInt::from(48), BigInt::from(25))).expect("valid surd"))
    }
}

impl GapConfig {
    pub fn new(d_max: Surd) -> Self {
        GapConfig {
            d_max,
            inclusive: false,
            max_degree: None,
        }
    }

    fn validate(&self) -> Result<()> {
        let four_thirds = BigRational::new(BigInt::from(4), BigInt::from(3));
        if self.d_max.cmp_rational(&four_thirds) != Ordering::Greater {
            return Err(Error::invalid(format!(
                "d_max = {} leaves no room above 4/3",
                self.d_max
            )));
        }
        if self.d_max.square().cmp_rational(&BigRational::from_integer(BigInt::from(2))) != Ordering::Less {
            return Err(Error::invalid(format!("d_max = {} must lie below sqrt 2", self.d_max)));
        }
        Ok(())
    }

    pub fn run_kind(&self) -> Result<RunKind> {
        let k = gap_degree_bound(self)?;
        Ok(match self.max_degree {
            Some(m) if m < k => RunKind::Restricted,
            _ => RunKind::Certificate,
        })
    }
}

/// Largest `k` for which a dimension with `k` conjugates can lie below
/// `d_max`: the bound `sqrt((16k-16)/(8k-7))` must stay below `d_max`.
pub fn gap_degree_bound(cfg: &GapConfig) -> Result<usize> {
    cfg.validate()?;
    let mut k = 1usize;
    loop {
        let t = threshold(ThresholdKind::GdimK, &BigRational::from_integer(BigInt::from(k + 1)))?;
        let ord = t.cmp_surd(&cfg.d_max)?;
        let admits = ord == Ordering::Less || (cfg.inclusive && ord == Ordering::Equal);
        if !admits {
            return Ok(k);
        }
        k += 1;
    }
}

/// Rational upper bound on `d_max^2/(2 - d_max^2)`, the largest conjugate
/// allowed once the smallest one lies below `d_max`.
pub fn gap_largest_root_bound(cfg: &GapConfig) -> Result<BigRational> {
    cfg.validate()?;
    let sq = cfg.d_max.square();
    let two = BigRational::from_integer(BigInt::from(2));
    let x = match sq.as_rational() {
        Some(q) => q.clone(),
        None => sq.enclose(64).hi().clone(),
    };
    if x >= two {
        return Err(Error::invalid("d_max too close to sqrt 2"));
    }
    Ok(&x / (&two - &x))
}

fn binom(n: usize, k: usize) -> f64 {
    let mut r = 1.0;
    for i in 0..k {
        r = r * (n - i) as f64 / (i + 1) as f64;
    }
    r
}

struct Envelope {
    k: usize,
    lo: f64,
    hi: f64,
    /// At most one root lies below `split`.
    split: f64,
    d_max: f64,
}

impl Envelope {
    /// Coefficients of `Q_i` for the fixed `e_0..e_(i-1)` and `e_i = 0`,
    /// highest power first.
    fn partial(&self, e: &[i64], i: usize) -> Vec<f64> {
        (0..=i)
            .map(|j| {
                if j == i {
                    0.0
                } else {
                    let s = if j % 2 == 0 { 1.0 } else { -1.0 };
                    s * e[j] as f64 * binom(i, j) / binom(self.k, j)
                }
            })
            .collect()
    }

    fn full(&self, e: &[i64], i: usize) -> Vec<f64> {
        let mut q = self.partial(e, i);
        let s = if i % 2 == 0 { 1.0 } else { -1.0 };
        q[i] = s * e[i] as f64 / binom(self.k, i);
        q
    }

    /// Closed range of `e_i` allowed by the envelope, given the roots of
    /// `Q_(i-1)` in `crit`.
    fn range(&self, e: &[i64], i: usize, crit: &[f64]) -> Option<(i64, i64)> {
        let r = self.partial(e, i);
        let eval = |x: f64| r.iter().fold(0.0, |acc, c| acc * x + c);
        // rough size of the terms, for the rounding allowance
        let size = |x: f64| r.iter().fold(0.0, |acc, c| acc * libm::fabs(x).max(1.0) + libm::fabs(*c));
        let sign_i = if i % 2 == 0 { 1.0 } else { -1.0 };
        let mut lo = f64::NEG_INFINITY;
        let mut hi = f64::INFINITY;
        let mut scale: f64 = 1.0;
        // Q_i(L) has sign (-1)^i
        lo = lo.max(-sign_i * eval(self.lo));
        scale = scale.max(size(self.lo));
        // Q_i(U) >= 0
        if i % 2 == 0 {
            lo = lo.max(-eval(self.hi));
        } else {
            hi = hi.min(eval(self.hi));
        }
        scale = scale.max(size(self.hi));
        // alternation at the critical points z_1 < ... < z_(i-1)
        for (idx, &z) in crit.iter().enumerate() {
            let j = idx + 1;
            let t = if (i - j) % 2 == 0 { eval(z) } else { -eval(z) };
            if j % 2 == 0 {
                lo = lo.max(-t);
            } else {
                hi = hi.min(t);
            }
            scale = scale.max(size(z));
        }
        // the second root of Q_i is at least `split`; once Q_i has a critical
        // point below it, Q_i(split) has the sign of (-1)^(i-1)
        if i >= 2 && (i == self.k || crit[0] < self.split - 1e-7) {
            let t = if i % 2 == 1 { eval(self.split) } else { -eval(self.split) };
            hi = hi.min(t);
            scale = scale.max(size(self.split));
        }
        if i == self.k {
            // exactly one root below d_max
            let t = if i % 2 == 1 { eval(self.d_max) } else { -eval(self.d_max) };
            hi = hi.min(t);
            scale = scale.max(size(self.d_max));
        }
        let c = binom(self.k, i);
        let slack = 1e-6 + 1e-9 * scale * c;
        let lo_e = libm::ceil(lo * c - slack).max(1.0);
        let hi_e = libm::floor(hi * c + slack);
        if !(lo_e <= hi_e) || !hi_e.is_finite() {
            return None;
        }
        Some((lo_e as i64, hi_e as i64))
    }

    /// Roots of `Q_i`, bracketed by its critical points `crit` and the
    /// envelope ends.
    fn roots(&self, e: &[i64], i: usize, crit: &[f64]) -> Vec<f64> {
        let q = self.full(e, i);
        if i == 1 {
            return alloc::vec![-q[1]];
        }
        let eval = |x: f64| q.iter().fold(0.0, |acc, c| acc * x + c);
        let mut ends = Vec::with_capacity(i + 1);
        ends.push(self.lo.min(crit[0]));
        ends.extend_from_slice(crit);
        ends.push(self.hi.max(crit[crit.len() - 1]));
        ends.windows(2)
            .map(|w| {
                let (mut a, mut b) = (w[0], w[1]);
                let (fa, fb) = (eval(a), eval(b));
                if fa == 0.0 {
                    return a;
                }
                if fb == 0.0 || (fa > 0.0) == (fb > 0.0) {
                    return if libm::fabs(fa) < libm::fabs(fb) { a } else { b };
                }
                let up = fa < 0.0;
                for _ in 0..200 {
                    let m = 0.5 * (a + b);
                    if m <= a || m >= b {
                        break;
                    }
                    if (eval(m) < 0.0) == up {
                        a = m;
                    } else {
                        b = m;
                    }
                }
                0.5 * (a + b)
            })
            .collect()
    }

    fn descend(&self, e: &mut Vec<i64>, i: usize, crit: &[f64], emit: &mut dyn FnMut(&[i64]) -> Result<()>) -> Result<()> {
        let Some((lo, hi)) = self.range(e, i, crit) else {
            return Ok(());
        };
        for v in lo..=hi {
            e.push(v);
            if i == self.k {
                emit(e)?;
            } else {
                let next = self.roots(e, i, crit);
                self.descend(e, i + 1, &next, emit)?;
            }
            e.pop();
        }
        Ok(())
    }
}

/// The root envelope for degree `k`, or `None` when no polynomial of that
/// degree can pass the orbit inequality.
fn envelope(cfg: &GapConfig, k: usize) -> Result<Option<Envelope>> {
    let f_max = gap_largest_root_bound(cfg)?.to_f64().unwrap_or(f64::INFINITY);
    let d_max = cfg.d_max.to_f64();
    // slightly weakened so that rounding only loosens the envelope
    let m = (1.0 / (d_max * d_max)) * (1.0 - 1e-9);
    let (hi, split) = if k == 1 {
        (f_max, d_max)
    } else {
        // (m - 1/2) G^2 - G/2 + (k - 1) <= 0
        let a = m - 0.5;
        let disc = 0.25 - 4.0 * a * (k - 1) as f64;
        if disc < 0.0 {
            return Ok(None);
        }
        let g_hi = (0.5 + libm::sqrt(disc)) / (2.0 * a);
        // (1 + 1/G)/2 - m - (k-2)/G^2 peaks at G = 4(k-2), and G >= d_max
        let g = (4.0 * (k - 2) as f64).max(d_max);
        let h = 0.5 + 0.5 / g - m - (k - 2) as f64 / (g * g);
        if h <= 0.0 {
            return Ok(None);
        }
        let t = (1.0 / libm::sqrt(h)).max(d_max);
        (f_max.min(g_hi) * (1.0 + 1e-9) + 1e-9, (t * (1.0 - 1e-9)).max(d_max))
    };
    // the largest e_i must stay exact in f64
    let worst = binom(k, k / 2) * libm::pow(hi, k as f64);
    if !(worst < 4.0e15) {
        return Err(Error::Unsupported(format!(
            "degree {k} with largest conjugate up to {hi:.3} exceeds the enumeration range"
        )));
    }
    Ok(Some(Envelope {
        k,
        lo: 4.0 / 3.0,
        hi,
        split,
        d_max,
    }))
}

fn poly_of(e: &[i64]) -> IntPoly {
    let hf: Vec<i64> = e
        .iter()
        .enumerate()
        .map(|(j, v)| if j % 2 == 0 { *v } else { -*v })
        .collect();
    IntPoly::from_high_first(&hf)
}

/// Exact filters on one emitted polynomial.
fn decide(p: IntPoly, cfg: &GapConfig) -> Result<Candidate> {
    let mut c = Candidate::new(p);
    let k = c.poly.degree();
    // 3^k P(4/3) times (-1)^k is prod (3 d_i - 4)
    let mut prod = c.poly.eval_homogeneous(&BigInt::from(4), &BigInt::from(3));
    if k % 2 == 1 {
        prod = -prod;
    }
    if !c.record(Filter::Prefilter, prod >= BigInt::one()) {
        return Ok(c);
    }
    if !c.record(Filter::Irreducible, is_irreducible(&c.poly)?) {
        return Ok(c);
    }
    let roots = AlgebraicNumber::real_roots_of(&c.poly)?;
    let one = BigRational::one();
    let real_ge_one = roots.len() == k && roots[0].cmp_rational(&one) != Ordering::Less;
    if !c.record(Filter::RealRootsAtLeastOne, real_ge_one) {
        return Ok(c);
    }
    let d = &roots[0];
    let dmax = &roots[k - 1];
    c.extremes = Some((d.clone(), dmax.clone()));
    let four_thirds = BigRational::new(BigInt::from(4), BigInt::from(3));
    let upper = d.cmp_surd(&cfg.d_max);
    let window = d.cmp_rational(&four_thirds) == Ordering::Greater
        && (upper == Ordering::Less || (cfg.inclusive && upper == Ordering::Equal));
    if !c.record(Filter::RootWindow, window) {
        return Ok(c);
    }
    // sum 1/g^2 = (e_(k-1)^2 - 2 e_k e_(k-2)) / e_k^2 from the coefficients
    let e = |j: usize| -> BigInt {
        let v = c.poly.coeff(k - j);
        if j % 2 == 1 {
            -v
        } else {
            v
        }
    };
    let ek = e(k);
    let ekm1 = e(k - 1);
    let ekm2 = if k >= 2 { e(k - 2) } else { BigInt::zero() };
    let lhs = BigRational::new(&ekm1 * &ekm1 - BigInt::from(2) * &ek * &ekm2, &ek * &ek);
    let excess = BigRational::from_integer(BigInt::from(2)) * lhs - &one;
    let holds = !excess.is_positive() || dmax.cmp_rational(&excess.recip()) != Ordering::Greater;
    if !c.record(Filter::OrbitInequality, holds) {
        return Ok(c);
    }
    c.record(Filter::DNumber, is_d_number(&c.poly)?);
    Ok(c)
}

/// Every `(degree, e_1)` slice of the search, in traversal order.
pub fn gap_blocks(cfg: &GapConfig) -> Result<Vec<Block>> {
    let kmax = gap_degree_bound(cfg)?;
    let kmax = cfg.max_degree.map_or(kmax, |m| m.min(kmax));
    let mut out = Vec::new();
    for k in 1..=kmax {
        let Some(env) = envelope(cfg, k)? else {
            continue;
        };
        if let Some((lo, hi)) = env.range(&[1], 1, &[]) {
            out.extend((lo..=hi).map(|lead| Block { degree: k, lead }));
        }
    }
    Ok(out)
}

pub fn search_gap_block(cfg: &GapConfig, block: &Block) -> Result<SearchOutcome> {
    let kind = cfg.run_kind()?;
    let mut out = SearchOutcome::empty(kind);
    let Some(env) = envelope(cfg, block.degree)? else {
        return Ok(out);
    };
    let mut e = alloc::vec![1, block.lead];
    if block.degree == 1 {
        out.push(decide(poly_of(&e), cfg)?);
        return Ok(out);
    }
    let crit = env.roots(&e, 1, &[]);
    env.descend(&mut e, 2, &crit, &mut |e| {
        out.push(decide(poly_of(e), cfg)?);
        Ok(())
    })?;
    Ok(out)
}

/// All totally positive algebraic integers, of every admissible degree,
/// whose smallest conjugate lies in `(4/3, d_max)` and that pass the
/// d-number and orbit conditions.
pub fn search_gap(cfg: &GapConfig) -> Result<SearchOutcome> {
    let mut parts = Vec::new();
    for b in gap_blocks(cfg)? {
        parts.push(search_gap_block(cfg, &b)?);
    }
    merge_gap(cfg, parts)
}

/// Merges block outcomes (in [`gap_blocks`] order) into the result of
/// [`search_gap`].
pub fn merge_gap(cfg: &GapConfig, parts: impl IntoIterator<Item = SearchOutcome>) -> Result<SearchOutcome> {
    let kind = cfg.run_kind()?;
    let kmax = gap_degree_bound(cfg)?;
    let mut out = SearchOutcome::merge(kind, parts);
    if cfg.max_degree.map_or(kmax, |m| m.min(kmax)) >= 4 {
        out.warnings.push(format!("degree bound {kmax}: the enumeration grows quickly from degree 4 on"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn degree_bound_and_envelope() {
        let cfg = GapConfig::default();
        assert_eq!(gap_degree_bound(&cfg).unwrap(), 3);
        assert_eq!(gap_largest_root_bound(&cfg).unwrap(), q(24, 1));
        let mut inc = cfg.clone();
        inc.inclusive = true;
        assert_eq!(gap_degree_bound(&inc).unwrap(), 4);
        let low = GapConfig::new(Surd::rational(q(134, 100)));
        assert_eq!(gap_degree_bound(&low).unwrap(), 2);
        assert!(gap_degree_bound(&GapConfig::new(Surd::rational(q(13, 10)))).is_err());
    }

    #[test]
    fn default_gap_search() {
        let out = search_gap(&GapConfig::default()).unwrap();
        assert_eq!(out.survivor_polys(), alloc::vec![IntPoly::from_high_first(&[1, -5, 5])]);
        assert!(out.warnings.is_empty());
        let out = search_gap(&GapConfig::new(Surd::rational(q(134, 100)))).unwrap();
        assert!(out.survivors.is_empty());
    }

    #[test]
    fn envelope_keeps_real_rooted_points() {
        // (x - 2)(x - 3)(x - 5) has roots inside [4/3, 24]
        let env = Envelope {
            k: 3,
            lo: 4.0 / 3.0,
            hi: 24.0,
            split: 3.0,
            d_max: 2.5,
        };
        let e = [1i64, 10, 31, 30];
        let (lo, hi) = env.range(&e[..1], 1, &[]).unwrap();
        assert!(lo <= 10 && 10 <= hi);
        let z1 = env.roots(&e[..2], 1, &[]);
        let (lo, hi) = env.range(&e[..2], 2, &z1).unwrap();
        assert!(lo <= 31 && 31 <= hi);
        let z2 = env.roots(&e[..3], 2, &z1);
        let (lo, hi) = env.range(&e[..3], 3, &z2).unwrap();
        assert!(lo <= 30 && 30 <= hi);
    }
}
