//! Sturm sequences and exact real root isolation.

use alloc::vec::Vec;
use core::cmp::Ordering;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::interval::{int, RatInterval};
use super::poly::IntPoly;
use crate::{Error, Result};

/// Sturm sequence of a squarefree polynomial, kept primitive with sign
/// changes tracked exactly (pseudo-remainders are rescaled by positive
/// factors only).
#[derive(Clone, Debug)]
pub struct SturmChain {
    seq: Vec<IntPoly>,
}

impl SturmChain {
    /// `p` must be squarefree and nonconstant for root counts to be
    /// meaningful; constants give an empty count.
    pub fn new(p: &IntPoly) -> Self {
        let mut seq = Vec::new();
        if p.is_zero() {
            return SturmChain { seq };
        }
        seq.push(p.clone());
        let d = p.derivative();
        if d.is_zero() {
            return SturmChain { seq };
        }
        seq.push(d);
        loop {
            let n = seq.len();
            let (a, b) = (&seq[n - 2], &seq[n - 1]);
            if b.degree() == 0 {
                break;
            }
            let mut r = a.pseudo_rem(b);
            // prem multiplies by lc(b)^(da - db + 1); undo a negative factor.
            let e = a.degree() - b.degree() + 1;
            if b.lc().is_negative() && e % 2 == 1 {
                r = r.neg();
            }
            if r.is_zero() {
                break;
            }
            // -rem, divided by the positive content
            let c = r.content();
            seq.push(r.div_scalar_exact(&c).neg());
        }
        SturmChain { seq }
    }

    pub fn polys(&self) -> &[IntPoly] {
        &self.seq
    }

    fn variations<I: Iterator<Item = Ordering>>(signs: I) -> usize {
        let mut last = Ordering::Equal;
        let mut v = 0;
        for s in signs {
            if s == Ordering::Equal {
                continue;
            }
            if last != Ordering::Equal && s != last {
                v += 1;
            }
            last = s;
        }
        v
    }

    pub fn variations_at(&self, x: &BigRational) -> usize {
        Self::variations(self.seq.iter().map(|p| p.sign_at(x)))
    }

    pub fn variations_at_neg_inf(&self) -> usize {
        Self::variations(self.seq.iter().map(IntPoly::sign_at_neg_inf))
    }

    pub fn variations_at_pos_inf(&self) -> usize {
        Self::variations(self.seq.iter().map(IntPoly::sign_at_pos_inf))
    }

    /// Number of distinct real roots in the half-open interval `(a, b]`.
    pub fn count_in(&self, a: &BigRational, b: &BigRational) -> usize {
        self.variations_at(a).saturating_sub(self.variations_at(b))
    }

    /// Number of distinct real roots in the closed interval `[a, b]`.
    pub fn count_closed(&self, a: &BigRational, b: &BigRational) -> usize {
        let at_a = usize::from(self.seq[0].sign_at(a) == Ordering::Equal);
        self.count_in(a, b) + at_a
    }

    pub fn count_all(&self) -> usize {
        self.variations_at_neg_inf()
            .saturating_sub(self.variations_at_pos_inf())
    }
}

/// All distinct real roots with multiplicities, in ascending order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootProfile {
    /// Pairwise disjoint isolating intervals, ascending.
    pub roots: Vec<(RatInterval, usize)>,
    /// Real roots counted with multiplicity.
    pub n_real: usize,
    pub totally_real: bool,
    pub totally_positive: bool,
}

/// Cauchy bound: every root satisfies `|x| < 1 + max|c_i| / |lc|`.
pub(crate) fn cauchy_bound(p: &IntPoly) -> BigRational {
    let lc = p.lc().abs();
    let m = p.coeffs()[..p.degree()]
        .iter()
        .map(|c| c.abs())
        .max()
        .unwrap_or_default();
    let b = (m + &lc - 1u32) / &lc; // ceil
    BigRational::from_integer(b + 1)
}

/// Isolating intervals for the distinct real roots of a squarefree
/// polynomial, ascending. Each interval is either a point (an exact
/// rational root) or has endpoints where `p` is nonzero and contains
/// exactly one root.
pub fn isolate_squarefree(p: &IntPoly) -> Vec<RatInterval> {
    let mut out = Vec::new();
    if p.degree() == 0 {
        return out;
    }
    if p.degree() == 1 {
        let r = BigRational::new(-p.coeff(0), p.coeff(1));
        out.push(RatInterval::point(r));
        return out;
    }
    let chain = SturmChain::new(p);
    let b = cauchy_bound(p);
    let lo = -b.clone();
    let total = chain.count_in(&lo, &b);
    let mut stack = Vec::new();
    if total > 0 {
        stack.push((lo, b, total));
    }
    while let Some((lo, hi, count)) = stack.pop() {
        if count == 1 {
            out.push(RatInterval::new_unchecked(lo, hi));
            continue;
        }
        let mid = (&lo + &hi) / int(2);
        if p.sign_at(&mid) == Ordering::Equal {
            // Cut out a small neighbourhood holding only this root.
            let mut eps = (&hi - &lo) / int(4);
            loop {
                let a = &mid - &eps;
                let c = &mid + &eps;
                if p.sign_at(&a) != Ordering::Equal
                    && p.sign_at(&c) != Ordering::Equal
                    && chain.count_in(&a, &c) == 1
                {
                    break;
                }
                eps /= int(2);
            }
            let a = &mid - &eps;
            let c = &mid + &eps;
            let left = chain.count_in(&lo, &a);
            let right = chain.count_in(&c, &hi);
            out.push(RatInterval::point(mid));
            if left > 0 {
                stack.push((lo, a, left));
            }
            if right > 0 {
                stack.push((c, hi, right));
            }
        } else {
            let left = chain.count_in(&lo, &mid);
            let right = count - left;
            if left > 0 {
                stack.push((lo, mid.clone(), left));
            }
            if right > 0 {
                stack.push((mid, hi, right));
            }
        }
    }
    out.sort_by(|a, b| a.lo().cmp(b.lo()));
    out
}

/// Halves an isolating interval of a simple root of `p` once.
pub(crate) fn bisect_once(p: &IntPoly, iv: &RatInterval) -> RatInterval {
    if iv.is_point() {
        return iv.clone();
    }
    let mid = iv.mid();
    let s_mid = p.sign_at(&mid);
    if s_mid == Ordering::Equal {
        return RatInterval::point(mid);
    }
    let s_lo = p.sign_at(iv.lo());
    if s_lo == Ordering::Equal {
        return RatInterval::point(iv.lo().clone());
    }
    if s_lo != s_mid {
        RatInterval::new_unchecked(iv.lo().clone(), mid)
    } else {
        RatInterval::new_unchecked(mid, iv.hi().clone())
    }
}

/// Refines an isolating interval of a simple root of `p` by bisection
/// until its width is at most `width`.
pub fn refine_isolating(p: &IntPoly, iv: &RatInterval, width: &BigRational) -> RatInterval {
    let mut cur = iv.clone();
    while !cur.is_point() && &cur.width() > width {
        cur = bisect_once(p, &cur);
    }
    cur
}

/// Isolates all distinct real roots of `p` and records multiplicities.
pub fn isolate_real_roots(p: &IntPoly) -> Result<RootProfile> {
    if p.is_zero() {
        return Err(Error::invalid("root isolation of the zero polynomial"));
    }
    let mut parts: Vec<(IntPoly, RatInterval, usize)> = Vec::new();
    for (q, m) in p.squarefree_decomposition() {
        for iv in isolate_squarefree(&q) {
            parts.push((q.clone(), iv, m));
        }
    }
    // Roots of different squarefree components are distinct; separate any
    // overlapping intervals.
    loop {
        parts.sort_by(|a, b| a.1.lo().cmp(b.1.lo()));
        let mut clash = None;
        for i in 1..parts.len() {
            if parts[i - 1].1.overlaps(&parts[i].1) {
                clash = Some(i);
                break;
            }
        }
        let Some(i) = clash else { break };
        for k in [i - 1, i] {
            let (q, iv, _) = &parts[k];
            let refined = bisect_once(q, iv);
            parts[k].1 = refined;
        }
    }
    let mut totally_positive = true;
    for (q, iv, _) in parts.iter_mut() {
        loop {
            if iv.lo().is_positive() {
                break;
            }
            if !iv.hi().is_positive() || q.sign_at(&BigRational::zero()) == Ordering::Equal {
                totally_positive = false;
                break;
            }
            *iv = bisect_once(q, iv);
        }
    }
    let n_real: usize = parts.iter().map(|(_, _, m)| *m).sum();
    let totally_real = n_real == p.degree();
    Ok(RootProfile {
        roots: parts.into_iter().map(|(_, iv, m)| (iv, m)).collect(),
        n_real,
        totally_real,
        totally_positive: totally_real && totally_positive,
    })
}

/// Whether a nonconstant squarefree polynomial has only real roots.
pub fn is_real_rooted_squarefree(p: &IntPoly) -> bool {
    SturmChain::new(p).count_all() == p.degree()
}

/// Number of distinct real roots of a squarefree polynomial in `[a, b]`.
pub fn count_roots_closed(p: &IntPoly, a: &BigRational, b: &BigRational) -> usize {
    if p.degree() == 0 {
        return 0;
    }
    SturmChain::new(p).count_closed(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algnum::interval::rat;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_high_first(c)
    }

    #[test]
    fn golden_pair_is_totally_positive() {
        let prof = isolate_real_roots(&p(&[1, -5, 5])).unwrap();
        assert_eq!(prof.roots.len(), 2);
        assert!(prof.totally_real && prof.totally_positive);
        assert!(prof.roots[0].0.hi() < prof.roots[1].0.lo());
        let small = refine_isolating(&p(&[1, -5, 5]), &prof.roots[0].0, &rat(1, 1_000_000));
        assert!(small.lo() >= &rat(1_381_965, 1_000_000));
        assert!(small.hi() <= &rat(1_381_967, 1_000_000));
        let big = refine_isolating(&p(&[1, -5, 5]), &prof.roots[1].0, &rat(1, 1_000_000));
        assert!(big.lo() >= &rat(3_618_033, 1_000_000));
        assert!(big.hi() <= &rat(3_618_035, 1_000_000));
    }

    #[test]
    fn no_real_roots() {
        let prof = isolate_real_roots(&p(&[1, 0, 1])).unwrap();
        assert!(prof.roots.is_empty());
        assert!(!prof.totally_real);
        assert!(!prof.totally_positive);
    }

    #[test]
    fn double_root() {
        let prof = isolate_real_roots(&p(&[1, -4, 4])).unwrap();
        assert_eq!(prof.roots.len(), 1);
        assert_eq!(prof.roots[0].1, 2);
        assert!(prof.roots[0].0.contains(&int(2)));
        assert_eq!(prof.n_real, 2);
        assert!(prof.totally_positive);
    }

    #[test]
    fn rational_roots_hit_by_bisection() {
        // (x)(x-1)(x+1)(2x-1): midpoints land on roots
        let f = p(&[1, 0]).mul(&p(&[1, -1])).mul(&p(&[1, 1])).mul(&p(&[2, -1]));
        let prof = isolate_real_roots(&f).unwrap();
        assert_eq!(prof.roots.len(), 4);
        for w in prof.roots.windows(2) {
            assert!(w[0].0.hi() < w[1].0.lo());
        }
        assert!(!prof.totally_positive);
    }

    #[test]
    fn zero_polynomial_rejected() {
        assert!(isolate_real_roots(&IntPoly::zero()).is_err());
    }

    #[test]
    fn sturm_counts_match_root_count_of_squarefree_part() {
        for coeffs in [
            &[1, -14, 49, -49][..],
            &[1, 0, -2],
            &[1, -6, 11, -6],
            &[3, 0, -1, 7, 2],
            &[1, 0, 0, 0, -1],
        ] {
            let f = p(coeffs).squarefree_part();
            let c = SturmChain::new(&f).count_all();
            let n = isolate_squarefree(&f).len();
            assert_eq!(c, n, "{f}");
        }
    }
}
