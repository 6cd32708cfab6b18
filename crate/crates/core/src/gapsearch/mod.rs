//! Exhaustive searches for totally positive algebraic integers whose
//! smallest conjugate could be a global dimension just above `4/3`.
//!
//! Every search walks a finite grid of coefficient vectors and runs each
//! point through a fixed sequence of exact filters. The trace of every
//! candidate is kept, so a run doubles as its own audit log.

mod gap;
mod mainineq;

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::algnum::{is_irreducible, isolate_real_roots, AlgebraicNumber, IntPoly, Surd};
use crate::{Error, Result};

pub use gap::{gap_blocks, gap_degree_bound, gap_largest_root_bound, merge_gap, search_gap, search_gap_block, GapConfig};
pub use mainineq::{k_of, main_inequality, MainIneqForm};

/// How far a run may be trusted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RunKind {
    /// The default grid and filters: an empty survivor list is a proof.
    Certificate,
    /// A sub-grid of the default one: sound but incomplete.
    Restricted,
    /// Constraints were loosened or dropped; output is for exploration only.
    Exploratory,
}

impl RunKind {
    pub fn name(self) -> &'static str {
        match self {
            RunKind::Certificate => "certificate",
            RunKind::Restricted => "restricted",
            RunKind::Exploratory => "exploratory",
        }
    }

    pub fn watermark(self) -> Option<&'static str> {
        match self {
            RunKind::Exploratory => Some("exploratory — not a certificate"),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Filter {
    /// Coefficient divisibility forced by all root ratios being integral
    /// (the full ratio test for the gap search).
    DNumber,
    /// `prod (3 d_i - 4) >= 1`, an integer condition on the coefficients.
    Prefilter,
    Irreducible,
    TotallyPositive,
    /// Every root real and at least 1.
    RealRootsAtLeastOne,
    /// Smallest root inside the search window.
    RootWindow,
    MainInequality,
    /// `sum 1/g^2 <= (1 + 1/g_max)/2` over the conjugates `g`.
    OrbitInequality,
}

impl Filter {
    pub fn name(self) -> &'static str {
        match self {
            Filter::DNumber => "d-number",
            Filter::Prefilter => "prefilter",
            Filter::Irreducible => "irreducible",
            Filter::TotallyPositive => "totally-positive",
            Filter::RealRootsAtLeastOne => "real-roots-at-least-one",
            Filter::RootWindow => "root-window",
            Filter::MainInequality => "main-inequality",
            Filter::OrbitInequality => "orbit-inequality",
        }
    }
}

impl fmt::Display for Filter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One grid point and the filters it went through, in order. Evaluation
/// stops at the first failing filter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Candidate {
    pub poly: IntPoly,
    pub trace: Vec<(Filter, bool)>,
    /// Smallest and largest root, once they were isolated.
    pub extremes: Option<(AlgebraicNumber, AlgebraicNumber)>,
}

impl Candidate {
    fn new(poly: IntPoly) -> Self {
        Candidate {
            poly,
            trace: Vec::new(),
            extremes: None,
        }
    }

    /// Records a filter result and returns it.
    fn record(&mut self, filter: Filter, passed: bool) -> bool {
        self.trace.push((filter, passed));
        passed
    }

    pub fn survived(&self) -> bool {
        self.trace.iter().all(|(_, ok)| *ok)
    }

    pub fn first_failure(&self) -> Option<Filter> {
        self.trace.iter().find(|(_, ok)| !ok).map(|(f, _)| *f)
    }
}

/// A slice of the grid with a fixed degree and first coefficient, the unit
/// of work handed to parallel drivers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Block {
    pub degree: usize,
    pub lead: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    pub kind: RunKind,
    pub examined: u64,
    pub survivors: Vec<Candidate>,
    pub rejected: Vec<Candidate>,
    pub warnings: Vec<String>,
}

impl SearchOutcome {
    fn empty(kind: RunKind) -> Self {
        SearchOutcome {
            kind,
            examined: 0,
            survivors: Vec::new(),
            rejected: Vec::new(),
            warnings: Vec::new(),
        }
    }

    fn push(&mut self, c: Candidate) {
        self.examined += 1;
        if c.survived() {
            self.survivors.push(c);
        } else {
            self.rejected.push(c);
        }
    }

    /// Concatenates block outcomes in the order given.
    pub fn merge(kind: RunKind, parts: impl IntoIterator<Item = SearchOutcome>) -> SearchOutcome {
        let mut out = SearchOutcome::empty(kind);
        for p in parts {
            out.examined += p.examined;
            out.survivors.extend(p.survivors);
            out.rejected.extend(p.rejected);
            for w in p.warnings {
                if !out.warnings.contains(&w) {
                    out.warnings.push(w);
                }
            }
        }
        out
    }

    pub fn survivor_polys(&self) -> Vec<IntPoly> {
        self.survivors.iter().map(|c| c.poly.clone()).collect()
    }

    /// Number of rejections charged to each filter, in filter order.
    pub fn rejection_counts(&self) -> Vec<(Filter, u64)> {
        let mut counts: Vec<(Filter, u64)> = Vec::new();
        for c in &self.rejected {
            if let Some(f) = c.first_failure() {
                match counts.iter_mut().find(|(g, _)| *g == f) {
                    Some(e) => e.1 += 1,
                    None => counts.push((f, 1)),
                }
            }
        }
        counts.sort();
        counts
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SearchDegree {
    Quadratic,
    Cubic,
}

impl SearchDegree {
    pub fn degree(self) -> usize {
        match self {
            SearchDegree::Quadratic => 2,
            SearchDegree::Cubic => 3,
        }
    }
}

/// Grid and filters of a quadratic or cubic search for
/// `x^2 - a x + b` or `x^3 - a x^2 + b x - c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub degree: SearchDegree,
    /// The smallest root is sought in `[d_lo, d_hi)`.
    pub d_lo: Surd,
    pub d_hi: Surd,
    /// Range of the trace coefficient `a`.
    pub a_min: i64,
    pub a_max: i64,
    /// Restrict the last coefficient by the sign of the polynomial at the
    /// window ends. Dropping it falls back to the AM-GM range.
    pub window_constraint: bool,
    pub main_inequality: bool,
    pub main_form: MainIneqForm,
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl SearchConfig {
    /// `[(sqrt 41 - 1)/4, 4 sqrt(3)/5)` with `3 <= a <= 23`.
    pub fn quadratic() -> Self {
        SearchConfig {
            degree: SearchDegree::Quadratic,
            d_lo: Surd::new(ratio(-1, 4), ratio(1, 4), BigInt::from(41)).expect("valid surd"),
            d_hi: Surd::sqrt_of(&ratio(48, 25)).expect("valid surd"),
            a_min: 3,
            a_max: 23,
            window_constraint: true,
            main_inequality: true,
            main_form: MainIneqForm::Rational,
        }
    }

    /// `[sqrt(32/17), 4 sqrt(3)/5)` with `1 <= a <= 45`.
    pub fn cubic() -> Self {
        SearchConfig {
            degree: SearchDegree::Cubic,
            d_lo: Surd::sqrt_of(&ratio(32, 17)).expect("valid surd"),
            d_hi: Surd::sqrt_of(&ratio(48, 25)).expect("valid surd"),
            a_min: 1,
            a_max: 45,
            window_constraint: true,
            main_inequality: true,
            main_form: MainIneqForm::Rational,
        }
    }

    pub fn default_for(degree: SearchDegree) -> Self {
        match degree {
            SearchDegree::Quadratic => Self::quadratic(),
            SearchDegree::Cubic => Self::cubic(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.d_lo.cmp_surd(&self.d_hi)? != Ordering::Less {
            return Err(Error::invalid(format!("empty window [{}, {})", self.d_lo, self.d_hi)));
        }
        if self.d_lo.cmp_rational(&BigRational::zero()) != Ordering::Greater {
            return Err(Error::invalid(format!("window must lie in the positive reals, got d_lo = {}", self.d_lo)));
        }
        if self.main_inequality && self.d_hi.square().cmp_rational(&ratio(2, 1)) != Ordering::Less {
            return Err(Error::invalid(format!(
                "the main inequality needs d_hi < sqrt 2, got {}",
                self.d_hi
            )));
        }
        if self.a_min < 1 || self.a_min > self.a_max {
            return Err(Error::invalid(format!("bad coefficient range {}..={}", self.a_min, self.a_max)));
        }
        if self.a_max > 100_000 {
            return Err(Error::invalid("trace coefficient bound above 100000"));
        }
        Ok(())
    }

    /// Compares against the default grid of the same degree.
    pub fn run_kind(&self) -> RunKind {
        let base = Self::default_for(self.degree);
        // an undecidable comparison counts as loosening
        let lower = |x: &Surd, y: &Surd| x.cmp_surd(y).map_or(true, |o| o == Ordering::Less);
        let loosened = lower(&self.d_lo, &base.d_lo)
            || lower(&base.d_hi, &self.d_hi)
            || self.a_min < base.a_min
            || self.a_max > base.a_max
            || !self.window_constraint
            || !self.main_inequality;
        if loosened {
            return RunKind::Exploratory;
        }
        let same = self.d_lo == base.d_lo && self.d_hi == base.d_hi && self.a_min == base.a_min && self.a_max == base.a_max;
        if same {
            RunKind::Certificate
        } else {
            RunKind::Restricted
        }
    }

    pub fn blocks(&self) -> Vec<Block> {
        (self.a_min..=self.a_max)
            .map(|a| Block {
                degree: self.degree.degree(),
                lead: a,
            })
            .collect()
    }
}

fn to_i64(x: &BigInt) -> Result<i64> {
    x.to_i64().ok_or_else(|| Error::invalid(format!("coefficient bound {x} out of range")))
}

/// Smallest root in `[lo, hi)`.
fn in_window(d: &AlgebraicNumber, lo: &Surd, hi: &Surd) -> bool {
    d.cmp_surd(lo) != Ordering::Less && d.cmp_surd(hi) == Ordering::Less
}

/// Isolates the roots of an irreducible polynomial and records them on the
/// candidate when they are all positive.
fn totally_positive(c: &mut Candidate) -> Result<bool> {
    if !isolate_real_roots(&c.poly)?.totally_positive {
        return Ok(false);
    }
    let roots = AlgebraicNumber::real_roots_of(&c.poly)?;
    c.extremes = Some((roots[0].clone(), roots[roots.len() - 1].clone()));
    Ok(true)
}

fn finish(c: &mut Candidate, cfg: &SearchConfig) -> Result<()> {
    let (d, dstar) = c.extremes.clone().expect("roots isolated");
    if !c.record(Filter::RootWindow, in_window(&d, &cfg.d_lo, &cfg.d_hi)) {
        return Ok(());
    }
    if cfg.main_inequality {
        let ok = main_inequality(&d, &dstar, cfg.main_form)?;
        c.record(Filter::MainInequality, ok);
    }
    Ok(())
}

fn quadratic_point(a: i64, b: i64, cfg: &SearchConfig) -> Result<Candidate> {
    let mut c = Candidate::new(IntPoly::from_high_first(&[1, -a, b]));
    if !c.record(Filter::DNumber, (a as i128 * a as i128) % b as i128 == 0) {
        return Ok(c);
    }
    if !c.record(Filter::Prefilter, 16 - 12 * a + 9 * b >= 1) {
        return Ok(c);
    }
    if !c.record(Filter::Irreducible, is_irreducible(&c.poly)?) {
        return Ok(c);
    }
    let tp = totally_positive(&mut c)?;
    if !c.record(Filter::TotallyPositive, tp) {
        return Ok(c);
    }
    finish(&mut c, cfg)?;
    Ok(c)
}

fn cubic_point(a: i64, b: i64, cc: i64, cfg: &SearchConfig) -> Result<Candidate> {
    let mut c = Candidate::new(IntPoly::from_high_first(&[1, -a, b, -cc]));
    let (ab, bb, cb) = (a as i128, b as i128, cc as i128);
    let divides = (ab * ab * ab) % cb == 0 && (bb * bb * bb) % (cb * cb) == 0;
    if !c.record(Filter::DNumber, divides) {
        return Ok(c);
    }
    // positivity of the roots is checked before factoring
    let tp = isolate_real_roots(&c.poly)?.totally_positive;
    if !c.record(Filter::TotallyPositive, tp) {
        return Ok(c);
    }
    if !c.record(Filter::Irreducible, is_irreducible(&c.poly)?) {
        return Ok(c);
    }
    let roots = AlgebraicNumber::real_roots_of(&c.poly)?;
    c.extremes = Some((roots[0].clone(), roots[roots.len() - 1].clone()));
    finish(&mut c, cfg)?;
    Ok(c)
}

/// Runs the grid points with first coefficient `block.lead`.
pub fn search_block(cfg: &SearchConfig, block: &Block) -> Result<SearchOutcome> {
    cfg.validate()?;
    if block.degree != cfg.degree.degree() {
        return Err(Error::invalid("block degree does not match the configuration"));
    }
    let a = block.lead;
    let mut out = SearchOutcome::empty(cfg.run_kind());
    match cfg.degree {
        SearchDegree::Quadratic => {
            // x^2 - a x + b >= 0 at d_lo and < 0 at d_hi
            let (lo, hi) = if cfg.window_constraint {
                let q = IntPoly::from_high_first(&[-1, a, 0]);
                let lo = cfg.d_lo.eval_poly(&q).ceil();
                let hi = cfg.d_hi.eval_poly(&q).ceil() - 1;
                (to_i64(&lo)?.max(1), to_i64(&hi)?)
            } else {
                (1, a * a / 4)
            };
            for b in lo..=hi {
                out.push(quadratic_point(a, b, cfg)?);
            }
        }
        SearchDegree::Cubic => {
            for b in 1..=a * a / 3 {
                let (lo, hi) = if cfg.window_constraint {
                    // x^3 - a x^2 + b x - c <= 0 at d_lo and > 0 at d_hi
                    let q = IntPoly::from_high_first(&[1, -a, b, 0]);
                    let lo = cfg.d_lo.eval_poly(&q).ceil();
                    let hi = cfg.d_hi.eval_poly(&q).ceil() - 1;
                    (to_i64(&lo)?.max(1), to_i64(&hi)?)
                } else {
                    (1, a * a * a / 27)
                };
                for cc in lo..=hi {
                    out.push(cubic_point(a, b, cc, cfg)?);
                }
            }
        }
    }
    Ok(out)
}

/// The whole grid, block by block in ascending order.
pub fn search(cfg: &SearchConfig) -> Result<SearchOutcome> {
    cfg.validate()?;
    let mut parts = Vec::new();
    for b in cfg.blocks() {
        parts.push(search_block(cfg, &b)?);
    }
    Ok(SearchOutcome::merge(cfg.run_kind(), parts))
}

pub fn search_quadratic(cfg: &SearchConfig) -> Result<SearchOutcome> {
    if cfg.degree != SearchDegree::Quadratic {
        return Err(Error::invalid("configuration is not quadratic"));
    }
    search(cfg)
}

pub fn search_cubic(cfg: &SearchConfig) -> Result<SearchOutcome> {
    if cfg.degree != SearchDegree::Cubic {
        return Err(Error::invalid("configuration is not cubic"));
    }
    search(cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_quadratic_finds_golden_pair() {
        let out = search_quadratic(&SearchConfig::quadratic()).unwrap();
        assert_eq!(out.kind, RunKind::Certificate);
        assert_eq!(out.survivor_polys(), alloc::vec![IntPoly::from_high_first(&[1, -5, 5])]);
    }

    #[test]
    fn narrow_quadratic_window_is_exploratory() {
        let mut cfg = SearchConfig::quadratic();
        cfg.d_lo = Surd::rational(ratio(135, 100));
        cfg.d_hi = Surd::rational(ratio(136, 100));
        let out = search_quadratic(&cfg).unwrap();
        assert_eq!(out.kind, RunKind::Exploratory);
        assert!(out.survivors.is_empty());
    }

    #[test]
    fn main_inequality_needs_window_below_sqrt2() {
        let mut cfg = SearchConfig::quadratic();
        cfg.d_hi = Surd::rational(ratio(3, 2));
        assert!(search_quadratic(&cfg).is_err());
        cfg.main_inequality = false;
        assert_eq!(search_quadratic(&cfg).unwrap().kind, RunKind::Exploratory);
    }
}
