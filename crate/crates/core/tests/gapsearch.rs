use std::time::Instant;

use fgap_core::algnum::{IntPoly, Surd};
use fgap_core::gapsearch::{
    search_block, search_cubic, search_gap, search_quadratic, Filter, GapConfig, MainIneqForm, RunKind, SearchConfig,
    SearchOutcome,
};
use fgap_core::BigRational;
use num_bigint::BigInt;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn poly(c: &[i64]) -> IntPoly {
    IntPoly::from_high_first(c)
}

fn is_square(n: i64) -> bool {
    n >= 0 && {
        let r = (n as f64).sqrt().round() as i64;
        r * r == n
    }
}

/// Float brute force over the whole AM-GM quadratic grid.
fn quadratic_oracle(lo: f64, hi: f64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for a in 3..=23i64 {
        for b in 1..=a * a / 4 {
            let disc = a * a - 4 * b;
            if disc <= 0 || is_square(disc) || (a * a) % b != 0 {
                continue;
            }
            let s = (disc as f64).sqrt();
            let d = (a as f64 - s) / 2.0;
            let dstar = (a as f64 + s) / 2.0;
            if d < lo || d >= hi || 16 - 12 * a + 9 * b < 1 {
                continue;
            }
            let t = 0.25 - 1.0 / dstar;
            if 1.0 / (d * d) <= 9.0 / 16.0 - t * t {
                out.push((a, b));
            }
        }
    }
    out
}

/// Real roots of a monic cubic by bisection between critical points.
fn cubic_roots(a: f64, b: f64, c: f64) -> Option<[f64; 3]> {
    let p = |x: f64| ((x - a) * x + b) * x - c;
    let disc = 4.0 * a * a - 12.0 * b;
    if disc <= 0.0 {
        return None;
    }
    let z1 = (2.0 * a - disc.sqrt()) / 6.0;
    let z2 = (2.0 * a + disc.sqrt()) / 6.0;
    if p(z1) < 0.0 || p(z2) > 0.0 {
        return None;
    }
    let root = |mut lo: f64, mut hi: f64| {
        let up = p(lo) < p(hi);
        for _ in 0..200 {
            let m = 0.5 * (lo + hi);
            if (p(m) < 0.0) == up {
                lo = m;
            } else {
                hi = m;
            }
        }
        0.5 * (lo + hi)
    };
    let far = a.abs() + b.abs() + c.abs() + 1.0;
    Some([root(-far, z1), root(z1, z2), root(z2, far)])
}

fn audit(out: &SearchOutcome) {
    for c in &out.survivors {
        assert!(!c.trace.is_empty() && c.trace.iter().all(|(_, ok)| *ok), "{}", c.poly);
    }
    for c in &out.rejected {
        let (last, rest) = c.trace.split_last().expect("nonempty trace");
        assert!(!last.1 && rest.iter().all(|(_, ok)| *ok), "{}", c.poly);
        assert_eq!(c.first_failure(), Some(last.0));
    }
}

#[test]
fn quadratic_default_matches_brute_force() {
    let t = Instant::now();
    let out = search_quadratic(&SearchConfig::quadratic()).unwrap();
    let secs = t.elapsed().as_secs_f64();
    assert_eq!(out.kind, RunKind::Certificate);
    assert_eq!(out.survivor_polys(), vec![poly(&[1, -5, 5])]);
    let d_lo = (41f64.sqrt() - 1.0) / 4.0;
    let d_hi = 4.0 * 3f64.sqrt() / 5.0;
    assert_eq!(quadratic_oracle(d_lo, d_hi), vec![(5, 5)]);
    audit(&out);
    assert!(secs < 2.0, "{secs} s");
}

#[test]
fn quadratic_narrow_window() {
    let mut cfg = SearchConfig::quadratic();
    cfg.d_lo = Surd::rational(q(135, 100));
    cfg.d_hi = Surd::rational(q(136, 100));
    let out = search_quadratic(&cfg).unwrap();
    assert_eq!(out.kind, RunKind::Exploratory);
    assert_eq!(out.kind.watermark(), Some("exploratory — not a certificate"));
    assert!(out.survivors.is_empty());
    assert!(quadratic_oracle(1.35, 1.36).is_empty());

    cfg.d_lo = Surd::rational(q(136, 100));
    assert!(search_quadratic(&cfg).is_err());
}

#[test]
fn quadratic_prefilter_matches_root_signs() {
    let cfg = SearchConfig::quadratic();
    for a in cfg.a_min..=cfg.a_max {
        for b in 1..=a * a / 4 {
            let disc = a * a - 4 * b;
            if disc < 0 {
                continue;
            }
            let s = (disc as f64).sqrt();
            let prod = (3.0 * (a as f64 - s) / 2.0 - 4.0) * (3.0 * (a as f64 + s) / 2.0 - 4.0);
            let exact = 16 - 12 * a + 9 * b;
            assert!((prod - exact as f64).abs() < 1e-6);
            if exact != 0 {
                assert_eq!(exact >= 1, prod > 0.0, "a = {a}, b = {b}");
            }
        }
    }
}

#[test]
fn cubic_default_is_empty() {
    let t = Instant::now();
    let out = search_cubic(&SearchConfig::cubic()).unwrap();
    let secs = t.elapsed().as_secs_f64();
    assert_eq!(out.kind, RunKind::Certificate);
    assert!(out.survivors.is_empty(), "{:?}", out.survivor_polys());
    assert!(out.examined > 0);
    audit(&out);
    assert!(secs < 10.0, "{secs} s");
}

#[test]
fn cubic_restricted_to_trace_three() {
    let mut cfg = SearchConfig::cubic();
    cfg.a_min = 3;
    cfg.a_max = 3;
    let out = search_cubic(&cfg).unwrap();
    assert_eq!(out.kind, RunKind::Restricted);
    assert!(out.survivors.is_empty());
    // every (b, c) with b <= 3 and c <= 1: no totally positive cubic has its
    // smallest root in the window
    let lo = (32f64 / 17.0).sqrt();
    let hi = 4.0 * 3f64.sqrt() / 5.0;
    for b in 1..=3 {
        for c in 1..=1 {
            if let Some(r) = cubic_roots(3.0, b as f64, c as f64) {
                assert!(!(r[0] > 0.0 && r[0] >= lo && r[0] < hi));
            }
        }
    }
}

#[test]
fn cubic_exploratory_window_finds_known_cubic() {
    let mut cfg = SearchConfig::cubic();
    cfg.d_lo = Surd::rational(q(18, 10));
    cfg.d_hi = Surd::rational(q(19, 10));
    cfg.window_constraint = false;
    cfg.main_inequality = false;
    cfg.a_max = 20;
    let out = search_cubic(&cfg).unwrap();
    assert_eq!(out.kind, RunKind::Exploratory);
    let target = poly(&[1, -14, 49, -49]);
    let hit = out.survivors.iter().find(|c| c.poly == target).expect("x^3 - 14x^2 + 49x - 49 survives");
    let names: Vec<Filter> = hit.trace.iter().map(|(f, _)| *f).collect();
    assert!(names.contains(&Filter::DNumber) && names.contains(&Filter::TotallyPositive));
    // direct check: 49 | 14^3, 49^2 | 49^3, smallest root about 1.84117
    assert_eq!(14i64.pow(3) % 49, 0);
    let r = cubic_roots(14.0, 49.0, 49.0).unwrap();
    assert!((r[0] - 1.84117).abs() < 1e-5);
    for c in &out.survivors {
        let hf = c.poly.high_first();
        let (a, b, cc) = (-hf[1].clone(), hf[2].clone(), -hf[3].clone());
        let f = |x: &BigInt| x.to_string().parse::<f64>().unwrap();
        let r = cubic_roots(f(&a), f(&b), f(&cc)).unwrap();
        assert!(r[0] >= 1.8 && r[0] < 1.9);
    }
    audit(&out);
}

#[test]
fn encodings_of_main_inequality_agree() {
    for base in [SearchConfig::quadratic(), SearchConfig::cubic()] {
        let mut k = base.clone();
        k.main_form = MainIneqForm::KBound;
        let a = fgap_core::gapsearch::search(&base).unwrap();
        let b = fgap_core::gapsearch::search(&k).unwrap();
        assert_eq!(a.survivor_polys(), b.survivor_polys());
        let verdicts = |o: &SearchOutcome| o.rejected.iter().map(|c| (c.poly.clone(), c.first_failure())).collect::<Vec<_>>();
        assert_eq!(verdicts(&a), verdicts(&b));
    }
}

#[test]
fn gap_search_contains_default_searches() {
    let gap = search_gap(&GapConfig::default()).unwrap();
    let mut union = search_quadratic(&SearchConfig::quadratic()).unwrap().survivor_polys();
    union.extend(search_cubic(&SearchConfig::cubic()).unwrap().survivor_polys());
    assert_eq!(gap.survivor_polys(), union);
    assert_eq!(gap.kind, RunKind::Certificate);
    audit(&gap);
    assert!(gap.survivors.iter().all(|c| c.poly.degree() != 1));

    assert!(search_gap(&GapConfig::new(Surd::rational(q(134, 100)))).unwrap().survivors.is_empty());
    assert!(search_gap(&GapConfig::new(Surd::rational(q(130, 100)))).is_err());
}

#[test]
fn gap_search_inclusive_warns_about_cost() {
    let mut cfg = GapConfig::default();
    cfg.inclusive = true;
    let out = search_gap(&cfg).unwrap();
    assert!(!out.warnings.is_empty());
    assert_eq!(out.survivor_polys(), vec![poly(&[1, -5, 5])]);
}

#[test]
fn blocks_merge_in_any_evaluation_order() {
    let cfg = SearchConfig::quadratic();
    let blocks = cfg.blocks();
    let mut parts: Vec<_> = blocks.iter().rev().map(|b| (*b, search_block(&cfg, b).unwrap())).collect();
    parts.sort_by_key(|(b, _)| *b);
    let merged = SearchOutcome::merge(cfg.run_kind(), parts.into_iter().map(|(_, o)| o));
    assert_eq!(merged, search_quadratic(&cfg).unwrap());
}

/// Every quadratic and cubic with all roots real, at least 4/3, smallest
/// root below `d_max` and the orbit inequality holding in floating point
/// (with a small tolerance), found by a plain window enumeration.
fn gap_oracle(d_max: f64) -> Vec<Vec<i64>> {
    let f_max = d_max * d_max / (2.0 - d_max * d_max);
    let lo = 4.0 / 3.0;
    let orbit_ok = |r: &[f64]| {
        let lhs: f64 = r.iter().map(|g| 1.0 / (g * g)).sum();
        let max = r.iter().cloned().fold(0.0, f64::max);
        lhs <= 0.5 * (1.0 + 1.0 / max) + 1e-9
    };
    let mut out = Vec::new();
    for a in 1..=(2.0 * f_max) as i64 + 1 {
        for b in 1..=a * a / 4 {
            let disc = (a * a - 4 * b) as f64;
            if disc < 0.0 {
                continue;
            }
            let r = [(a as f64 - disc.sqrt()) / 2.0, (a as f64 + disc.sqrt()) / 2.0];
            if r[0] >= lo - 1e-9 && r[0] <= d_max + 1e-9 && orbit_ok(&r) {
                out.push(vec![1, -a, b]);
            }
        }
    }
    for a in 1..=(3.0 * f_max) as i64 + 1 {
        for b in 1..=a * a / 3 {
            let p0 = |x: f64| ((x - a as f64) * x + b as f64) * x;
            let c_lo = (p0(lo) - 1e-6).ceil().max(1.0) as i64;
            let c_hi = (p0(d_max) + 1e-6).floor() as i64;
            for c in c_lo..=c_hi {
                if let Some(r) = cubic_roots(a as f64, b as f64, c as f64) {
                    if r[0] >= lo - 1e-9 && r[0] <= d_max + 1e-9 && orbit_ok(&r) {
                        out.push(vec![1, -a, b, -c]);
                    }
                }
            }
        }
    }
    out
}

#[test]
fn gap_envelope_keeps_every_float_candidate() {
    for (n, d) in [(48, 25), (190, 100), (1917, 1000)] {
        // d_max = sqrt(n/d)
        let d_max = Surd::sqrt_of(&q(n, d)).unwrap();
        let cfg = GapConfig::new(d_max.clone());
        let out = search_gap(&cfg).unwrap();
        let examined: std::collections::HashSet<IntPoly> =
            out.survivors.iter().chain(&out.rejected).map(|c| c.poly.clone()).collect();
        let oracle = gap_oracle(d_max.to_f64());
        assert!(!oracle.is_empty());
        for p in &oracle {
            let p = poly(p);
            // boundary cases of the float tolerance are decided exactly
            let inside = examined.contains(&p);
            if !inside {
                let r = fgap_core::algnum::AlgebraicNumber::real_roots_of(&p);
                if let Ok(r) = r {
                    assert!(r[0].cmp_surd(&d_max) != std::cmp::Ordering::Less, "missed {p}");
                }
            }
        }
    }
}
