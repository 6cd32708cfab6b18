//! End-to-end acceptance run: one pass/fail line per criterion.

use std::io::Write;
use std::process::Command;
use std::time::{Duration, Instant};

use fgap_core::algnum::{is_d_number, ratio_integrality_oracle, IntPoly, Surd};
use fgap_core::obstruct::{threshold, ThresholdKind};
use fgap_core::{BigInt, BigRational};
use num_traits::{One, Signed, Zero};
use serde_json::Value;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($msg)+));
        }
    };
}

fn fgap_raw(args: &[&str], threads: &str) -> Result<(i32, Vec<u8>), String> {
    let o = Command::new(env!("CARGO_BIN_EXE_fgap"))
        .args(args)
        .env("FGAP_THREADS", threads)
        .output()
        .map_err(|e| e.to_string())?;
    Ok((o.status.code().unwrap_or(-1), o.stdout))
}

/// Runs with `--json`; returns the parsed report, exit status and wall time.
fn fgap_json(args: &[&str], threads: &str) -> Result<(Value, i32, Duration), String> {
    let mut all = args.to_vec();
    all.push("--json");
    let t = Instant::now();
    let (code, out) = fgap_raw(&all, threads)?;
    let elapsed = t.elapsed();
    let v = serde_json::from_slice(&out).map_err(|e| format!("{args:?}: bad JSON ({e})"))?;
    Ok((v, code, elapsed))
}

fn survivors(v: &Value) -> Vec<String> {
    v["results"]["survivors"]
        .as_array()
        .map(|a| a.iter().map(|s| s["coeffs"].as_str().unwrap_or("?").to_string()).collect())
        .unwrap_or_default()
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn str_at<'a>(v: &'a Value, path: &[&str]) -> &'a str {
    let mut cur = v;
    for p in path {
        cur = &cur[*p];
    }
    cur.as_str().unwrap_or("")
}

fn c1_quadratic() -> Outcome {
    let (v, code, t) = fgap_json(&["search", "quadratic"], "1")?;
    ensure!(code == 0, "exit {code}");
    let s = survivors(&v);
    ensure!(s == ["1,-5,5"], "survivors {s:?}");
    ensure!(v["results"]["run_kind"] == "certificate", "run kind {}", v["results"]["run_kind"]);
    ensure!(t <= Duration::from_secs(2), "took {t:?} > 2 s");
    Ok(format!("survivors [x^2-5x+5], {:.3} s <= 2 s", t.as_secs_f64()))
}

fn c2_cubic() -> Outcome {
    let (v, code, t) = fgap_json(&["search", "cubic"], "1")?;
    ensure!(code == 0, "exit {code}");
    let s = survivors(&v);
    ensure!(s.is_empty(), "survivors {s:?}");
    ensure!(v["results"]["run_kind"] == "certificate", "run kind {}", v["results"]["run_kind"]);
    ensure!(t <= Duration::from_secs(10), "took {t:?} > 10 s");
    Ok(format!(
        "no survivors among {} candidates, {:.3} s <= 10 s single-threaded",
        v["results"]["examined"],
        t.as_secs_f64()
    ))
}

fn c3_gap() -> Outcome {
    let (v, code, t1) = fgap_json(&["search", "gap", "--dmax", "4√3/5"], "1")?;
    ensure!(code == 0, "exit {code}");
    let s = survivors(&v);
    ensure!(s == ["1,-5,5"], "d_max 4√3/5: survivors {s:?}");
    let (w, code, t2) = fgap_json(&["search", "gap", "--dmax", "1.34"], "1")?;
    ensure!(code == 0, "exit {code}");
    let s = survivors(&w);
    ensure!(s.is_empty(), "d_max 1.34: survivors {s:?}");
    Ok(format!(
        "4√3/5 -> [x^2-5x+5] ({:.3} s), 1.34 -> [] ({:.3} s)",
        t1.as_secs_f64(),
        t2.as_secs_f64()
    ))
}

fn c4_fibonacci() -> Outcome {
    let (v, code, _) = fgap_json(&["analyze", "fibonacci"], "1")?;
    ensure!(code == 0, "exit {code}");
    let r = &v["results"];
    ensure!(str_at(r, &["spectrum", "charpoly", "coeffs"]) == "1,-5,5", "charpoly {}", r["spectrum"]["charpoly"]);
    let root5 = 5f64.sqrt();
    let expected = [(5.0 - root5) / 2.0, (5.0 + root5) / 2.0];
    for (x, want) in [1.381966011, 3.618033989].iter().zip(expected) {
        ensure!((x - want).abs() < 1e-9, "oracle codegree {want} vs reference {x}");
    }
    let got: Vec<f64> = r["spectrum"]["codegrees"].as_array().ok_or("no codegrees")?.iter().filter_map(Value::as_f64).collect();
    ensure!(got.len() == 2, "codegrees {got:?}");
    for (g, want) in got.iter().zip(expected) {
        ensure!((g - want).abs() < 1e-9, "codegree {g} vs {want}");
    }
    let si = &r["sum_identity"];
    ensure!(si["e_r_minus_1"] == "5" && si["e_r"] == "5" && si["holds"] == true, "sum identity {si}");
    ensure!(r["verdict"] == "no obstruction", "verdict {}", r["verdict"]);
    ensure!(r["characters"]["agrees_with_exact"] == true, "numeric characters disagree");
    Ok(format!("charpoly x^2-5x+5, codegrees {got:?} (tol 1e-9), e1 = e2 = 5, no obstruction"))
}

fn c5_kn() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    for n in 2..=10u32 {
        let (code, text) = fgap_raw(&["builtin", "kn", "--n", &n.to_string()], "1")?;
        ensure!(code == 0, "builtin kn {n}: exit {code}");
        let path = dir.path().join(format!("k{n}.ring"));
        std::fs::write(&path, text).map_err(|e| e.to_string())?;
        let (v, code, _) = fgap_json(&["analyze", path.to_str().unwrap(), "--expect-pass"], "1")?;
        ensure!(code == 3, "K_{n}: exit {code}, expected 3");
        let r = &v["results"];
        let m = n * n + 4;
        let want = format!("1,-{m},{m}");
        ensure!(str_at(r, &["spectrum", "charpoly", "coeffs"]) == want, "K_{n}: charpoly {}", r["spectrum"]["charpoly"]);
        ensure!(r["verdict"] == "no spherical categorification", "K_{n}: verdict {}", r["verdict"]);
        if n == 2 {
            // sum 1/f^2 = (e1^2 - 2 e2)/e2^2 with e1 = e2 = 8
            let lhs = q(64 - 16, 64);
            ensure!(lhs == q(3, 4), "oracle lhs");
            ensure!(r["sum_identity"]["inverse_square_sum"] == "3/4", "K_2 lhs {}", r["sum_identity"]["inverse_square_sum"]);
            let f = 4.0 + 2.0 * 2f64.sqrt();
            let rhs = (1.0 + 1.0 / f) / 2.0;
            ensure!(rhs < 0.574, "oracle rhs {rhs}");
            let checks = r["obstruction"]["orbits"][0]["checks"].as_array().ok_or("no checks")?;
            let failing: Vec<&Value> = checks
                .iter()
                .filter(|c| c["check"] == "pseudo-unitary" && c["status"] == "fail")
                .collect();
            ensure!(failing.len() == 1, "K_2: {} failing pseudo-unitary checks", failing.len());
            let c = failing[0];
            ensure!(c["detail"].as_str().unwrap_or("").contains("near 6.828427"), "K_2: failing check at {}", c["detail"]);
            let hi = c["margin"]["enclosure"][1].as_f64().ok_or("no margin")?;
            ensure!(hi < 0.0 && 0.75 + hi < 0.574, "K_2: rhs enclosure top {}", 0.75 + hi);
            ensure!(((0.75 + hi) - rhs).abs() < 1e-9, "K_2: rhs {} vs oracle {rhs}", 0.75 + hi);
        }
    }
    Ok("n = 2..10 obstructed, charpoly x^2-(n^2+4)x+(n^2+4); K_2 pseudo-unitary fails at 4+2√2 with 3/4 > 0.5732".into())
}

fn c6_repg() -> Outcome {
    // dihedral group of order 2p: sum |C|^2 = p^2 + 2(p - 1) + 1
    let cases: [(&str, u64, &[u64]); 3] = [("1,2,3", 3, &[6, 3, 2]), ("1,2,2,5", 5, &[10, 5, 5, 2]), ("1,2,2,2,7", 7, &[14, 7, 7, 7, 2])];
    let mut notes = Vec::new();
    for (classes, p, codegrees) in cases {
        let sizes: Vec<u64> = classes.split(',').map(|s| s.parse().unwrap()).collect();
        let order: u64 = sizes.iter().sum();
        ensure!(order == 2 * p, "oracle order");
        let want_codegrees: Vec<u64> = sizes.iter().map(|c| order / c).collect();
        ensure!(want_codegrees == codegrees, "oracle codegrees {want_codegrees:?}");
        let inv: BigRational = sizes.iter().map(|&c| q(c as i64, order as i64)).sum();
        let inv2: BigRational = sizes.iter().map(|&c| q((c * c) as i64, (order * order) as i64)).sum();
        let closed = q((p * p + 2 * (p - 1) + 1) as i64, (4 * p * p) as i64);
        ensure!(inv2 == closed, "oracle closed form for p = {p}");

        let (v, code, _) = fgap_json(&["repg", "--classes", classes], "1")?;
        ensure!(code == 0, "exit {code}");
        let r = &v["results"];
        let got: Vec<String> = r["codegrees"].as_array().ok_or("no codegrees")?.iter().map(|x| x.as_str().unwrap_or("").to_string()).collect();
        let want: Vec<String> = codegrees.iter().map(|c| c.to_string()).collect();
        ensure!(got == want, "{classes}: codegrees {got:?}");
        ensure!(inv.is_one() && r["inverse_sum"] == "1", "{classes}: inverse sum {}", r["inverse_sum"]);
        ensure!(r["inverse_square_sum"] == inv2.to_string().as_str(), "{classes}: {} vs {inv2}", r["inverse_square_sum"]);
        if p == 5 {
            ensure!(inv2 == q(1, 4) + q(1, 10) - q(1, 100) && inv2 == q(17, 50), "D5 value");
        }
        notes.push(format!("D{p}: {inv2}"));
    }
    Ok(format!("codegrees match, sum 1/f = 1, sum 1/f^2 = {}", notes.join(", ")))
}

fn c7_cyclic() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    for n in 2..=8usize {
        let (code, text) = fgap_raw(&["builtin", "cyclic", "--n", &n.to_string()], "1")?;
        ensure!(code == 0, "builtin cyclic {n}: exit {code}");
        let path = dir.path().join(format!("z{n}.ring"));
        std::fs::write(&path, text).map_err(|e| e.to_string())?;
        let (v, code, _) = fgap_json(&["analyze", path.to_str().unwrap(), "--expect-pass"], "1")?;
        ensure!(code == 0, "Z/{n}: exit {code}");
        let r = &v["results"];
        // (x - n)^n
        let mut want = vec![BigInt::one()];
        for _ in 0..n {
            let mut next = vec![BigInt::zero(); want.len() + 1];
            for (i, c) in want.iter().enumerate() {
                next[i] += c;
                next[i + 1] -= c * BigInt::from(n);
            }
            want = next;
        }
        let want: Vec<String> = want.iter().map(|c| c.to_string()).collect();
        ensure!(str_at(r, &["spectrum", "charpoly", "coeffs"]) == want.join(","), "Z/{n}: charpoly {}", r["spectrum"]["charpoly"]);
        let orbits = r["spectrum"]["orbits"].as_array().ok_or("no orbits")?;
        ensure!(orbits.len() == 1 && orbits[0]["multiplicity"] == n && orbits[0]["coeffs"] == format!("1,-{n}"), "Z/{n}: orbits {orbits:?}");
        ensure!(orbits[0]["mean"] == n.to_string().as_str(), "Z/{n}: mean {}", orbits[0]["mean"]);
        let checks = r["obstruction"]["orbits"][0]["checks"].as_array().ok_or("no checks")?;
        let mean = checks.iter().find(|c| c["check"] == "mean-rank").ok_or("no mean-rank check")?;
        ensure!(mean["status"] == "pass" && mean["margin"]["exact"] == "0", "Z/{n}: mean-rank {mean}");
        ensure!(r["verdict"] == "no obstruction", "Z/{n}: verdict {}", r["verdict"]);
    }
    Ok("n = 2..8: spectrum {n}^n, orbit mean = rank (margin 0), no obstruction".into())
}

fn c8_dnumber_sweep() -> Outcome {
    let t = Instant::now();
    let mut total = 0u64;
    let mut positive = 0u64;
    let range = -10i64..=10;
    let mut polys: Vec<Vec<i64>> = Vec::new();
    for a in range.clone() {
        polys.push(vec![1, a]);
        for b in range.clone() {
            polys.push(vec![1, a, b]);
            for c in range.clone() {
                polys.push(vec![1, a, b, c]);
            }
        }
    }
    for coeffs in polys {
        if *coeffs.last().unwrap() == 0 {
            continue;
        }
        let p = IntPoly::from_high_first(&coeffs);
        if !p.is_squarefree() {
            continue;
        }
        total += 1;
        let fast = is_d_number(&p).map_err(|e| format!("{coeffs:?}: {e}"))?;
        let oracle = ratio_integrality_oracle(&p).map_err(|e| format!("{coeffs:?}: {e}"))?;
        ensure!(fast == oracle, "{coeffs:?}: fast {fast} vs oracle {oracle}");
        positive += u64::from(fast);
    }
    let elapsed = t.elapsed();
    ensure!(elapsed <= Duration::from_secs(60), "took {elapsed:?} > 60 s");
    Ok(format!(
        "{total} polynomials, 100% agreement ({positive} d-number), {:.1} s <= 60 s",
        elapsed.as_secs_f64()
    ))
}

/// Largest `M` with `M^i | c_i`, by trial over `1..=|c_1|`.
fn divisor_oracle(c: &[i128]) -> i128 {
    let bound = c.iter().map(|x| x.abs()).filter(|&x| x > 0).min().unwrap_or(1);
    (1..=bound)
        .rev()
        .find(|&m| c.iter().enumerate().all(|(i, &ci)| ci % m.pow(i as u32 + 1) == 0))
        .unwrap_or(1)
}

fn c9_ffib() -> Outcome {
    // x - a: d = a, power a, d^a.  x^2 - 5x + 5: largest root 3.618, power 3,
    // d^3 has trace p_3 = e1 p_2 - e2 p_1 with p_1 = 5, p_2 = 15, norm 5^3.
    let (p1, p2) = (5i128, 5 * 5 - 2 * 5);
    let p3 = 5 * p2 - 5 * p1;
    let cases: [(&str, i128); 3] = [
        ("1,-5,5", divisor_oracle(&[-p3, 125])),
        ("1,-2", divisor_oracle(&[-(2i128.pow(2))])),
        ("1,-3", divisor_oracle(&[-(3i128.pow(3))])),
    ];
    let expected = [5, 4, 27];
    let mut got = Vec::new();
    for ((poly, oracle), want) in cases.iter().zip(expected) {
        ensure!(*oracle == want, "oracle for {poly} gives {oracle}, reference {want}");
        let (v, code, _) = fgap_json(&["ffib-bound", "--poly", poly], "1")?;
        ensure!(code == 0, "{poly}: exit {code}");
        let m = v["results"]["bound"].as_str().unwrap_or("");
        ensure!(m == oracle.to_string(), "{poly}: M = {m}, oracle {oracle}");
        got.push(format!("{poly} -> {m}"));
    }
    Ok(got.join(", "))
}

fn c10_thresholds() -> Outcome {
    let gdim = |k: u64| threshold(ThresholdKind::GdimK, &BigRational::from_integer(BigInt::from(k))).map_err(|e| e.to_string());
    let oracle = |k: f64| ((16.0 * k - 16.0) / (8.0 * k - 7.0)).sqrt();
    let t2 = gdim(2)?;
    ensure!(t2.as_rational() == Some(&q(4, 3)), "k = 2 gives {t2}");
    for (k, reference) in [(2u64, 4.0 / 3.0), (3, 1.371989), (4, 1.385641)] {
        let v = gdim(k)?.to_f64();
        ensure!((v - oracle(k as f64)).abs() < 1e-9, "k = {k}: {v} vs oracle {}", oracle(k as f64));
        ensure!((v - reference).abs() < 1e-6, "k = {k}: {v} vs {reference}");
    }
    ensure!(gdim(3)? == Surd::sqrt_of(&q(32, 17)).unwrap(), "k = 3 is not sqrt(32/17)");
    ensure!(gdim(4)? == Surd::sqrt_of(&q(48, 25)).unwrap(), "k = 4 is not sqrt(48/25)");
    let root2 = Surd::sqrt_of(&q(2, 1)).unwrap();
    let ks = [2u64, 3, 4, 10, 1_000, 1_000_000];
    let mut prev: Option<Surd> = None;
    for k in ks {
        let t = gdim(k)?;
        ensure!((t.to_f64() - oracle(k as f64)).abs() < 1e-9, "k = {k}: value");
        ensure!(t.cmp_surd(&root2).map_err(|e| e.to_string())?.is_lt(), "k = {k}: not below sqrt 2");
        if let Some(p) = &prev {
            ensure!(p.cmp_surd(&t).map_err(|e| e.to_string())?.is_lt(), "not increasing at k = {k}");
        }
        prev = Some(t);
    }
    Ok(format!("4/3, sqrt(32/17), sqrt(48/25) within 1e-9; increasing and < sqrt 2 at k = {ks:?}"))
}

fn c11_determinism() -> Outcome {
    let runs: [&[&str]; 5] = [
        &["search", "quadratic"],
        &["search", "cubic"],
        &["search", "gap"],
        &["search", "gap", "--dmax", "1.34"],
        &["search", "quadratic", "--audit", "--json"],
    ];
    for args in runs {
        let (c1, one) = fgap_raw(args, "1")?;
        let (c8, eight) = fgap_raw(args, "8")?;
        ensure!(c1 == 0 && c8 == 0, "{args:?}: exit {c1}/{c8}");
        ensure!(one == eight, "{args:?}: reports differ between 1 and 8 threads");
    }
    Ok("quadratic, cubic, gap (4√3/5, 1.34), audit JSON: byte-identical at FGAP_THREADS = 1 and 8".into())
}

/// Written to stderr directly so the lines show up without `--nocapture`.
fn report(line: String) {
    let _ = writeln!(std::io::stderr(), "{line}");
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 11] = [
        ("search quadratic", c1_quadratic),
        ("search cubic", c2_cubic),
        ("search gap", c3_gap),
        ("analyze Fibonacci", c4_fibonacci),
        ("analyze K_n", c5_kn),
        ("repg dihedral", c6_repg),
        ("cyclic rings", c7_cyclic),
        ("d-number sweep", c8_dnumber_sweep),
        ("ffib-bound", c9_ffib),
        ("threshold table", c10_thresholds),
        ("determinism", c11_determinism),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = run();
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(note) => report(format!("PASS  {:>2}. {name}: {note} [{secs:.2} s]", i + 1)),
            Err(why) => {
                report(format!("FAIL  {:>2}. {name}: {why} [{secs:.2} s]", i + 1));
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
