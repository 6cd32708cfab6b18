//! One function per subcommand, each producing a [`Report`].

use fgap_core::algnum::{
    factor_over_integers, is_d_number, is_irreducible, precision_cap, ratio_integrality_oracle, AlgebraicNumber,
    IntPoly, Surd,
};
use fgap_core::fusionring::{
    builtin_ring, characters_numeric, DEFAULT_PERRON_TOL, formal_codegrees, fp_dimension_vector, rep_g_codegrees, FusionRing,
};
use fgap_core::gapsearch::{
    gap_blocks, gap_degree_bound, gap_largest_root_bound, merge_gap, search_block, search_gap_block, Candidate,
    GapConfig, MainIneqForm, SearchConfig, SearchDegree, SearchOutcome,
};
use fgap_core::obstruct::{ffib_fpdim_bound, pseudo_unitary_rational, spectrum_obstruction_report, Check, Margin};
use fgap_core::BigRational;
use num_traits::One;
use serde_json::{json, Value};

use crate::error::{CliError, CliResult};
use crate::format::{emit_ring, format_poly_coeffs, load_ring};
use crate::parallel::map_ordered;
use crate::report::{algebraic, float, interval, poly, rational, surd, Report};

pub const OBSTRUCTED: &str = "no spherical categorification";
pub const UNOBSTRUCTED: &str = "no obstruction";

fn check(c: &Check) -> Value {
    let margin = match &c.margin {
        Margin::Exact(q) => json!({ "exact": q.to_string(), "approx": float(fgap_core::algnum::rat_to_f64(q)) }),
        Margin::Enclosure(iv) => json!({ "enclosure": interval(iv) }),
        Margin::None => Value::Null,
    };
    json!({
        "check": c.kind.name(),
        "status": c.status.as_str(),
        "margin": margin,
        "detail": c.detail,
    })
}

fn factorization(p: &IntPoly) -> CliResult<Value> {
    let factors = factor_over_integers(p)?;
    Ok(Value::Array(
        factors
            .iter()
            .map(|(f, m)| json!({ "factor": f.to_string(), "coeffs": format_poly_coeffs(f), "multiplicity": m }))
            .collect(),
    ))
}

/// Spectrum, FP data, sum identity, numeric cross-check and obstruction
/// report of a ring file (or a bundled ring name).
pub fn analyze(ring_arg: &str, tol: f64, expect_pass: bool) -> CliResult<Report> {
    let mut rep = Report::new("analyze");
    rep.config.insert("ring".into(), json!(ring_arg));
    rep.config.insert("tolerance".into(), float(tol));
    rep.config.insert("precision_cap".into(), rational(&precision_cap()));
    rep.config.insert("expect_pass".into(), json!(expect_pass));
    let ring = load_ring(ring_arg)?;
    analyze_ring(&mut rep, &ring, tol)?;
    if expect_pass && rep.results["verdict"] == OBSTRUCTED {
        rep.exit_code = 3;
    }
    Ok(rep)
}

fn analyze_ring(rep: &mut Report, ring: &FusionRing, tol: f64) -> CliResult<()> {
    let r = ring.rank();
    rep.results.insert("rank".into(), json!(r));
    rep.results.insert("commutative".into(), json!(ring.is_commutative()));
    let spectrum = formal_codegrees(ring)?;

    let orbits: Vec<Value> = spectrum
        .orbits()
        .iter()
        .enumerate()
        .map(|(i, o)| {
            json!({
                "index": i,
                "poly": o.poly.to_string(),
                "coeffs": format_poly_coeffs(&o.poly),
                "multiplicity": o.multiplicity,
                "roots": o.roots.iter().map(|x| float(x.to_f64())).collect::<Vec<_>>(),
                "mean": rational(&o.mean()),
            })
        })
        .collect();
    let (fo, fr) = spectrum.fp_position();
    rep.results.insert(
        "spectrum".into(),
        json!({
            "charpoly": poly(spectrum.charpoly()),
            "codegrees": spectrum.approx().iter().map(|&x| float(x)).collect::<Vec<_>>(),
            "orbits": orbits,
            "fp_codegree": { "orbit": fo, "root": fr, "value": algebraic(spectrum.fp_codegree()) },
            "min_codegree": algebraic(spectrum.min_codegree()),
        }),
    );

    let er1 = spectrum.elementary(r - 1);
    let er = spectrum.elementary(r);
    rep.results.insert(
        "sum_identity".into(),
        json!({
            "e_r_minus_1": er1.to_string(),
            "e_r": er.to_string(),
            "holds": spectrum.sum_identity_holds(),
            "inverse_sum": rational(&spectrum.inverse_sum()),
            "inverse_square_sum": rational(&spectrum.inverse_square_sum()),
        }),
    );

    let fp = fp_dimension_vector(ring, DEFAULT_PERRON_TOL)?;
    rep.results.insert(
        "fp".into(),
        json!({
            "dims": fp.dims.iter().map(|&x| float(x)).collect::<Vec<_>>(),
            "fpdim": algebraic(&fp.fpdim),
            "perron_enclosure": interval(&fp.perron_enclosure),
            "certified": fp.certified,
            "iterations": fp.iterations,
        }),
    );

    let table = characters_numeric(ring, tol)?;
    let deviation = table
        .codegrees
        .iter()
        .zip(spectrum.approx())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0f64, f64::max);
    let agrees = table.codegrees.len() == spectrum.approx().len() && deviation <= tol * spectrum.approx().iter().fold(1.0f64, |m, &x| m.max(x.abs()));
    rep.results.insert(
        "characters".into(),
        json!({
            "codegrees": table.codegrees.iter().map(|&x| float(x)).collect::<Vec<_>>(),
            "max_residual": float(table.max_residual),
            "max_deviation": float(deviation),
            "agrees_with_exact": agrees,
        }),
    );

    let report = spectrum_obstruction_report(&spectrum)?;
    let orbit_reports: Vec<Value> = report
        .orbits
        .iter()
        .map(|o| {
            json!({
                "index": o.index,
                "poly": o.poly.to_string(),
                "multiplicity": o.multiplicity,
                "contains_fpdim": o.contains_fpdim,
                "survives": o.survives(),
                "checks": o.checks.iter().map(check).collect::<Vec<_>>(),
            })
        })
        .collect();
    rep.results.insert(
        "obstruction".into(),
        json!({
            "orbits": orbit_reports,
            "global": report.global.iter().map(check).collect::<Vec<_>>(),
            "surviving_orbits": report.surviving_orbits(),
        }),
    );
    let verdict = if report.no_spherical_categorification() {
        OBSTRUCTED
    } else {
        UNOBSTRUCTED
    };
    rep.results.insert("verdict".into(), json!(verdict));

    let z = ring.codegree_matrix();
    let rows: Vec<Value> = (0..z.dim())
        .map(|i| Value::Array((0..z.dim()).map(|j| json!(z.get(i, j).to_string())).collect()))
        .collect();
    rep.certificates.insert("codegree_matrix".into(), Value::Array(rows));
    rep.certificates.insert("charpoly".into(), poly(spectrum.charpoly()));
    rep.certificates.insert("factorization".into(), factorization(spectrum.charpoly())?);
    Ok(())
}

/// Options shared by the fixed-degree searches.
#[derive(Clone, Debug, Default)]
pub struct GridOptions {
    pub d_lo: Option<Surd>,
    pub d_hi: Option<Surd>,
    pub a_min: Option<i64>,
    pub a_max: Option<i64>,
    pub no_window_constraint: bool,
    pub no_main_inequality: bool,
    pub main_form: MainIneqForm,
    pub audit: bool,
}

impl GridOptions {
    pub fn config(&self, degree: SearchDegree) -> SearchConfig {
        let mut cfg = SearchConfig::default_for(degree);
        if let Some(x) = &self.d_lo {
            cfg.d_lo = x.clone();
        }
        if let Some(x) = &self.d_hi {
            cfg.d_hi = x.clone();
        }
        if let Some(a) = self.a_min {
            cfg.a_min = a;
        }
        if let Some(a) = self.a_max {
            cfg.a_max = a;
        }
        cfg.window_constraint = !self.no_window_constraint;
        cfg.main_inequality = !self.no_main_inequality;
        cfg.main_form = self.main_form;
        cfg
    }
}

#[derive(Clone, Debug, Default)]
pub struct GapOptions {
    pub d_max: Option<Surd>,
    pub inclusive: bool,
    pub max_degree: Option<usize>,
    pub audit: bool,
}

impl GapOptions {
    pub fn config(&self) -> GapConfig {
        let mut cfg = match &self.d_max {
            Some(d) => GapConfig::new(d.clone()),
            None => GapConfig::default(),
        };
        cfg.inclusive = self.inclusive;
        cfg.max_degree = self.max_degree;
        cfg
    }
}

fn trace(c: &Candidate) -> Value {
    json!({
        "coeffs": format_poly_coeffs(&c.poly),
        "trace": c.trace.iter().map(|(f, ok)| json!({ "filter": f.name(), "passed": ok })).collect::<Vec<_>>(),
    })
}

fn outcome_results(rep: &mut Report, out: &SearchOutcome, audit: bool) {
    rep.results.insert("run_kind".into(), json!(out.kind.name()));
    if let Some(w) = out.kind.watermark() {
        rep.results.insert("watermark".into(), json!(w));
    }
    rep.results.insert("examined".into(), json!(out.examined));
    let survivors: Vec<Value> = out
        .survivors
        .iter()
        .map(|c| {
            let mut v = poly(&c.poly);
            if let Some((lo, hi)) = &c.extremes {
                v["smallest_root"] = algebraic(lo);
                v["largest_root"] = algebraic(hi);
            }
            v
        })
        .collect();
    rep.results.insert("survivors".into(), Value::Array(survivors));
    let mut rejections = serde_json::Map::new();
    for (f, n) in out.rejection_counts() {
        rejections.insert(f.name().into(), json!(n));
    }
    rep.results.insert("rejections".into(), Value::Object(rejections));
    rep.results.insert("warnings".into(), json!(out.warnings));
    rep.certificates.insert(
        "survivor_traces".into(),
        Value::Array(out.survivors.iter().map(trace).collect()),
    );
    if audit {
        rep.certificates.insert(
            "rejected_traces".into(),
            Value::Array(out.rejected.iter().map(trace).collect()),
        );
    }
}

/// Fixed-degree search over the grid, blocks spread over `threads`.
pub fn search_grid(degree: SearchDegree, opts: &GridOptions, threads: usize) -> CliResult<Report> {
    let name = match degree {
        SearchDegree::Quadratic => "search quadratic",
        SearchDegree::Cubic => "search cubic",
    };
    let mut rep = Report::new(name);
    let cfg = opts.config(degree);
    rep.config.insert("degree".into(), json!(degree.degree()));
    rep.config.insert("d_lo".into(), surd(&cfg.d_lo));
    rep.config.insert("d_hi".into(), surd(&cfg.d_hi));
    rep.config.insert("a_min".into(), json!(cfg.a_min));
    rep.config.insert("a_max".into(), json!(cfg.a_max));
    rep.config.insert("window_constraint".into(), json!(cfg.window_constraint));
    rep.config.insert("main_inequality".into(), json!(cfg.main_inequality));
    rep.config.insert("main_form".into(), json!(cfg.main_form.name()));
    rep.config.insert("audit".into(), json!(opts.audit));
    cfg.validate()?;
    let blocks = cfg.blocks();
    let parts = map_ordered(&blocks, threads, |b| search_block(&cfg, b))?;
    let out = SearchOutcome::merge(cfg.run_kind(), parts);
    outcome_results(&mut rep, &out, opts.audit);
    Ok(rep)
}

/// All-degree search below `d_max`.
pub fn search_gap(opts: &GapOptions, threads: usize) -> CliResult<Report> {
    let mut rep = Report::new("search gap");
    let cfg = opts.config();
    rep.config.insert("d_max".into(), surd(&cfg.d_max));
    rep.config.insert("inclusive".into(), json!(cfg.inclusive));
    rep.config.insert("max_degree".into(), json!(cfg.max_degree));
    rep.config.insert("audit".into(), json!(opts.audit));
    let kmax = gap_degree_bound(&cfg)?;
    rep.results.insert("degree_bound".into(), json!(kmax));
    rep.results.insert("largest_root_bound".into(), rational(&gap_largest_root_bound(&cfg)?));
    let blocks = gap_blocks(&cfg)?;
    let parts = map_ordered(&blocks, threads, |b| search_gap_block(&cfg, b))?;
    let out = merge_gap(&cfg, parts)?;
    outcome_results(&mut rep, &out, opts.audit);
    Ok(rep)
}

/// d-number verdict by the fast path and by the resultant oracle.
pub fn dnumber(p: &IntPoly) -> CliResult<Report> {
    let mut rep = Report::new("dnumber");
    rep.config.insert("poly".into(), poly(p));
    let fast = is_d_number(p)?;
    let oracle = ratio_integrality_oracle(&p.squarefree_part().primitive_part())?;
    let method = match p.degree() {
        1 => "linear",
        2 => "b | a^2",
        3 => "c | a^3 and c^2 | b^3",
        _ => "resultant oracle",
    };
    rep.results.insert("degree".into(), json!(p.degree()));
    rep.results.insert("irreducible".into(), json!(is_irreducible(p)?));
    rep.results.insert("d_number".into(), json!(fast));
    rep.results.insert("fast_path".into(), json!({ "criterion": method, "verdict": fast }));
    rep.results.insert("oracle".into(), json!({ "criterion": "resultant oracle", "verdict": oracle }));
    rep.results.insert("agree".into(), json!(fast == oracle));
    rep.certificates.insert("factorization".into(), factorization(p)?);
    Ok(rep)
}

/// Codegrees `|G|/|C|` of `Rep(G)` and the pseudo-unitary inequality at
/// `f = |G|`.
pub fn repg(classes: &[u64]) -> CliResult<Report> {
    let mut rep = Report::new("repg");
    rep.config.insert("classes".into(), json!(classes));
    let data = rep_g_codegrees(classes)?;
    let inv: BigRational = data.codegrees.iter().map(|q| q.recip()).sum();
    let inv2: BigRational = data.codegrees.iter().map(|q| (q * q).recip()).sum();
    let order = BigRational::from_integer(data.order.clone());
    let pseudo = pseudo_unitary_rational(&data.codegrees, &order)?;
    rep.results.insert("order".into(), json!(data.order.to_string()));
    rep.results.insert(
        "codegrees".into(),
        Value::Array(data.codegrees.iter().map(rational).collect()),
    );
    rep.results.insert("integral".into(), json!(data.integral));
    rep.results.insert("inverse_sum".into(), rational(&inv));
    rep.results.insert("inverse_sum_is_one".into(), json!(inv.is_one()));
    rep.results.insert("inverse_square_sum".into(), rational(&inv2));
    rep.results.insert("pseudo_unitary".into(), check(&pseudo));
    Ok(rep)
}

/// FPdim bound `M` for the largest root of an irreducible polynomial.
pub fn ffib_bound(p: &IntPoly) -> CliResult<Report> {
    let mut rep = Report::new("ffib-bound");
    rep.config.insert("poly".into(), poly(p));
    if !p.is_monic() {
        return Err(CliError::input(format!("{p} is not monic")));
    }
    if !is_irreducible(p)? {
        return Err(CliError::input(format!("{p} is not irreducible")));
    }
    let roots = AlgebraicNumber::real_roots_of(p)?;
    let Some(d) = roots.last() else {
        return Err(CliError::input(format!("{p} has no real root")));
    };
    let b = ffib_fpdim_bound(d)?;
    rep.results.insert("largest_conjugate".into(), algebraic(&b.largest_conjugate));
    rep.results.insert("power".into(), json!(b.power));
    rep.results.insert("power_poly".into(), poly(&b.power_poly));
    rep.results.insert("bound".into(), json!(b.bound.to_string()));
    Ok(rep)
}

/// A builtin family member as a ring file.
pub fn builtin(family: &str, n: u32) -> CliResult<Report> {
    let mut rep = Report::new("builtin");
    rep.config.insert("family".into(), json!(family));
    rep.config.insert("n".into(), json!(n));
    let ring = builtin_ring(family, n)?;
    rep.results.insert("ring_file".into(), json!(emit_ring(&ring)));
    Ok(rep)
}

/// Text form of a `builtin` report: the ring file, with the configuration
/// as leading comments.
pub fn builtin_text(rep: &Report) -> String {
    let mut s = format!("# command: {}\n", rep.command);
    for (k, v) in &rep.config {
        match v.as_str() {
            Some(t) => s.push_str(&format!("# {k}: {t}\n")),
            None => s.push_str(&format!("# {k}: {v}\n")),
        }
    }
    s.push_str(rep.results["ring_file"].as_str().unwrap_or(""));
    s
}
