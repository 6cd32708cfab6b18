//! Text formats: coefficient lists, real constants and ring files.

use std::fmt::Write as _;
use std::path::Path;

use fgap_core::algnum::{IntPoly, Surd};
use fgap_core::fusionring::FusionRing;
use fgap_core::{BigInt, BigRational};
use num_traits::{One, Signed, Zero};

use crate::error::{CliError, CliResult};

/// `"1,-5,5"` is `x^2 - 5x + 5`: integers separated by commas, highest
/// degree first.
pub fn parse_poly(text: &str) -> CliResult<IntPoly> {
    let mut high_first = Vec::new();
    for (i, part) in text.split(',').enumerate() {
        let part = part.trim();
        let c: BigInt = part
            .parse()
            .map_err(|_| CliError::input(format!("coefficient {} ({part:?}) is not an integer", i + 1)))?;
        high_first.push(c);
    }
    if high_first[0].is_zero() {
        return Err(CliError::input("leading coefficient is zero"));
    }
    high_first.reverse();
    Ok(IntPoly::new(high_first))
}

/// Comma-separated coefficients, highest degree first.
pub fn format_poly_coeffs(p: &IntPoly) -> String {
    p.high_first().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
}

/// Parses a constant in `Q(sqrt n)`: integers, decimals, `sqrt(q)` or
/// `√q`, `+ - * /`, parentheses and juxtaposition (`4√3/5`).
pub fn parse_real(text: &str) -> CliResult<Surd> {
    let mut p = RealParser {
        chars: text.chars().collect(),
        pos: 0,
    };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.error("unexpected character"));
    }
    Ok(v)
}

struct RealParser {
    chars: Vec<char>,
    pos: usize,
}

impl RealParser {
    fn error(&self, msg: &str) -> CliError {
        CliError::syntax(1, self.pos + 1, msg)
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn starts_with(&mut self, word: &str) -> bool {
        self.skip_ws();
        let w: Vec<char> = word.chars().collect();
        self.chars[self.pos..].starts_with(&w)
    }

    fn expr(&mut self) -> CliResult<Surd> {
        let mut v = self.term()?;
        loop {
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    let t = self.term()?;
                    v = self.combine(&v, &t, add)?;
                }
                Some('-') => {
                    self.pos += 1;
                    let t = self.term()?;
                    v = self.combine(&v, &t.neg(), add)?;
                }
                _ => return Ok(v),
            }
        }
    }

    fn term(&mut self) -> CliResult<Surd> {
        let mut v = self.unary()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    let t = self.unary()?;
                    v = self.combine(&v, &t, mul)?;
                }
                Some('/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let t = self.unary()?;
                    if t.rational_part().is_zero() && t.surd_coeff().is_zero() {
                        self.pos = at;
                        return Err(self.error("division by zero"));
                    }
                    v = self.combine(&v, &t, div)?;
                }
                Some('√' | '(') => {
                    let t = self.unary()?;
                    v = self.combine(&v, &t, mul)?;
                }
                _ if self.starts_with("sqrt") => {
                    let t = self.unary()?;
                    v = self.combine(&v, &t, mul)?;
                }
                _ => return Ok(v),
            }
        }
    }

    fn unary(&mut self) -> CliResult<Surd> {
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> CliResult<Surd> {
        if self.starts_with("sqrt") {
            self.pos += 4;
            if self.peek() != Some('(') {
                return Err(self.error("expected '(' after sqrt"));
            }
            self.pos += 1;
            let at = self.pos;
            let inner = self.expr()?;
            if self.peek() != Some(')') {
                return Err(self.error("expected ')'"));
            }
            self.pos += 1;
            return self.sqrt(&inner, at);
        }
        match self.peek() {
            Some('√') => {
                self.pos += 1;
                let at = self.pos;
                let inner = self.atom()?;
                self.sqrt(&inner, at)
            }
            Some('(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() || c == '.' => self.number(),
            Some(_) => Err(self.error("expected a number, sqrt or '('")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn number(&mut self) -> CliResult<Surd> {
        let start = self.pos;
        let mut int = String::new();
        let mut frac = String::new();
        let mut seen_dot = false;
        while let Some(&c) = self.chars.get(self.pos) {
            if c.is_ascii_digit() {
                if seen_dot {
                    frac.push(c);
                } else {
                    int.push(c);
                }
            } else if c == '.' && !seen_dot {
                seen_dot = true;
            } else {
                break;
            }
            self.pos += 1;
        }
        if int.is_empty() && frac.is_empty() {
            self.pos = start;
            return Err(self.error("malformed number"));
        }
        let digits = format!("{int}{frac}");
        let num: BigInt = digits.parse().expect("digits");
        let den = BigInt::from(10).pow(frac.len() as u32);
        Ok(Surd::rational(BigRational::new(num, den)))
    }

    fn sqrt(&self, inner: &Surd, at: usize) -> CliResult<Surd> {
        let Some(q) = inner.as_rational() else {
            return Err(CliError::syntax(1, at + 1, "sqrt of an irrational value"));
        };
        if q.is_negative() {
            return Err(CliError::syntax(1, at + 1, "sqrt of a negative value"));
        }
        Ok(Surd::sqrt_of(q)?)
    }

    fn combine(&self, x: &Surd, y: &Surd, op: fn(&Surd, &Surd, &BigInt) -> CliResult<Surd>) -> CliResult<Surd> {
        let n = match (x.surd_coeff().is_zero(), y.surd_coeff().is_zero()) {
            (true, true) => BigInt::one(),
            (false, true) => x.radicand().clone(),
            (true, false) => y.radicand().clone(),
            (false, false) if x.radicand() == y.radicand() => x.radicand().clone(),
            _ => return Err(self.error("values involve different square roots")),
        };
        op(x, y, &n)
    }
}

fn add(x: &Surd, y: &Surd, n: &BigInt) -> CliResult<Surd> {
    Ok(Surd::new(
        x.rational_part() + y.rational_part(),
        x.surd_coeff() + y.surd_coeff(),
        n.clone(),
    )?)
}

fn mul(x: &Surd, y: &Surd, n: &BigInt) -> CliResult<Surd> {
    let (a, b, c, d) = (x.rational_part(), x.surd_coeff(), y.rational_part(), y.surd_coeff());
    let nq = BigRational::from_integer(n.clone());
    Ok(Surd::new(a * c + b * d * nq, a * d + b * c, n.clone())?)
}

fn div(x: &Surd, y: &Surd, n: &BigInt) -> CliResult<Surd> {
    // multiply by the conjugate c - d sqrt n
    let (c, d) = (y.rational_part(), y.surd_coeff());
    let nq = BigRational::from_integer(n.clone());
    let norm = c * c - d * d * nq;
    if norm.is_zero() {
        return Err(CliError::input("division by zero"));
    }
    let conj = Surd::new(c / &norm, -d / &norm, n.clone())?;
    mul(x, &conj, n)
}

/// Parses a ring file and validates the ring.
///
/// ```text
/// rank 2
/// dual 0 1
/// N 0 0 : 1 0
/// N 0 1 : 0 1
/// N 1 0 : 0 1
/// N 1 1 : 1 1
/// ```
pub fn parse_ring(text: &str) -> CliResult<FusionRing> {
    let mut rank: Option<usize> = None;
    let mut dual: Option<Vec<usize>> = None;
    let mut n: Vec<u32> = Vec::new();
    let mut seen: Vec<Option<usize>> = Vec::new();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let body = raw.split('#').next().unwrap_or("");
        let toks = tokens(body);
        let Some(&(col, head)) = toks.first() else {
            continue;
        };
        match (head, rank, &dual) {
            ("rank", None, _) => {
                if toks.len() != 2 {
                    return Err(CliError::syntax(line, col, "expected `rank <r>`"));
                }
                let r = parse_index(line, toks[1])?;
                if r == 0 {
                    return Err(CliError::syntax(line, toks[1].0, "rank must be positive"));
                }
                rank = Some(r);
                n = vec![0; r * r * r];
                seen = vec![None; r * r];
            }
            ("dual", Some(r), None) => {
                let vals = toks[1..].iter().map(|&t| parse_index(line, t)).collect::<CliResult<Vec<_>>>()?;
                if vals.len() != r {
                    return Err(CliError::syntax(line, col, format!("dual needs {r} entries, found {}", vals.len())));
                }
                let mut hit = vec![false; r];
                for (&v, &(c, _)) in vals.iter().zip(&toks[1..]) {
                    if v >= r {
                        return Err(CliError::syntax(line, c, format!("dual entry {v} out of range for rank {r}")));
                    }
                    if hit[v] {
                        return Err(CliError::syntax(line, c, format!("dual is not a permutation ({v} repeats)")));
                    }
                    hit[v] = true;
                }
                dual = Some(vals);
            }
            ("N", Some(r), Some(_)) => {
                if toks.len() != r + 4 || toks[3].1 != ":" {
                    return Err(CliError::syntax(line, col, format!("expected `N i j : m0 ... m{}`", r - 1)));
                }
                let i = parse_index(line, toks[1])?;
                let j = parse_index(line, toks[2])?;
                for (v, t) in [(i, toks[1]), (j, toks[2])] {
                    if v >= r {
                        return Err(CliError::syntax(line, t.0, format!("index {v} out of range for rank {r}")));
                    }
                }
                if let Some(prev) = seen[i * r + j] {
                    return Err(CliError::syntax(line, col, format!("duplicate N {i} {j} (first on line {prev})")));
                }
                seen[i * r + j] = Some(line);
                for (k, &(c, t)) in toks[4..].iter().enumerate() {
                    n[(i * r + j) * r + k] = t
                        .parse()
                        .map_err(|_| CliError::syntax(line, c, format!("{t:?} is not a nonnegative integer")))?;
                }
            }
            ("rank", Some(_), _) => return Err(CliError::syntax(line, col, "duplicate rank line")),
            ("dual", None, _) | ("N", None, _) => return Err(CliError::syntax(line, col, "the first line must be `rank <r>`")),
            ("dual", Some(_), Some(_)) => return Err(CliError::syntax(line, col, "duplicate dual line")),
            ("N", Some(_), None) => return Err(CliError::syntax(line, col, "`dual` must precede the N lines")),
            (other, _, _) => return Err(CliError::syntax(line, col, format!("unknown keyword {other:?}"))),
        }
    }
    let Some(r) = rank else {
        return Err(CliError::syntax(last_line.max(1), 1, "missing `rank` line"));
    };
    let Some(dual) = dual else {
        return Err(CliError::syntax(last_line.max(1), 1, "missing `dual` line"));
    };
    if let Some(pos) = seen.iter().position(Option::is_none) {
        return Err(CliError::syntax(
            last_line + 1,
            1,
            format!("missing N line for N {} {}", pos / r, pos % r),
        ));
    }
    let ring = FusionRing::new(r, dual, n)?;
    let violations = ring.validate();
    if !violations.is_empty() {
        return Err(CliError::Validation(violations.iter().map(|v| v.to_string()).collect()));
    }
    Ok(ring)
}

fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (col, (byte, ch)) in line.char_indices().enumerate() {
        if ch.is_whitespace() {
            if let Some((c, b)) = start.take() {
                out.push((c + 1, &line[b..byte]));
            }
        } else if ch == ':' {
            if let Some((c, b)) = start.take() {
                out.push((c + 1, &line[b..byte]));
            }
            out.push((col + 1, &line[byte..byte + 1]));
        } else if start.is_none() {
            start = Some((col, byte));
        }
    }
    if let Some((c, b)) = start {
        out.push((c + 1, &line[b..]));
    }
    out
}

fn parse_index(line: usize, (col, tok): (usize, &str)) -> CliResult<usize> {
    tok.parse()
        .map_err(|_| CliError::syntax(line, col, format!("{tok:?} is not a nonnegative integer")))
}

/// Canonical ring file: `rank`, `dual`, then every `N i j` line in
/// lexicographic order.
pub fn emit_ring(ring: &FusionRing) -> String {
    let r = ring.rank();
    let mut s = String::new();
    writeln!(s, "rank {r}").unwrap();
    let dual: Vec<String> = ring.duals().iter().map(|d| d.to_string()).collect();
    writeln!(s, "dual {}", dual.join(" ")).unwrap();
    for i in 0..r {
        for j in 0..r {
            let row: Vec<String> = ring.product(i, j).iter().map(|m| m.to_string()).collect();
            writeln!(s, "N {i} {j} : {}", row.join(" ")).unwrap();
        }
    }
    s
}

/// Ring files shipped with the tool, by name.
pub const BUNDLED_RINGS: &[(&str, &str)] = &[
    ("fibonacci", include_str!("../rings/fibonacci.ring")),
    ("fib-fib", include_str!("../rings/fib-fib.ring")),
    ("ising", include_str!("../rings/ising.ring")),
    ("k2", include_str!("../rings/k2.ring")),
    ("rep-s3", include_str!("../rings/rep-s3.ring")),
];

/// Reads a ring from a path, falling back to the bundled ring of the same
/// name (`fibonacci` or `fibonacci.ring`).
pub fn load_ring(arg: &str) -> CliResult<FusionRing> {
    let path = Path::new(arg);
    if path.exists() {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        return parse_ring(&text);
    }
    let name = path
        .file_name()
        .and_then(|f| f.to_str())
        .map(|f| f.strip_suffix(".ring").unwrap_or(f))
        .unwrap_or(arg);
    match BUNDLED_RINGS.iter().find(|(n, _)| *n == name) {
        Some((_, text)) => parse_ring(text),
        None => Err(CliError::Io {
            path: path.to_path_buf(),
            source: std::io::Error::new(std::io::ErrorKind::NotFound, "no such file or bundled ring"),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn real_expressions() {
        let four_root3_over5 = Surd::sqrt_of(&q(48, 25)).unwrap();
        assert_eq!(parse_real("4*sqrt(3)/5").unwrap(), four_root3_over5);
        assert_eq!(parse_real("4√3/5").unwrap(), four_root3_over5);
        assert_eq!(parse_real("sqrt(48/25)").unwrap(), four_root3_over5);
        assert_eq!(parse_real("1.34").unwrap(), Surd::rational(q(67, 50)));
        assert_eq!(parse_real(" -(1/2) + 3 ").unwrap(), Surd::rational(q(5, 2)));
        let s = parse_real("(sqrt(41)-1)/4").unwrap();
        assert_eq!(s, Surd::new(q(-1, 4), q(1, 4), BigInt::from(41)).unwrap());
        assert_eq!(parse_real("1/(1+sqrt(2))").unwrap(), Surd::new(q(-1, 1), q(1, 1), BigInt::from(2)).unwrap());
        assert_eq!(parse_real("sqrt(12) - 2√3").unwrap(), Surd::rational(q(0, 1)));
        for bad in ["", "1/0", "sqrt(-2)", "sqrt(2)+sqrt(3)", "2 3", "sqrt 2", "(1", "1.2.3", "x"] {
            assert!(parse_real(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn polynomials() {
        let p = parse_poly("1,-5,5").unwrap();
        assert_eq!(p, IntPoly::from_high_first(&[1, -5, 5]));
        assert_eq!(format_poly_coeffs(&p), "1,-5,5");
        assert_eq!(parse_poly(" 1, -2 ").unwrap(), IntPoly::from_high_first(&[1, -2]));
        for bad in ["0,1,2", "", "1,,2", "1,a", "1.5,2"] {
            assert!(parse_poly(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn ring_tokens_track_columns() {
        let t = tokens("N 1 1:1 1");
        assert_eq!(t, vec![(1, "N"), (3, "1"), (5, "1"), (6, ":"), (7, "1"), (9, "1")]);
    }

    #[test]
    fn bundled_rings_are_canonical() {
        for (name, text) in BUNDLED_RINGS {
            let ring = parse_ring(text).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert_eq!(parse_ring(&emit_ring(&ring)).unwrap(), ring, "{name}");
        }
    }
}
