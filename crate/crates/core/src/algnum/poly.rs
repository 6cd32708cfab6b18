//! Dense univariate polynomials with arbitrary-precision integer coefficients.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Integer polynomial; `coeffs[i]` is the coefficient of `x^i`.
///
/// The zero polynomial is the empty coefficient vector. Trailing zeros are
/// always trimmed, so the last entry (when present) is the leading
/// coefficient.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    /// Coefficients listed from `x^0` upwards.
    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Coefficients listed from the leading term down, as in `[1, -5, 5]`
    /// for `x^2 - 5x + 5`.
    pub fn from_high_first(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().rev().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `x - r`.
    pub fn linear_root(r: BigInt) -> Self {
        Self::new(vec![-r, BigInt::one()])
    }

    /// `x^n`.
    pub fn monomial(n: usize) -> Self {
        let mut c = vec![BigInt::zero(); n + 1];
        c[n] = BigInt::one();
        IntPoly { coeffs: c }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn lc(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Nonnegative gcd of the coefficients (0 for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Primitive part normalized to a positive leading coefficient.
    pub fn primitive_part(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut g = self.content();
        if self.lc().is_negative() {
            g = -g;
        }
        self.div_scalar_exact(&g)
    }

    pub fn scale(&self, k: &BigInt) -> IntPoly {
        if k.is_zero() {
            return IntPoly::zero();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// Divides every coefficient by `k`; the caller guarantees exactness.
    pub fn div_scalar_exact(&self, k: &BigInt) -> IntPoly {
        debug_assert!(self.coeffs.iter().all(|c| (c % k).is_zero()));
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| c / k).collect(),
        }
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n).map(|i| self.coeff(i) + other.coeff(i)).collect();
        IntPoly::new(c)
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n).map(|i| self.coeff(i) - other.coeff(i)).collect();
        IntPoly::new(c)
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut c = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        IntPoly::new(c)
    }

    pub fn pow(&self, mut e: u32) -> IntPoly {
        let mut base = self.clone();
        let mut acc = IntPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn derivative(&self) -> IntPoly {
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigInt::from(i))
            .collect();
        IntPoly::new(c)
    }

    /// `p(-x)`.
    pub fn reflect(&self) -> IntPoly {
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
            .collect();
        IntPoly::new(c)
    }

    /// `p(k x)`.
    pub fn scale_var(&self, k: &BigInt) -> IntPoly {
        let mut pw = BigInt::one();
        let mut c = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            c.push(a * &pw);
            pw *= k;
        }
        IntPoly::new(c)
    }

    /// `p(x + k)` by repeated synthetic division.
    pub fn shift(&self, k: &BigInt) -> IntPoly {
        let mut c = self.coeffs.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let t = &c[j + 1] * k;
                c[j] += t;
            }
        }
        IntPoly::new(c)
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// `q^n p(num/q)` for `q > 0`: an integer with the sign of `p(num/q)`.
    pub fn eval_homogeneous(&self, num: &BigInt, den: &BigInt) -> BigInt {
        let mut it = self.coeffs.iter().rev();
        let Some(lead) = it.next() else {
            return BigInt::zero();
        };
        let mut acc = lead.clone();
        let mut den_pow = BigInt::one();
        for c in it {
            den_pow *= den;
            acc = acc * num + c * &den_pow;
        }
        acc
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    /// Sign of `p(x)` computed without building rationals.
    pub fn sign_at(&self, x: &BigRational) -> Ordering {
        // BigRational keeps a positive denominator.
        self.eval_homogeneous(x.numer(), x.denom()).cmp(&BigInt::zero())
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + bigint_to_f64(c);
        }
        acc
    }

    /// Sign of `p` at `+inf`.
    pub fn sign_at_pos_inf(&self) -> Ordering {
        self.lc().cmp(&BigInt::zero())
    }

    /// Sign of `p` at `-inf`.
    pub fn sign_at_neg_inf(&self) -> Ordering {
        let s = self.lc().cmp(&BigInt::zero());
        if self.degree() % 2 == 1 {
            s.reverse()
        } else {
            s
        }
    }

    /// Pseudo-remainder: `lc(b)^(deg a - deg b + 1) * a mod b`.
    pub fn pseudo_rem(&self, b: &IntPoly) -> IntPoly {
        assert!(!b.is_zero(), "pseudo-remainder by zero polynomial");
        if self.coeffs.len() < b.coeffs.len() {
            return self.clone();
        }
        let db = b.degree();
        let lb = b.lc();
        let mut r = self.coeffs.clone();
        let steps = r.len() - db;
        for _ in 0..steps {
            let dr = r.len() - 1;
            let lr = r[dr].clone();
            for c in r.iter_mut() {
                *c *= &lb;
            }
            if !lr.is_zero() {
                let off = dr - db;
                for (j, bc) in b.coeffs.iter().enumerate() {
                    r[off + j] -= &lr * bc;
                }
            }
            r.pop();
        }
        IntPoly::new(r)
    }

    /// Exact quotient `self / b` in `Z[x]`, or `None` when `b` does not
    /// divide `self` with integer quotient.
    pub fn div_exact(&self, b: &IntPoly) -> Option<IntPoly> {
        assert!(!b.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        if self.coeffs.len() < b.coeffs.len() {
            return None;
        }
        let db = b.degree();
        let lb = b.lc();
        let mut r = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); r.len() - db];
        for k in (0..q.len()).rev() {
            let top = &r[k + db];
            if top.is_zero() {
                continue;
            }
            let (qk, rem) = top.div_rem(&lb);
            if !rem.is_zero() {
                return None;
            }
            for (j, bc) in b.coeffs.iter().enumerate() {
                r[k + j] -= &qk * bc;
            }
            q[k] = qk;
        }
        if r.iter().all(Zero::is_zero) {
            Some(IntPoly::new(q))
        } else {
            None
        }
    }

    /// Greatest common divisor in `Z[x]`, with positive leading coefficient.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() {
            return other.primitive_part().scale(&other.content());
        }
        if other.is_zero() {
            return self.primitive_part().scale(&self.content());
        }
        let g_content = self.content().gcd(&other.content());
        let (mut a, mut b) = if self.degree() >= other.degree() {
            (self.primitive_part(), other.primitive_part())
        } else {
            (other.primitive_part(), self.primitive_part())
        };
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        a.scale(&g_content)
    }

    /// Yun's squarefree decomposition of the primitive part: returns
    /// `(q_i, i)` with each `q_i` primitive, squarefree, pairwise coprime and
    /// of positive degree, such that `pp(self) = ± prod q_i^i`.
    pub fn squarefree_decomposition(&self) -> Vec<(IntPoly, usize)> {
        let f = self.primitive_part();
        let mut out = Vec::new();
        if f.degree() == 0 {
            return out;
        }
        let df = f.derivative();
        let g = f.gcd(&df).primitive_part();
        let mut c = f.div_exact(&g).expect("gcd divides f");
        let mut d = df.div_exact(&g).expect("gcd divides f'").sub(&c.derivative());
        let mut i = 1;
        while c.degree() > 0 {
            let a = c.gcd(&d).primitive_part();
            if a.degree() > 0 {
                out.push((a.clone(), i));
            }
            c = c.div_exact(&a).expect("a divides c");
            d = d.div_exact(&a).expect("a divides d").sub(&c.derivative());
            i += 1;
        }
        out
    }

    /// Product of the distinct irreducible factors (primitive, positive lc).
    pub fn squarefree_part(&self) -> IntPoly {
        let f = self.primitive_part();
        if f.degree() == 0 {
            return f;
        }
        let g = f.gcd(&f.derivative());
        f.div_exact(&g).expect("gcd divides f").primitive_part()
    }

    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative()).degree() == 0
    }

    /// Coefficients from the leading term down.
    pub fn high_first(&self) -> Vec<BigInt> {
        self.coeffs.iter().rev().cloned().collect()
    }

    /// Deterministic factor order: by degree, then coefficients from the
    /// leading term down.
    pub fn canonical_cmp(&self, other: &IntPoly) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }

    /// Max-norm of the coefficients.
    pub fn max_norm(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).max().unwrap_or_default()
    }
}

pub(crate) fn bigint_to_f64(x: &BigInt) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(if x.is_negative() {
        f64::NEG_INFINITY
    } else {
        f64::INFINITY
    })
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

/// Human form, e.g. `x^2 - 5*x + 5`.
impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            match (i, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (_, true) => {}
                (_, false) => write!(f, "{a}*")?,
            }
            match i {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}
