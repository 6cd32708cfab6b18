//! Square integer matrices, exact characteristic polynomials and
//! resultants.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::poly::IntPoly;

#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    n: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(n: usize) -> Self {
        IntMatrix {
            n,
            data: vec![BigInt::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let n = rows.len();
        let mut m = Self::zeros(n);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), n, "matrix must be square");
            for (j, &v) in r.iter().enumerate() {
                m.data[i * n + j] = BigInt::from(v);
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.n + j] = v;
    }

    pub fn transpose(&self) -> IntMatrix {
        let n = self.n;
        let mut t = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                t.data[j * n + i] = self.data[i * n + j].clone();
            }
        }
        t
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.n;
        (0..n).all(|i| (0..i).all(|j| self.data[i * n + j] == self.data[j * n + i]))
    }

    pub fn add(&self, o: &IntMatrix) -> IntMatrix {
        IntMatrix {
            n: self.n,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn mul(&self, o: &IntMatrix) -> IntMatrix {
        let n = self.n;
        let mut r = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self.data[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &o.data[k * n + j];
                    if !b.is_zero() {
                        r.data[i * n + j] += a * b;
                    }
                }
            }
        }
        r
    }

    pub fn pow(&self, mut e: u32) -> IntMatrix {
        let mut base = self.clone();
        let mut acc = Self::identity(self.n);
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

    pub fn trace(&self) -> BigInt {
        (0..self.n).map(|i| &self.data[i * self.n + i]).sum()
    }

    /// Companion matrix of a monic polynomial; its characteristic
    /// polynomial is the polynomial itself.
    pub fn companion(p: &IntPoly) -> IntMatrix {
        assert!(p.is_monic(), "companion matrix needs a monic polynomial");
        let n = p.degree();
        let mut m = Self::zeros(n);
        for i in 1..n {
            m.data[i * n + (i - 1)] = BigInt::one();
        }
        for i in 0..n {
            m.data[i * n + (n - 1)] = -p.coeff(i);
        }
        m
    }

    /// `det(x I - A)` by the Faddeev–LeVerrier recurrence; every division
    /// is exact over the integers.
    pub fn charpoly(&self) -> IntPoly {
        let n = self.n;
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[n] = BigInt::one();
        let mut m = Self::zeros(n);
        for k in 1..=n {
            // M_k = A M_{k-1} + c_{n-k+1} I
            let mut next = self.mul(&m);
            let c_prev = coeffs[n - k + 1].clone();
            for i in 0..n {
                next.data[i * n + i] += &c_prev;
            }
            m = next;
            let am = self.mul(&m);
            let tr = am.trace();
            let kk = BigInt::from(k);
            debug_assert!((&tr % &kk).is_zero());
            coeffs[n - k] = -(tr / kk);
        }
        IntPoly::new(coeffs)
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.n {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for j in 0..self.n {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self.data[i * self.n + j])?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

/// Determinant of a square matrix over `Z[x]` by fraction-free Bareiss
/// elimination.
pub fn det_poly_matrix(mut m: Vec<Vec<IntPoly>>) -> IntPoly {
    let n = m.len();
    if n == 0 {
        return IntPoly::one();
    }
    let mut sign = false;
    let mut prev = IntPoly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return IntPoly::zero();
            };
            m.swap(k, r);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[k][k].mul(&m[i][j]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign {
        d.neg()
    } else {
        d
    }
}

/// Resultant `Res_y(a(y), b(y))` where the coefficients of `a` and `b` (in
/// `y`, lowest first) are themselves polynomials in `x`.
pub fn resultant_over_poly(a: &[IntPoly], b: &[IntPoly]) -> IntPoly {
    let da = a.len() - 1;
    let db = b.len() - 1;
    let n = da + db;
    let mut m = vec![vec![IntPoly::zero(); n]; n];
    // Sylvester matrix, coefficients from the leading term down.
    for r in 0..db {
        for (j, c) in a.iter().rev().enumerate() {
            m[r][r + j] = c.clone();
        }
    }
    for r in 0..da {
        for (j, c) in b.iter().rev().enumerate() {
            m[db + r][r + j] = c.clone();
        }
    }
    det_poly_matrix(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn charpoly_small_cases() {
        let z = IntMatrix::from_rows(&[vec![2, 1], vec![1, 3]]);
        assert_eq!(z.charpoly(), IntPoly::from_high_first(&[1, -5, 5]));
        let z = IntMatrix::from_rows(&[vec![2, 2], vec![2, 6]]);
        assert_eq!(z.charpoly(), IntPoly::from_high_first(&[1, -8, 8]));
        let id3 = IntMatrix::identity(3);
        let three = id3.add(&id3).add(&id3);
        assert_eq!(three.charpoly(), IntPoly::from_high_first(&[1, -3]).pow(3));
    }

    #[test]
    fn companion_roundtrip() {
        let p = IntPoly::from_high_first(&[1, -14, 49, -49]);
        assert_eq!(IntMatrix::companion(&p).charpoly(), p);
    }

    #[test]
    fn resultant_against_root_product() {
        // Res_y(y^2 - 2, x - y) = x^2 - 2 up to sign
        let a = vec![
            IntPoly::constant(BigInt::from(-2)),
            IntPoly::zero(),
            IntPoly::one(),
        ];
        let b = vec![IntPoly::monomial(1), IntPoly::constant(BigInt::from(-1))];
        let r = resultant_over_poly(&a, &b);
        assert_eq!(r.primitive_part(), IntPoly::from_high_first(&[1, 0, -2]));
    }
}
