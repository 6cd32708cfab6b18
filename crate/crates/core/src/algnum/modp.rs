//! Polynomials over a small prime field and Berlekamp factorization.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::poly::IntPoly;

/// Dense polynomial over `F_p`, low degree first, trimmed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct PolyP {
    pub(crate) c: Vec<u64>,
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct Field {
    pub(crate) p: u64,
}

impl Field {
    pub(crate) fn add(self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    pub(crate) fn sub(self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }

    pub(crate) fn mul(self, a: u64, b: u64) -> u64 {
        (a * b) % self.p
    }

    pub(crate) fn pow(self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    pub(crate) fn inv(self, a: u64) -> u64 {
        debug_assert!(a % self.p != 0);
        self.pow(a, self.p - 2)
    }

    pub(crate) fn reduce_int(self, x: &BigInt) -> u64 {
        let m = x.mod_floor(&BigInt::from(self.p));
        m.to_u64().expect("residue fits")
    }

    pub(crate) fn reduce(self, f: &IntPoly) -> PolyP {
        PolyP::new(f.coeffs().iter().map(|c| self.reduce_int(c)).collect())
    }

    pub(crate) fn poly_add(self, a: &PolyP, b: &PolyP) -> PolyP {
        let n = a.c.len().max(b.c.len());
        PolyP::new((0..n).map(|i| self.add(a.get(i), b.get(i))).collect())
    }

    pub(crate) fn poly_sub(self, a: &PolyP, b: &PolyP) -> PolyP {
        let n = a.c.len().max(b.c.len());
        PolyP::new((0..n).map(|i| self.sub(a.get(i), b.get(i))).collect())
    }

    pub(crate) fn poly_mul(self, a: &PolyP, b: &PolyP) -> PolyP {
        if a.is_zero() || b.is_zero() {
            return PolyP::zero();
        }
        let mut c = vec![0u64; a.c.len() + b.c.len() - 1];
        for (i, &x) in a.c.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.c.iter().enumerate() {
                c[i + j] = (c[i + j] + x * y) % self.p;
            }
        }
        PolyP::new(c)
    }

    pub(crate) fn poly_scale(self, a: &PolyP, k: u64) -> PolyP {
        PolyP::new(a.c.iter().map(|&x| self.mul(x, k)).collect())
    }

    pub(crate) fn divrem(self, a: &PolyP, b: &PolyP) -> (PolyP, PolyP) {
        assert!(!b.is_zero());
        if a.c.len() < b.c.len() {
            return (PolyP::zero(), a.clone());
        }
        let db = b.c.len() - 1;
        let inv = self.inv(*b.c.last().unwrap());
        let mut r = a.c.clone();
        let mut q = vec![0u64; r.len() - db];
        for k in (0..q.len()).rev() {
            let t = self.mul(r[k + db], inv);
            q[k] = t;
            if t != 0 {
                for (j, &bc) in b.c.iter().enumerate() {
                    r[k + j] = self.sub(r[k + j], self.mul(t, bc));
                }
            }
        }
        r.truncate(db);
        (PolyP::new(q), PolyP::new(r))
    }

    pub(crate) fn rem(self, a: &PolyP, b: &PolyP) -> PolyP {
        self.divrem(a, b).1
    }

    pub(crate) fn monic(self, a: &PolyP) -> PolyP {
        match a.c.last() {
            None => a.clone(),
            Some(&l) => self.poly_scale(a, self.inv(l)),
        }
    }

    pub(crate) fn gcd(self, a: &PolyP, b: &PolyP) -> PolyP {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        self.monic(&a)
    }

    /// `(g, s, t)` with `s a + t b = g = gcd(a, b)` monic.
    pub(crate) fn xgcd(self, a: &PolyP, b: &PolyP) -> (PolyP, PolyP, PolyP) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (PolyP::one(), PolyP::zero());
        let (mut t0, mut t1) = (PolyP::zero(), PolyP::one());
        while !r1.is_zero() {
            let (q, r) = self.divrem(&r0, &r1);
            let s2 = self.poly_sub(&s0, &self.poly_mul(&q, &s1));
            let t2 = self.poly_sub(&t0, &self.poly_mul(&q, &t1));
            r0 = core::mem::replace(&mut r1, r);
            s0 = core::mem::replace(&mut s1, s2);
            t0 = core::mem::replace(&mut t1, t2);
        }
        let l = self.inv(*r0.c.last().expect("nonzero gcd"));
        (
            self.poly_scale(&r0, l),
            self.poly_scale(&s0, l),
            self.poly_scale(&t0, l),
        )
    }

    pub(crate) fn derivative(self, a: &PolyP) -> PolyP {
        PolyP::new(
            a.c.iter()
                .enumerate()
                .skip(1)
                .map(|(i, &x)| self.mul(x, i as u64 % self.p))
                .collect(),
        )
    }

    /// `base^e mod m`.
    pub(crate) fn powmod(self, base: &PolyP, mut e: u64, m: &PolyP) -> PolyP {
        let mut acc = PolyP::one();
        let mut b = self.rem(base, m);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.rem(&self.poly_mul(&acc, &b), m);
            }
            b = self.rem(&self.poly_mul(&b, &b), m);
            e >>= 1;
        }
        acc
    }

    /// Irreducible monic factors of a monic squarefree `f` by Berlekamp's
    /// algorithm. Deterministic: splitting tries kernel vectors in order and
    /// shifts `s = 0, 1, ..., p-1` in order.
    pub(crate) fn berlekamp(self, f: &PolyP) -> Vec<PolyP> {
        let n = f.degree();
        if n <= 1 {
            return vec![f.clone()];
        }
        // Row i holds x^(i p) mod f.
        let xp = self.powmod(&PolyP::x(), self.p, f);
        let mut rows: Vec<Vec<u64>> = Vec::with_capacity(n);
        let mut cur = PolyP::one();
        for _ in 0..n {
            let mut row = vec![0u64; n];
            for (j, &v) in cur.c.iter().enumerate() {
                row[j] = v;
            }
            rows.push(row);
            cur = self.rem(&self.poly_mul(&cur, &xp), f);
        }
        // Kernel of (Q - I)^T: vectors v with sum_i v_i (row_i - e_i) = 0.
        let mut m = vec![vec![0u64; n]; n];
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                // column-major: equation j, unknown i
                m[j][i] = if i == j { self.sub(v, 1) } else { v };
            }
        }
        let basis = self.nullspace(m, n);
        let k = basis.len();
        if k == 1 {
            return vec![f.clone()];
        }
        let mut factors = vec![f.clone()];
        for v in basis.iter() {
            if factors.len() == k {
                break;
            }
            let vpoly = PolyP::new(v.clone());
            if vpoly.degree() == 0 {
                continue;
            }
            let mut next = Vec::new();
            for g in factors.drain(..) {
                if g.degree() <= 1 {
                    next.push(g);
                    continue;
                }
                let mut rest = g;
                for s in 0..self.p {
                    if rest.degree() <= 1 {
                        break;
                    }
                    let shifted = self.poly_sub(&vpoly, &PolyP::constant(s));
                    let h = self.gcd(&rest, &shifted);
                    if h.degree() > 0 && h.degree() < rest.degree() {
                        rest = self.divrem(&rest, &h).0;
                        next.push(h);
                    }
                }
                next.push(rest);
            }
            factors = next;
        }
        factors.iter().map(|g| self.monic(g)).collect()
    }

    /// Basis of the nullspace of an `n x n` matrix (rows = equations).
    fn nullspace(self, mut m: Vec<Vec<u64>>, n: usize) -> Vec<Vec<u64>> {
        let mut pivot_col = vec![usize::MAX; n];
        let mut row = 0;
        let mut is_pivot = vec![false; n];
        for col in 0..n {
            let Some(r) = (row..n).find(|&r| m[r][col] != 0) else {
                continue;
            };
            m.swap(row, r);
            let inv = self.inv(m[row][col]);
            for x in m[row].iter_mut() {
                *x = self.mul(*x, inv);
            }
            for r2 in 0..n {
                if r2 != row && m[r2][col] != 0 {
                    let t = m[r2][col];
                    for c in 0..n {
                        let sub = self.mul(t, m[row][c]);
                        m[r2][c] = self.sub(m[r2][c], sub);
                    }
                }
            }
            pivot_col[row] = col;
            is_pivot[col] = true;
            row += 1;
        }
        let mut basis = Vec::new();
        for free in 0..n {
            if is_pivot[free] {
                continue;
            }
            let mut v = vec![0u64; n];
            v[free] = 1;
            for r in 0..row {
                let pc = pivot_col[r];
                v[pc] = self.sub(0, m[r][free]);
            }
            basis.push(v);
        }
        basis
    }
}

impl PolyP {
    pub(crate) fn new(mut c: Vec<u64>) -> Self {
        while c.last() == Some(&0) {
            c.pop();
        }
        PolyP { c }
    }

    pub(crate) fn zero() -> Self {
        PolyP { c: Vec::new() }
    }

    pub(crate) fn one() -> Self {
        PolyP { c: vec![1] }
    }

    pub(crate) fn constant(v: u64) -> Self {
        PolyP::new(vec![v])
    }

    pub(crate) fn x() -> Self {
        PolyP { c: vec![0, 1] }
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub(crate) fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub(crate) fn get(&self, i: usize) -> u64 {
        self.c.get(i).copied().unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn berlekamp_splits_into_irreducibles() {
        let f = Field { p: 7 };
        // x^4 - 1 over F_7 = (x-1)(x+1)(x^2+1)
        let poly = PolyP::new(vec![6, 0, 0, 0, 1]);
        let mut facs = f.berlekamp(&poly);
        facs.sort_by(|a, b| a.c.len().cmp(&b.c.len()).then(a.c.cmp(&b.c)));
        assert_eq!(facs.len(), 3);
        let prod = facs.iter().fold(PolyP::one(), |acc, g| f.poly_mul(&acc, g));
        assert_eq!(prod, poly);
        assert!(facs.iter().any(|g| g.c == vec![1, 0, 1]));
    }

    #[test]
    fn xgcd_bezout() {
        let f = Field { p: 11 };
        let a = PolyP::new(vec![3, 1, 1]);
        let b = PolyP::new(vec![5, 1]);
        let (g, s, t) = f.xgcd(&a, &b);
        assert_eq!(g, PolyP::one());
        let lhs = f.poly_add(&f.poly_mul(&s, &a), &f.poly_mul(&t, &b));
        assert_eq!(lhs, PolyP::one());
    }
}
