//! Based (fusion) rings: structure constants, axiom checks, builtin
//! families, the codegree matrix and its exact spectrum.

mod characters;
mod spectrum;

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::algnum::IntMatrix;
use crate::{Error, Result};

pub use characters::{characters_numeric, CharacterTable, DEFAULT_CHARACTER_TOL};
pub use spectrum::{fp_dimension_vector, formal_codegrees, CodegreeSpectrum, FpData, Orbit, DEFAULT_PERRON_TOL};

/// A based ring of rank `r` with basis `b_0 = 1, b_1, ..., b_{r-1}`.
///
/// `N[i][j][k]` is the multiplicity of `b_k` in `b_i b_j`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FusionRing {
    rank: usize,
    dual: Vec<usize>,
    n: Vec<u32>,
}

/// One failed axiom, with the indices that witness it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// `b_0` does not act as the identity: `N[0][j][k]` or `N[j][0][k]`
    /// differs from `delta(j, k)`.
    Unit { left: bool, j: usize, k: usize, found: u32 },
    /// `(b_i b_j) b_k` and `b_i (b_j b_k)` disagree in the `b_l` coefficient.
    Associativity { i: usize, j: usize, k: usize, l: usize, lhs: u64, rhs: u64 },
    /// `N[i][j][0]` should be 1 exactly when `j = dual(i)`.
    Duality { i: usize, j: usize, found: u32 },
    /// `dual(dual(i)) != i`, or `dual(0) != 0`.
    DualNotInvolution { i: usize },
    /// `N[dual(i)][j][k] != N[i][k][j]`.
    TransposeLaw { i: usize, j: usize, k: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Unit { left: true, j, k, found } => {
                write!(f, "unit: N[0][{j}][{k}] = {found}, expected {}", u32::from(j == k))
            }
            Violation::Unit { left: false, j, k, found } => {
                write!(f, "unit: N[{j}][0][{k}] = {found}, expected {}", u32::from(j == k))
            }
            Violation::Associativity { i, j, k, l, lhs, rhs } => write!(
                f,
                "associativity: coefficient of b{l} in (b{i} b{j}) b{k} is {lhs} but in b{i} (b{j} b{k}) is {rhs}"
            ),
            Violation::Duality { i, j, found } => write!(f, "duality at i={i}: N[{i}][{j}][0] = {found}"),
            Violation::DualNotInvolution { i } => write!(f, "dual is not an involution fixing 0 (at {i})"),
            Violation::TransposeLaw { i, j, k } => {
                write!(f, "transpose law at i={i}: N[dual({i})][{j}][{k}] != N[{i}][{k}][{j}]")
            }
        }
    }
}

impl FusionRing {
    /// `n` is the flattened tensor, `n[(i * r + j) * r + k] = N[i][j][k]`.
    /// Only shapes are checked here; see [`FusionRing::validate`].
    pub fn new(rank: usize, dual: Vec<usize>, n: Vec<u32>) -> Result<Self> {
        if rank == 0 {
            return Err(Error::invalid("rank must be positive"));
        }
        if dual.len() != rank {
            return Err(Error::invalid(format!("dual has {} entries for rank {rank}", dual.len())));
        }
        if let Some(&bad) = dual.iter().find(|&&d| d >= rank) {
            return Err(Error::invalid(format!("dual entry {bad} out of range for rank {rank}")));
        }
        let mut seen = vec![false; rank];
        for &d in &dual {
            if seen[d] {
                return Err(Error::invalid(format!("dual is not a permutation ({d} repeats)")));
            }
            seen[d] = true;
        }
        if n.len() != rank * rank * rank {
            return Err(Error::invalid(format!(
                "structure constants have {} entries, expected {}",
                n.len(),
                rank * rank * rank
            )));
        }
        Ok(FusionRing { rank, dual, n })
    }

    /// Builds the tensor from the product rows `b_i b_j`.
    pub fn from_products(rank: usize, dual: Vec<usize>, mut product: impl FnMut(usize, usize) -> Vec<u32>) -> Result<Self> {
        let mut n = Vec::with_capacity(rank * rank * rank);
        for i in 0..rank {
            for j in 0..rank {
                let row = product(i, j);
                if row.len() != rank {
                    return Err(Error::invalid(format!("product b{i} b{j} has {} entries", row.len())));
                }
                n.extend(row);
            }
        }
        Self::new(rank, dual, n)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn dual(&self, i: usize) -> usize {
        self.dual[i]
    }

    pub fn duals(&self) -> &[usize] {
        &self.dual
    }

    #[inline]
    pub fn n(&self, i: usize, j: usize, k: usize) -> u32 {
        self.n[(i * self.rank + j) * self.rank + k]
    }

    /// Coefficients of `b_i b_j`.
    pub fn product(&self, i: usize, j: usize) -> &[u32] {
        let s = (i * self.rank + j) * self.rank;
        &self.n[s..s + self.rank]
    }

    /// `N_i` with rows `j` and columns `k`.
    pub fn fusion_matrix(&self, i: usize) -> IntMatrix {
        let r = self.rank;
        let mut m = IntMatrix::zeros(r);
        for j in 0..r {
            for k in 0..r {
                m.set(j, k, BigInt::from(self.n(i, j, k)));
            }
        }
        m
    }

    /// Every violated axiom; empty means the ring is a valid based ring.
    pub fn validate(&self) -> Vec<Violation> {
        let r = self.rank;
        let mut out = Vec::new();
        for j in 0..r {
            for k in 0..r {
                let want = u32::from(j == k);
                if self.n(0, j, k) != want {
                    out.push(Violation::Unit { left: true, j, k, found: self.n(0, j, k) });
                }
                if self.n(j, 0, k) != want {
                    out.push(Violation::Unit { left: false, j, k, found: self.n(j, 0, k) });
                }
            }
        }
        if self.dual[0] != 0 {
            out.push(Violation::DualNotInvolution { i: 0 });
        }
        for i in 0..r {
            if self.dual[self.dual[i]] != i {
                out.push(Violation::DualNotInvolution { i });
            }
        }
        for i in 0..r {
            for j in 0..r {
                let want = u32::from(j == self.dual[i]);
                if self.n(i, j, 0) != want {
                    out.push(Violation::Duality { i, j, found: self.n(i, j, 0) });
                }
            }
        }
        for i in 0..r {
            let di = self.dual[i];
            for j in 0..r {
                for k in 0..r {
                    if self.n(di, j, k) != self.n(i, k, j) {
                        out.push(Violation::TransposeLaw { i, j, k });
                    }
                }
            }
        }
        for i in 0..r {
            for j in 0..r {
                for k in 0..r {
                    for l in 0..r {
                        let mut lhs = 0u64;
                        let mut rhs = 0u64;
                        for m in 0..r {
                            lhs += u64::from(self.n(i, j, m)) * u64::from(self.n(m, k, l));
                            rhs += u64::from(self.n(j, k, m)) * u64::from(self.n(i, m, l));
                        }
                        if lhs != rhs {
                            out.push(Violation::Associativity { i, j, k, l, lhs, rhs });
                        }
                    }
                }
            }
        }
        out
    }

    /// `Ok(())` when valid, otherwise an invalid-input error listing the
    /// violations.
    pub fn ensure_valid(&self) -> Result<()> {
        let v = self.validate();
        if v.is_empty() {
            return Ok(());
        }
        let mut msg = format!("{} axiom violation(s):", v.len());
        for x in v.iter().take(8) {
            msg.push_str(&format!(" {x};"));
        }
        if v.len() > 8 {
            msg.push_str(" ...");
        }
        Err(Error::invalid(msg))
    }

    pub fn is_commutative(&self) -> bool {
        let r = self.rank;
        (0..r).all(|i| (0..i).all(|j| self.product(i, j) == self.product(j, i)))
    }

    /// `Z = sum_i N_i N_i^T`.
    pub fn codegree_matrix(&self) -> IntMatrix {
        let r = self.rank;
        let mut z = vec![0u64; r * r];
        for i in 0..r {
            for j in 0..r {
                for l in j..r {
                    let s: u64 = (0..r).map(|k| u64::from(self.n(i, j, k)) * u64::from(self.n(i, l, k))).sum();
                    z[j * r + l] += s;
                }
            }
        }
        let mut m = IntMatrix::zeros(r);
        for j in 0..r {
            for l in j..r {
                m.set(j, l, BigInt::from(z[j * r + l]));
                m.set(l, j, BigInt::from(z[j * r + l]));
            }
        }
        m
    }

    /// `K_n = Z[X]/(X^2 = 1 + nX)`, rank 2, `X` self-dual.
    pub fn kn(n: u32) -> Self {
        FusionRing::new(2, vec![0, 1], vec![1, 0, 0, 1, 0, 1, 1, n]).expect("well-formed")
    }

    /// Group ring of `Z/nZ`, `b_i b_j = b_{i+j mod n}`.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("cyclic ring needs n >= 1"));
        }
        let dual = (0..n).map(|i| (n - i) % n).collect();
        Self::from_products(n, dual, |i, j| {
            let mut row = vec![0; n];
            row[(i + j) % n] = 1;
            row
        })
    }

    /// Tensor product, basis `b_(i, j) = a_i x c_j` at index `i * r2 + j`.
    pub fn tensor(&self, other: &FusionRing) -> FusionRing {
        let (r1, r2) = (self.rank, other.rank);
        let r = r1 * r2;
        let dual = (0..r).map(|x| self.dual[x / r2] * r2 + other.dual[x % r2]).collect();
        Self::from_products(r, dual, |x, y| {
            let (a, b) = (self.product(x / r2, y / r2), other.product(x % r2, y % r2));
            (0..r).map(|z| a[z / r2] * b[z % r2]).collect()
        })
        .expect("well-formed")
    }
}

impl fmt::Debug for FusionRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FusionRing(rank {}, dual {:?})", self.rank, self.dual)
    }
}

/// A builtin family member by name: `kn` (`n >= 0`) or `cyclic` (`n >= 1`).
pub fn builtin_ring(name: &str, n: u32) -> Result<FusionRing> {
    match name {
        "kn" => Ok(FusionRing::kn(n)),
        "cyclic" => FusionRing::cyclic(n as usize),
        _ => Err(Error::invalid(format!("unknown builtin ring {name:?} (expected kn or cyclic)"))),
    }
}

/// Formal codegrees `|G| / |C|` of `Rep(G)` from conjugacy class sizes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepGCodegrees {
    pub order: BigInt,
    pub codegrees: Vec<BigRational>,
    /// Whether every class size divides the group order.
    pub integral: bool,
}

pub fn rep_g_codegrees(class_sizes: &[u64]) -> Result<RepGCodegrees> {
    if class_sizes.is_empty() {
        return Err(Error::invalid("no conjugacy classes given"));
    }
    if class_sizes.contains(&0) {
        return Err(Error::invalid("class sizes must be positive"));
    }
    if !class_sizes.contains(&1) {
        return Err(Error::invalid("no identity class (size 1) among the class sizes"));
    }
    let order: BigInt = class_sizes.iter().map(|&c| BigInt::from(c)).sum();
    let codegrees: Vec<BigRational> = class_sizes
        .iter()
        .map(|&c| BigRational::new(order.clone(), BigInt::from(c)))
        .collect();
    let integral = codegrees.iter().all(|q| q.is_integer());
    Ok(RepGCodegrees { order, codegrees, integral })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::String;

    fn describe_violations(v: &[Violation]) -> String {
        let mut s = String::new();
        for x in v {
            s.push_str(&format!("{x}\n"));
        }
        s
    }

    fn fibonacci() -> FusionRing {
        FusionRing::kn(1)
    }

    #[test]
    fn fibonacci_is_valid() {
        assert!(fibonacci().validate().is_empty());
        assert!(fibonacci().is_commutative());
    }

    #[test]
    fn broken_duality_is_reported() {
        let r = FusionRing::new(2, vec![0, 1], vec![1, 0, 0, 1, 0, 1, 0, 1]).unwrap();
        let v = r.validate();
        assert!(v.iter().any(|x| matches!(x, Violation::Duality { i: 1, .. })), "{}", describe_violations(&v));
    }

    #[test]
    fn square_to_twice_unit_is_associative_but_invalid() {
        // X X = 2: powers of a single generator always associate, so the
        // failures are the unit coefficient of X X and its transpose.
        let r = FusionRing::new(2, vec![0, 1], vec![1, 0, 0, 1, 0, 1, 2, 0]).unwrap();
        let v = r.validate();
        assert!(v.contains(&Violation::Duality { i: 1, j: 1, found: 2 }));
        assert!(!v.iter().any(|x| matches!(x, Violation::Associativity { .. })));
    }

    #[test]
    fn nonassociative_is_reported() {
        // a a = 1, b b = 1, a b = b a = 0: (a a) b = b but a (a b) = 0.
        let n = vec![
            1, 0, 0, 0, 1, 0, 0, 0, 1, //
            0, 1, 0, 1, 0, 0, 0, 0, 0, //
            0, 0, 1, 0, 0, 0, 1, 0, 0,
        ];
        let r = FusionRing::new(3, vec![0, 1, 2], n).unwrap();
        let v = r.validate();
        assert!(v.contains(&Violation::Associativity { i: 1, j: 1, k: 2, l: 2, lhs: 1, rhs: 0 }));
        assert!(v.iter().all(|x| matches!(x, Violation::Associativity { .. })));
    }

    #[test]
    fn shape_errors() {
        assert!(FusionRing::new(2, vec![0, 0], vec![0; 8]).is_err());
        assert!(FusionRing::new(2, vec![0, 1], vec![0; 7]).is_err());
        assert!(FusionRing::new(0, vec![], vec![]).is_err());
    }

    #[test]
    fn builtins() {
        assert_eq!(builtin_ring("kn", 0).unwrap(), FusionRing::cyclic(2).unwrap());
        assert_eq!(builtin_ring("kn", 1).unwrap(), fibonacci());
        assert!(builtin_ring("sl2", 3).is_err());
        assert!(builtin_ring("cyclic", 0).is_err());
        for n in 1..7 {
            assert!(FusionRing::cyclic(n).unwrap().validate().is_empty());
        }
        let ff = fibonacci().tensor(&fibonacci());
        assert!(ff.validate().is_empty());
    }

    #[test]
    fn codegree_matrices() {
        assert_eq!(fibonacci().codegree_matrix(), IntMatrix::from_rows(&[vec![2, 1], vec![1, 3]]));
        assert_eq!(FusionRing::kn(2).codegree_matrix(), IntMatrix::from_rows(&[vec![2, 2], vec![2, 6]]));
        let c4 = FusionRing::cyclic(4).unwrap().codegree_matrix();
        let id = IntMatrix::identity(4);
        assert_eq!(c4, id.add(&id).add(&id).add(&id));
    }

    #[test]
    fn rep_g() {
        let d5 = rep_g_codegrees(&[1, 2, 2, 5]).unwrap();
        let want: Vec<BigRational> = [10, 5, 5, 2].iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect();
        assert_eq!(d5.codegrees, want);
        assert!(d5.integral);
        assert_eq!(rep_g_codegrees(&[1]).unwrap().codegrees.len(), 1);
        assert!(rep_g_codegrees(&[]).is_err());
        assert!(rep_g_codegrees(&[2, 3]).is_err());
    }
}
