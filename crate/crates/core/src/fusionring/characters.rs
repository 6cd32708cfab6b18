//! Numeric character table of a commutative based ring.
//!
//! The fusion matrices of a commutative based ring are normal and commute,
//! so a generic Hermitian combination of them has the characters as its
//! eigenvectors. The combination is diagonalized through its real
//! symmetric embedding with cyclic Jacobi rotations.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use super::FusionRing;
use crate::{Error, Result};

pub const DEFAULT_CHARACTER_TOL: f64 = 1e-9;

/// `values[j][i] = phi_j(b_i)`, characters ordered by ascending `f_phi`.
#[derive(Clone, Debug, PartialEq)]
pub struct CharacterTable {
    pub values: Vec<Vec<Complex64>>,
    /// `f_phi = sum_i phi(b_i) phi(b_dual(i))`, same order as `values`.
    pub codegrees: Vec<f64>,
    pub tol: f64,
    /// Largest homomorphism defect `|phi(b_i) phi(b_j) - sum_k N phi(b_k)|`.
    pub max_residual: f64,
}

/// Eigen-decomposition of a dense symmetric matrix; returns eigenvalues
/// and the eigenvectors as columns of a row-major matrix.
fn jacobi_eigen(mut a: Vec<f64>, n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut v = vec![0f64; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let norm: f64 = a.iter().map(|x| x * x).sum();
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i * n + j] * a[i * n + j])
            .sum();
        if off <= 1e-30 * norm {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if libm::fabs(apq) < 1e-300 {
                    continue;
                }
                let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                let t = theta.signum() / (libm::fabs(theta) + libm::sqrt(theta * theta + 1.0));
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / libm::sqrt(t * t + 1.0);
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }
    ((0..n).map(|i| a[i * n + i]).collect(), v)
}

/// Deterministic weights for attempt `t`.
fn weights(r: usize, t: usize) -> (Vec<f64>, Vec<f64>) {
    let mut state: u64 = 0x9e37_79b9_7f4a_7c15 ^ (t as u64).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    let mut next = || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        0.5 + (state >> 11) as f64 / (1u64 << 53) as f64
    };
    let w = (0..r).map(|_| next()).collect();
    let u = (0..r).map(|_| next()).collect();
    (w, u)
}

pub fn characters_numeric(ring: &FusionRing, tol: f64) -> Result<CharacterTable> {
    ring.ensure_valid()?;
    if !ring.is_commutative() {
        return Err(Error::Unsupported("characters of noncommutative rings".into()));
    }
    if !(tol > 0.0) {
        return Err(Error::invalid("tolerance must be positive"));
    }
    let r = ring.rank();
    let mut last_gap = 0.0;
    for attempt in 0..8 {
        let (w, u) = weights(r, attempt);
        // H = S + iK with S symmetric, K antisymmetric; embed as [[S, -K], [K, S]].
        let m = 2 * r;
        let mut big = vec![0f64; m * m];
        for i in 0..r {
            for j in 0..r {
                for k in 0..r {
                    let a = ring.n(i, j, k) as f64;
                    let at = ring.n(i, k, j) as f64;
                    let s = w[i] * (a + at);
                    let kk = u[i] * (a - at);
                    big[j * m + k] += s;
                    big[(j + r) * m + (k + r)] += s;
                    big[j * m + (k + r)] -= kk;
                    big[(j + r) * m + k] += kk;
                }
            }
        }
        let scale = big.iter().fold(0f64, |acc, x| acc.max(libm::fabs(*x))).max(1.0);
        let (evals, evecs) = jacobi_eigen(big, m);
        let mut order: Vec<usize> = (0..m).collect();
        order.sort_by(|&a, &b| evals[a].partial_cmp(&evals[b]).expect("finite"));
        // Eigenvalues come in equal pairs; consecutive pairs must separate.
        let mut gap = f64::INFINITY;
        for p in 1..r {
            gap = gap.min(evals[order[2 * p]] - evals[order[2 * p - 1]]);
        }
        last_gap = gap;
        if r > 1 && gap < 1e3 * tol * scale {
            continue;
        }
        let mut values = Vec::with_capacity(r);
        for p in 0..r {
            let col = order[2 * p];
            let z: Vec<Complex64> = (0..r)
                .map(|j| Complex64::new(evecs[j * m + col], evecs[(j + r) * m + col]))
                .collect();
            if z[0].norm_sqr() < 1e-20 {
                return Err(Error::Precision("character eigenvector vanishes at the unit".into()));
            }
            let z0 = z[0];
            values.push(z.iter().map(|x| x / z0).collect::<Vec<_>>());
        }
        let mut max_residual: f64 = 0.0;
        for phi in &values {
            for i in 0..r {
                for j in 0..r {
                    let rhs: Complex64 = (0..r).map(|k| phi[k] * ring.n(i, j, k) as f64).sum();
                    let d = phi[i] * phi[j] - rhs;
                    let mag = 1.0 + rhs.norm_sqr();
                    max_residual = max_residual.max(libm::sqrt(d.norm_sqr() / mag));
                }
            }
        }
        if max_residual > tol {
            continue;
        }
        let mut rows: Vec<(f64, Vec<Complex64>)> = values
            .into_iter()
            .map(|phi| {
                let f: f64 = (0..r).map(|i| (phi[i] * phi[ring.dual(i)]).re).sum();
                (f, phi)
            })
            .collect();
        rows.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite"));
        return Ok(CharacterTable {
            codegrees: rows.iter().map(|x| x.0).collect(),
            values: rows.into_iter().map(|x| x.1).collect(),
            tol,
            max_residual,
        });
    }
    Err(Error::Precision(format!(
        "could not separate characters to tolerance {tol:e} (smallest eigenvalue gap {last_gap:e}); \
         use a larger tolerance or rely on the exact spectrum"
    )))
}
