//! Factorization in `Z[x]`: squarefree decomposition, Berlekamp modulo a
//! small prime, multifactor Hensel lifting, and subset recombination.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::modp::{Field, PolyP};
use super::poly::IntPoly;
use crate::{Error, Result};

/// Largest squarefree component degree handed to the modular factorizer.
pub const FACTOR_DEGREE_CAP: usize = 24;

/// Irreducible primitive factors with multiplicities, sorted by degree and
/// then by coefficients (leading term first). The product of the factors
/// raised to their multiplicities equals `p` up to sign and content.
pub fn factor_over_integers(p: &IntPoly) -> Result<Vec<(IntPoly, usize)>> {
    if p.is_zero() {
        return Err(Error::invalid("factorization of the zero polynomial"));
    }
    let mut out = Vec::new();
    for (q, m) in p.squarefree_decomposition() {
        if q.degree() > FACTOR_DEGREE_CAP {
            return Err(Error::DegreeCap {
                degree: q.degree(),
                cap: FACTOR_DEGREE_CAP,
            });
        }
        for g in factor_squarefree(&q) {
            out.push((g, m));
        }
    }
    out.sort_by(|a, b| a.0.canonical_cmp(&b.0).then(a.1.cmp(&b.1)));
    Ok(out)
}

/// Whether a primitive polynomial of positive degree is irreducible over Q.
pub fn is_irreducible(p: &IntPoly) -> Result<bool> {
    if p.degree() == 0 {
        return Ok(false);
    }
    let f = factor_over_integers(p)?;
    Ok(f.len() == 1 && f[0].1 == 1)
}

fn factor_squarefree(f: &IntPoly) -> Vec<IntPoly> {
    let f = f.primitive_part();
    let n = f.degree();
    if n <= 1 {
        return vec![f];
    }
    // x is a factor iff the constant term vanishes; peel it so the
    // remaining polynomial has a nonzero constant term.
    if f.coeff(0).is_zero() {
        let rest = f.div_exact(&IntPoly::monomial(1)).expect("x | f");
        let mut v = factor_squarefree(&rest);
        v.push(IntPoly::monomial(1));
        return v;
    }
    if n == 2 {
        return factor_quadratic(&f);
    }
    let (field, modular) = choose_prime(&f);
    if modular.len() == 1 {
        return vec![f];
    }
    let bound = factor_coefficient_bound(&f);
    let p = BigInt::from(field.p);
    let mut k = 1u32;
    let mut modulus = p.clone();
    while modulus <= bound {
        modulus *= &p;
        k += 1;
    }
    let lifted = hensel_lift(&f, &modular, field, k);
    recombine(&f, lifted, &modulus)
}

/// Roots of a quadratic are rational iff its discriminant is a square.
fn factor_quadratic(f: &IntPoly) -> Vec<IntPoly> {
    let (a, b, c) = (f.coeff(2), f.coeff(1), f.coeff(0));
    let disc = &b * &b - BigInt::from(4) * &a * &c;
    if disc.is_negative() {
        return vec![f.clone()];
    }
    let s = disc.sqrt();
    if &s * &s != disc {
        return vec![f.clone()];
    }
    // roots (-b ± s) / 2a -> factors (2a x + b ∓ s), made primitive
    let two_a = BigInt::from(2) * &a;
    let g1 = IntPoly::new(vec![&b - &s, two_a.clone()]).primitive_part();
    let g2 = IntPoly::new(vec![&b + &s, two_a]).primitive_part();
    vec![g1, g2]
}

const SMALL_PRIMES: [u64; 40] = [
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
    101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179,
];

/// Picks, among the first few good primes, the one with the fewest modular
/// factors. A prime is good when it does not divide the leading coefficient
/// and keeps `f` squarefree.
fn choose_prime(f: &IntPoly) -> (Field, Vec<PolyP>) {
    let mut best: Option<(Field, Vec<PolyP>)> = None;
    let mut tried = 0;
    for &p in SMALL_PRIMES.iter() {
        let field = Field { p };
        if field.reduce_int(&f.lc()) == 0 {
            continue;
        }
        let fp = field.reduce(f);
        if field.gcd(&fp, &field.derivative(&fp)).degree() > 0 {
            continue;
        }
        let facs = field.berlekamp(&field.monic(&fp));
        let better = best.as_ref().is_none_or(|(_, b)| facs.len() < b.len());
        if better {
            best = Some((field, facs));
        }
        tried += 1;
        if tried >= 5 || best.as_ref().is_some_and(|(_, b)| b.len() == 1) {
            break;
        }
    }
    // Every squarefree integer polynomial stays squarefree modulo all but
    // finitely many primes; fall back to a larger search if needed.
    best.or_else(|| {
        (181u64..)
            .filter(|&q| is_small_prime(q))
            .take(200)
            .find_map(|p| {
                let field = Field { p };
                if field.reduce_int(&f.lc()) == 0 {
                    return None;
                }
                let fp = field.reduce(f);
                if field.gcd(&fp, &field.derivative(&fp)).degree() > 0 {
                    return None;
                }
                Some((field, field.berlekamp(&field.monic(&fp))))
            })
    })
    .expect("a good prime exists for a squarefree polynomial")
}

fn is_small_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Twice `|lc|` times a Mignotte-style bound on the coefficients of any
/// factor of `f`: `2^n * ceil(||f||_2)`.
fn factor_coefficient_bound(f: &IntPoly) -> BigInt {
    let norm2: BigInt = f.coeffs().iter().map(|c| c * c).sum();
    let norm = norm2.sqrt() + 1;
    BigInt::from(2) * f.lc().abs() * (BigInt::one() << f.degree()) * norm
}

fn to_int_poly(a: &PolyP) -> IntPoly {
    IntPoly::new(a.c.iter().map(|&v| BigInt::from(v)).collect())
}

fn reduce_mod(f: &IntPoly, m: &BigInt) -> IntPoly {
    IntPoly::new(f.coeffs().iter().map(|c| c.mod_floor(m)).collect())
}

fn symmetric_mod(f: &IntPoly, m: &BigInt) -> IntPoly {
    let half = m / 2;
    IntPoly::new(
        f.coeffs()
            .iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

/// Lifts `f ≡ lc(f) * prod(factors) (mod p)` to a factorization modulo
/// `p^k`; returns monic lifted factors in the same order.
fn hensel_lift(f: &IntPoly, factors: &[PolyP], field: Field, k: u32) -> Vec<IntPoly> {
    let p = BigInt::from(field.p);
    let modulus = p.pow(k);
    let lc = f.lc();
    let lc_inv = {
        // inverse of lc modulo p^k via extended Euclid
        let e = lc.extended_gcd(&modulus);
        e.x.mod_floor(&modulus)
    };
    let monic_f = reduce_mod(&f.scale(&lc_inv), &modulus);
    lift_tree(&monic_f, factors, field, k, &modulus)
}

fn lift_tree(f: &IntPoly, factors: &[PolyP], field: Field, k: u32, modulus: &BigInt) -> Vec<IntPoly> {
    if factors.len() == 1 {
        return vec![f.clone()];
    }
    let half = factors.len() / 2;
    let (left, right) = factors.split_at(half);
    let prod = |fs: &[PolyP]| fs.iter().fold(PolyP::one(), |acc, g| field.poly_mul(&acc, g));
    let g0 = prod(left);
    let h0 = prod(right);
    let (g, h) = lift_pair(f, &g0, &h0, field, k, modulus);
    let mut out = lift_tree(&g, left, field, k, modulus);
    out.extend(lift_tree(&h, right, field, k, modulus));
    out
}

/// Linear Hensel lifting of a coprime monic split `f ≡ g h (mod p)` to
/// `mod p^k`, for monic `f`.
fn lift_pair(
    f: &IntPoly,
    g0: &PolyP,
    h0: &PolyP,
    field: Field,
    k: u32,
    modulus: &BigInt,
) -> (IntPoly, IntPoly) {
    let (one, s, t) = field.xgcd(g0, h0);
    debug_assert_eq!(one, PolyP::one());
    let p = BigInt::from(field.p);
    let mut g = to_int_poly(g0);
    let mut h = to_int_poly(h0);
    let mut pj = p.clone();
    for _ in 1..k {
        let err = f.sub(&g.mul(&h));
        let e_scaled = IntPoly::new(err.coeffs().iter().map(|c| c / &pj).collect());
        debug_assert!(err.coeffs().iter().all(|c| (c % &pj).is_zero()));
        let e = field.reduce(&e_scaled);
        // sigma g + tau h ≡ e with deg sigma < deg h, deg tau < deg g
        let se = field.poly_mul(&s, &e);
        let (q, sigma) = field.divrem(&se, h0);
        let tau = field.poly_add(&field.poly_mul(&t, &e), &field.poly_mul(&q, g0));
        // (g + p^j tau)(h + p^j sigma) ≡ f  (mod p^(j+1))
        g = g.add(&to_int_poly(&tau).scale(&pj));
        h = h.add(&to_int_poly(&sigma).scale(&pj));
        pj *= &p;
    }
    (reduce_mod(&g, modulus), reduce_mod(&h, modulus))
}

/// Zassenhaus recombination: tries products of lifted factors in
/// increasing subset size.
fn recombine(f: &IntPoly, mut lifted: Vec<IntPoly>, modulus: &BigInt) -> Vec<IntPoly> {
    let mut found = Vec::new();
    let mut f = f.clone();
    let mut size = 1;
    while 2 * size <= lifted.len() {
        let mut progressed = false;
        let r = lifted.len();
        let mut subset: Vec<usize> = (0..size).collect();
        loop {
            let lc = f.lc();
            let mut g = IntPoly::constant(lc.clone());
            for &i in &subset {
                g = reduce_mod(&g.mul(&lifted[i]), modulus);
            }
            let g = symmetric_mod(&g, modulus).primitive_part();
            if g.degree() > 0 {
                if let Some(q) = f.div_exact(&g) {
                    found.push(g);
                    f = q.primitive_part();
                    for &i in subset.iter().rev() {
                        lifted.remove(i);
                    }
                    progressed = true;
                    break;
                }
            }
            if !next_subset(&mut subset, r) {
                break;
            }
        }
        if !progressed {
            size += 1;
        }
    }
    if f.degree() > 0 {
        found.push(f.primitive_part());
    }
    found
}

fn next_subset(s: &mut [usize], n: usize) -> bool {
    let k = s.len();
    for i in (0..k).rev() {
        if s[i] < n - k + i {
            s[i] += 1;
            for j in i + 1..k {
                s[j] = s[j - 1] + 1;
            }
            return true;
        }
    }
    false
}
