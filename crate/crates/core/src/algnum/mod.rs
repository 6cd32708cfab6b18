//! Exact arithmetic on integer polynomials and real algebraic numbers.

mod algebraic;
mod dnumber;
mod factor;
mod interval;
mod intfactor;
mod matrix;
pub(crate) mod modp;
mod poly;
mod real;
mod sturm;

pub use algebraic::AlgebraicNumber;
pub use dnumber::{
    conjugate_stats, is_d_number, largest_integer_divisor, power_char_poly,
    ratio_integrality_oracle, ConjugateStats,
};
pub use factor::{factor_over_integers, is_irreducible, FACTOR_DEGREE_CAP};
pub use interval::{certify_floor, certify_sign, precision_cap, rat_to_f64, RatInterval};
pub use intfactor::{is_probable_prime, prime_factors};
pub use matrix::{det_poly_matrix, resultant_over_poly, IntMatrix};
pub use poly::IntPoly;
pub use real::Surd;
pub use sturm::{
    count_roots_closed, isolate_real_roots, isolate_squarefree, is_real_rooted_squarefree,
    refine_isolating, RootProfile, SturmChain,
};

#[cfg(test)]
pub(crate) use interval::rat;
