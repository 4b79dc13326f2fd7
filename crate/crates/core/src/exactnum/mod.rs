//! Exact arithmetic over the rationals and the cyclotomic fields `Q(ζ_m)`.
//!
//! Every computation in this crate involves only rationals and roots of
//! unity, so the coefficient field is the union of the cyclotomic fields.
//! The generator `ζ_m` is the residue of `x` in `Q[x]/Φ_m(x)`, and the family
//! is compatible: `ζ_{mk}^k = ζ_m`. Mixed-conductor arithmetic embeds both
//! operands into `Q(ζ_lcm)`.

mod cyclotomic;
mod matrix;

pub use cyclotomic::{cyc_mul, cyc_order, cyc_root_of_unity, cyclotomic_polynomial, euler_phi, CycNumber};
pub use matrix::{span_rank, CycMatrix};

use num_bigint::BigInt;
use num_rational::BigRational;

/// Rationals in lowest terms with positive denominator.
pub type Rational = BigRational;

pub fn rational(numer: i64, denom: i64) -> Rational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

/// `gcd(a, m)` with the convention `gcd(0, m) = m`.
pub fn gcd(a: i64, b: i64) -> i64 {
    num_integer::gcd(a, b)
}

pub fn lcm(a: u32, b: u32) -> u32 {
    num_integer::lcm(a, b)
}

/// Least nonnegative residue of `a` modulo `m`.
pub fn modulo(a: i64, m: i64) -> i64 {
    a.rem_euclid(m)
}
