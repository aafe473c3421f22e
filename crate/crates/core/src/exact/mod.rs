//! Exact rational scalars, polynomials and rational functions in the rank
//! variable `N`, and fraction-free linear solving.
//!
//! Nothing in here ever touches a float.

mod matrix;
mod poly;
mod ratfunc;
mod reconstruct;

pub use matrix::{solve_linear_exact, EchelonForm, ExactMatrix, LinearSolution};
pub use poly::{poly_eval, PolyN};
pub use ratfunc::RatFuncN;
pub use reconstruct::{poly_interpolate, ratfunc_reconstruct, reconstruct_auto};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

/// Arbitrary precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("duplicate abscissa {0}")]
    DuplicateAbscissa(i64),
    #[error("no interpolation points")]
    NoPoints,
    #[error("reconstruction failed: {0}")]
    ReconstructionFailed(String),
    #[error("no solution (rank {rank})")]
    Inconsistent { rank: usize },
    #[error("underdetermined: rank {rank}, nullity {nullity}")]
    Underdetermined { rank: usize, nullity: usize },
    #[error("dimension mismatch: {0}")]
    Shape(String),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("pole at N = {0}")]
    Pole(i64),
    #[error("malformed rational {0:?}")]
    Parse(String),
}

/// Integer-valued rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `num / den`, reduced.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn big(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

/// Renders integers without a `/1` suffix, everything else as `p/q`.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational, AlgebraError> {
    let s = s.trim();
    let parse_int = |t: &str| t.trim().parse::<BigInt>().map_err(|_| AlgebraError::Parse(s.to_string()));
    match s.split_once('/') {
        None => Ok(Rational::from_integer(parse_int(s)?)),
        Some((n, d)) => {
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(AlgebraError::ZeroDenominator);
            }
            Ok(Rational::new(parse_int(n)?, d))
        }
    }
}

/// Returns the integer value if `r` has denominator one.
pub fn as_integer(r: &Rational) -> Option<BigInt> {
    r.is_integer().then(|| r.numer().clone())
}

pub(crate) fn rat_pow(r: &Rational, e: u32) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..e {
        acc *= r;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_text_round_trip() {
        for s in ["0", "-7", "639/8", "-43/8", "123456789012345678901234567891/2"] {
            assert_eq!(format_rational(&parse_rational(s).unwrap()), s);
        }
        assert_eq!(parse_rational("4/2").unwrap(), rat(2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn canonical_form() {
        let r = ratio(6, -4);
        assert_eq!(format_rational(&r), "-3/2");
        assert!(r.denom() > &BigInt::zero());
    }
}
