//! Coefficient arithmetic: rationals, prime fields and dense univariate
//! polynomials over either.

mod field;
mod fp;
mod upoly;

pub use field::{Field, PrimeField, Rational, Rationals};
pub use fp::{fp_inv, inv_mod, is_prime, next_prime, pow_mod, FpElem, MAX_PRIME};
pub use upoly::{big_pow, discriminant, resultant, squarefree_decomposition, UniPoly};

use num_bigint::BigInt;
use num_traits::{One, Zero};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArithError {
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("operands live in different coefficient rings")]
    RingMismatch,
    #[error("polynomial is constant")]
    ConstantPolynomial,
    #[error("characteristic {p} is too small for degree {degree}")]
    CharacteristicTooSmall { p: u64, degree: usize },
    #[error("modulus {0} outside [2, 2^31)")]
    ModulusOutOfRange(u64),
    #[error("denominator divisible by {0}")]
    DenominatorDivisible(u64),
}

/// `Rational` from an `i64`.
pub fn rat(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// `a / b` as a rational.
pub fn ratio(a: i64, b: i64) -> Rational {
    Rational::new(BigInt::from(a), BigInt::from(b))
}

/// Clears denominators and content: returns the integer-primitive associate of
/// `f` with positive leading coefficient, as integer coefficients.
pub fn primitive_integer_coeffs(f: &UniPoly<Rationals>) -> Vec<BigInt> {
    if f.is_zero() {
        return Vec::new();
    }
    let s = Rationals.normalizer(&f.lc(), f.coeffs().iter());
    f.coeffs()
        .iter()
        .map(|c| {
            let v = c * &s;
            debug_assert!(v.is_integer());
            v.to_integer()
        })
        .collect()
}

/// Integer polynomial as a rational `UniPoly`.
pub fn upoly_from_integers(c: &[BigInt]) -> UniPoly<Rationals> {
    UniPoly::new(
        Rationals,
        c.iter().map(|v| Rational::from_integer(v.clone())).collect(),
    )
}

/// `true` when every coefficient is an integer.
pub fn is_integral(f: &UniPoly<Rationals>) -> bool {
    f.coeffs().iter().all(|c| c.denom().is_one())
}

/// Content (gcd of coefficients) of an integer vector; zero for the zero vector.
pub fn content(c: &[BigInt]) -> BigInt {
    use num_integer::Integer;
    c.iter().fold(BigInt::zero(), |g, v| g.gcd(v))
}
