//! Coefficient fields: the rationals and prime fields `F_p`.

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::fp::{inv_mod, MAX_PRIME};
use super::ArithError;

/// Exact rational number, always kept in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// A field whose elements are plain values; the field value carries whatever
/// context (e.g. the modulus) the arithmetic needs.
pub trait Field: Clone + PartialEq + Eq + fmt::Debug + Send + Sync + 'static {
    type Elem: Clone + PartialEq + Eq + Hash + fmt::Debug + Send + Sync + 'static;

    /// Reduction steps in Groebner/normal-form code use `a*f - b*g` instead of
    /// dividing, so integer-valued coefficients stay integral.
    const FRACTION_FREE: bool;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn is_one(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem, ArithError>;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn from_bigint(&self, v: &BigInt) -> Self::Elem;
    /// 0 for the rationals.
    fn characteristic(&self) -> u64;

    /// Scalar that turns a polynomial with leading coefficient `lc` and
    /// coefficients `coeffs` into its canonical associate: monic over `F_p`,
    /// integer-primitive with positive leading coefficient over `Q`.
    fn normalizer<'a, I>(&self, lc: &Self::Elem, coeffs: I) -> Self::Elem
    where
        I: Iterator<Item = &'a Self::Elem>;

    /// Writes the element for polynomial printing. Returns `true` if the
    /// element was negative and only its absolute value was written.
    fn fmt_abs(&self, a: &Self::Elem, out: &mut String) -> bool;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, ArithError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// `(a, b)` with `a*c == b*lc`; reduction computes `a*f - b*t*g` to cancel a
    /// term of `f` with coefficient `c` against `g`'s leading coefficient `lc`.
    fn reduction_multipliers(&self, c: &Self::Elem, lc: &Self::Elem) -> (Self::Elem, Self::Elem) {
        (self.one(), self.div(c, lc).expect("nonzero leading coefficient"))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    fn display(&self, a: &Self::Elem) -> String {
        let mut s = String::new();
        if self.fmt_abs(a, &mut s) {
            s.insert(0, '-');
        }
        s
    }
}

/// The field of rational numbers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = Rational;
    const FRACTION_FREE: bool = true;

    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &Rational) -> bool {
        a.is_one()
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }
    fn neg(&self, a: &Rational) -> Rational {
        -a
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn inv(&self, a: &Rational) -> Result<Rational, ArithError> {
        if a.is_zero() {
            Err(ArithError::ZeroInverse)
        } else {
            Ok(a.recip())
        }
    }
    fn from_i64(&self, v: i64) -> Rational {
        Rational::from_integer(BigInt::from(v))
    }
    fn from_bigint(&self, v: &BigInt) -> Rational {
        Rational::from_integer(v.clone())
    }
    fn characteristic(&self) -> u64 {
        0
    }

    fn normalizer<'a, I>(&self, lc: &Rational, coeffs: I) -> Rational
    where
        I: Iterator<Item = &'a Rational>,
    {
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in coeffs {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        if num_gcd.is_zero() {
            return Rational::one();
        }
        let scale = Rational::new(den_lcm, num_gcd);
        if lc.is_negative() {
            -scale
        } else {
            scale
        }
    }

    fn reduction_multipliers(&self, c: &Rational, lc: &Rational) -> (Rational, Rational) {
        let r = c / lc;
        (Rational::from_integer(r.denom().clone()), Rational::from_integer(r.numer().clone()))
    }

    fn fmt_abs(&self, a: &Rational, out: &mut String) -> bool {
        let abs = a.abs();
        if abs.is_integer() {
            out.push_str(&abs.numer().to_string());
        } else {
            out.push_str(&format!("{}/{}", abs.numer(), abs.denom()));
        }
        a.is_negative()
    }
}

/// The prime field `Z/pZ` with `p < 2^31`, elements stored as residues in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// Caller guarantees primality; only the size cap is checked.
    pub fn new(p: u64) -> Result<Self, ArithError> {
        if !(2..MAX_PRIME).contains(&p) {
            return Err(ArithError::ModulusOutOfRange(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn reduce_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    /// Residue of a rational number; fails when `p` divides the denominator.
    pub fn from_rational(&self, r: &Rational) -> Result<u64, ArithError> {
        let den = self.from_bigint(r.denom());
        if den == 0 {
            return Err(ArithError::DenominatorDivisible(self.p));
        }
        Ok(self.mul(&self.from_bigint(r.numer()), &inv_mod(den, self.p)?))
    }

    /// Symmetric representative in `(-p/2, p/2]`.
    pub fn symmetric(&self, a: u64) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }
}

impl Field for PrimeField {
    type Elem = u64;
    const FRACTION_FREE: bool = false;

    #[inline]
    fn zero(&self) -> u64 {
        0
    }
    #[inline]
    fn one(&self) -> u64 {
        1
    }
    #[inline]
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    #[inline]
    fn is_one(&self, a: &u64) -> bool {
        *a == 1
    }
    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    #[inline]
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn inv(&self, a: &u64) -> Result<u64, ArithError> {
        inv_mod(*a, self.p)
    }
    fn from_i64(&self, v: i64) -> u64 {
        self.reduce_i64(v)
    }
    fn from_bigint(&self, v: &BigInt) -> u64 {
        let m = BigInt::from(self.p);
        v.mod_floor(&m).to_u64().expect("residue fits in u64")
    }
    fn characteristic(&self) -> u64 {
        self.p
    }

    fn normalizer<'a, I>(&self, lc: &u64, _coeffs: I) -> u64
    where
        I: Iterator<Item = &'a u64>,
    {
        inv_mod(*lc, self.p).unwrap_or(1)
    }

    fn fmt_abs(&self, a: &u64, out: &mut String) -> bool {
        out.push_str(&a.to_string());
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn rational_lowest_terms() {
        let a = q(6, -4);
        assert_eq!(a.numer(), &BigInt::from(-3));
        assert_eq!(a.denom(), &BigInt::from(2));
    }

    #[test]
    fn rational_normalizer_makes_primitive() {
        let coeffs = [q(1, 2), q(1, 1)];
        let s = Rationals.normalizer(&coeffs[0], coeffs.iter());
        assert_eq!(s, q(2, 1));
        let coeffs = [q(-6, 1), q(9, 1)];
        let s = Rationals.normalizer(&coeffs[0], coeffs.iter());
        assert_eq!(s, q(-1, 3));
    }

    #[test]
    fn prime_field_from_rational() {
        let f = PrimeField::new(23).unwrap();
        assert_eq!(f.from_rational(&q(1, 2)).unwrap(), 12);
        assert!(f.from_rational(&q(1, 23)).is_err());
        assert_eq!(f.from_i64(-11), 12);
    }

    proptest! {
        #[test]
        fn rational_field_laws(a in -50i64..50, b in 1i64..30, c in -50i64..50, d in 1i64..30, e in -50i64..50) {
            let x = q(a, b);
            let y = q(c, d);
            let z = q(e, 7);
            let f = Rationals;
            prop_assert_eq!(f.mul(&x, &f.add(&y, &z)), f.add(&f.mul(&x, &y), &f.mul(&x, &z)));
            if !x.is_zero() && !y.is_zero() {
                let ratio = f.div(&x, &y).unwrap();
                let back = f.div(&y, &x).unwrap();
                prop_assert!(f.mul(&ratio, &back).is_one());
            }
            let s = f.add(&x, &y);
            prop_assert!(s.numer().gcd(s.denom()).is_one() || s.numer().is_zero());
            prop_assert!(s.denom().is_positive());
        }

        #[test]
        fn prime_field_laws(a in 0u64..101, b in 0u64..101, c in 0u64..101) {
            let f = PrimeField::new(101).unwrap();
            prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
            prop_assert_eq!(f.add(&a, &f.neg(&a)), 0);
            if a != 0 {
                prop_assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), 1);
            }
        }
    }
}
