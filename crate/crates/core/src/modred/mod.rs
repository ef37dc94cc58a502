//! Prime selection and the reduction map `psi_p` from integer (or `Z[alpha]`)
//! coefficients to `F_p`.

mod alg;

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::{
    discriminant, is_prime, primitive_integer_coeffs, upoly_from_integers, ArithError, Field, PrimeField, Rational,
    Rationals, UniPoly, MAX_PRIME,
};
use crate::groebner::Ideal;
use crate::mpoly::{MultiPoly, TermOrder};

pub use alg::{reduce_alg_ideal, reduce_alg_poly, AlgElem, AlgPoly, ExtensionDescriptor};

/// Trial division bound for prime divisors of `d(0)`.
pub const TRIAL_DIVISION_LIMIT: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModredError {
    #[error("no admissible prime divides the constant term")]
    NoAdmissiblePrime,
    #[error("prime {0} divides a denominator or kills a generator")]
    BadPrime(u64),
    #[error("invalid prime context: {0}")]
    InvalidContext(String),
    #[error("minimal polynomial is not irreducible over Q")]
    NotIrreducible,
    #[error("minimal polynomial is not monic after primitivization")]
    NotMonic,
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// Prime `p` and a root `beta` of the defining polynomial mod `p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimeContext {
    pub p: u64,
    pub beta: u64,
    /// Index of the rational factor that selected this prime, if any.
    pub source: Option<usize>,
}

impl PrimeContext {
    /// Validates `q(beta) = 0 mod p` as a simple root, `p > deg q` and
    /// `p` not dividing `disc(q)`.
    pub fn new(p: u64, beta: u64, q: &UniPoly<Rationals>) -> Result<Self, ModredError> {
        if !is_prime(p) || p >= MAX_PRIME {
            return Err(ModredError::InvalidContext(format!("{p} is not a prime below 2^31")));
        }
        if beta >= p {
            return Err(ModredError::InvalidContext(format!("beta {beta} not reduced mod {p}")));
        }
        admissible_for(q, p).map_err(ModredError::InvalidContext)?;
        let field = PrimeField::new(p)?;
        let qp = reduce_upoly(q, field)?;
        if !field.is_zero(&qp.eval(&beta)) {
            return Err(ModredError::InvalidContext(format!("{beta} is not a root mod {p}")));
        }
        Ok(PrimeContext { p, beta, source: None })
    }

    /// Context for a plain rational ideal (no extension).
    pub fn plain(p: u64) -> Result<Self, ModredError> {
        if !is_prime(p) || p >= MAX_PRIME {
            return Err(ModredError::InvalidContext(format!("{p} is not a prime below 2^31")));
        }
        Ok(PrimeContext { p, beta: 0, source: None })
    }

    pub fn field(&self) -> PrimeField {
        PrimeField::new(self.p).expect("validated prime")
    }

    pub fn with_source(mut self, j: usize) -> Self {
        self.source = Some(j);
        self
    }
}

/// Integer coefficients with content 1 and positive leading coefficient
/// under `ord`.
pub fn primitivize(f: &MultiPoly<Rationals>, ord: &TermOrder) -> MultiPoly<Rationals> {
    f.normalize(ord)
}

/// Checks the prime conditions on `d`: `p > deg d` and `p` does not
/// divide `disc(d)`. Returns a reason on failure.
pub fn admissible_for(d: &UniPoly<Rationals>, p: u64) -> Result<(), String> {
    let deg = d.deg();
    if (p as usize) <= deg {
        return Err(format!("{p} does not exceed the degree {deg}"));
    }
    if deg >= 1 {
        let dz = upoly_from_integers(&primitive_integer_coeffs(d));
        let disc = discriminant(&dz).map_err(|e| e.to_string())?;
        if (disc.numer() % BigInt::from(p)).is_zero() {
            return Err(format!("{p} divides the discriminant"));
        }
    }
    Ok(())
}

/// Prime divisors of `|n|` in ascending order: trial division up to
/// [`TRIAL_DIVISION_LIMIT`], then the cofactor if it is a prime below 2^31.
pub fn small_prime_divisors(n: &BigInt) -> Vec<u64> {
    let mut n = n.abs();
    let mut out = Vec::new();
    if n.is_zero() {
        return out;
    }
    let mut q = 2u64;
    while q <= TRIAL_DIVISION_LIMIT && !n.is_one() {
        let bq = BigInt::from(q);
        if BigInt::from(q) * BigInt::from(q) > n {
            break;
        }
        if (&n % &bq).is_zero() {
            out.push(q);
            while (&n % &bq).is_zero() {
                n /= &bq;
            }
        }
        q += if q == 2 { 1 } else { 2 };
    }
    if !n.is_one() {
        if let Some(c) = n.to_u64() {
            if c < MAX_PRIME && is_prime(c) && !out.contains(&c) {
                out.push(c);
            }
        }
    }
    out
}

/// Smallest prime `p | d(0)` with `p > deg d`, `p` not dividing `disc(d)`
/// and `p` outside `exclude`. `beta = 0` is then a simple root of `d` mod `p`.
pub fn select_prime(d: &UniPoly<Rationals>, exclude: &BTreeSet<u64>) -> Result<PrimeContext, ModredError> {
    admissible_primes(d)
        .into_iter()
        .find(|p| !exclude.contains(p))
        .map(|p| PrimeContext { p, beta: 0, source: None })
        .ok_or(ModredError::NoAdmissiblePrime)
}

/// All admissible primes of `d` in ascending order.
pub fn admissible_primes(d: &UniPoly<Rationals>) -> Vec<u64> {
    if d.is_zero() {
        return Vec::new();
    }
    let dz = primitive_integer_coeffs(d);
    let d0 = dz[0].clone();
    if d0.is_zero() {
        return Vec::new();
    }
    small_prime_divisors(&d0)
        .into_iter()
        .filter(|&p| admissible_for(d, p).is_ok())
        .collect()
}

/// Univariate reduction mod `p`.
pub fn reduce_upoly(f: &UniPoly<Rationals>, field: PrimeField) -> Result<UniPoly<PrimeField>, ModredError> {
    let c: Result<Vec<u64>, _> = f.coeffs().iter().map(|c| field.from_rational(c)).collect();
    c.map(|c| UniPoly::new(field, c)).map_err(|_| ModredError::BadPrime(field.modulus()))
}

/// Coefficientwise reduction; may return the zero polynomial.
pub fn reduce_poly(f: &MultiPoly<Rationals>, ctx: &PrimeContext) -> Result<MultiPoly<PrimeField>, ModredError> {
    let field = ctx.field();
    f.try_map_coeffs(field, |c: &Rational| field.from_rational(c))
        .map_err(|_| ModredError::BadPrime(ctx.p))
}

/// Generatorwise reduction. A generator mapping to zero is a `BadPrime`;
/// a unit image is returned as is and left to the caller.
pub fn reduce_ideal(idl: &Ideal<Rationals>, ctx: &PrimeContext) -> Result<Ideal<PrimeField>, ModredError> {
    let mut gens = Vec::with_capacity(idl.generators().len());
    for g in idl.generators() {
        let r = reduce_poly(g, ctx)?;
        if r.is_zero() {
            return Err(ModredError::BadPrime(ctx.p));
        }
        gens.push(r);
    }
    let out = Ideal::new(ctx.field(), idl.nvars(), gens).expect("same variable count");
    Ok(match idl.declared_dimension() {
        Some(c) => out.with_dimension(c),
        None => out,
    })
}
