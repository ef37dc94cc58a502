//! Coefficients in `Q(alpha)`, stored as rational coordinates in the power
//! basis `1, alpha, ..., alpha^(d-1)` of the minimal polynomial `q`.

use crate::arith::{primitive_integer_coeffs, upoly_from_integers, Field, PrimeField, Rational, Rationals, UniPoly};
use crate::factor::factor_univariate_q;
use crate::groebner::Ideal;
use crate::mpoly::{Monomial, MultiPoly};

use super::{ModredError, PrimeContext};

/// `Q(alpha)` given by an irreducible monic integer polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionDescriptor {
    min_poly: UniPoly<Rationals>,
    symbol: String,
}

impl ExtensionDescriptor {
    pub fn new(q: &UniPoly<Rationals>, symbol: &str) -> Result<Self, ModredError> {
        let q = upoly_from_integers(&primitive_integer_coeffs(q));
        if q.deg() < 1 {
            return Err(ModredError::NotIrreducible);
        }
        if !q.is_monic() {
            return Err(ModredError::NotMonic);
        }
        let fl = factor_univariate_q(&q);
        if fl.factors.len() != 1 || fl.factors[0].1 != 1 {
            return Err(ModredError::NotIrreducible);
        }
        Ok(ExtensionDescriptor { min_poly: q, symbol: symbol.to_string() })
    }

    pub fn min_poly(&self) -> &UniPoly<Rationals> {
        &self.min_poly
    }

    pub fn symbol(&self) -> &str {
        &self.symbol
    }

    pub fn degree(&self) -> usize {
        self.min_poly.deg()
    }

    /// Element from power-basis coordinates (reduced mod `q`).
    pub fn element(&self, coords: &[Rational]) -> AlgElem {
        let u = UniPoly::new(Rationals, coords.to_vec());
        AlgElem(u.rem(&self.min_poly).expect("nonzero modulus"))
    }

    pub fn from_integers(&self, coords: &[i64]) -> AlgElem {
        AlgElem(UniPoly::from_i64(Rationals, coords).rem(&self.min_poly).expect("nonzero modulus"))
    }

    pub fn constant(&self, c: Rational) -> AlgElem {
        AlgElem(UniPoly::constant(Rationals, c))
    }

    pub fn alpha(&self) -> AlgElem {
        self.from_integers(&[0, 1])
    }

    pub fn add(&self, a: &AlgElem, b: &AlgElem) -> AlgElem {
        AlgElem(&a.0 + &b.0)
    }

    pub fn sub(&self, a: &AlgElem, b: &AlgElem) -> AlgElem {
        AlgElem(&a.0 - &b.0)
    }

    pub fn mul(&self, a: &AlgElem, b: &AlgElem) -> AlgElem {
        AlgElem(a.0.mul_mod(&b.0, &self.min_poly).expect("nonzero modulus"))
    }

    /// `psi_p`: coordinates mod `p` evaluated at `beta`.
    pub fn reduce(&self, a: &AlgElem, ctx: &PrimeContext) -> Result<u64, ModredError> {
        let field = ctx.field();
        let mut acc = 0u64;
        for c in a.0.coeffs().iter().rev() {
            let c = field.from_rational(c).map_err(|_| ModredError::BadPrime(ctx.p))?;
            acc = field.add(&field.mul(&acc, &ctx.beta), &c);
        }
        Ok(acc)
    }

    /// Context for `p` and `beta`, validated against this extension.
    pub fn context(&self, p: u64, beta: u64) -> Result<PrimeContext, ModredError> {
        PrimeContext::new(p, beta, &self.min_poly)
    }
}

/// Element of `Q(alpha)` as a polynomial in `alpha` of degree `< deg q`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AlgElem(UniPoly<Rationals>);

impl AlgElem {
    pub fn coords(&self) -> &[Rational] {
        self.0.coeffs()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

/// Polynomial with `Q(alpha)` coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgPoly {
    nvars: usize,
    terms: Vec<(Monomial, AlgElem)>,
}

impl AlgPoly {
    pub fn new(nvars: usize, terms: Vec<(Monomial, AlgElem)>) -> Self {
        let terms = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        AlgPoly { nvars, terms }
    }

    /// Embeds a rational polynomial.
    pub fn from_rational(f: &MultiPoly<Rationals>) -> Self {
        let terms = f
            .terms()
            .iter()
            .map(|(m, c)| (m.clone(), AlgElem(UniPoly::constant(Rationals, c.clone()))))
            .collect();
        AlgPoly { nvars: f.nvars(), terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Monomial, AlgElem)] {
        &self.terms
    }
}

/// Coefficientwise `psi_p`; may return zero.
pub fn reduce_alg_poly(
    f: &AlgPoly,
    ctx: &PrimeContext,
    ext: &ExtensionDescriptor,
) -> Result<MultiPoly<PrimeField>, ModredError> {
    let field = ctx.field();
    let mut terms = Vec::with_capacity(f.terms.len());
    for (m, c) in &f.terms {
        terms.push((m.clone(), ext.reduce(c, ctx)?));
    }
    Ok(MultiPoly::from_terms(field, f.nvars, terms))
}

/// Generatorwise `psi_p`; a generator mapping to zero is a `BadPrime`.
pub fn reduce_alg_ideal(
    gens: &[AlgPoly],
    ctx: &PrimeContext,
    ext: &ExtensionDescriptor,
) -> Result<Ideal<PrimeField>, ModredError> {
    let nvars = gens.first().map_or(0, |g| g.nvars);
    let mut out = Vec::with_capacity(gens.len());
    for g in gens {
        let r = reduce_alg_poly(g, ctx, ext)?;
        if r.is_zero() {
            return Err(ModredError::BadPrime(ctx.p));
        }
        out.push(r);
    }
    Ideal::new(ctx.field(), nvars, out).map_err(|e| ModredError::InvalidContext(e.to_string()))
}
