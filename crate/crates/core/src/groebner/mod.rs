//! Groebner bases over `Q` and `F_p`: reduction, Buchberger, elimination,
//! colon ideals and section dimensions.

mod engine;

use std::sync::atomic::{AtomicUsize, Ordering as AtomicOrdering};

use crate::arith::Field;
use crate::hilbert::MonomialIdeal;
use crate::mpoly::{Monomial, MultiPoly, TermOrder};

use engine::{from_sorted, reduce, spoly, to_sorted, Term};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroebnerError {
    #[error("Groebner budget exceeded (basis size {basis_size}, degree {degree})")]
    BudgetExceeded { basis_size: usize, degree: u32 },
    #[error("colon by the zero polynomial")]
    ZeroDivisor,
    #[error("polynomials live in rings with different variable counts")]
    VariableCountMismatch,
    #[error("Groebner audit failed: {0}")]
    AuditFailed(String),
}

/// Resource caps for one basis computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GbConfig {
    pub max_basis_size: usize,
    pub max_degree: u32,
    /// Re-check every computed basis (S-pairs and input membership).
    pub audit: bool,
}

impl Default for GbConfig {
    fn default() -> Self {
        GbConfig { max_basis_size: 4000, max_degree: 200, audit: false }
    }
}

static AUDITED_BASES: AtomicUsize = AtomicUsize::new(0);

/// Number of bases that passed an audit in this process.
pub fn audited_basis_count() -> usize {
    AUDITED_BASES.load(AtomicOrdering::Relaxed)
}

/// Finitely generated ideal; zero generators are dropped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ideal<F: Field> {
    field: F,
    nvars: usize,
    gens: Vec<MultiPoly<F>>,
    dim: Option<usize>,
}

impl<F: Field> Ideal<F> {
    pub fn new(field: F, nvars: usize, gens: Vec<MultiPoly<F>>) -> Result<Self, GroebnerError> {
        if gens.iter().any(|g| g.nvars() != nvars) {
            return Err(GroebnerError::VariableCountMismatch);
        }
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(Ideal { field, nvars, gens, dim: None })
    }

    pub fn with_dimension(mut self, c: usize) -> Self {
        self.dim = Some(c);
        self
    }

    pub fn unit(field: F, nvars: usize) -> Self {
        let one = MultiPoly::one(field.clone(), nvars);
        Ideal { field, nvars, gens: vec![one], dim: None }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[MultiPoly<F>] {
        &self.gens
    }

    pub fn declared_dimension(&self) -> Option<usize> {
        self.dim
    }

    /// `true` when some generator is a nonzero constant.
    pub fn has_unit_generator(&self) -> bool {
        self.gens.iter().any(|g| g.is_unit())
    }

    /// The ideal plus further generators.
    pub fn extended(&self, more: impl IntoIterator<Item = MultiPoly<F>>) -> Result<Self, GroebnerError> {
        let mut gens = self.gens.clone();
        gens.extend(more);
        let mut out = Ideal::new(self.field.clone(), self.nvars, gens)?;
        out.dim = self.dim;
        Ok(out)
    }
}

/// A reduced Groebner basis, ascending by leading monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis<F: Field> {
    field: F,
    nvars: usize,
    order: TermOrder,
    polys: Vec<MultiPoly<F>>,
    sorted: Vec<Vec<Term<F>>>,
}

impl<F: Field> GroebnerBasis<F> {
    fn from_sorted_polys(field: F, nvars: usize, order: TermOrder, sorted: Vec<Vec<Term<F>>>) -> Self {
        let polys = sorted.iter().map(|t| from_sorted(&field, nvars, t.clone())).collect();
        GroebnerBasis { field, nvars, order, polys, sorted }
    }

    pub fn polys(&self) -> &[MultiPoly<F>] {
        &self.polys
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.sorted.iter().map(|t| t[0].0.clone()).collect()
    }

    pub fn is_unit(&self) -> bool {
        self.sorted.len() == 1 && self.sorted[0][0].0.is_one()
    }

    fn refs(&self) -> Vec<&[Term<F>]> {
        self.sorted.iter().map(|t| t.as_slice()).collect()
    }

    /// Remainder of `f` with no term divisible by a basis leading monomial.
    pub fn normal_form(&self, f: &MultiPoly<F>) -> MultiPoly<F> {
        let (r, s) = reduce(&self.field, &self.order, to_sorted(f, &self.order), &self.refs());
        let r = from_sorted(&self.field, self.nvars, r);
        if self.field.is_one(&s) {
            r
        } else {
            r.scale(&self.field.inv(&s).expect("nonzero scale"))
        }
    }

    pub fn contains(&self, f: &MultiPoly<F>) -> bool {
        let (r, _) = reduce(&self.field, &self.order, to_sorted(f, &self.order), &self.refs());
        r.is_empty()
    }

    /// Checks that every S-polynomial reduces to zero and every polynomial
    /// in `gens` lies in the ideal.
    pub fn audit(&self, gens: &[MultiPoly<F>]) -> Result<(), GroebnerError> {
        let refs = self.refs();
        for i in 0..self.sorted.len() {
            for j in i + 1..self.sorted.len() {
                let s = spoly(&self.field, &self.order, &self.sorted[i], &self.sorted[j]);
                let (r, _) = reduce(&self.field, &self.order, s, &refs);
                if !r.is_empty() {
                    return Err(GroebnerError::AuditFailed(format!("S-pair ({i}, {j}) does not reduce to zero")));
                }
            }
        }
        for (k, g) in gens.iter().enumerate() {
            if !self.contains(g) {
                return Err(GroebnerError::AuditFailed(format!("generator {k} not in the ideal")));
            }
        }
        for (i, a) in self.sorted.iter().enumerate() {
            for (j, b) in self.sorted.iter().enumerate() {
                if i != j && a[0].0.divides(&b[0].0) {
                    return Err(GroebnerError::AuditFailed(format!("leading monomial {i} divides {j}")));
                }
            }
        }
        AUDITED_BASES.fetch_add(1, AtomicOrdering::Relaxed);
        Ok(())
    }
}

pub fn buchberger<F: Field>(idl: &Ideal<F>, order: &TermOrder) -> Result<GroebnerBasis<F>, GroebnerError> {
    buchberger_with(idl, order, &GbConfig::default())
}

pub fn buchberger_with<F: Field>(
    idl: &Ideal<F>,
    order: &TermOrder,
    cfg: &GbConfig,
) -> Result<GroebnerBasis<F>, GroebnerError> {
    let sorted = engine::groebner(&idl.field, order, &idl.gens, cfg)?;
    let gb = GroebnerBasis::from_sorted_polys(idl.field.clone(), idl.nvars, order.clone(), sorted);
    if cfg.audit {
        gb.audit(&idl.gens)?;
    }
    Ok(gb)
}

/// Generators of the intersection of `idl` with the subring in the
/// variables outside `h`.
pub fn eliminate<F: Field>(idl: &Ideal<F>, h: &[usize]) -> Result<Vec<MultiPoly<F>>, GroebnerError> {
    eliminate_with(idl, h, &GbConfig::default())
}

pub fn eliminate_with<F: Field>(
    idl: &Ideal<F>,
    h: &[usize],
    cfg: &GbConfig,
) -> Result<Vec<MultiPoly<F>>, GroebnerError> {
    let ord = TermOrder::elimination(h.iter().copied());
    let gb = buchberger_with(idl, &ord, cfg)?;
    Ok(gb
        .sorted
        .iter()
        .zip(gb.polys)
        .filter(|(t, _)| ord.is_free_of_block(&t[0].0))
        .map(|(_, p)| p)
        .collect())
}

/// `(idl : f)`, via `idl ∩ (f)` computed with an auxiliary variable.
pub fn colon_single<F: Field>(idl: &Ideal<F>, f: &MultiPoly<F>) -> Result<Ideal<F>, GroebnerError> {
    colon_single_with(idl, f, &GbConfig::default())
}

pub fn colon_single_with<F: Field>(
    idl: &Ideal<F>,
    f: &MultiPoly<F>,
    cfg: &GbConfig,
) -> Result<Ideal<F>, GroebnerError> {
    if f.is_zero() {
        return Err(GroebnerError::ZeroDivisor);
    }
    if f.nvars() != idl.nvars {
        return Err(GroebnerError::VariableCountMismatch);
    }
    let n = idl.nvars;
    let field = idl.field.clone();
    let positions: Vec<usize> = (0..n).collect();
    let t = MultiPoly::var(field.clone(), n + 1, n);
    let one_minus_t = &MultiPoly::one(field.clone(), n + 1) - &t;
    let mut gens: Vec<MultiPoly<F>> = idl.gens.iter().map(|g| &t * &g.embed(n + 1, &positions)).collect();
    gens.push(&one_minus_t * &f.embed(n + 1, &positions));
    let lifted = Ideal::new(field.clone(), n + 1, gens)?;
    let inter = eliminate_with(&lifted, &[n], cfg)?;
    let mut out = Vec::with_capacity(inter.len());
    for h in inter {
        let h = h.restrict(&positions).expect("eliminated variable absent");
        let q = h.div_exact(f).expect("intersection element divisible by f");
        out.push(q);
    }
    let mut colon = Ideal::new(field, n, out)?;
    colon.dim = idl.dim;
    Ok(colon)
}

/// Affine Hilbert dimension of `idl + (X_i : i in eval_vars)`; `-1` for
/// the unit ideal.
pub fn dim_at_origin_section<F: Field>(idl: &Ideal<F>, eval_vars: &[usize]) -> Result<i64, GroebnerError> {
    dim_at_origin_section_with(idl, eval_vars, &GbConfig::default())
}

pub fn dim_at_origin_section_with<F: Field>(
    idl: &Ideal<F>,
    eval_vars: &[usize],
    cfg: &GbConfig,
) -> Result<i64, GroebnerError> {
    let vars = eval_vars.iter().map(|&i| MultiPoly::var(idl.field.clone(), idl.nvars, i));
    let gens: Vec<MultiPoly<F>> =
        idl.gens.iter().map(|g| g.eval_zero(eval_vars)).chain(vars).collect();
    let sec = Ideal::new(idl.field.clone(), idl.nvars, gens)?;
    ideal_dimension(&sec, cfg)
}

/// Affine Hilbert dimension of an ideal (degree-reverse-lex basis).
pub fn ideal_dimension<F: Field>(idl: &Ideal<F>, cfg: &GbConfig) -> Result<i64, GroebnerError> {
    let gb = buchberger_with(idl, &TermOrder::DegRevLex, cfg)?;
    Ok(MonomialIdeal::new(idl.nvars, gb.leading_monomials()).dimension())
}
