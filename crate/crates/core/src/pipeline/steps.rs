//! Partition of modular factors, matching across projections, and the
//! Jacobian-minor colon cleanup.

use crate::arith::{PrimeField, Rationals, UniPoly};
use crate::factor::MultiFactors;
use crate::groebner::{buchberger_with, colon_single_with, dim_at_origin_section_with, GbConfig, GroebnerBasis, Ideal};
use crate::hilbert::{affine_hilbert_function, default_upto, initial_ideal, HilbertData, MonomialIdeal};
use crate::modred::reduce_upoly;
use crate::mpoly::{jacobian_minors, MultiPoly, TermOrder};
use crate::par;

use super::PipelineError;

/// Upper bound on the number of candidate tuples tried during matching.
pub const MAX_MATCH_TUPLES: usize = 4096;

/// Origin specialization `g(0, Y)` of a bivariate factor, monic.
fn specialize(g: &MultiPoly<PrimeField>) -> UniPoly<PrimeField> {
    g.eval_zero(&[0]).to_upoly(1).expect("only the second variable remains").monic()
}

/// Modular factors of `D_1` mod `p` (bivariate, first variable is the one
/// set to zero) whose origin specializations multiply to `d` mod `p`.
pub fn partition_factors(
    d: &UniPoly<Rationals>,
    field: PrimeField,
    modular_factors: &MultiFactors<PrimeField>,
) -> Result<Vec<(MultiPoly<PrimeField>, usize)>, PipelineError> {
    let target = reduce_upoly(d, field)?;
    if target.deg() != d.deg() || target.is_zero() {
        return Err(PipelineError::PartitionIncomplete);
    }
    let target = target.monic();
    let mut delta = UniPoly::one(field);
    let mut out = Vec::new();
    for (g, e) in &modular_factors.factors {
        let s = specialize(g);
        if s.deg() != g.total_degree() as usize {
            return Err(PipelineError::PartitionIncomplete);
        }
        if !s.divides(&target) {
            continue;
        }
        let next = &delta * &s;
        if !next.divides(&target) {
            return Err(PipelineError::PartitionIncomplete);
        }
        delta = next;
        out.push((g.clone(), *e));
        if delta == target {
            return Ok(out);
        }
    }
    Err(PipelineError::PartitionIncomplete)
}

/// Finds the tuple of candidate factors (one per further projection) whose
/// sum with `idl` and `first` has a zero-dimensional section `X_1 = 0`.
/// All added factors are raised to the power `m`. A single tuple is
/// accepted without testing.
pub fn match_factors(
    idl: &Ideal<PrimeField>,
    first: &MultiPoly<PrimeField>,
    candidates: &[Vec<MultiPoly<PrimeField>>],
    m: usize,
    gb: &GbConfig,
    parallel: bool,
) -> Result<Ideal<PrimeField>, PipelineError> {
    let mut total = 1usize;
    for c in candidates {
        total = total.saturating_mul(c.len());
    }
    if total == 0 || total > MAX_MATCH_TUPLES {
        return Err(PipelineError::NoMatch);
    }
    let power = |f: &MultiPoly<PrimeField>| f.pow(m as u32);
    let build = |tuple: &[usize]| -> Result<Ideal<PrimeField>, PipelineError> {
        let extra = std::iter::once(power(first))
            .chain(tuple.iter().zip(candidates).map(|(&k, c)| power(&c[k])));
        Ok(idl.extended(extra)?)
    };
    let tuples = cartesian(candidates);
    if total == 1 {
        return build(&tuples[0]);
    }
    let found = par::find_map_first(&tuples, parallel, |t| {
        let ideal = match build(t) {
            Ok(i) => i,
            Err(e) => return Some(Err(e)),
        };
        match dim_at_origin_section_with(&ideal, &[0], gb) {
            Ok(0) => Some(Ok(ideal)),
            Ok(_) => None,
            Err(e) => Some(Err(e.into())),
        }
    });
    found.unwrap_or(Err(PipelineError::NoMatch))
}

/// Index tuples in lexicographic order.
fn cartesian(lists: &[Vec<MultiPoly<PrimeField>>]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for l in lists {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..l.len()).map(move |k| {
                    let mut t = t.clone();
                    t.push(k);
                    t
                })
            })
            .collect();
    }
    out
}

/// Result of a successful colon cleanup.
#[derive(Debug, Clone)]
pub struct CleanedComponent {
    pub minor: MultiPoly<PrimeField>,
    pub basis: GroebnerBasis<PrimeField>,
    pub initial: MonomialIdeal,
    pub hilbert: HilbertData,
}

/// Tries the `(n-1) x (n-1)` Jacobian minors of `idl` in order and returns
/// the first whose colon `(candidate : M)` is a curve, of degree
/// `expected_degree` when given.
pub fn pick_jacobian_minor(
    idl: &Ideal<PrimeField>,
    candidate: &Ideal<PrimeField>,
    order: &TermOrder,
    expected_degree: Option<u64>,
    gb: &GbConfig,
) -> Result<CleanedComponent, PipelineError> {
    let n = idl.nvars();
    let minors = match jacobian_minors(idl.generators(), n - 1) {
        Ok(m) => m,
        Err(_) => return Err(PipelineError::NoUsableMinor),
    };
    for minor in minors {
        if minor.is_zero() {
            continue;
        }
        let colon = colon_single_with(candidate, &minor, gb)?;
        let basis = buchberger_with(&colon, order, gb)?;
        let initial = initial_ideal(&basis)?;
        if initial.dimension() != 1 {
            continue;
        }
        let hilbert = affine_hilbert_function(&initial, default_upto(&initial))?;
        if expected_degree.is_some_and(|d| d != hilbert.degree) {
            continue;
        }
        return Ok(CleanedComponent { minor, basis, initial, hilbert });
    }
    Err(PipelineError::NoUsableMinor)
}
