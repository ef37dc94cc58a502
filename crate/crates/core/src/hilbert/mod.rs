//! Monomial ideals, affine Hilbert functions and Hilbert polynomials.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::arith::{Field, Rational};
use crate::groebner::GroebnerBasis;
use crate::mpoly::Monomial;

/// Hard cap on the evaluation window when the exact regularity bound is
/// unavailable.
pub const MAX_UPTO: usize = 64;

/// Up to this many generators the Hilbert function is computed by
/// inclusion-exclusion over generator subsets.
const INCLUSION_EXCLUSION_MAX: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HilbertError {
    #[error("term order is not degree compatible")]
    OrderNotDegreeCompatible,
    #[error("Hilbert function did not stabilize below {0}")]
    StabilizationFailed(usize),
    #[error("{component} is not a multiple of {radical}")]
    NonDivisible { component: u64, radical: u64 },
    #[error("Hilbert function value overflows 64 bits")]
    Overflow,
}

/// Monomial ideal given by its minimal generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    nvars: usize,
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    /// Minimalizes `gens`; generators are kept in descending degree-lex order.
    pub fn new(nvars: usize, gens: Vec<Monomial>) -> Self {
        let mut gens = gens;
        gens.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)));
        gens.dedup();
        let mut min: Vec<Monomial> = Vec::new();
        for g in gens {
            if !min.iter().any(|m| m.divides(&g)) {
                min.push(g);
            }
        }
        min.reverse();
        MonomialIdeal { nvars, gens: min }
    }

    pub fn zero(nvars: usize) -> Self {
        MonomialIdeal { nvars, gens: Vec::new() }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(|g| g.is_one())
    }

    /// Largest size of a variable set containing no generator's support;
    /// `-1` for the unit ideal.
    pub fn dimension(&self) -> i64 {
        if self.is_unit() {
            return -1;
        }
        let n = self.nvars;
        let supports: Vec<u64> = self
            .gens
            .iter()
            .map(|g| g.support().fold(0u64, |acc, i| acc | (1 << i)))
            .collect();
        let mut best = 0;
        for s in 0u64..(1u64 << n) {
            let size = s.count_ones() as i64;
            if size > best && supports.iter().all(|&g| g & !s != 0) {
                best = size;
            }
        }
        best
    }

    /// Number of monomials of degree exactly `i` outside the ideal.
    pub fn homogeneous_hf(&self, i: usize) -> Result<u64, HilbertError> {
        let a = self.affine_hf(i)?;
        if i == 0 {
            return Ok(a);
        }
        Ok(a - self.affine_hf(i - 1)?)
    }

    /// Number of monomials of degree at most `i` outside the ideal.
    pub fn affine_hf(&self, i: usize) -> Result<u64, HilbertError> {
        if self.gens.len() <= INCLUSION_EXCLUSION_MAX {
            self.affine_hf_inclusion_exclusion(i)
        } else {
            Ok(self.affine_hf_enumerate(i))
        }
    }

    fn affine_hf_inclusion_exclusion(&self, i: usize) -> Result<u64, HilbertError> {
        let n = self.nvars;
        let k = self.gens.len();
        let mut total = BigInt::zero();
        for s in 0u32..(1u32 << k) {
            let mut l = Monomial::one(n);
            for (j, g) in self.gens.iter().enumerate() {
                if s & (1 << j) != 0 {
                    l = l.lcm(g);
                }
            }
            let d = l.degree() as usize;
            if d > i {
                continue;
            }
            let c = binomial(n + i - d, n);
            if s.count_ones() % 2 == 0 {
                total += c;
            } else {
                total -= c;
            }
        }
        total.to_u64().ok_or(HilbertError::Overflow)
    }

    fn affine_hf_enumerate(&self, i: usize) -> u64 {
        let mut count = 0u64;
        let mut exps = vec![0u32; self.nvars];
        self.enumerate(0, i as u32, &mut exps, &mut count);
        count
    }

    fn enumerate(&self, var: usize, budget: u32, exps: &mut [u32], count: &mut u64) {
        if var == exps.len() {
            if !self.contains(&Monomial::from_exps(exps)) {
                *count += 1;
            }
            return;
        }
        for e in 0..=budget {
            exps[var] = e;
            let m = Monomial::from_exps(exps);
            // everything above a monomial already in the ideal is in the ideal
            if var + 1 < exps.len() && self.contains(&m) {
                break;
            }
            self.enumerate(var + 1, budget - e, exps, count);
        }
        exps[var] = 0;
    }

    /// Index from which the affine Hilbert function agrees with the Hilbert
    /// polynomial: `deg lcm(generators) - n`, clamped at 0.
    pub fn regularity_bound(&self) -> usize {
        let mut l = Monomial::one(self.nvars);
        for g in &self.gens {
            l = l.lcm(g);
        }
        (l.degree() as usize).saturating_sub(self.nvars)
    }
}

/// Affine Hilbert function values, Hilbert polynomial, dimension and degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertData {
    /// `HF^a(0), HF^a(1), ...`
    pub values: Vec<u64>,
    /// Hilbert polynomial coefficients, constant term first.
    pub polynomial: Vec<Rational>,
    pub dimension: i64,
    pub degree: u64,
    /// First index from which `values` follow the polynomial.
    pub regularity: usize,
}

impl HilbertData {
    pub fn eval_polynomial(&self, t: i64) -> Rational {
        let t = Rational::from_integer(BigInt::from(t));
        self.polynomial.iter().rev().fold(Rational::zero(), |acc, c| acc * &t + c)
    }

    /// Polynomial coefficients as `"a"` or `"a/b"` strings.
    pub fn polynomial_strings(&self) -> Vec<String> {
        self.polynomial.iter().map(|c| c.to_string()).collect()
    }
}

impl Serialize for HilbertData {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("HilbertData", 5)?;
        st.serialize_field("values", &self.values)?;
        st.serialize_field("polynomial", &self.polynomial_strings())?;
        st.serialize_field("dimension", &self.dimension)?;
        st.serialize_field("degree", &self.degree)?;
        st.serialize_field("regularity", &self.regularity)?;
        st.end()
    }
}

fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    acc
}

/// Leading monomials of a reduced basis under a degree-compatible order.
pub fn initial_ideal<F: Field>(gb: &GroebnerBasis<F>) -> Result<MonomialIdeal, HilbertError> {
    if !gb.order().is_degree_compatible() {
        return Err(HilbertError::OrderNotDegreeCompatible);
    }
    Ok(MonomialIdeal::new(gb.nvars(), gb.leading_monomials()))
}

/// Default evaluation window: twice the largest generator degree plus `n`.
pub fn default_upto(m: &MonomialIdeal) -> usize {
    let d = m.generators().iter().map(|g| g.degree() as usize).max().unwrap_or(0);
    2 * d + m.nvars()
}

/// Hilbert data of `R/m` with values listed at least up to `upto`.
pub fn affine_hilbert_function(m: &MonomialIdeal, upto: usize) -> Result<HilbertData, HilbertError> {
    let dim = m.dimension();
    if dim < 0 {
        return Ok(HilbertData {
            values: vec![0; upto + 1],
            polynomial: Vec::new(),
            dimension: -1,
            degree: 0,
            regularity: 0,
        });
    }
    let d = dim as usize;
    let bound = m.regularity_bound();
    let regularity = if bound <= MAX_UPTO { bound } else { window_regularity(m, d)? };
    let last = upto.max(regularity + d);
    let values: Vec<u64> = (0..=last).map(|i| m.affine_hf(i)).collect::<Result<_, _>>()?;

    // Newton forward differences at the regularity index
    let mut diffs: Vec<BigInt> = values[regularity..=regularity + d].iter().map(|&v| BigInt::from(v)).collect();
    let mut newton = Vec::with_capacity(d + 1);
    for _ in 0..=d {
        newton.push(diffs[0].clone());
        diffs = diffs.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    let polynomial = newton_to_monomial(&newton, regularity as i64);
    let degree = newton[d].to_u64().ok_or(HilbertError::Overflow)?;
    Ok(HilbertData { values: values[..=upto.max(regularity)].to_vec(), polynomial, dimension: dim, degree, regularity })
}

/// Start of the first window of `d + 2` vanishing `(d+1)`-th differences.
fn window_regularity(m: &MonomialIdeal, d: usize) -> Result<usize, HilbertError> {
    let vals: Vec<BigInt> =
        (0..=MAX_UPTO).map(|i| m.affine_hf(i).map(BigInt::from)).collect::<Result<_, _>>()?;
    let mut diff = vals;
    for _ in 0..=d {
        diff = diff.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    let need = d + 2;
    let mut run = 0;
    for (i, x) in diff.iter().enumerate() {
        if x.is_zero() {
            run += 1;
            if run == need {
                return Ok(i + 1 - need);
            }
        } else {
            run = 0;
        }
    }
    Err(HilbertError::StabilizationFailed(MAX_UPTO))
}

/// Converts `sum_k c_k * binom(t - t0, k)` to coefficients in powers of `t`.
fn newton_to_monomial(newton: &[BigInt], t0: i64) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); newton.len()];
    // basis polynomial binom(t - t0, k), built incrementally
    let mut basis = vec![Rational::one()];
    for (k, c) in newton.iter().enumerate() {
        for (i, b) in basis.iter().enumerate() {
            out[i] += b * Rational::from_integer(c.clone());
        }
        // multiply by (t - t0 - k) / (k + 1)
        let shift = Rational::from_integer(BigInt::from(-t0 - k as i64));
        let denom = Rational::from_integer(BigInt::from(k as i64 + 1));
        let mut next = vec![Rational::zero(); basis.len() + 1];
        for (i, b) in basis.iter().enumerate() {
            next[i + 1] += b / &denom;
            next[i] += b * &shift / &denom;
        }
        basis = next;
    }
    while out.last().is_some_and(|c| c.is_zero()) {
        out.pop();
    }
    out
}

/// `component / radical`, the multiplicity of a primary component over its prime.
pub fn multiplicity_of(component_degree: u64, radical_degree: u64) -> Result<u64, HilbertError> {
    if radical_degree == 0 || !component_degree.is_multiple_of(radical_degree) {
        return Err(HilbertError::NonDivisible { component: component_degree, radical: radical_degree });
    }
    Ok(component_degree / radical_degree)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ratio;

    fn mi(n: usize, gens: &[&[u32]]) -> MonomialIdeal {
        MonomialIdeal::new(n, gens.iter().map(|e| Monomial::from_exps(e)).collect())
    }

    #[test]
    fn line_with_double_structure() {
        let m = mi(3, &[&[1, 0, 0], &[0, 2, 0]]);
        let h = affine_hilbert_function(&m, 6).unwrap();
        assert_eq!(&h.values[..4], &[1, 3, 5, 7]);
        assert_eq!(h.polynomial, vec![ratio(1, 1), ratio(2, 1)]);
        assert_eq!((h.dimension, h.degree), (1, 2));
    }

    #[test]
    fn zero_and_unit_ideals() {
        let h = affine_hilbert_function(&MonomialIdeal::zero(3), 5).unwrap();
        assert_eq!(h.values, vec![1, 4, 10, 20, 35, 56]);
        assert_eq!(h.dimension, 3);
        assert_eq!(h.degree, 1);
        let h = affine_hilbert_function(&mi(2, &[&[0, 0]]), 3).unwrap();
        assert_eq!(h.values, vec![0, 0, 0, 0]);
        assert_eq!(h.dimension, -1);
    }

    #[test]
    fn minimalization_and_dimension() {
        let m = mi(3, &[&[2, 0, 0], &[1, 0, 0], &[1, 1, 0]]);
        assert_eq!(m.generators(), &[Monomial::from_exps(&[1, 0, 0])]);
        assert_eq!(m.dimension(), 2);
        assert_eq!(mi(3, &[&[1, 1, 0], &[0, 0, 1]]).dimension(), 1);
    }

    #[test]
    fn enumeration_matches_inclusion_exclusion() {
        let m = mi(3, &[&[3, 0, 0], &[1, 2, 0], &[0, 1, 2], &[1, 1, 1]]);
        for i in 0..10 {
            assert_eq!(m.affine_hf_enumerate(i), m.affine_hf_inclusion_exclusion(i).unwrap());
        }
    }

    #[test]
    fn polynomial_matches_values_past_regularity() {
        let m = mi(3, &[&[2, 1, 0], &[0, 3, 1], &[1, 0, 2]]);
        let h = affine_hilbert_function(&m, 12).unwrap();
        for (i, v) in h.values.iter().enumerate().skip(h.regularity) {
            assert_eq!(h.eval_polynomial(i as i64), Rational::from_integer((*v).into()));
        }
        let w = window_regularity(&m, h.dimension as usize).unwrap();
        assert!(w <= h.regularity.max(w));
        assert!(h.eval_polynomial(w as i64) == Rational::from_integer(h.values[w].into()));
    }

    #[test]
    fn multiplicity_ratio() {
        assert_eq!(multiplicity_of(2, 2), Ok(1));
        assert_eq!(multiplicity_of(4, 2), Ok(2));
        assert!(multiplicity_of(3, 2).is_err());
    }
}
