//! Polynomial factorization: univariate over `F_p` and `Q`, bivariate over `F_p`.

mod bivariate;
mod fp_uni;
mod q_uni;

use std::hash::{DefaultHasher, Hash, Hasher};

use crate::arith::{ArithError, Field, UniPoly};
use crate::mpoly::MultiPoly;

pub use bivariate::{factor_bivariate_fp, factor_bivariate_fp_from};
pub use fp_uni::{distinct_degree, equal_degree, factor_univariate_fp, factor_univariate_fp_seeded, squarefree_fp};
pub use q_uni::{factor_univariate_q, mignotte_bound};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FactorError {
    #[error("no usable specialization found after {0} shifts")]
    UnluckySpecialization(usize),
    #[error("bivariate factorization expects 2 variables, got {0}")]
    NotBivariate(usize),
    #[error("characteristic {p} is too small for degree {degree}")]
    CharacteristicTooSmall { p: u64, degree: usize },
    #[error("cannot factor the zero polynomial")]
    ZeroPolynomial,
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// `unit * prod f_i^e_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorList<F: Field, P> {
    pub unit: F::Elem,
    pub factors: Vec<(P, usize)>,
}

pub type UniFactors<F> = FactorList<F, UniPoly<F>>;
pub type MultiFactors<F> = FactorList<F, MultiPoly<F>>;

impl<F: Field, P> FactorList<F, P> {
    /// Sum of `e_i * deg f_i` under the given degree function.
    pub fn weighted_degree(&self, deg: impl Fn(&P) -> usize) -> usize {
        self.factors.iter().map(|(f, e)| deg(f) * e).sum()
    }
}

impl<F: Field> UniFactors<F> {
    pub fn expand_in(&self, field: &F) -> UniPoly<F> {
        let mut acc = UniPoly::constant(field.clone(), self.unit.clone());
        for (f, e) in &self.factors {
            acc = &acc * &f.pow(*e as u64);
        }
        acc
    }
}

impl<F: Field> MultiFactors<F> {
    pub fn expand_in(&self, field: &F, nvars: usize) -> MultiPoly<F> {
        let mut acc = MultiPoly::constant(field.clone(), nvars, self.unit.clone());
        for (f, e) in &self.factors {
            acc = &acc * &f.pow(*e as u32);
        }
        acc
    }
}

/// Seed contribution derived from the input coefficients.
pub(crate) fn input_seed<T: Hash>(coeffs: &[T]) -> u64 {
    let mut h = DefaultHasher::new();
    coeffs.hash(&mut h);
    h.finish()
}
