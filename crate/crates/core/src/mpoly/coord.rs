use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::arith::{Field, Rational, Rationals};

use super::{MpolyError, MultiPoly};

/// Affine integer change of coordinates `X -> matrix * X + translation`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CoordChange {
    pub matrix: Vec<Vec<i64>>,
    pub translation: Vec<i64>,
}

impl CoordChange {
    pub fn identity(n: usize) -> Self {
        let matrix = (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect();
        CoordChange { matrix, translation: vec![0; n] }
    }

    pub fn linear(matrix: Vec<Vec<i64>>) -> Self {
        let n = matrix.len();
        CoordChange { matrix, translation: vec![0; n] }
    }

    pub fn nvars(&self) -> usize {
        self.matrix.len()
    }

    /// Random invertible change with every entry (and translation component)
    /// uniform in `[-bound, bound]`.
    pub fn random<R: Rng>(n: usize, bound: i64, with_translation: bool, rng: &mut R) -> Self {
        loop {
            let matrix: Vec<Vec<i64>> = (0..n)
                .map(|_| (0..n).map(|_| rng.gen_range(-bound..=bound)).collect())
                .collect();
            let translation = (0..n)
                .map(|_| if with_translation { rng.gen_range(-bound..=bound) } else { 0 })
                .collect();
            let c = CoordChange { matrix, translation };
            if !c.determinant().is_zero() {
                return c;
            }
        }
    }

    /// Determinant by fraction-free elimination.
    pub fn determinant(&self) -> BigInt {
        let n = self.nvars();
        let mut a: Vec<Vec<BigInt>> = self
            .matrix
            .iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect();
        bareiss_det(&mut a, n)
    }

    /// Inverse map `X -> A^{-1} X - A^{-1} t` over the rationals.
    pub fn inverse(&self) -> Result<(Vec<Vec<Rational>>, Vec<Rational>), MpolyError> {
        let n = self.nvars();
        let mut aug: Vec<Vec<Rational>> = (0..n)
            .map(|i| {
                let mut row: Vec<Rational> = self.matrix[i]
                    .iter()
                    .map(|&v| Rational::from_integer(v.into()))
                    .collect();
                row.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
                row
            })
            .collect();
        for col in 0..n {
            let piv = (col..n)
                .find(|&r| !aug[r][col].is_zero())
                .ok_or(MpolyError::SingularMatrix)?;
            aug.swap(col, piv);
            let inv = aug[col][col].recip();
            for v in aug[col].iter_mut() {
                *v = &*v * &inv;
            }
            for r in 0..n {
                if r != col && !aug[r][col].is_zero() {
                    let factor = aug[r][col].clone();
                    for k in 0..2 * n {
                        let sub = &factor * &aug[col][k];
                        aug[r][k] = &aug[r][k] - &sub;
                    }
                }
            }
        }
        let inv: Vec<Vec<Rational>> = aug.into_iter().map(|r| r[n..].to_vec()).collect();
        let shift = (0..n)
            .map(|i| {
                -(0..n)
                    .map(|j| &inv[i][j] * Rational::from_integer(self.translation[j].into()))
                    .fold(Rational::zero(), |a, b| a + b)
            })
            .collect();
        Ok((inv, shift))
    }
}

pub(crate) fn bareiss_det(a: &mut [Vec<BigInt>], n: usize) -> BigInt {
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    if n == 0 {
        return BigInt::one();
    }
    let d = a[n - 1][n - 1].clone();
    if sign.is_negative() {
        -d
    } else {
        d
    }
}

/// Substitutes `X_i -> sum_j rows[i][j] X_j + shift[i]`.
pub fn substitute_affine<F: Field>(
    f: &MultiPoly<F>,
    rows: &[Vec<F::Elem>],
    shift: &[F::Elem],
) -> MultiPoly<F> {
    let n = f.nvars();
    let field = f.field().clone();
    let images: Vec<MultiPoly<F>> = (0..n)
        .map(|i| {
            let mut l = MultiPoly::constant(field.clone(), n, shift[i].clone());
            for j in 0..n {
                let term = MultiPoly::var(field.clone(), n, j).scale(&rows[i][j]);
                l = &l + &term;
            }
            l
        })
        .collect();
    let mut powers: Vec<Vec<MultiPoly<F>>> = images
        .iter()
        .map(|_| vec![MultiPoly::one(field.clone(), n)])
        .collect();
    for (i, img) in images.iter().enumerate() {
        let dmax = f.degree_in(i) as usize;
        while powers[i].len() <= dmax {
            let next = &powers[i][powers[i].len() - 1] * img;
            powers[i].push(next);
        }
    }
    let mut acc = MultiPoly::zero(field.clone(), n);
    for (m, c) in f.terms() {
        let mut t = MultiPoly::constant(field.clone(), n, c.clone());
        for (i, pw) in powers.iter().enumerate() {
            let e = m.exp(i) as usize;
            if e > 0 {
                t = &t * &pw[e];
            }
        }
        acc = &acc + &t;
    }
    acc
}

/// `f(matrix * X + translation)`.
pub fn apply_coord_change<F: Field>(
    f: &MultiPoly<F>,
    c: &CoordChange,
) -> Result<MultiPoly<F>, MpolyError> {
    if c.nvars() != f.nvars() {
        return Err(MpolyError::VariableCountMismatch);
    }
    if c.determinant().is_zero() {
        return Err(MpolyError::SingularMatrix);
    }
    let field = f.field();
    let rows: Vec<Vec<F::Elem>> = c
        .matrix
        .iter()
        .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
        .collect();
    let shift: Vec<F::Elem> = c.translation.iter().map(|&v| field.from_i64(v)).collect();
    Ok(substitute_affine(f, &rows, &shift))
}

/// Undoes [`apply_coord_change`] over the rationals.
pub fn apply_inverse_coord_change(
    f: &MultiPoly<Rationals>,
    c: &CoordChange,
) -> Result<MultiPoly<Rationals>, MpolyError> {
    let (rows, shift) = c.inverse()?;
    Ok(substitute_affine(f, &rows, &shift))
}
