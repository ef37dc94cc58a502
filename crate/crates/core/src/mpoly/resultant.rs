use crate::arith::Field;

use super::{MpolyError, MultiPoly};

/// Determinant of a square matrix of polynomials by fraction-free
/// (Bareiss) elimination; every division is exact.
pub fn bareiss_determinant<F: Field>(mut a: Vec<Vec<MultiPoly<F>>>, field: &F, nvars: usize) -> MultiPoly<F> {
    let n = a.len();
    if n == 0 {
        return MultiPoly::one(field.clone(), nvars);
    }
    let mut negate = false;
    let mut prev = MultiPoly::one(field.clone(), nvars);
    for k in 0..n.saturating_sub(1) {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return MultiPoly::zero(field.clone(), nvars),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
            a[i][k] = MultiPoly::zero(field.clone(), nvars);
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -&d
    } else {
        d
    }
}

/// Sylvester-matrix resultant of `f` and `g` viewed as polynomials in `var`.
pub fn resultant<F: Field>(f: &MultiPoly<F>, g: &MultiPoly<F>, var: usize) -> Result<MultiPoly<F>, MpolyError> {
    if f.nvars() != g.nvars() {
        return Err(MpolyError::VariableCountMismatch);
    }
    let (m, n) = (f.degree_in(var) as usize, g.degree_in(var) as usize);
    if f.is_zero() || g.is_zero() || m == 0 || n == 0 {
        return Err(MpolyError::DegreeZeroInVariable(var));
    }
    let field = f.field();
    let nv = f.nvars();
    let fc = f.coefficients_in(var);
    let gc = g.coefficients_in(var);
    let size = m + n;
    let zero = MultiPoly::zero(field.clone(), nv);
    let mut mat = vec![vec![zero; size]; size];
    for i in 0..n {
        for k in 0..=m {
            mat[i][i + k] = fc[m - k].clone();
        }
    }
    for i in 0..m {
        for k in 0..=n {
            mat[n + i][i + k] = gc[n - k].clone();
        }
    }
    Ok(bareiss_determinant(mat, field, nv))
}
