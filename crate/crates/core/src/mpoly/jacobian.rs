use crate::arith::Field;

use super::{MpolyError, MultiPoly};

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

fn cofactor_det<F: Field>(m: &[Vec<MultiPoly<F>>]) -> MultiPoly<F> {
    let k = m.len();
    if k == 1 {
        return m[0][0].clone();
    }
    let (field, nv) = (m[0][0].field().clone(), m[0][0].nvars());
    let mut acc = MultiPoly::zero(field, nv);
    for col in 0..k {
        if m[0][col].is_zero() {
            continue;
        }
        let minor: Vec<Vec<MultiPoly<F>>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(j, _)| *j != col).map(|(_, v)| v.clone()).collect())
            .collect();
        let t = &m[0][col] * &cofactor_det(&minor);
        acc = if col % 2 == 0 { &acc + &t } else { &acc - &t };
    }
    acc
}

/// All `k x k` minors of the Jacobian matrix `(d gens_i / d X_j)`, ordered by
/// row subset then column subset, both lexicographically.
pub fn jacobian_minors<F: Field>(gens: &[MultiPoly<F>], k: usize) -> Result<Vec<MultiPoly<F>>, MpolyError> {
    let n = gens.first().map_or(0, |g| g.nvars());
    if k == 0 || k > gens.len().min(n) {
        return Err(MpolyError::SizeTooLarge { k, rows: gens.len(), cols: n });
    }
    let jac: Vec<Vec<MultiPoly<F>>> = gens
        .iter()
        .map(|g| (0..n).map(|j| g.derivative(j)).collect())
        .collect();
    let mut out = Vec::new();
    for rows in combinations(gens.len(), k) {
        for cols in combinations(n, k) {
            let sub: Vec<Vec<MultiPoly<F>>> = rows
                .iter()
                .map(|&r| cols.iter().map(|&c| jac[r][c].clone()).collect())
                .collect();
            out.push(cofactor_det(&sub));
        }
    }
    Ok(out)
}
