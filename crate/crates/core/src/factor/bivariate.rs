//! Bivariate factorization over `F_p` by specializing the first variable,
//! lifting the univariate factors x-adically and recombining.
//!
//! Internally a polynomial is `Vec<UniPoly>` indexed by the degree in the
//! second variable `y`, with coefficients in `F_p[x]`.

use crate::arith::{Field, PrimeField, UniPoly};
use crate::mpoly::{Monomial, MultiPoly, TermOrder};

use super::fp_uni::factor_univariate_fp_seeded;
use super::{input_seed, FactorError, MultiFactors};

type Ux = UniPoly<PrimeField>;
/// `sum_i c_i(x) y^i`
type Bi = Vec<Ux>;

/// Number of specialization points tried before giving up.
const MAX_SHIFTS: usize = 64;

fn trim(mut b: Bi) -> Bi {
    while b.last().is_some_and(|c| c.is_zero()) {
        b.pop();
    }
    b
}

fn deg_y(b: &Bi) -> usize {
    b.len().saturating_sub(1)
}

fn lc_y(b: &Bi) -> &Ux {
    b.last().expect("nonzero")
}

fn bi_scale(a: &Bi, c: &Ux) -> Bi {
    trim(a.iter().map(|x| x * c).collect())
}

fn content_x(a: &Bi, field: PrimeField) -> Ux {
    let mut g = UniPoly::zero(field);
    for c in a {
        g = g.gcd(c).expect("same field");
        if g.is_one() {
            break;
        }
    }
    g
}

/// Primitive part with monic leading coefficient in `x`.
fn primitive(a: &Bi, field: PrimeField) -> Bi {
    if a.is_empty() {
        return Vec::new();
    }
    let c = content_x(a, field);
    let mut out: Bi = a.iter().map(|x| x.exact_div(&c).expect("content divides")).collect();
    let l = lc_y(&out).lc();
    let inv = field.inv(&l).expect("nonzero");
    for x in out.iter_mut() {
        *x = x.scale(&inv);
    }
    out
}

/// Exact quotient in `F_p[x][y]`, if any.
fn bi_div_exact(a: &Bi, b: &Bi, field: PrimeField) -> Option<Bi> {
    if b.is_empty() {
        return None;
    }
    if a.len() < b.len() {
        return a.is_empty().then(Vec::new);
    }
    let mut r = a.clone();
    let db = deg_y(b);
    let lb = lc_y(b);
    let mut q = vec![UniPoly::zero(field); a.len() - db];
    for i in (0..q.len()).rev() {
        if r[i + db].is_zero() {
            continue;
        }
        let c = r[i + db].exact_div(lb)?;
        for (j, bc) in b.iter().enumerate() {
            r[i + j] = &r[i + j] - &(&c * bc);
        }
        q[i] = c;
    }
    r.iter().all(|c| c.is_zero()).then(|| trim(q))
}

fn derivative_y(a: &Bi, field: PrimeField) -> Bi {
    trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.scale(&field.from_i64(i as i64)))
            .collect(),
    )
}

/// `lc(b)^(da-db+1) * a mod b`
fn prem(a: &Bi, b: &Bi) -> Bi {
    let mut r = a.clone();
    let db = deg_y(b);
    let lb = lc_y(b).clone();
    while !r.is_empty() && deg_y(&r) >= db {
        let shift = deg_y(&r) - db;
        let lr = lc_y(&r).clone();
        let mut next = bi_scale(&r, &lb);
        for (j, bc) in b.iter().enumerate() {
            next[j + shift] = &next[j + shift] - &(&lr * bc);
        }
        r = trim(next);
    }
    r
}

/// Gcd of primitive polynomials by the primitive remainder sequence.
fn bi_gcd(a: &Bi, b: &Bi, field: PrimeField) -> Bi {
    let (mut a, mut b) = if deg_y(a) >= deg_y(b) { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) };
    if b.is_empty() {
        return primitive(&a, field);
    }
    while !b.is_empty() {
        let r = prem(&a, &b);
        a = b;
        b = primitive(&r, field);
    }
    primitive(&a, field)
}

/// Squarefree decomposition of a primitive polynomial with positive
/// degree in `y`; requires `p > deg_y`.
fn squarefree_bi(f: &Bi, field: PrimeField) -> Vec<(Bi, usize)> {
    let mut out = Vec::new();
    let mut c = bi_gcd(f, &derivative_y(f, field), field);
    let mut w = bi_div_exact(f, &c, field).expect("gcd divides");
    let mut i = 1;
    while deg_y(&w) > 0 {
        let y = bi_gcd(&w, &c, field);
        let z = bi_div_exact(&w, &y, field).expect("gcd divides");
        if deg_y(&z) > 0 {
            out.push((primitive(&z, field), i));
        }
        c = bi_div_exact(&c, &y, field).expect("gcd divides");
        w = y;
        i += 1;
    }
    out
}

/// `f(x + a, y)`
fn shift_x(f: &Bi, a: u64, field: PrimeField) -> Bi {
    let lin = UniPoly::new(field, vec![a, 1]);
    f.iter().map(|c| c.compose(&lin)).collect()
}

fn eval_x(f: &Bi, a: u64, field: PrimeField) -> Ux {
    UniPoly::new(field, f.iter().map(|c| c.eval(&a)).collect())
}

/// Truncated power series in `x` with coefficients in `F_p[y]`, as
/// coefficient list indexed by `x`-degree.
type Series = Vec<Ux>;

fn to_series(f: &Bi, k: usize, field: PrimeField) -> Series {
    (0..k)
        .map(|j| UniPoly::new(field, f.iter().map(|c| c.coeff(j)).collect()))
        .collect()
}

fn from_series(s: &Series, field: PrimeField) -> Bi {
    let dy = s.iter().map(|c| c.coeffs().len()).max().unwrap_or(0);
    trim(
        (0..dy)
            .map(|i| UniPoly::new(field, s.iter().map(|c| c.coeff(i)).collect()))
            .collect(),
    )
}

fn series_mul(a: &Series, b: &Series, k: usize, field: PrimeField) -> Series {
    let mut out = vec![UniPoly::zero(field); k];
    for (i, x) in a.iter().enumerate().take(k) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(k - i) {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    out
}

/// Inverse of a univariate power series with nonzero constant term, mod `x^k`.
fn series_inverse(c: &Ux, k: usize, field: PrimeField) -> Vec<u64> {
    let c0 = field.inv(&c.coeff(0)).expect("unit constant term");
    let mut inv = vec![0u64; k];
    inv[0] = c0;
    for n in 1..k {
        let mut s = 0u64;
        for i in 1..=n {
            s = field.add(&s, &field.mul(&c.coeff(i), &inv[n - i]));
        }
        inv[n] = field.neg(&field.mul(&s, &c0));
    }
    inv
}

/// Lifts `h = lc * prod u_i (mod x)` to monic factors modulo `x^k`.
fn hensel_lift_x(h: &Bi, us: &[Ux], k: usize, field: PrimeField) -> Vec<Series> {
    let lc_inv = series_inverse(lc_y(h), k, field);
    let lc_inv_series: Series = lc_inv.iter().map(|&c| UniPoly::constant(field, c)).collect();
    let target = series_mul(&to_series(h, k, field), &lc_inv_series, k, field);
    let ss: Vec<Ux> = (0..us.len())
        .map(|i| {
            let mut others = UniPoly::one(field);
            for (j, u) in us.iter().enumerate() {
                if j != i {
                    others = others.mul_mod(u, &us[i]).expect("nonzero");
                }
            }
            others.ext_gcd(&us[i]).expect("same field").1
        })
        .collect();
    let mut fs: Vec<Series> = us
        .iter()
        .map(|u| {
            let mut s = vec![UniPoly::zero(field); k];
            s[0] = u.clone();
            s
        })
        .collect();
    for j in 1..k {
        let mut prod: Series = vec![UniPoly::zero(field); j + 1];
        prod[0] = UniPoly::one(field);
        for f in &fs {
            prod = series_mul(&prod, f, j + 1, field);
        }
        let e = &target[j] - &prod[j];
        if e.is_zero() {
            continue;
        }
        for (i, f) in fs.iter_mut().enumerate() {
            f[j] = e.mul_mod(&ss[i], &us[i]).expect("nonzero");
        }
    }
    fs
}

/// Factors a squarefree primitive polynomial with `lc_y(h)(0) != 0` and
/// `h(0, y)` squarefree.
fn factor_lifted(h: &Bi, us: Vec<Ux>, field: PrimeField) -> Vec<Bi> {
    if us.len() == 1 {
        return vec![h.clone()];
    }
    let dx = h.iter().map(|c| c.deg()).max().unwrap_or(0);
    let k = dx + lc_y(h).deg() + 1;
    let mut lifted = hensel_lift_x(h, &us, k, field);
    let mut out = Vec::new();
    let mut h = h.clone();
    let mut s = 1;
    'outer: while 2 * s <= lifted.len() {
        let r = lifted.len();
        let mut idx: Vec<usize> = (0..s).collect();
        loop {
            let lc = lc_y(&h).clone();
            let mut cand: Series = vec![UniPoly::zero(field); k];
            for (j, slot) in cand.iter_mut().enumerate() {
                *slot = UniPoly::constant(field, lc.coeff(j));
            }
            for &i in &idx {
                cand = series_mul(&cand, &lifted[i], k, field);
            }
            let g = primitive(&from_series(&cand, field), field);
            if let Some(q) = bi_div_exact(&h, &g, field) {
                out.push(g);
                h = q;
                let mut keep = Vec::with_capacity(r - s);
                for (i, l) in lifted.into_iter().enumerate() {
                    if !idx.contains(&i) {
                        keep.push(l);
                    }
                }
                lifted = keep;
                continue 'outer;
            }
            let mut i = s;
            loop {
                if i == 0 {
                    s += 1;
                    continue 'outer;
                }
                i -= 1;
                if idx[i] < r - s + i {
                    break;
                }
            }
            idx[i] += 1;
            for j in i + 1..s {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    if deg_y(&h) > 0 {
        out.push(primitive(&h, field));
    }
    out
}

fn to_bi(f: &MultiPoly<PrimeField>, field: PrimeField) -> Bi {
    let dy = f.degree_in(1) as usize;
    let mut rows: Vec<Vec<u64>> = vec![Vec::new(); dy + 1];
    for (m, c) in f.terms() {
        let (i, j) = (m.exp(0) as usize, m.exp(1) as usize);
        let row = &mut rows[j];
        if row.len() <= i {
            row.resize(i + 1, 0);
        }
        row[i] = *c;
    }
    trim(rows.into_iter().map(|r| UniPoly::new(field, r)).collect())
}

fn from_bi(b: &Bi, field: PrimeField) -> MultiPoly<PrimeField> {
    let mut terms = Vec::new();
    for (j, c) in b.iter().enumerate() {
        for (i, v) in c.coeffs().iter().enumerate() {
            if *v != 0 {
                terms.push((Monomial::from_exps(&[i as u32, j as u32]), *v));
            }
        }
    }
    MultiPoly::from_terms(field, 2, terms)
}

/// Irreducible factorization of a polynomial in two variables over `F_p`.
/// Factors are monic under degree-lex and sorted.
pub fn factor_bivariate_fp(f: &MultiPoly<PrimeField>) -> Result<MultiFactors<PrimeField>, FactorError> {
    factor_bivariate_fp_from(f, 0)
}

/// As [`factor_bivariate_fp`], trying specializations `x = a, a+1, ...`
/// starting at `first_shift`.
pub fn factor_bivariate_fp_from(
    f: &MultiPoly<PrimeField>,
    first_shift: u64,
) -> Result<MultiFactors<PrimeField>, FactorError> {
    if f.nvars() != 2 {
        return Err(FactorError::NotBivariate(f.nvars()));
    }
    if f.is_zero() {
        return Err(FactorError::ZeroPolynomial);
    }
    let field = *f.field();
    let p = field.modulus();
    let dy = f.degree_in(1) as usize;
    if dy > 0 && p as usize <= dy {
        return Err(FactorError::CharacteristicTooSmall { p, degree: dy });
    }
    let seed = input_seed(f.terms());
    let unit = f.leading_coeff(&TermOrder::DegLex).expect("nonzero");
    let bi = to_bi(f, field);

    let mut factors: Vec<(MultiPoly<PrimeField>, usize)> = Vec::new();
    let cont = content_x(&bi, field);
    for (g, e) in factor_univariate_fp_seeded(&cont, seed).factors {
        factors.push((from_bi(&vec![g], field), e));
    }
    let prim = primitive(&bi, field);
    if deg_y(&prim) > 0 {
        for (h, e) in squarefree_bi(&prim, field) {
            for g in factor_squarefree_bi(&h, field, first_shift, seed)? {
                factors.push((from_bi(&g, field), e));
            }
        }
    }
    let ord = TermOrder::DegLex;
    for (g, _) in factors.iter_mut() {
        *g = g.normalize(&ord);
    }
    factors.sort_by(|a, b| {
        a.0.total_degree()
            .cmp(&b.0.total_degree())
            .then_with(|| a.0.terms().cmp(b.0.terms()))
            .then_with(|| a.1.cmp(&b.1))
    });
    Ok(MultiFactors { unit, factors })
}

fn factor_squarefree_bi(h: &Bi, field: PrimeField, first_shift: u64, seed: u64) -> Result<Vec<Bi>, FactorError> {
    let p = field.modulus();
    let tries = MAX_SHIFTS.min(p as usize);
    for t in 0..tries as u64 {
        let a = (first_shift + t) % p;
        if lc_y(h).eval(&a) == 0 {
            continue;
        }
        let h0 = eval_x(h, a, field);
        if !h0.gcd(&h0.derivative()).expect("same field").is_one() {
            continue;
        }
        let us: Vec<Ux> = factor_univariate_fp_seeded(&h0, seed)
            .factors
            .into_iter()
            .map(|(u, _)| u)
            .collect();
        let shifted = shift_x(h, a, field);
        let back = p - a;
        return Ok(factor_lifted(&shifted, us, field)
            .into_iter()
            .map(|g| primitive(&shift_x(&g, back % p, field), field))
            .collect());
    }
    Err(FactorError::UnluckySpecialization(tries))
}
