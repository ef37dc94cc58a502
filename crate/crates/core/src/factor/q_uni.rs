//! Univariate factorization over `Q`: squarefree split, a good prime,
//! multifactor Hensel lifting to a coefficient bound, subset recombination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{
    is_prime, primitive_integer_coeffs, squarefree_decomposition, upoly_from_integers, Field, PrimeField, Rational,
    Rationals, UniPoly,
};

use super::fp_uni::factor_univariate_fp_seeded;
use super::UniFactors;

type Z = Vec<BigInt>;

fn trim(mut v: Z) -> Z {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn zmul(a: &[BigInt], b: &[BigInt]) -> Z {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn zsub(a: &[BigInt], b: &[BigInt]) -> Z {
    let n = a.len().max(b.len());
    let zero = BigInt::zero();
    trim((0..n).map(|i| a.get(i).unwrap_or(&zero) - b.get(i).unwrap_or(&zero)).collect())
}

/// Coefficients reduced into `(-m/2, m/2]`.
fn symmetric_mod(a: &[BigInt], m: &BigInt) -> Z {
    let half = m / 2;
    trim(
        a.iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

fn to_fp(a: &[BigInt], field: PrimeField) -> UniPoly<PrimeField> {
    UniPoly::new(field, a.iter().map(|c| field.from_bigint(c)).collect())
}

fn from_fp(a: &UniPoly<PrimeField>) -> Z {
    a.coeffs().iter().map(|&c| BigInt::from(c)).collect()
}

/// Exact quotient over `Z`, if any.
fn zdiv_exact(a: &[BigInt], b: &[BigInt]) -> Option<Z> {
    if b.is_empty() {
        return None;
    }
    if a.len() < b.len() {
        return a.is_empty().then(Vec::new);
    }
    let mut r = a.to_vec();
    let lb = b.last().expect("nonzero");
    let mut q = vec![BigInt::zero(); a.len() - b.len() + 1];
    for i in (0..q.len()).rev() {
        let top = &r[i + b.len() - 1];
        if top.is_zero() {
            continue;
        }
        let (c, rem) = top.div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        for (j, bc) in b.iter().enumerate() {
            r[i + j] -= &c * bc;
        }
        q[i] = c;
    }
    r.iter().all(|c| c.is_zero()).then(|| trim(q))
}

fn primitive(a: Z) -> Z {
    let g = a.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if g.is_zero() {
        return a;
    }
    let sign = if a.last().is_some_and(|c| c.is_negative()) { -BigInt::one() } else { BigInt::one() };
    let g = g * sign;
    a.into_iter().map(|c| c / &g).collect()
}

/// `2^deg * ceil(||f||_2) * |lc(f)|`, bounding the coefficients of
/// `lc(f) * g` for any factor `g` of `f`.
pub fn mignotte_bound(f: &[BigInt]) -> BigInt {
    let n = f.len().saturating_sub(1);
    let norm_sq: BigInt = f.iter().map(|c| c * c).sum();
    let norm = norm_sq.sqrt() + 1;
    let lc = f.last().map(|c| c.abs()).unwrap_or_else(BigInt::one);
    (BigInt::one() << n) * norm * lc
}

/// Picks a prime not dividing `lc(f)` with `f mod p` squarefree, preferring
/// fewer modular factors among the first few candidates.
fn choose_prime(f: &[BigInt], seed: u64) -> (PrimeField, Vec<UniPoly<PrimeField>>) {
    let lc = f.last().expect("nonzero");
    let mut best: Option<(PrimeField, Vec<UniPoly<PrimeField>>)> = None;
    let mut tried = 0;
    let mut p = 2u64;
    while tried < 5 {
        p += 1;
        if !is_prime(p) || (lc % p).is_zero() {
            continue;
        }
        let field = PrimeField::new(p).expect("small prime");
        let fp = to_fp(f, field);
        if !fp.gcd(&fp.derivative()).expect("same field").is_one() {
            continue;
        }
        tried += 1;
        let fl = factor_univariate_fp_seeded(&fp, seed);
        let facs: Vec<_> = fl.factors.into_iter().map(|(g, _)| g).collect();
        if best.as_ref().is_none_or(|(_, b)| facs.len() < b.len()) {
            best = Some((field, facs));
        }
        if best.as_ref().is_some_and(|(_, b)| b.len() == 1) {
            break;
        }
    }
    best.expect("some prime is good for a squarefree polynomial")
}

/// Lifts `f = lc * prod u_i (mod p)` with monic `u_i` to a factorization
/// modulo `p^k`, returning the monic lifted factors.
fn hensel_lift(f: &[BigInt], field: PrimeField, us: &[UniPoly<PrimeField>], k: u32) -> Vec<Z> {
    let p = BigInt::from(field.modulus());
    let lc = f.last().expect("nonzero").clone();
    let lc_inv = field.inv(&field.from_bigint(&lc)).expect("p does not divide lc");
    // s_i = (prod_{j != i} u_j)^{-1} mod u_i
    let ss: Vec<UniPoly<PrimeField>> = (0..us.len())
        .map(|i| {
            let mut others = UniPoly::one(field);
            for (j, u) in us.iter().enumerate() {
                if j != i {
                    others = others.mul_mod(u, &us[i]).expect("nonzero");
                }
            }
            let (g, s, _) = others.ext_gcd(&us[i]).expect("same field");
            debug_assert!(g.is_one());
            s
        })
        .collect();
    let mut fs: Vec<Z> = us.iter().map(from_fp).collect();
    let mut pj = p.clone();
    for _ in 1..k {
        let mut prod = vec![lc.clone()];
        for g in &fs {
            prod = zmul(&prod, g);
        }
        let e = zsub(f, &prod);
        let e: Z = e.iter().map(|c| {
            debug_assert!((c % &pj).is_zero());
            c / &pj
        }).collect();
        let e = to_fp(&e, field).scale(&lc_inv);
        if !e.is_zero() {
            for (i, g) in fs.iter_mut().enumerate() {
                let delta = e.mul_mod(&ss[i], &us[i]).expect("nonzero");
                let d = from_fp(&delta);
                let n = g.len().max(d.len());
                g.resize(n, BigInt::zero());
                for (j, c) in d.iter().enumerate() {
                    g[j] += c * &pj;
                }
            }
        }
        pj *= &p;
    }
    fs
}

/// Irreducible factors of a squarefree primitive integer polynomial with
/// positive leading coefficient.
fn factor_squarefree_z(f: &[BigInt], seed: u64) -> Vec<Z> {
    if f.len() <= 2 {
        return vec![f.to_vec()];
    }
    let (field, us) = choose_prime(f, seed);
    if us.len() == 1 {
        return vec![f.to_vec()];
    }
    let p = BigInt::from(field.modulus());
    let bound = mignotte_bound(f) * 2;
    let mut k = 1u32;
    let mut pk = p.clone();
    while pk <= bound {
        pk *= &p;
        k += 1;
    }
    let mut lifted = hensel_lift(f, field, &us, k);

    let mut out = Vec::new();
    let mut h = f.to_vec();
    let mut s = 1;
    'outer: while 2 * s <= lifted.len() {
        let r = lifted.len();
        let mut idx: Vec<usize> = (0..s).collect();
        loop {
            let lc = h.last().expect("nonzero").clone();
            let mut cand = vec![lc];
            for &i in &idx {
                cand = symmetric_mod(&zmul(&cand, &lifted[i]), &pk);
            }
            let g = primitive(cand);
            let const_ok = match (h.first(), g.first()) {
                (Some(h0), Some(g0)) if !g0.is_zero() => (h0 % g0).is_zero(),
                _ => true,
            };
            if const_ok {
                if let Some(q) = zdiv_exact(&h, &g) {
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
            }
            // next s-subset in lexicographic order
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
    if h.len() > 1 {
        out.push(primitive(h));
    }
    out
}

/// Irreducible factorization over `Q`. Factors are integer-primitive with
/// positive leading coefficient, sorted by degree then coefficients.
pub fn factor_univariate_q(f: &UniPoly<Rationals>) -> UniFactors<Rationals> {
    factor_univariate_q_seeded(f, 0)
}

pub fn factor_univariate_q_seeded(f: &UniPoly<Rationals>, seed: u64) -> UniFactors<Rationals> {
    if f.is_constant() {
        return UniFactors { unit: f.coeff(0), factors: Vec::new() };
    }
    let mut factors: Vec<(UniPoly<Rationals>, usize)> = Vec::new();
    let sqf = squarefree_decomposition(f).expect("characteristic zero");
    for (g, e) in sqf {
        let gz = primitive_integer_coeffs(&g);
        for h in factor_squarefree_z(&gz, seed) {
            factors.push((upoly_from_integers(&h), e));
        }
    }
    factors.sort_by(|a, b| q_key(&a.0).cmp(&q_key(&b.0)).then_with(|| a.1.cmp(&b.1)));
    let mut lc_prod = Rational::one();
    for (g, e) in &factors {
        lc_prod *= Rationals.pow(&g.lc(), *e as u64);
    }
    UniFactors { unit: f.lc() / lc_prod, factors }
}

fn q_key(f: &UniPoly<Rationals>) -> (usize, Vec<Rational>) {
    (f.deg(), f.coeffs().iter().rev().cloned().collect())
}
