#![allow(dead_code)]

use std::collections::HashMap;
use std::path::PathBuf;

use idealdec::arith::{Field, PrimeField, Rational, Rationals};
use idealdec::cli::{parse_ideal, IdealFile};
use idealdec::groebner::{GbConfig, Ideal};
use idealdec::mpoly::{Monomial, MultiPoly};
use idealdec::pipeline::PipelineConfig;
use rand::Rng;

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

pub fn fixture(name: &str) -> IdealFile {
    let text = std::fs::read_to_string(fixture_path(name)).expect("fixture exists");
    parse_ideal(&text).expect("fixture parses")
}

pub fn audited(seed: u64) -> PipelineConfig {
    PipelineConfig { seed, gb: GbConfig { audit: true, ..GbConfig::default() }, ..PipelineConfig::default() }
}

/// All exponent vectors of total degree exactly `d` in `n` variables.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for e in (0..=d).rev() {
        for mut rest in monomials_of_degree(n - 1, d - e) {
            rest.insert(0, e);
            out.push(rest);
        }
    }
    out
}

pub fn monomials_up_to(n: usize, d: u32) -> Vec<Vec<u32>> {
    (0..=d).flat_map(|k| monomials_of_degree(n, k)).collect()
}

/// Random polynomial over `Q` of total degree exactly `deg` with up to
/// `extra` further random terms and small integer coefficients.
pub fn random_poly<R: Rng>(rng: &mut R, n: usize, deg: u32, extra: usize, bound: i64) -> MultiPoly<Rationals> {
    let coeff = |rng: &mut R| loop {
        let c = rng.gen_range(-bound..=bound);
        if c != 0 {
            return Rational::from_integer(c.into());
        }
    };
    let top = monomials_of_degree(n, deg);
    let all = monomials_up_to(n, deg);
    loop {
        let mut terms = vec![(Monomial::from_exps(&top[rng.gen_range(0..top.len())]), coeff(rng))];
        for _ in 0..rng.gen_range(1..=extra.max(1)) {
            terms.push((Monomial::from_exps(&all[rng.gen_range(0..all.len())]), coeff(rng)));
        }
        // extra terms may cancel the top one
        let f = MultiPoly::from_terms(Rationals, n, terms);
        if !f.is_zero() && f.total_degree() == deg {
            return f;
        }
    }
}

/// Random polynomial whose degree-`deg` form has every monomial with a
/// nonzero coefficient, plus `extra` random lower-degree terms.
pub fn dense_top_poly<R: Rng>(rng: &mut R, n: usize, deg: u32, extra: usize, bound: i64) -> MultiPoly<Rationals> {
    let mut terms = Vec::new();
    for e in monomials_of_degree(n, deg) {
        let c = loop {
            let c = rng.gen_range(-bound..=bound);
            if c != 0 {
                break c;
            }
        };
        terms.push((Monomial::from_exps(&e), Rational::from_integer(c.into())));
    }
    let low = monomials_up_to(n, deg - 1);
    for _ in 0..extra {
        let c = rng.gen_range(-bound..=bound);
        terms.push((Monomial::from_exps(&low[rng.gen_range(0..low.len())]), Rational::from_integer(c.into())));
    }
    MultiPoly::from_terms(Rationals, n, terms)
}

/// Counts of leading monomials of degree `<= i`, `i = 0..=upto`, of the
/// span of `{m * g : deg(m * g) <= top}` in an echelon form with columns
/// ordered by descending degree.
fn truncated_pivots(gens: &[MultiPoly<PrimeField>], n: usize, top: u32, upto: u32) -> Vec<usize> {
    let field = *gens[0].field();
    let p = field.modulus();
    let mut cols = monomials_up_to(n, top);
    cols.reverse();
    let index: HashMap<Vec<u32>, usize> = cols.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let mut pivots: Vec<Option<Vec<u64>>> = vec![None; cols.len()];
    for g in gens {
        let gd = g.total_degree();
        if gd > top {
            continue;
        }
        for m in monomials_up_to(n, top - gd) {
            let mut row = vec![0u64; cols.len()];
            for (gm, c) in g.terms() {
                let e: Vec<u32> = gm.exps().iter().zip(&m).map(|(a, b)| a + b).collect();
                row[index[&e]] = *c;
            }
            // reduce against existing pivots, then insert
            for col in 0..cols.len() {
                if row[col] == 0 {
                    continue;
                }
                match &pivots[col] {
                    Some(prow) => {
                        let f = row[col];
                        for k in col..cols.len() {
                            if prow[k] != 0 {
                                row[k] = (row[k] + p - f * prow[k] % p) % p;
                            }
                        }
                    }
                    None => {
                        let inv = field.inv(&row[col]).expect("nonzero");
                        for v in row.iter_mut() {
                            *v = *v * inv % p;
                        }
                        pivots[col] = Some(row);
                        break;
                    }
                }
            }
        }
    }
    (0..=upto)
        .map(|i| {
            pivots
                .iter()
                .zip(&cols)
                .filter(|(pv, c)| pv.is_some() && c.iter().sum::<u32>() <= i)
                .count()
        })
        .collect()
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, j| acc * (n - j) / (j + 1))
}

/// Affine Hilbert function `HF(i) = dim P_{<=i} - dim I_{<=i}` from ranks of
/// Macaulay matrices, raising the truncation degree until the counts for
/// `i <= upto` stabilize.
pub fn macaulay_hf(gens: &[MultiPoly<PrimeField>], n: usize, upto: u32) -> Vec<u64> {
    let mut top = upto + 4;
    let mut prev = truncated_pivots(gens, n, top, upto);
    loop {
        let next = truncated_pivots(gens, n, top + 3, upto);
        if next == prev || top > 30 {
            return next
                .iter()
                .enumerate()
                .map(|(i, &r)| binomial(n as u64 + i as u64, n as u64) - r as u64)
                .collect();
        }
        prev = next;
        top += 3;
    }
}

pub fn fp_ideal(gens: &[MultiPoly<Rationals>], n: usize, p: u64) -> Ideal<PrimeField> {
    let field = PrimeField::new(p).unwrap();
    let red: Vec<MultiPoly<PrimeField>> = gens
        .iter()
        .map(|g| g.try_map_coeffs(field, |c| field.from_rational(c)).unwrap())
        .collect();
    Ideal::new(field, n, red).unwrap()
}
