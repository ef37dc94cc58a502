//! Univariate factorization over `F_p`: squarefree split, distinct-degree
//! split, Cantor-Zassenhaus equal-degree split.

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{big_pow, Field, PrimeField, UniPoly};

use super::{input_seed, UniFactors};

type Fp = UniPoly<PrimeField>;

/// Squarefree decomposition valid in any characteristic: `f = lc(f) *
/// prod g_i^e_i` with monic, squarefree, pairwise coprime `g_i`.
pub fn squarefree_fp(f: &Fp) -> Vec<(Fp, usize)> {
    let mut out = Vec::new();
    if f.is_constant() {
        return out;
    }
    sqf_rec(&f.monic(), 1, &mut out);
    out.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| fp_key(&a.0).cmp(&fp_key(&b.0))));
    out
}

fn sqf_rec(f: &Fp, mult: usize, out: &mut Vec<(Fp, usize)>) {
    let field = *f.field();
    let p = field.modulus() as usize;
    let mut c = f.gcd(&f.derivative()).expect("same field");
    let mut w = f.exact_div(&c).expect("gcd divides");
    let mut i = 1;
    while !w.is_constant() {
        let y = w.gcd(&c).expect("same field");
        let z = w.exact_div(&y).expect("gcd divides");
        if !z.is_constant() {
            push_merge(out, z, i * mult);
        }
        w = y;
        c = c.exact_div(&w).expect("gcd divides");
        i += 1;
    }
    if !c.is_constant() {
        // c is a p-th power: keep every p-th coefficient (Frobenius is the
        // identity on F_p)
        let root: Vec<u64> = c.coeffs().iter().step_by(p).copied().collect();
        sqf_rec(&UniPoly::new(field, root), mult * p, out);
    }
}

fn push_merge(out: &mut Vec<(Fp, usize)>, g: Fp, e: usize) {
    if let Some(slot) = out.iter_mut().find(|(h, _)| *h == g) {
        slot.1 += e;
    } else {
        out.push((g, e));
    }
}

/// Distinct-degree factorization of a monic squarefree polynomial:
/// pairs `(product of all irreducible factors of degree d, d)`.
pub fn distinct_degree(f: &Fp) -> Vec<(Fp, usize)> {
    let field = *f.field();
    let p = BigUint::from(field.modulus());
    let x = UniPoly::x(field);
    let mut out = Vec::new();
    let mut g = f.clone();
    let mut h = x.rem(&g).expect("nonzero");
    let mut d = 0;
    while g.deg() >= 2 * (d + 1) {
        d += 1;
        h = h.pow_mod(&p, &g).expect("nonzero");
        let gd = g.gcd(&(&h - &x)).expect("same field");
        if !gd.is_one() {
            g = g.exact_div(&gd).expect("gcd divides");
            h = h.rem(&g).expect("nonzero");
            out.push((gd, d));
        }
    }
    if !g.is_constant() {
        let deg = g.deg();
        out.push((g, deg));
    }
    out
}

/// Splits a monic squarefree product of irreducibles of degree `d`.
pub fn equal_degree(f: &Fp, d: usize, rng: &mut ChaCha8Rng) -> Vec<Fp> {
    let n = f.deg();
    if n == d {
        return vec![f.clone()];
    }
    let field = *f.field();
    let p = field.modulus();
    loop {
        let a = UniPoly::new(field, (0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.is_constant() {
            continue;
        }
        let b = if p == 2 {
            // trace map a + a^2 + ... + a^(2^(d-1))
            let mut acc = a.clone();
            let mut t = a.clone();
            for _ in 1..d {
                t = t.mul_mod(&t, f).expect("nonzero");
                acc = &acc + &t;
            }
            acc
        } else {
            let e = (big_pow(p, d) - 1u32) / 2u32;
            let one = UniPoly::one(field);
            &a.pow_mod(&e, f).expect("nonzero") - &one
        };
        let g = f.gcd(&b).expect("same field");
        if !g.is_constant() && g.deg() < n {
            let h = f.exact_div(&g).expect("gcd divides");
            let mut out = equal_degree(&g, d, rng);
            out.extend(equal_degree(&h, d, rng));
            return out;
        }
    }
}

/// Irreducible factorization over `F_p`; factors monic, sorted by degree
/// then coefficients. The splitting randomness is seeded from the input.
pub fn factor_univariate_fp(f: &Fp) -> UniFactors<PrimeField> {
    factor_univariate_fp_seeded(f, 0)
}

pub fn factor_univariate_fp_seeded(f: &Fp, seed: u64) -> UniFactors<PrimeField> {
    let field = *f.field();
    let unit = if f.is_zero() { field.zero() } else { f.lc() };
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ input_seed(f.coeffs()));
    let mut factors = Vec::new();
    for (g, e) in squarefree_fp(f) {
        for (gd, d) in distinct_degree(&g) {
            for h in equal_degree(&gd, d, &mut rng) {
                factors.push((h, e));
            }
        }
    }
    factors.sort_by(|a, b| fp_key(&a.0).cmp(&fp_key(&b.0)).then_with(|| a.1.cmp(&b.1)));
    UniFactors { unit, factors }
}

pub(crate) fn fp_key(f: &Fp) -> (usize, Vec<u64>) {
    (f.deg(), f.coeffs().iter().rev().copied().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fp(p: u64, c: &[i64]) -> Fp {
        UniPoly::from_i64(PrimeField::new(p).unwrap(), c)
    }

    #[test]
    fn quartic_splits_mod_23() {
        let q = fp(23, &[1, 0, -10, 0, 1]);
        let fl = factor_univariate_fp(&q);
        let got: Vec<Fp> = fl.factors.iter().map(|(g, _)| g.clone()).collect();
        let mut want = vec![fp(23, &[21, 1]), fp(23, &[12, 1]), fp(23, &[2, 1]), fp(23, &[11, 1])];
        want.sort_by_key(fp_key);
        assert_eq!(got, want);
        assert!(fl.factors.iter().all(|(_, e)| *e == 1));
    }

    #[test]
    fn small_examples() {
        let fl = factor_univariate_fp(&fp(7, &[-2, 0, 1]));
        assert_eq!(fl.factors, vec![(fp(7, &[3, 1]), 1), (fp(7, &[4, 1]), 1)]);
        let fl = factor_univariate_fp(&fp(7, &[1, 0, 1]));
        assert_eq!(fl.factors, vec![(fp(7, &[1, 0, 1]), 1)]);
    }

    #[test]
    fn characteristic_p_powers() {
        // (T^3 + 1)^3 * T^2 over F_3 = (T + 1)^9 * T^2
        let f = &fp(3, &[1, 0, 0, 1]).pow(3) * &fp(3, &[0, 0, 1]);
        let fl = factor_univariate_fp(&f);
        assert_eq!(fl.factors, vec![(fp(3, &[0, 1]), 2), (fp(3, &[1, 1]), 9)]);
        let g = &fp(2, &[1, 1, 1]).pow(2) * &fp(2, &[1, 1, 0, 1]);
        let fl = factor_univariate_fp(&g);
        assert_eq!(fl.factors, vec![(fp(2, &[1, 1, 1]), 2), (fp(2, &[1, 1, 0, 1]), 1)]);
    }

    /// Brute-force irreducibility check by trial division by all monic
    /// polynomials of degree <= deg/2.
    fn irreducible_bruteforce(f: &Fp) -> bool {
        let field = *f.field();
        let p = field.modulus();
        let n = f.deg();
        for d in 1..=n / 2 {
            let count = p.pow(d as u32);
            for k in 0..count {
                let mut c = Vec::with_capacity(d + 1);
                let mut v = k;
                for _ in 0..d {
                    c.push(v % p);
                    v /= p;
                }
                c.push(1);
                if UniPoly::new(field, c).divides(f) {
                    return false;
                }
            }
        }
        n >= 1
    }

    proptest! {
        #[test]
        fn reconstruction_and_irreducibility(
            p in prop::sample::select(vec![2u64, 3, 5, 7, 11]),
            c in prop::collection::vec(0u64..1000, 2..9),
        ) {
            let field = PrimeField::new(p).unwrap();
            let f = UniPoly::new(field, c.iter().map(|v| v % p).collect());
            prop_assume!(!f.is_zero());
            let fl = factor_univariate_fp(&f);
            let mut prod = UniPoly::constant(field, fl.unit);
            let mut deg = 0;
            for (g, e) in &fl.factors {
                prop_assert!(g.is_monic());
                prop_assert!(irreducible_bruteforce(g));
                prod = &prod * &g.pow(*e as u64);
                deg += g.deg() * e;
            }
            prop_assert_eq!(prod, f.clone());
            prop_assert_eq!(deg, f.deg());
        }
    }
}
