//! Buchberger's algorithm on polynomials kept sorted by the active term order.

use std::cmp::Ordering;

use crate::arith::Field;
use crate::mpoly::{Monomial, MultiPoly, TermOrder};

use super::{GbConfig, GroebnerError};

pub(crate) type Term<F> = (Monomial, <F as Field>::Elem);

/// Terms in descending order under `ord`.
pub(crate) fn to_sorted<F: Field>(f: &MultiPoly<F>, ord: &TermOrder) -> Vec<Term<F>> {
    f.sorted_terms(ord)
}

pub(crate) fn from_sorted<F: Field>(field: &F, nvars: usize, t: Vec<Term<F>>) -> MultiPoly<F> {
    MultiPoly::from_terms(field.clone(), nvars, t)
}

/// `a*f - b*m*g`, both inputs sorted descending, result sorted descending.
fn axpy<F: Field>(
    field: &F,
    ord: &TermOrder,
    a: &F::Elem,
    f: &[Term<F>],
    b: &F::Elem,
    m: &Monomial,
    g: &[Term<F>],
) -> Vec<Term<F>> {
    let a_one = field.is_one(a);
    let mut out = Vec::with_capacity(f.len() + g.len());
    let (mut i, mut j) = (0, 0);
    let mut gm: Option<Monomial> = g.first().map(|t| t.0.mul(m));
    while i < f.len() || j < g.len() {
        let ord_ij = match (f.get(i), &gm) {
            (Some(ft), Some(gt)) => ord.cmp(&ft.0, gt),
            (Some(_), None) => Ordering::Greater,
            (None, _) => Ordering::Less,
        };
        match ord_ij {
            Ordering::Greater => {
                let c = if a_one { f[i].1.clone() } else { field.mul(a, &f[i].1) };
                out.push((f[i].0.clone(), c));
                i += 1;
            }
            Ordering::Less => {
                let c = field.neg(&field.mul(b, &g[j].1));
                out.push((gm.take().expect("g term"), c));
                j += 1;
                gm = g.get(j).map(|t| t.0.mul(m));
            }
            Ordering::Equal => {
                let fc = if a_one { f[i].1.clone() } else { field.mul(a, &f[i].1) };
                let c = field.sub(&fc, &field.mul(b, &g[j].1));
                if !field.is_zero(&c) {
                    out.push((f[i].0.clone(), c));
                }
                i += 1;
                j += 1;
                gm = g.get(j).map(|t| t.0.mul(m));
            }
        }
    }
    out
}

fn scale_in_place<F: Field>(field: &F, t: &mut [Term<F>], k: &F::Elem) {
    if field.is_one(k) {
        return;
    }
    for term in t.iter_mut() {
        term.1 = field.mul(&term.1, k);
    }
}

/// Canonical associate: monic over `F_p`, primitive with positive leading
/// coefficient over `Q`.
pub(crate) fn normalize_terms<F: Field>(field: &F, t: &mut [Term<F>]) {
    if let Some(lc) = t.first().map(|x| x.1.clone()) {
        let k = field.normalizer(&lc, t.iter().map(|x| &x.1));
        scale_in_place(field, t, &k);
    }
}

/// Full reduction of `f` by the basis polynomials (each sorted descending).
/// Returns `(r, s)` with `s*f - r` in the ideal and `s` a nonzero scalar;
/// `s` is always one over fields that divide.
pub(crate) fn reduce<F: Field>(
    field: &F,
    ord: &TermOrder,
    f: Vec<Term<F>>,
    basis: &[&[Term<F>]],
) -> (Vec<Term<F>>, F::Elem) {
    let mut rem: Vec<Term<F>> = Vec::new();
    let mut p = f;
    let mut start = 0;
    let mut scale = field.one();
    let mut steps = 0usize;
    while start < p.len() {
        let m = &p[start].0;
        let divisor = basis.iter().find(|g| g[0].0.divides(m));
        match divisor {
            Some(g) => {
                let q = m.div(&g[0].0).expect("divides");
                let (a, b) = field.reduction_multipliers(&p[start].1, &g[0].1);
                p = axpy(field, ord, &a, &p[start + 1..], &b, &q, &g[1..]);
                start = 0;
                if !field.is_one(&a) {
                    scale_in_place(field, &mut rem, &a);
                    scale = field.mul(&scale, &a);
                }
                steps += 1;
                if F::FRACTION_FREE && steps.is_multiple_of(8) {
                    let one = field.one();
                    let k = field.normalizer(&one, rem.iter().chain(p.iter()).map(|x| &x.1));
                    scale_in_place(field, &mut rem, &k);
                    scale_in_place(field, &mut p, &k);
                    scale = field.mul(&scale, &k);
                }
            }
            None => {
                rem.push(p[start].clone());
                start += 1;
            }
        }
    }
    (rem, scale)
}

/// S-polynomial of two sorted polynomials.
pub(crate) fn spoly<F: Field>(field: &F, ord: &TermOrder, f: &[Term<F>], g: &[Term<F>]) -> Vec<Term<F>> {
    let l = f[0].0.lcm(&g[0].0);
    let mf = l.div(&f[0].0).expect("lcm");
    let mg = l.div(&g[0].0).expect("lcm");
    let (a, b) = field.reduction_multipliers(&f[0].1, &g[0].1);
    // a*mf*f - b*mg*g; multiply f by mf first, then cancel
    let fm: Vec<Term<F>> = f[1..].iter().map(|(m, c)| (m.mul(&mf), c.clone())).collect();
    axpy(field, ord, &a, &fm, &b, &mg, &g[1..])
}

#[derive(Clone, Copy)]
struct Pair {
    i: usize,
    j: usize,
}

struct Engine<'a, F: Field> {
    field: &'a F,
    ord: &'a TermOrder,
    cfg: &'a GbConfig,
    polys: Vec<Vec<Term<F>>>,
    active: Vec<bool>,
    pairs: Vec<(Pair, Monomial)>,
}

impl<F: Field> Engine<'_, F> {
    fn lm(&self, i: usize) -> &Monomial {
        &self.polys[i][0].0
    }

    /// Gebauer-Moeller update with the new polynomial at index `h`.
    fn update(&mut self, h: usize) {
        let lm_h = self.lm(h).clone();
        let old: Vec<usize> = (0..h).filter(|&i| self.active[i]).collect();
        let cand: Vec<(usize, Monomial)> = old.iter().map(|&g| (g, lm_h.lcm(self.lm(g)))).collect();

        // keep (h,g) if coprime or no other candidate lcm properly divides it
        let mut kept: Vec<(usize, Monomial, bool)> = Vec::new();
        for (idx, (g, l)) in cand.iter().enumerate() {
            let coprime = lm_h.is_coprime(self.lm(*g));
            if coprime {
                kept.push((*g, l.clone(), true));
                continue;
            }
            let dominated = cand.iter().enumerate().any(|(k, (_, l2))| {
                k != idx && l2.divides(l) && (l2 != l || k < idx)
            });
            if !dominated {
                kept.push((*g, l.clone(), false));
            }
        }
        // among pairs sharing an lcm, the coprime one (if any) removes all
        let mut new_pairs: Vec<(Pair, Monomial)> = Vec::new();
        for (g, l, coprime) in &kept {
            if *coprime {
                continue;
            }
            let shadowed = kept.iter().any(|(g2, l2, c2)| *c2 && g2 != g && l2 == l);
            if !shadowed {
                new_pairs.push((Pair { i: *g, j: h }, l.clone()));
            }
        }

        let polys = &self.polys;
        self.pairs.retain(|(p, l)| {
            if !lm_h.divides(l) {
                return true;
            }
            let li = polys[p.i][0].0.lcm(&lm_h);
            let lj = polys[p.j][0].0.lcm(&lm_h);
            li == *l || lj == *l
        });
        self.pairs.extend(new_pairs);

        for &g in &old {
            if lm_h.divides(self.lm(g)) {
                self.active[g] = false;
            }
        }
        self.active[h] = true;
    }

    fn select(&mut self) -> Option<Pair> {
        if self.pairs.is_empty() {
            return None;
        }
        let ord = self.ord;
        let mut best = 0;
        for k in 1..self.pairs.len() {
            let (pk, lk) = &self.pairs[k];
            let (pb, lb) = &self.pairs[best];
            let c = lk
                .degree()
                .cmp(&lb.degree())
                .then_with(|| ord.cmp(lk, lb))
                .then_with(|| (pk.j, pk.i).cmp(&(pb.j, pb.i)));
            if c == Ordering::Less {
                best = k;
            }
        }
        Some(self.pairs.swap_remove(best).0)
    }

    fn basis_refs(&self) -> Vec<&[Term<F>]> {
        (0..self.polys.len())
            .filter(|&i| self.active[i])
            .map(|i| self.polys[i].as_slice())
            .collect()
    }

    fn push(&mut self, mut p: Vec<Term<F>>) -> Result<(), GroebnerError> {
        normalize_terms(self.field, &mut p);
        let deg = p.iter().map(|t| t.0.degree()).max().unwrap_or(0);
        if deg > self.cfg.max_degree {
            return Err(GroebnerError::BudgetExceeded { basis_size: self.polys.len(), degree: deg });
        }
        let live = self.active.iter().filter(|a| **a).count();
        if live >= self.cfg.max_basis_size {
            return Err(GroebnerError::BudgetExceeded { basis_size: live + 1, degree: deg });
        }
        self.polys.push(p);
        self.active.push(false);
        let h = self.polys.len() - 1;
        self.update(h);
        Ok(())
    }
}

/// Reduced Groebner basis of the nonzero polynomials `gens`, each returned
/// sorted descending under `ord` and normalized. Output is sorted ascending
/// by leading monomial.
pub(crate) fn groebner<F: Field>(
    field: &F,
    ord: &TermOrder,
    gens: &[MultiPoly<F>],
    cfg: &GbConfig,
) -> Result<Vec<Vec<Term<F>>>, GroebnerError> {
    let mut eng = Engine { field, ord, cfg, polys: Vec::new(), active: Vec::new(), pairs: Vec::new() };
    for g in gens {
        if g.is_zero() {
            continue;
        }
        let t = to_sorted(g, ord);
        let refs = eng.basis_refs();
        let (r, _) = reduce(field, ord, t, &refs);
        if !r.is_empty() {
            if r[0].0.is_one() {
                return Ok(vec![unit_terms(field, r[0].0.nvars())]);
            }
            eng.push(r)?;
        }
    }
    while let Some(pair) = eng.select() {
        let s = spoly(field, ord, &eng.polys[pair.i], &eng.polys[pair.j]);
        let refs = eng.basis_refs();
        let (r, _) = reduce(field, ord, s, &refs);
        if r.is_empty() {
            continue;
        }
        if r[0].0.is_one() {
            return Ok(vec![unit_terms(field, r[0].0.nvars())]);
        }
        eng.push(r)?;
    }
    Ok(interreduce(field, ord, eng.basis_refs().into_iter().map(|s| s.to_vec()).collect()))
}

fn unit_terms<F: Field>(field: &F, n: usize) -> Vec<Term<F>> {
    vec![(Monomial::one(n), field.one())]
}

/// Minimal basis with every tail fully reduced.
pub(crate) fn interreduce<F: Field>(field: &F, ord: &TermOrder, mut polys: Vec<Vec<Term<F>>>) -> Vec<Vec<Term<F>>> {
    polys.sort_by(|a, b| ord.cmp(&a[0].0, &b[0].0));
    let mut minimal: Vec<Vec<Term<F>>> = Vec::new();
    for p in polys {
        if !minimal.iter().any(|q| q[0].0.divides(&p[0].0)) {
            minimal.push(p);
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<&[Term<F>]> =
            (0..minimal.len()).filter(|&i| i != k).map(|i| minimal[i].as_slice()).collect();
        let head = minimal[k][0].clone();
        let (mut tail, s) = reduce(field, ord, minimal[k][1..].to_vec(), &others);
        let mut head = head;
        head.1 = field.mul(&head.1, &s);
        tail.insert(0, head);
        normalize_terms(field, &mut tail);
        out.push(tail);
    }
    out
}
