use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::arith::{Field, UniPoly};

use super::{Monomial, MpolyError, TermOrder};

/// Sparse multivariate polynomial. Terms are stored with nonzero coefficients
/// in descending lexicographic order of exponent vectors, which makes the
/// representation canonical; term orders are applied on demand.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly<F: Field> {
    field: F,
    nvars: usize,
    terms: Vec<(Monomial, F::Elem)>,
}

impl<F: Field> MultiPoly<F> {
    pub fn zero(field: F, nvars: usize) -> Self {
        MultiPoly { field, nvars, terms: Vec::new() }
    }

    pub fn constant(field: F, nvars: usize, c: F::Elem) -> Self {
        Self::from_terms(field, nvars, vec![(Monomial::one(nvars), c)])
    }

    pub fn one(field: F, nvars: usize) -> Self {
        let one = field.one();
        Self::constant(field, nvars, one)
    }

    /// The variable `X_i` (0-based).
    pub fn var(field: F, nvars: usize, i: usize) -> Self {
        let one = field.one();
        Self::from_terms(field, nvars, vec![(Monomial::var(nvars, i, 1), one)])
    }

    pub fn monomial(field: F, m: Monomial, c: F::Elem) -> Self {
        let n = m.nvars();
        Self::from_terms(field, n, vec![(m, c)])
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates and
    /// dropping zero coefficients.
    pub fn from_terms(field: F, nvars: usize, terms: Vec<(Monomial, F::Elem)>) -> Self {
        let mut map: BTreeMap<Monomial, F::Elem> = BTreeMap::new();
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "exponent vector length");
            match map.get_mut(&m) {
                Some(acc) => *acc = field.add(acc, &c),
                None => {
                    map.insert(m, c);
                }
            }
        }
        let terms = map
            .into_iter()
            .rev()
            .filter(|(_, c)| !field.is_zero(c))
            .collect();
        MultiPoly { field, nvars, terms }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Monomial, F::Elem)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, F::Elem)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || self.is_unit()
    }

    /// Total degree; 0 for the zero polynomial.
    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.exp(var)).max().unwrap_or(0)
    }

    /// Variables that occur with positive exponent.
    pub fn variables(&self) -> Vec<usize> {
        (0..self.nvars).filter(|&i| self.degree_in(i) > 0).collect()
    }

    pub fn coeff_of(&self, m: &Monomial) -> F::Elem {
        match self.terms.binary_search_by(|(t, _)| m.cmp(t)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => self.field.zero(),
        }
    }

    pub fn leading_term(&self, ord: &TermOrder) -> Result<(&Monomial, &F::Elem), MpolyError> {
        self.terms
            .iter()
            .max_by(|a, b| ord.cmp(&a.0, &b.0))
            .map(|(m, c)| (m, c))
            .ok_or(MpolyError::ZeroPolynomial)
    }

    /// The greatest exponent vector under `ord`.
    pub fn leading_monomial(&self, ord: &TermOrder) -> Result<Monomial, MpolyError> {
        Ok(self.leading_term(ord)?.0.clone())
    }

    pub fn leading_coeff(&self, ord: &TermOrder) -> Result<F::Elem, MpolyError> {
        Ok(self.leading_term(ord)?.1.clone())
    }

    /// Terms sorted descending under `ord`.
    pub fn sorted_terms(&self, ord: &TermOrder) -> Vec<(Monomial, F::Elem)> {
        let mut t = self.terms.clone();
        t.sort_by(|a, b| ord.cmp(&b.0, &a.0));
        t
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        if self.field.is_zero(c) {
            return Self::zero(self.field.clone(), self.nvars);
        }
        let f = &self.field;
        let terms = self.terms.iter().map(|(m, a)| (m.clone(), f.mul(a, c))).collect();
        MultiPoly { field: f.clone(), nvars: self.nvars, terms }
    }

    /// `c * m * self`
    pub fn mul_term(&self, m: &Monomial, c: &F::Elem) -> Self {
        if self.field.is_zero(c) {
            return Self::zero(self.field.clone(), self.nvars);
        }
        let f = &self.field;
        // multiplying by a monomial preserves lex order
        let terms = self
            .terms
            .iter()
            .map(|(t, a)| (t.mul(m), f.mul(a, c)))
            .collect();
        MultiPoly { field: f.clone(), nvars: self.nvars, terms }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.field.clone(), self.nvars);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Canonical associate: monic over `F_p`, primitive integer with positive
    /// leading coefficient over `Q` (leading term taken under `ord`).
    pub fn normalize(&self, ord: &TermOrder) -> Self {
        match self.leading_term(ord) {
            Err(_) => self.clone(),
            Ok((_, lc)) => {
                let s = self.field.normalizer(lc, self.terms.iter().map(|(_, c)| c));
                self.scale(&s)
            }
        }
    }

    /// Substitutes field values for some variables. The result keeps all
    /// `n` variables; substituted ones no longer occur.
    pub fn eval_partial(&self, assignments: &[(usize, F::Elem)]) -> Self {
        let f = &self.field;
        let terms = self
            .terms
            .iter()
            .filter_map(|(m, c)| {
                let mut c = c.clone();
                let mut m = m.clone();
                for (i, v) in assignments {
                    let e = m.exp(*i);
                    if e > 0 {
                        c = f.mul(&c, &f.pow(v, e as u64));
                        m = m.with_exp(*i, 0);
                    }
                }
                (!f.is_zero(&c)).then_some((m, c))
            })
            .collect();
        Self::from_terms(f.clone(), self.nvars, terms)
    }

    /// Sets the listed variables to zero.
    pub fn eval_zero(&self, vars: &[usize]) -> Self {
        let f = &self.field;
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| vars.iter().all(|&i| m.exp(i) == 0))
            .cloned()
            .collect();
        MultiPoly { field: f.clone(), nvars: self.nvars, terms }
    }

    pub fn eval_point(&self, point: &[F::Elem]) -> F::Elem {
        let f = &self.field;
        self.terms.iter().fold(f.zero(), |acc, (m, c)| {
            let mut t = c.clone();
            for (i, v) in point.iter().enumerate() {
                let e = m.exp(i);
                if e > 0 {
                    t = f.mul(&t, &f.pow(v, e as u64));
                }
            }
            f.add(&acc, &t)
        })
    }

    pub fn derivative(&self, var: usize) -> Self {
        let f = &self.field;
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exp(var) > 0)
            .map(|(m, c)| {
                let e = m.exp(var);
                (m.with_exp(var, e - 1), f.mul(c, &f.from_i64(e as i64)))
            })
            .collect();
        Self::from_terms(f.clone(), self.nvars, terms)
    }

    pub fn map_coeffs<G: Field>(&self, target: G, map: impl Fn(&F::Elem) -> G::Elem) -> MultiPoly<G> {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), map(c))).collect();
        MultiPoly::from_terms(target, self.nvars, terms)
    }

    pub fn try_map_coeffs<G: Field, E>(
        &self,
        target: G,
        map: impl Fn(&F::Elem) -> Result<G::Elem, E>,
    ) -> Result<MultiPoly<G>, E> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            terms.push((m.clone(), map(c)?));
        }
        Ok(MultiPoly::from_terms(target, self.nvars, terms))
    }

    /// Re-indexes variables into a ring with `new_nvars` variables; old
    /// variable `i` becomes new variable `positions[i]`.
    pub fn embed(&self, new_nvars: usize, positions: &[usize]) -> Self {
        assert_eq!(positions.len(), self.nvars);
        let mut map = vec![None; new_nvars];
        for (old, &new) in positions.iter().enumerate() {
            map[new] = Some(old);
        }
        let terms = self.terms.iter().map(|(m, c)| (m.remap(&map), c.clone())).collect();
        Self::from_terms(self.field.clone(), new_nvars, terms)
    }

    /// Keeps only the listed variables (in that order); `None` if another
    /// variable occurs.
    pub fn restrict(&self, keep: &[usize]) -> Option<Self> {
        for (m, _) in &self.terms {
            for i in m.support() {
                if !keep.contains(&i) {
                    return None;
                }
            }
        }
        let map: Vec<Option<usize>> = keep.iter().map(|&i| Some(i)).collect();
        let terms = self.terms.iter().map(|(m, c)| (m.remap(&map), c.clone())).collect();
        Some(Self::from_terms(self.field.clone(), keep.len(), terms))
    }

    /// Coefficients with respect to `var`: entry `k` is the coefficient of
    /// `var^k`, itself free of `var`.
    pub fn coefficients_in(&self, var: usize) -> Vec<Self> {
        let d = self.degree_in(var) as usize;
        let mut buckets: Vec<Vec<(Monomial, F::Elem)>> = vec![Vec::new(); d + 1];
        for (m, c) in &self.terms {
            buckets[m.exp(var) as usize].push((m.with_exp(var, 0), c.clone()));
        }
        buckets
            .into_iter()
            .map(|t| Self::from_terms(self.field.clone(), self.nvars, t))
            .collect()
    }

    pub fn from_coefficients_in(field: F, nvars: usize, var: usize, coeffs: &[Self]) -> Self {
        let mut terms = Vec::new();
        for (k, c) in coeffs.iter().enumerate() {
            for (m, a) in &c.terms {
                terms.push((m.with_exp(var, m.exp(var) + k as u32), a.clone()));
            }
        }
        Self::from_terms(field, nvars, terms)
    }

    /// Univariate view when only `var` occurs.
    pub fn to_upoly(&self, var: usize) -> Option<UniPoly<F>> {
        let mut c = vec![self.field.zero(); self.degree_in(var) as usize + 1];
        for (m, a) in &self.terms {
            if m.support().any(|i| i != var) {
                return None;
            }
            c[m.exp(var) as usize] = a.clone();
        }
        Some(UniPoly::new(self.field.clone(), c))
    }

    pub fn from_upoly(nvars: usize, var: usize, u: &UniPoly<F>) -> Self {
        let terms = u
            .coeffs()
            .iter()
            .enumerate()
            .map(|(k, c)| (Monomial::var(nvars, var, k as u32), c.clone()))
            .collect();
        Self::from_terms(u.field().clone(), nvars, terms)
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        let f = &self.field;
        let (dm, dc) = (&d.terms[0].0, &d.terms[0].1);
        let inv = f.inv(dc).ok()?;
        let mut r = self.clone();
        let mut q = Vec::new();
        while let Some((rm, rc)) = r.terms.first() {
            let m = rm.div(dm)?;
            let c = f.mul(rc, &inv);
            r = &r - &d.mul_term(&m, &c);
            q.push((m, c));
        }
        Some(Self::from_terms(f.clone(), self.nvars, q))
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (m, c) in self.sorted_terms(&TermOrder::DegLex) {
            let mut body = String::new();
            let neg = self.field.fmt_abs(&c, &mut body);
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if m.is_one() {
                s.push_str(&body);
            } else {
                if body != "1" {
                    s.push_str(&body);
                    s.push('*');
                }
                s.push_str(&m.fmt_with(names));
            }
        }
        s
    }

    fn merge(&self, rhs: &Self, negate_rhs: bool) -> Self {
        let f = &self.field;
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let (mut i, mut j) = (0, 0);
        let conv = |c: &F::Elem| if negate_rhs { f.neg(c) } else { c.clone() };
        while i < self.terms.len() && j < rhs.terms.len() {
            match self.terms[i].0.cmp(&rhs.terms[j].0) {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((rhs.terms[j].0.clone(), conv(&rhs.terms[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_rhs {
                        f.sub(&self.terms[i].1, &rhs.terms[j].1)
                    } else {
                        f.add(&self.terms[i].1, &rhs.terms[j].1)
                    };
                    if !f.is_zero(&c) {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend(rhs.terms[j..].iter().map(|(m, c)| (m.clone(), conv(c))));
        MultiPoly { field: f.clone(), nvars: self.nvars, terms: out }
    }
}

/// Default display names: `X, Y, Z` for up to three variables, else `X1..Xn`.
pub fn default_var_names(n: usize) -> Vec<String> {
    if n <= 3 {
        ["X", "Y", "Z"][..n].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=n).map(|i| format!("X{i}")).collect()
    }
}

impl<F: Field> fmt::Display for MultiPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_with(&default_var_names(self.nvars)))
    }
}

impl<F: Field> fmt::Debug for MultiPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<F: Field> Add for &MultiPoly<F> {
    type Output = MultiPoly<F>;
    fn add(self, rhs: Self) -> MultiPoly<F> {
        self.merge(rhs, false)
    }
}

impl<F: Field> Sub for &MultiPoly<F> {
    type Output = MultiPoly<F>;
    fn sub(self, rhs: Self) -> MultiPoly<F> {
        self.merge(rhs, true)
    }
}

impl<F: Field> Neg for &MultiPoly<F> {
    type Output = MultiPoly<F>;
    fn neg(self) -> MultiPoly<F> {
        let f = self.field.clone();
        let minus_one = f.neg(&f.one());
        self.scale(&minus_one)
    }
}

impl<F: Field> Mul for &MultiPoly<F> {
    type Output = MultiPoly<F>;
    fn mul(self, rhs: Self) -> MultiPoly<F> {
        let f = &self.field;
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut map: BTreeMap<Monomial, F::Elem> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let m = ma.mul(mb);
                let c = f.mul(ca, cb);
                match map.get_mut(&m) {
                    Some(acc) => *acc = f.add(acc, &c),
                    None => {
                        map.insert(m, c);
                    }
                }
            }
        }
        let terms = map.into_iter().rev().filter(|(_, c)| !f.is_zero(c)).collect();
        MultiPoly { field: f.clone(), nvars: self.nvars, terms }
    }
}
