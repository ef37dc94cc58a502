//! Dense univariate polynomials over a [`Field`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::field::Field;
use super::ArithError;

/// Dense univariate polynomial, constant term first. The zero polynomial is
/// the empty coefficient vector; otherwise the last coefficient is nonzero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UniPoly<F: Field> {
    field: F,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> UniPoly<F> {
    pub fn new(field: F, mut coeffs: Vec<F::Elem>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        UniPoly { field, coeffs }
    }

    pub fn from_i64(field: F, coeffs: &[i64]) -> Self {
        let c = coeffs.iter().map(|&v| field.from_i64(v)).collect();
        Self::new(field, c)
    }

    pub fn zero(field: F) -> Self {
        UniPoly { field, coeffs: Vec::new() }
    }

    pub fn one(field: F) -> Self {
        let one = field.one();
        UniPoly { field, coeffs: vec![one] }
    }

    pub fn constant(field: F, c: F::Elem) -> Self {
        Self::new(field, vec![c])
    }

    /// `c * T^d`
    pub fn monomial(field: F, c: F::Elem, d: usize) -> Self {
        let mut coeffs = vec![field.zero(); d + 1];
        coeffs[d] = c;
        Self::new(field, coeffs)
    }

    /// The polynomial `T`.
    pub fn x(field: F) -> Self {
        let one = field.one();
        Self::monomial(field, one, 1)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F::Elem> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> F::Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.field.is_one(&self.coeffs[0])
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Leading coefficient (zero for the zero polynomial).
    pub fn lc(&self) -> F::Elem {
        self.coeffs.last().cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| self.field.is_one(c))
    }

    fn check_ring(&self, other: &Self) -> Result<(), ArithError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(ArithError::RingMismatch)
        }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = &self.field;
        Self::new(f.clone(), self.coeffs.iter().map(|a| f.mul(a, c)).collect())
    }

    /// Monic associate; the zero polynomial stays zero.
    pub fn monic(&self) -> Self {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        let inv = self.field.inv(&self.lc()).expect("nonzero leading coefficient");
        self.scale(&inv)
    }

    pub fn shift(&self, d: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![self.field.zero(); d];
        c.extend(self.coeffs.iter().cloned());
        UniPoly { field: self.field.clone(), coeffs: c }
    }

    pub fn derivative(&self) -> Self {
        let f = &self.field;
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, a)| f.mul(a, &f.from_i64(i as i64)))
            .collect();
        Self::new(f.clone(), c)
    }

    pub fn eval(&self, x: &F::Elem) -> F::Elem {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
    }

    /// `self(g(T))`
    pub fn compose(&self, g: &Self) -> Self {
        let mut acc = Self::zero(self.field.clone());
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * g) + &Self::constant(self.field.clone(), c.clone());
        }
        acc
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.field.clone());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Euclidean division: `self = q*d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self), ArithError> {
        if d.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        self.check_ring(d)?;
        let f = &self.field;
        let dd = d.deg();
        if self.coeffs.len() < d.coeffs.len() {
            return Ok((Self::zero(f.clone()), self.clone()));
        }
        let inv_lc = f.inv(&d.lc())?;
        let mut r = self.coeffs.clone();
        let mut q = vec![f.zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = f.mul(&r[i + dd], &inv_lc);
            if f.is_zero(&c) {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[i + j] = f.sub(&r[i + j], &f.mul(&c, dc));
            }
            q[i] = c;
        }
        r.truncate(dd);
        Ok((Self::new(f.clone(), q), Self::new(f.clone(), r)))
    }

    pub fn rem(&self, d: &Self) -> Result<Self, ArithError> {
        Ok(self.div_rem(d)?.1)
    }

    /// Quotient when `d` divides `self` exactly.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(d).ok()?;
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.exact_div(self).is_some()
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Result<Self, ArithError> {
        self.check_ring(other)?;
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// Returns `(g, s, t)` with `g = s*self + t*other` and `g` monic.
    pub fn ext_gcd(&self, other: &Self) -> Result<(Self, Self, Self), ArithError> {
        self.check_ring(other)?;
        let field = self.field.clone();
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(field.clone()), Self::zero(field.clone()));
        let (mut t0, mut t1) = (Self::zero(field.clone()), Self::one(field.clone()));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1)?;
            let s = &s0 - &(&q * &s1);
            let t = &t0 - &(&q * &t1);
            (r0, r1) = (r1, r);
            (s0, s1) = (s1, s);
            (t0, t1) = (t1, t);
        }
        if r0.is_zero() {
            return Ok((r0, s0, t0));
        }
        let inv = field.inv(&r0.lc())?;
        Ok((r0.scale(&inv), s0.scale(&inv), t0.scale(&inv)))
    }

    /// `self^e mod m`
    pub fn pow_mod(&self, e: &BigUint, m: &Self) -> Result<Self, ArithError> {
        let mut acc = Self::one(self.field.clone()).rem(m)?;
        let base = self.rem(m)?;
        for i in (0..e.bits()).rev() {
            acc = (&acc * &acc).rem(m)?;
            if e.bit(i) {
                acc = (&acc * &base).rem(m)?;
            }
        }
        Ok(acc)
    }

    pub fn mul_mod(&self, other: &Self, m: &Self) -> Result<Self, ArithError> {
        (self * other).rem(m)
    }

    /// Map coefficients into another field.
    pub fn map<G: Field>(&self, target: G, f: impl Fn(&F::Elem) -> G::Elem) -> UniPoly<G> {
        UniPoly::new(target, self.coeffs.iter().map(f).collect())
    }
}

/// Resultant via the Euclidean remainder sequence.
pub fn resultant<F: Field>(f: &UniPoly<F>, g: &UniPoly<F>) -> Result<F::Elem, ArithError> {
    f.check_ring(g)?;
    let field = f.field().clone();
    if f.is_zero() || g.is_zero() {
        return Ok(field.zero());
    }
    let mut a = f.clone();
    let mut b = g.clone();
    let mut acc = field.one();
    loop {
        let (m, n) = (a.deg(), b.deg());
        if n == 0 {
            return Ok(field.mul(&acc, &field.pow(&b.lc(), m as u64)));
        }
        let r = a.rem(&b)?;
        if r.is_zero() {
            return Ok(field.zero());
        }
        if (m * n) % 2 == 1 {
            acc = field.neg(&acc);
        }
        let k = r.deg();
        acc = field.mul(&acc, &field.pow(&b.lc(), (m - k) as u64));
        a = b;
        b = r;
    }
}

/// `disc(q) = (-1)^(d(d-1)/2) * Res(q, q') / lc(q)`.
pub fn discriminant<F: Field>(q: &UniPoly<F>) -> Result<F::Elem, ArithError> {
    let d = match q.degree() {
        Some(d) if d >= 1 => d,
        _ => return Err(ArithError::ConstantPolynomial),
    };
    let field = q.field();
    let res = resultant(q, &q.derivative())?;
    let mut disc = field.div(&res, &q.lc())?;
    if (d * (d - 1) / 2) % 2 == 1 {
        disc = field.neg(&disc);
    }
    Ok(disc)
}

/// Yun's squarefree decomposition. Factors are monic, pairwise coprime and
/// squarefree; `f = lc(f) * prod g_i^e_i`. Requires characteristic 0 or
/// `p > deg f`.
pub fn squarefree_decomposition<F: Field>(
    f: &UniPoly<F>,
) -> Result<Vec<(UniPoly<F>, usize)>, ArithError> {
    if f.is_zero() {
        return Err(ArithError::DivisionByZero);
    }
    let p = f.field().characteristic();
    if p != 0 && p as usize <= f.deg() {
        return Err(ArithError::CharacteristicTooSmall { p, degree: f.deg() });
    }
    let f = f.monic();
    let mut out = Vec::new();
    if f.is_constant() {
        return Ok(out);
    }
    let df = f.derivative();
    let a0 = f.gcd(&df)?;
    let mut b = f.exact_div(&a0).expect("gcd divides");
    let c = df.exact_div(&a0).expect("gcd divides");
    let mut d = &c - &b.derivative();
    let mut i = 1;
    while !b.is_constant() {
        let a = b.gcd(&d)?;
        b = b.exact_div(&a).expect("gcd divides");
        let c = d.exact_div(&a).expect("gcd divides");
        d = &c - &b.derivative();
        if !a.is_constant() {
            out.push((a, i));
        }
        i += 1;
    }
    Ok(out)
}

impl<F: Field> fmt::Debug for UniPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_var("T"))
    }
}

impl<F: Field> fmt::Display for UniPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_var("T"))
    }
}

impl<F: Field> UniPoly<F> {
    pub fn to_string_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if self.field.is_zero(c) {
                continue;
            }
            let mut body = String::new();
            let neg = self.field.fmt_abs(c, &mut body);
            let unit = body == "1";
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            match i {
                0 => s.push_str(&body),
                _ => {
                    if !unit {
                        s.push_str(&body);
                        s.push('*');
                    }
                    s.push_str(var);
                    if i > 1 {
                        s.push_str(&format!("^{i}"));
                    }
                }
            }
        }
        s
    }
}

impl<F: Field> Add for &UniPoly<F> {
    type Output = UniPoly<F>;
    fn add(self, rhs: Self) -> UniPoly<F> {
        let f = &self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let c = (0..n)
            .map(|i| match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(a), Some(b)) => f.add(a, b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        UniPoly::new(f.clone(), c)
    }
}

impl<F: Field> Sub for &UniPoly<F> {
    type Output = UniPoly<F>;
    fn sub(self, rhs: Self) -> UniPoly<F> {
        self + &(-rhs)
    }
}

impl<F: Field> Neg for &UniPoly<F> {
    type Output = UniPoly<F>;
    fn neg(self) -> UniPoly<F> {
        let f = &self.field;
        UniPoly {
            field: f.clone(),
            coeffs: self.coeffs.iter().map(|c| f.neg(c)).collect(),
        }
    }
}

impl<F: Field> Mul for &UniPoly<F> {
    type Output = UniPoly<F>;
    fn mul(self, rhs: Self) -> UniPoly<F> {
        let f = &self.field;
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero(f.clone());
        }
        let mut c = vec![f.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                c[i + j] = f.add(&c[i + j], &f.mul(a, b));
            }
        }
        UniPoly::new(f.clone(), c)
    }
}

/// `p^d` as a big exponent, used for Frobenius powers.
pub fn big_pow(p: u64, d: usize) -> BigUint {
    let mut acc = BigUint::one();
    for _ in 0..d {
        acc *= p;
    }
    if acc.is_zero() {
        BigUint::one()
    } else {
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{PrimeField, Rational, Rationals};
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn fp(p: u64, c: &[i64]) -> UniPoly<PrimeField> {
        UniPoly::from_i64(PrimeField::new(p).unwrap(), c)
    }

    fn qp(c: &[i64]) -> UniPoly<Rationals> {
        UniPoly::from_i64(Rationals, c)
    }

    #[test]
    fn gcd_examples() {
        let g = fp(5, &[-1, 0, 1]).gcd(&fp(5, &[-1, 1])).unwrap();
        assert_eq!(g, fp(5, &[-1, 1]));
        let g = qp(&[0, 1]).gcd(&qp(&[])).unwrap();
        assert_eq!(g, qp(&[0, 1]));
        let g = qp(&[-2, 0, 1]).gcd(&qp(&[-3, 0, 1])).unwrap();
        assert_eq!(g, qp(&[1]));
    }

    #[test]
    fn gcd_ring_mismatch() {
        assert_eq!(
            fp(5, &[1, 1]).gcd(&fp(7, &[1, 1])),
            Err(ArithError::RingMismatch)
        );
    }

    #[test]
    fn discriminant_examples() {
        let int = |v: i64| Rational::from_integer(BigInt::from(v));
        assert_eq!(discriminant(&qp(&[-2, 0, 1])).unwrap(), int(8));
        assert_eq!(discriminant(&qp(&[1, 0, -10, 0, 1])).unwrap(), int(147456));
        assert_eq!(discriminant(&qp(&[5, 1])).unwrap(), int(1));
        assert_eq!(discriminant(&qp(&[3])), Err(ArithError::ConstantPolynomial));
    }

    #[test]
    fn discriminant_matches_root_differences() {
        // (T-1)(T-2)(T-4): prod_{i<j} (r_i - r_j)^2 = 1 * 9 * 4 = 36
        let f = qp(&[-8, 14, -7, 1]);
        assert_eq!(
            discriminant(&f).unwrap(),
            Rational::from_integer(BigInt::from(36))
        );
    }

    #[test]
    fn squarefree_examples() {
        // (T-1)^2 (T+2) = T^3 - 3T + 2
        let f = qp(&[2, -3, 0, 1]);
        let sq = squarefree_decomposition(&f).unwrap();
        assert_eq!(sq, vec![(qp(&[2, 1]), 1), (qp(&[-1, 1]), 2)]);
        let sq = squarefree_decomposition(&qp(&[-2, 0, 1])).unwrap();
        assert_eq!(sq, vec![(qp(&[-2, 0, 1]), 1)]);
        let sq = squarefree_decomposition(&qp(&[0, 0, 0, 0, 1])).unwrap();
        assert_eq!(sq, vec![(qp(&[0, 1]), 4)]);
        assert!(matches!(
            squarefree_decomposition(&fp(3, &[0, 0, 0, 1])),
            Err(ArithError::CharacteristicTooSmall { .. })
        ));
    }

    fn arb_fp_poly(p: u64, max_deg: usize) -> impl Strategy<Value = UniPoly<PrimeField>> {
        prop::collection::vec(0..p as i64, 0..=max_deg + 1).prop_map(move |c| fp(p, &c))
    }

    fn arb_q_poly(max_deg: usize) -> impl Strategy<Value = UniPoly<Rationals>> {
        prop::collection::vec(-9i64..10, 1..=max_deg + 1).prop_map(|c| qp(&c))
    }

    proptest! {
        #[test]
        fn gcd_divides_and_cofactors_coprime(f in arb_fp_poly(13, 8), g in arb_fp_poly(13, 8)) {
            prop_assume!(!f.is_zero() || !g.is_zero());
            let d = f.gcd(&g).unwrap();
            prop_assert!(f.rem(&d).unwrap().is_zero());
            prop_assert!(g.rem(&d).unwrap().is_zero());
            let (fc, gc) = (f.exact_div(&d).unwrap(), g.exact_div(&d).unwrap());
            if !fc.is_zero() && !gc.is_zero() {
                prop_assert!(fc.gcd(&gc).unwrap().is_one());
            }
        }

        #[test]
        fn squarefree_reconstructs(parts in prop::collection::vec((arb_q_poly(3), 1usize..4), 1..4)) {
            let mut f = qp(&[3]);
            for (g, e) in &parts {
                prop_assume!(!g.is_zero());
                f = &f * &g.pow(*e as u64);
            }
            let sq = squarefree_decomposition(&f).unwrap();
            let mut rebuilt = UniPoly::constant(Rationals, f.lc());
            for (g, e) in &sq {
                prop_assert!(g.gcd(&g.derivative()).unwrap().is_one());
                rebuilt = &rebuilt * &g.pow(*e as u64);
            }
            prop_assert_eq!(rebuilt, f);
        }

        #[test]
        fn discriminant_zero_iff_repeated_root(f in arb_q_poly(5)) {
            prop_assume!(f.deg() >= 1);
            let disc = discriminant(&f).unwrap();
            let coprime = f.gcd(&f.derivative()).unwrap().is_one();
            prop_assert_eq!(disc.is_zero(), !coprime);
        }

        #[test]
        fn fp_discriminant_zero_iff_repeated_root(f in arb_fp_poly(31, 6)) {
            prop_assume!(f.deg() >= 1);
            let disc = discriminant(&f).unwrap();
            let coprime = f.gcd(&f.derivative()).unwrap().is_one();
            prop_assert_eq!(disc == 0, !coprime);
        }
    }
}
