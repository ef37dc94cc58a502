//! Prime-field scalars and small-prime number theory.

use super::ArithError;

/// Exclusive upper bound for moduli, so residue products fit in a `u64`.
pub const MAX_PRIME: u64 = 1 << 31;

/// A residue together with its modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FpElem {
    value: u64,
    modulus: u64,
}

impl FpElem {
    pub fn new(value: i64, modulus: u64) -> Result<Self, ArithError> {
        if !(2..MAX_PRIME).contains(&modulus) {
            return Err(ArithError::ModulusOutOfRange(modulus));
        }
        Ok(FpElem {
            value: value.rem_euclid(modulus as i64) as u64,
            modulus,
        })
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }
}

/// Multiplicative inverse in `F_p`.
pub fn fp_inv(a: FpElem) -> Result<FpElem, ArithError> {
    Ok(FpElem {
        value: inv_mod(a.value, a.modulus)?,
        modulus: a.modulus,
    })
}

pub fn inv_mod(a: u64, p: u64) -> Result<u64, ArithError> {
    let a = a % p;
    if a == 0 {
        return Err(ArithError::ZeroInverse);
    }
    let (mut r0, mut r1) = (p as i64, a as i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        // Only reachable for composite moduli.
        return Err(ArithError::ZeroInverse);
    }
    Ok(t0.rem_euclid(p as i64) as u64)
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let m128 = m as u128;
    let mut acc: u128 = 1 % m128;
    let mut b = (base % m) as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    base = acc as u64;
    base
}

/// Deterministic Miller-Rabin, exact for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = ((x as u128 * x as u128) % n as u128) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Smallest prime `>= n`.
pub fn next_prime(n: u64) -> u64 {
    let mut k = n.max(2);
    while !is_prime(k) {
        k += 1;
    }
    k
}
