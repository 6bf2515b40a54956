//! Finite fields `F_p[z]/(m(z))` with polynomial-basis arithmetic.
//!
//! [`FiniteField`] works for any degree and is what extension towers are
//! flattened into. [`SmallField`] is a table-driven copy of the same field
//! for orders up to [`SMALL_FIELD_LIMIT`], used wherever whole fields are
//! enumerated.

use std::fmt;
use std::sync::Arc;

use super::field::{Field, GaloisField};
use super::fp_poly;
use crate::arith::{factor, is_prime, mul_mod};
use crate::error::{Error, Result};

/// Largest order for which log/Zech tables are built.
pub const SMALL_FIELD_LIMIT: u64 = 1 << 21;

struct GfInner {
    p: u64,
    k: u32,
    modulus: Vec<u64>,
}

#[derive(Clone)]
pub struct FiniteField(Arc<GfInner>);

/// Coefficient vector of length `k`, constant term first.
pub type GfElem = Vec<u64>;

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.0.p, self.0.k)
    }
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.0.p == other.0.p && self.0.modulus == other.0.modulus
    }
}

impl Eq for FiniteField {}

impl FiniteField {
    /// `F_{p^k}` with the deterministic modulus from [`fp_poly::find_irreducible`].
    pub fn new(p: u64, k: u32) -> Result<Self> {
        if !is_prime(p) || p >= 1 << 32 {
            return Err(Error::InvalidInput(format!("{p} is not a supported prime")));
        }
        if k == 0 {
            return Err(Error::InvalidInput("field degree must be positive".into()));
        }
        Ok(Self::with_modulus(p, fp_poly::find_irreducible(p, k)))
    }

    /// Field defined by a monic irreducible `modulus` (not re-checked).
    pub fn with_modulus(p: u64, modulus: Vec<u64>) -> Self {
        let k = (modulus.len() - 1) as u32;
        FiniteField(Arc::new(GfInner { p, k, modulus }))
    }

    pub fn prime(p: u64) -> Result<Self> {
        Self::new(p, 1)
    }

    fn normalize(&self, mut v: Vec<u64>) -> GfElem {
        v.resize(self.0.k as usize, 0);
        v
    }

    fn reduce(&self, v: &[u64]) -> GfElem {
        self.normalize(fp_poly::rem(v, &self.0.modulus, self.0.p))
    }

    /// Generator `z` of the power basis.
    pub fn gen(&self) -> GfElem {
        self.reduce(&[0, 1])
    }
}

impl Field for FiniteField {
    type Elem = GfElem;

    fn zero(&self) -> GfElem {
        vec![0; self.0.k as usize]
    }

    fn one(&self) -> GfElem {
        self.from_i64(1)
    }

    fn from_i64(&self, n: i64) -> GfElem {
        let mut v = self.zero();
        v[0] = n.rem_euclid(self.0.p as i64) as u64;
        v
    }

    fn add(&self, a: &GfElem, b: &GfElem) -> GfElem {
        let p = self.0.p;
        a.iter()
            .zip(b)
            .map(|(&x, &y)| {
                let s = x + y;
                if s >= p {
                    s - p
                } else {
                    s
                }
            })
            .collect()
    }

    fn sub(&self, a: &GfElem, b: &GfElem) -> GfElem {
        let p = self.0.p;
        a.iter()
            .zip(b)
            .map(|(&x, &y)| if x >= y { x - y } else { x + p - y })
            .collect()
    }

    fn neg(&self, a: &GfElem) -> GfElem {
        let p = self.0.p;
        a.iter().map(|&x| if x == 0 { 0 } else { p - x }).collect()
    }

    fn mul(&self, a: &GfElem, b: &GfElem) -> GfElem {
        if self.0.k == 1 {
            return vec![mul_mod(a[0], b[0], self.0.p)];
        }
        self.reduce(&fp_poly::mul(a, b, self.0.p))
    }

    fn inv(&self, a: &GfElem) -> Option<GfElem> {
        if a.iter().all(|&c| c == 0) {
            return None;
        }
        if self.0.k == 1 {
            return crate::arith::inv_mod(a[0], self.0.p).map(|x| vec![x]);
        }
        fp_poly::invmod(a, &self.0.modulus, self.0.p).map(|v| self.normalize(v))
    }

    fn characteristic(&self) -> u64 {
        self.0.p
    }

    fn is_zero(&self, a: &GfElem) -> bool {
        a.iter().all(|&c| c == 0)
    }
}

impl GaloisField for FiniteField {
    fn p(&self) -> u64 {
        self.0.p
    }

    fn degree(&self) -> u32 {
        self.0.k
    }

    fn modulus(&self) -> Vec<u64> {
        self.0.modulus.clone()
    }

    fn coeffs(&self, a: &GfElem) -> Vec<u64> {
        a.clone()
    }

    fn from_coeffs(&self, c: &[u64]) -> GfElem {
        let p = self.0.p;
        let v: Vec<u64> = c.iter().map(|&x| x % p).collect();
        if v.len() > self.0.k as usize {
            self.reduce(&v)
        } else {
            self.normalize(v)
        }
    }
}

struct SmallInner {
    p: u64,
    k: u32,
    q: u32,
    modulus: Vec<u64>,
    /// exp[e] = coefficient index of g^e.
    exp: Vec<u32>,
    /// log[index] = stored form (0 for zero, e + 1 for g^e).
    log: Vec<u32>,
    /// zech[e] = stored form of 1 + g^e.
    zech: Vec<u32>,
    neg_one: u32,
}

/// Table-driven finite field. Elements are `0` for zero and `e + 1` for `g^e`,
/// where `g` is the first primitive element in index order.
#[derive(Clone)]
pub struct SmallField(Arc<SmallInner>);

impl fmt::Debug for SmallField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SmallGF({}^{})", self.0.p, self.0.k)
    }
}

impl SmallField {
    pub fn new(p: u64, k: u32) -> Result<Self> {
        let big = FiniteField::new(p, k)?;
        Self::from_field(&big)
    }

    pub fn from_field(big: &FiniteField) -> Result<Self> {
        let p = big.p();
        let k = big.degree();
        let q = big
            .order_u64()
            .filter(|&q| q <= SMALL_FIELD_LIMIT)
            .ok_or_else(|| Error::InvalidInput(format!("field {p}^{k} too large for tables")))?
            as u32;
        let qm1 = (q - 1) as u64;
        let primes: Vec<u64> = factor(qm1).into_iter().map(|(r, _)| r).collect();
        let g = (1..q as u64)
            .map(|i| big.from_index(i))
            .find(|g| primes.iter().all(|r| !big.is_one(&big.pow(g, qm1 / r))))
            .expect("multiplicative group is cyclic");
        let mut exp = Vec::with_capacity(qm1 as usize);
        let mut log = vec![0u32; q as usize];
        let mut x = big.one();
        for e in 0..qm1 {
            let idx = big.index_of(&x) as u32;
            exp.push(idx);
            log[idx as usize] = e as u32 + 1;
            x = big.mul(&x, &g);
        }
        let zech = exp
            .iter()
            .map(|&idx| {
                let c0 = idx as u64 % p;
                let bumped = idx as u64 - c0 + (c0 + 1) % p;
                log[bumped as usize]
            })
            .collect();
        let neg_one = log[(p - 1) as usize];
        Ok(SmallField(Arc::new(SmallInner {
            p,
            k,
            q,
            modulus: big.modulus(),
            exp,
            log,
            zech,
            neg_one,
        })))
    }

    pub fn size(&self) -> u32 {
        self.0.q
    }

    /// All elements, zero first then `g^0, g^1, ...`.
    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.0.q
    }

    /// The polynomial-basis field with the same modulus.
    pub fn to_finite_field(&self) -> FiniteField {
        FiniteField::with_modulus(self.0.p, self.0.modulus.clone())
    }

    #[inline]
    pub fn fast_mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let s = a + b - 2;
        let m = self.0.q - 1;
        (if s >= m { s - m } else { s }) + 1
    }

    #[inline]
    pub fn fast_add(&self, a: u32, b: u32) -> u32 {
        if a == 0 {
            return b;
        }
        if b == 0 {
            return a;
        }
        let m = self.0.q - 1;
        let d = if b >= a { b - a } else { b + m - a };
        let z = self.0.zech[d as usize];
        if z == 0 {
            return 0;
        }
        let s = a - 1 + z - 1;
        (if s >= m { s - m } else { s }) + 1
    }

    #[inline]
    pub fn fast_neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.fast_mul(a, self.0.neg_one)
        }
    }

    /// Quadratic character as `1`, `-1` or `0`.
    #[inline]
    pub fn chi(&self, a: u32) -> i32 {
        if a == 0 {
            0
        } else if self.0.p == 2 || (a - 1) % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

impl Field for SmallField {
    type Elem = u32;

    fn zero(&self) -> u32 {
        0
    }

    fn one(&self) -> u32 {
        1
    }

    fn from_i64(&self, n: i64) -> u32 {
        self.0.log[n.rem_euclid(self.0.p as i64) as usize]
    }

    fn add(&self, a: &u32, b: &u32) -> u32 {
        self.fast_add(*a, *b)
    }

    fn sub(&self, a: &u32, b: &u32) -> u32 {
        self.fast_add(*a, self.fast_neg(*b))
    }

    fn mul(&self, a: &u32, b: &u32) -> u32 {
        self.fast_mul(*a, *b)
    }

    fn neg(&self, a: &u32) -> u32 {
        self.fast_neg(*a)
    }

    fn inv(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            return None;
        }
        let m = self.0.q - 1;
        Some((m - (*a - 1)) % m + 1)
    }

    fn characteristic(&self) -> u64 {
        self.0.p
    }

    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }

    fn pow(&self, a: &u32, e: u64) -> u32 {
        if *a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let m = (self.0.q - 1) as u64;
        (((*a - 1) as u64 * (e % m)) % m) as u32 + 1
    }
}

impl GaloisField for SmallField {
    fn p(&self) -> u64 {
        self.0.p
    }

    fn degree(&self) -> u32 {
        self.0.k
    }

    fn modulus(&self) -> Vec<u64> {
        self.0.modulus.clone()
    }

    fn coeffs(&self, a: &u32) -> Vec<u64> {
        let mut idx = if *a == 0 { 0 } else { self.0.exp[*a as usize - 1] as u64 };
        (0..self.0.k)
            .map(|_| {
                let d = idx % self.0.p;
                idx /= self.0.p;
                d
            })
            .collect()
    }

    fn from_coeffs(&self, c: &[u64]) -> u32 {
        let p = self.0.p;
        if c.len() > self.0.k as usize {
            let r = fp_poly::rem(c, &self.0.modulus, p);
            return self.from_coeffs(&r);
        }
        let idx = c.iter().rev().fold(0u64, |acc, &d| acc * p + d % p);
        self.0.log[idx as usize]
    }

    fn order_u64(&self) -> Option<u64> {
        Some(self.0.q as u64)
    }

    fn from_index(&self, i: u64) -> u32 {
        self.0.log[i as usize]
    }

    fn index_of(&self, a: &u32) -> u64 {
        if *a == 0 {
            0
        } else {
            self.0.exp[*a as usize - 1] as u64
        }
    }

    fn is_square(&self, a: &u32) -> Option<bool> {
        match self.chi(*a) {
            0 => None,
            c => Some(c == 1),
        }
    }

    fn sqrt(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            return Some(0);
        }
        let m = self.0.q - 1;
        let e = *a - 1;
        if self.0.p == 2 {
            // m is odd; halve e modulo m.
            let h = if e % 2 == 0 { e / 2 } else { (e + m) / 2 };
            return Some(h + 1);
        }
        if e % 2 == 1 {
            return None;
        }
        Some(e / 2 + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_and_big_agree_on_f49() {
        let big = FiniteField::new(7, 2).unwrap();
        let small = SmallField::from_field(&big).unwrap();
        for i in 0..49u64 {
            for j in 0..49u64 {
                let (a, b) = (big.from_index(i), big.from_index(j));
                let (sa, sb) = (small.from_index(i), small.from_index(j));
                assert_eq!(small.coeffs(&small.mul(&sa, &sb)), big.mul(&a, &b));
                assert_eq!(small.coeffs(&small.add(&sa, &sb)), big.add(&a, &b));
                assert_eq!(small.coeffs(&small.sub(&sa, &sb)), big.sub(&a, &b));
            }
        }
    }

    #[test]
    fn char_two_tables() {
        let small = SmallField::new(2, 4).unwrap();
        for a in small.elements() {
            assert_eq!(small.add(&a, &a), 0);
            let r = small.sqrt(&a).unwrap();
            assert_eq!(small.mul(&r, &r), a);
        }
    }

    #[test]
    fn sqrt_generic_matches_tables() {
        let big = FiniteField::new(5, 3).unwrap();
        for i in 0..125 {
            let a = big.from_index(i);
            match big.sqrt(&a) {
                Some(r) => assert_eq!(big.mul(&r, &r), a),
                None => assert_eq!(big.is_square(&a), Some(false)),
            }
        }
    }

    proptest! {
        #[test]
        fn inverse_roundtrip(seed in 1u64..2000) {
            let f = FiniteField::new(11, 3).unwrap();
            let a = f.from_index(seed % 1331);
            if !f.is_zero(&a) {
                let ai = f.inv(&a).unwrap();
                prop_assert!(f.is_one(&f.mul(&a, &ai)));
            }
        }

        #[test]
        fn frobenius_is_additive(i in 0u64..625, j in 0u64..625) {
            let f = FiniteField::new(5, 4).unwrap();
            let (a, b) = (f.from_index(i), f.from_index(j));
            prop_assert_eq!(f.frobenius(&f.add(&a, &b)), f.add(&f.frobenius(&a), &f.frobenius(&b)));
        }
    }
}
