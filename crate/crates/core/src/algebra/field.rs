//! Field abstraction shared by the prime/extension fields and the rationals.
//!
//! A field is a cheap-to-clone handle; its elements are plain values that
//! only make sense together with the handle. [`Fe`] pairs the two so that
//! formulas can be written with ordinary operators.

use std::fmt::Debug;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigUint;
use rand::Rng;

pub trait Field: Clone + Debug + Send + Sync {
    type Elem: Clone + PartialEq + Eq + Hash + Ord + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    /// Zero for fields of characteristic zero.
    fn characteristic(&self) -> u64;

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn square(&self, a: &Self::Elem) -> Self::Elem {
        self.mul(a, a)
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut acc = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.square(&base);
            e >>= 1;
        }
        acc
    }

    fn el(&self, v: Self::Elem) -> Fe<'_, Self> {
        Fe { f: self, v }
    }

    fn int(&self, n: i64) -> Fe<'_, Self> {
        Fe { f: self, v: self.from_i64(n) }
    }
}

/// Finite fields `F_p[z]/(m(z))`; elements expose coordinates in the power basis.
pub trait GaloisField: Field {
    fn p(&self) -> u64;
    fn degree(&self) -> u32;
    /// Coefficients of the defining polynomial, constant term first, monic.
    fn modulus(&self) -> Vec<u64>;
    fn coeffs(&self, a: &Self::Elem) -> Vec<u64>;
    fn from_coeffs(&self, c: &[u64]) -> Self::Elem;

    fn order(&self) -> BigUint {
        BigUint::from(self.p()).pow(self.degree())
    }

    /// Order as a machine integer when it fits.
    fn order_u64(&self) -> Option<u64> {
        let p = self.p() as u128;
        let mut q: u128 = 1;
        for _ in 0..self.degree() {
            q = q.checked_mul(p)?;
        }
        u64::try_from(q).ok()
    }

    fn pow_big(&self, a: &Self::Elem, e: &BigUint) -> Self::Elem {
        let mut acc = self.one();
        for i in (0..e.bits()).rev() {
            acc = self.square(&acc);
            if e.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    /// Absolute Frobenius `a -> a^p`.
    fn frobenius(&self, a: &Self::Elem) -> Self::Elem {
        self.pow(a, self.p())
    }

    /// `a -> a^(p^k)`.
    fn frobenius_pow(&self, a: &Self::Elem, k: u32) -> Self::Elem {
        let mut x = a.clone();
        for _ in 0..k {
            x = self.frobenius(&x);
        }
        x
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem {
        let p = self.p();
        let c: Vec<u64> = (0..self.degree()).map(|_| rng.random_range(0..p)).collect();
        self.from_coeffs(&c)
    }

    /// Element with index `i` in the lexicographic enumeration by base-`p` digits.
    fn from_index(&self, mut i: u64) -> Self::Elem {
        let p = self.p();
        let c: Vec<u64> = (0..self.degree())
            .map(|_| {
                let d = i % p;
                i /= p;
                d
            })
            .collect();
        self.from_coeffs(&c)
    }

    fn index_of(&self, a: &Self::Elem) -> u64 {
        let p = self.p();
        self.coeffs(a).iter().rev().fold(0u64, |acc, &d| acc * p + d)
    }

    /// Quadratic character: `Some(true)` for nonzero squares, `None` for zero.
    fn is_square(&self, a: &Self::Elem) -> Option<bool> {
        if self.is_zero(a) {
            return None;
        }
        if self.p() == 2 {
            return Some(true);
        }
        let e = (self.order() - 1u32) >> 1;
        Some(self.is_one(&self.pow_big(a, &e)))
    }

    /// A square root, if one exists (Tonelli–Shanks; Frobenius inverse in char 2).
    fn sqrt(&self, a: &Self::Elem) -> Option<Self::Elem> {
        if self.is_zero(a) {
            return Some(self.zero());
        }
        if self.p() == 2 {
            // a^(2^(k-1)) squares to a^(2^k) = a.
            return Some(self.frobenius_pow(a, self.degree() - 1));
        }
        if !self.is_square(a)? {
            return None;
        }
        let qm1 = self.order() - 1u32;
        let s = qm1.trailing_zeros().unwrap_or(0);
        let t = &qm1 >> s;
        // Deterministic non-residue search in index order.
        let mut z = None;
        for i in 1.. {
            let c = self.from_index(i);
            if self.is_square(&c) == Some(false) {
                z = Some(c);
                break;
            }
        }
        let z = z?;
        let mut m = s;
        let mut c = self.pow_big(&z, &t);
        let mut tt = self.pow_big(a, &t);
        let mut r = self.pow_big(a, &((&t + 1u32) >> 1));
        while !self.is_one(&tt) {
            let mut i = 0;
            let mut t2 = tt.clone();
            while !self.is_one(&t2) {
                t2 = self.square(&t2);
                i += 1;
            }
            let mut b = c.clone();
            for _ in 0..(m - i - 1) {
                b = self.square(&b);
            }
            m = i;
            c = self.square(&b);
            tt = self.mul(&tt, &c);
            r = self.mul(&r, &b);
        }
        Some(r)
    }

    /// Absolute trace to `F_p`, returned as an integer in `[0, p)`.
    fn trace(&self, a: &Self::Elem) -> u64 {
        let mut acc = a.clone();
        let mut x = a.clone();
        for _ in 1..self.degree() {
            x = self.frobenius(&x);
            acc = self.add(&acc, &x);
        }
        self.coeffs(&acc)[0]
    }
}

/// A field element bundled with its field, for operator-based formulas.
#[derive(Clone, Debug)]
pub struct Fe<'a, F: Field> {
    pub f: &'a F,
    pub v: F::Elem,
}

impl<'a, F: Field> Fe<'a, F> {
    pub fn inv(&self) -> Option<Fe<'a, F>> {
        self.f.inv(&self.v).map(|v| Fe { f: self.f, v })
    }

    pub fn pow(&self, e: u64) -> Fe<'a, F> {
        Fe { f: self.f, v: self.f.pow(&self.v, e) }
    }

    pub fn is_zero(&self) -> bool {
        self.f.is_zero(&self.v)
    }

    pub fn into_inner(self) -> F::Elem {
        self.v
    }

    pub fn div(&self, rhs: &Fe<'a, F>) -> Option<Fe<'a, F>> {
        rhs.inv().map(|i| self * &i)
    }
}

impl<F: Field> PartialEq for Fe<'_, F> {
    fn eq(&self, other: &Self) -> bool {
        self.v == other.v
    }
}

macro_rules! fe_binop {
    ($tr:ident, $m:ident) => {
        impl<'a, F: Field> $tr<Fe<'a, F>> for Fe<'a, F> {
            type Output = Fe<'a, F>;
            fn $m(self, rhs: Fe<'a, F>) -> Fe<'a, F> {
                Fe { f: self.f, v: self.f.$m(&self.v, &rhs.v) }
            }
        }
        impl<'a, 'b, F: Field> $tr<&'b Fe<'a, F>> for Fe<'a, F> {
            type Output = Fe<'a, F>;
            fn $m(self, rhs: &'b Fe<'a, F>) -> Fe<'a, F> {
                Fe { f: self.f, v: self.f.$m(&self.v, &rhs.v) }
            }
        }
        impl<'a, 'b, F: Field> $tr<Fe<'a, F>> for &'b Fe<'a, F> {
            type Output = Fe<'a, F>;
            fn $m(self, rhs: Fe<'a, F>) -> Fe<'a, F> {
                Fe { f: self.f, v: self.f.$m(&self.v, &rhs.v) }
            }
        }
        impl<'a, 'b, 'c, F: Field> $tr<&'c Fe<'a, F>> for &'b Fe<'a, F> {
            type Output = Fe<'a, F>;
            fn $m(self, rhs: &'c Fe<'a, F>) -> Fe<'a, F> {
                Fe { f: self.f, v: self.f.$m(&self.v, &rhs.v) }
            }
        }
        impl<'a, F: Field> $tr<i64> for Fe<'a, F> {
            type Output = Fe<'a, F>;
            fn $m(self, rhs: i64) -> Fe<'a, F> {
                Fe { f: self.f, v: self.f.$m(&self.v, &self.f.from_i64(rhs)) }
            }
        }
        impl<'a, 'b, F: Field> $tr<i64> for &'b Fe<'a, F> {
            type Output = Fe<'a, F>;
            fn $m(self, rhs: i64) -> Fe<'a, F> {
                Fe { f: self.f, v: self.f.$m(&self.v, &self.f.from_i64(rhs)) }
            }
        }
    };
}

fe_binop!(Add, add);
fe_binop!(Sub, sub);
fe_binop!(Mul, mul);

impl<'a, F: Field> Neg for Fe<'a, F> {
    type Output = Fe<'a, F>;
    fn neg(self) -> Fe<'a, F> {
        Fe { f: self.f, v: self.f.neg(&self.v) }
    }
}

impl<'a, F: Field> Neg for &Fe<'a, F> {
    type Output = Fe<'a, F>;
    fn neg(self) -> Fe<'a, F> {
        Fe { f: self.f, v: self.f.neg(&self.v) }
    }
}
