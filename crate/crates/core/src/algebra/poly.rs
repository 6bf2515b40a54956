//! Univariate polynomials over an arbitrary [`Field`], plus factorisation
//! over finite fields (square-free, distinct-degree, Cantor–Zassenhaus).

use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::field::{Field, GaloisField};

/// Coefficients, constant term first, without trailing zeros.
pub type Poly<E> = Vec<E>;

#[derive(Clone, Debug)]
pub struct PolyRing<F: Field> {
    pub f: F,
}

impl<F: Field> PolyRing<F> {
    pub fn new(f: F) -> Self {
        PolyRing { f }
    }

    pub fn trim(&self, mut a: Poly<F::Elem>) -> Poly<F::Elem> {
        while a.last().is_some_and(|c| self.f.is_zero(c)) {
            a.pop();
        }
        a
    }

    pub fn deg(&self, a: &[F::Elem]) -> Option<usize> {
        a.iter().rposition(|c| !self.f.is_zero(c))
    }

    pub fn constant(&self, c: F::Elem) -> Poly<F::Elem> {
        self.trim(vec![c])
    }

    pub fn x(&self) -> Poly<F::Elem> {
        vec![self.f.zero(), self.f.one()]
    }

    /// `x - r`.
    pub fn linear(&self, r: &F::Elem) -> Poly<F::Elem> {
        vec![self.f.neg(r), self.f.one()]
    }

    pub fn add(&self, a: &[F::Elem], b: &[F::Elem]) -> Poly<F::Elem> {
        let n = a.len().max(b.len());
        let z = self.f.zero();
        let out = (0..n)
            .map(|i| self.f.add(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
            .collect();
        self.trim(out)
    }

    pub fn sub(&self, a: &[F::Elem], b: &[F::Elem]) -> Poly<F::Elem> {
        let n = a.len().max(b.len());
        let z = self.f.zero();
        let out = (0..n)
            .map(|i| self.f.sub(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
            .collect();
        self.trim(out)
    }

    pub fn neg(&self, a: &[F::Elem]) -> Poly<F::Elem> {
        a.iter().map(|c| self.f.neg(c)).collect()
    }

    pub fn scale(&self, a: &[F::Elem], c: &F::Elem) -> Poly<F::Elem> {
        self.trim(a.iter().map(|x| self.f.mul(x, c)).collect())
    }

    pub fn mul(&self, a: &[F::Elem], b: &[F::Elem]) -> Poly<F::Elem> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![self.f.zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if self.f.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] = self.f.add(&out[i + j], &self.f.mul(x, y));
            }
        }
        self.trim(out)
    }

    pub fn pow(&self, a: &[F::Elem], e: u32) -> Poly<F::Elem> {
        let mut acc = vec![self.f.one()];
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }

    pub fn divrem(&self, a: &[F::Elem], b: &[F::Elem]) -> (Poly<F::Elem>, Poly<F::Elem>) {
        let db = self.deg(b).expect("division by the zero polynomial");
        let li = self.f.inv(&b[db]).unwrap();
        let mut r = self.trim(a.to_vec());
        if r.len() <= db {
            return (Vec::new(), r);
        }
        let mut q = vec![self.f.zero(); r.len() - db];
        for i in (db..r.len()).rev() {
            if self.f.is_zero(&r[i]) {
                continue;
            }
            let c = self.f.mul(&r[i], &li);
            for j in 0..=db {
                let t = self.f.mul(&c, &b[j]);
                r[i - db + j] = self.f.sub(&r[i - db + j], &t);
            }
            q[i - db] = c;
        }
        r.truncate(db);
        (self.trim(q), self.trim(r))
    }

    pub fn rem(&self, a: &[F::Elem], b: &[F::Elem]) -> Poly<F::Elem> {
        self.divrem(a, b).1
    }

    /// Exact quotient; panics in debug builds if the division leaves a remainder.
    pub fn div_exact(&self, a: &[F::Elem], b: &[F::Elem]) -> Poly<F::Elem> {
        let (q, r) = self.divrem(a, b);
        debug_assert!(r.is_empty(), "inexact polynomial division");
        q
    }

    pub fn monic(&self, a: &[F::Elem]) -> Poly<F::Elem> {
        let a = self.trim(a.to_vec());
        match a.last() {
            Some(l) => {
                let li = self.f.inv(l).unwrap();
                self.scale(&a, &li)
            }
            None => a,
        }
    }

    pub fn gcd(&self, a: &[F::Elem], b: &[F::Elem]) -> Poly<F::Elem> {
        let mut a = self.trim(a.to_vec());
        let mut b = self.trim(b.to_vec());
        while !b.is_empty() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        self.monic(&a)
    }

    pub fn eval(&self, a: &[F::Elem], x: &F::Elem) -> F::Elem {
        a.iter()
            .rev()
            .fold(self.f.zero(), |acc, c| self.f.add(&self.f.mul(&acc, x), c))
    }

    pub fn derivative(&self, a: &[F::Elem]) -> Poly<F::Elem> {
        let out = a
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| self.f.mul(c, &self.f.from_i64(i as i64)))
            .collect();
        self.trim(out)
    }

    pub fn mulmod(&self, a: &[F::Elem], b: &[F::Elem], m: &[F::Elem]) -> Poly<F::Elem> {
        self.rem(&self.mul(a, b), m)
    }

    pub fn powmod(&self, a: &[F::Elem], e: &BigUint, m: &[F::Elem]) -> Poly<F::Elem> {
        let base = self.rem(a, m);
        let mut acc = self.rem(&[self.f.one()], m);
        for i in (0..e.bits()).rev() {
            acc = self.mulmod(&acc, &acc, m);
            if e.bit(i) {
                acc = self.mulmod(&acc, &base, m);
            }
        }
        acc
    }

    /// `prod (x - r)` over the given roots.
    pub fn from_roots(&self, roots: &[F::Elem]) -> Poly<F::Elem> {
        roots
            .iter()
            .fold(vec![self.f.one()], |acc, r| self.mul(&acc, &self.linear(r)))
    }

    pub fn map<G: Field>(&self, a: &[F::Elem], g: &G, phi: impl Fn(&F::Elem) -> G::Elem) -> Poly<G::Elem> {
        let mut out: Vec<G::Elem> = a.iter().map(phi).collect();
        while out.last().is_some_and(|c| g.is_zero(c)) {
            out.pop();
        }
        out
    }
}

impl<F: GaloisField> PolyRing<F> {
    /// Square-free decomposition: pairs `(g, e)` with `f = c * prod g^e`.
    pub fn squarefree(&self, f: &[F::Elem]) -> Vec<(Poly<F::Elem>, u32)> {
        let f = self.monic(f);
        let mut out = Vec::new();
        if self.deg(&f).unwrap_or(0) == 0 {
            return out;
        }
        let p = self.f.p() as u32;
        let df = self.derivative(&f);
        let mut c = self.gcd(&f, &df);
        let mut w = self.div_exact(&f, &c);
        let mut i = 1;
        while self.deg(&w).unwrap_or(0) > 0 {
            let y = self.gcd(&w, &c);
            let fac = self.div_exact(&w, &y);
            if self.deg(&fac).unwrap_or(0) > 0 {
                out.push((fac, i));
            }
            i += 1;
            w = y;
            c = self.div_exact(&c, &w);
        }
        if self.deg(&c).unwrap_or(0) > 0 {
            let root = self.pth_root(&c);
            for (g, e) in self.squarefree(&root) {
                out.push((g, e * p));
            }
        }
        out
    }

    /// For `c(x) = sum a_i x^(p i)`, returns `sum a_i^(1/p) x^i`.
    fn pth_root(&self, c: &[F::Elem]) -> Poly<F::Elem> {
        let p = self.f.p() as usize;
        let k = self.f.degree();
        let out = c
            .iter()
            .step_by(p)
            .map(|a| self.f.frobenius_pow(a, k - 1))
            .collect();
        self.trim(out)
    }

    /// Distinct-degree factorisation of a square-free monic polynomial.
    pub fn ddf(&self, f: &[F::Elem]) -> Vec<(Poly<F::Elem>, usize)> {
        let q = self.f.order();
        let mut out = Vec::new();
        let mut f = self.monic(f);
        let x = self.x();
        let mut h = self.rem(&x, &f);
        let mut d = 1;
        while self.deg(&f).unwrap_or(0) >= 2 * d {
            h = self.powmod(&h, &q, &f);
            let g = self.gcd(&self.sub(&h, &x), &f);
            if self.deg(&g).unwrap_or(0) > 0 {
                f = self.div_exact(&f, &g);
                h = self.rem(&h, &f);
                out.push((g, d));
            }
            d += 1;
        }
        if let Some(df) = self.deg(&f).filter(|&n| n > 0) {
            out.push((f, df));
        }
        out
    }

    /// Equal-degree splitting of a product of distinct irreducibles of degree `d`.
    pub fn edf(&self, g: &[F::Elem], d: usize) -> Vec<Poly<F::Elem>> {
        let n = self.deg(g).unwrap_or(0);
        if n <= d {
            return vec![self.monic(g)];
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ (n as u64) << 8 ^ d as u64);
        let q = self.f.order();
        loop {
            let a: Poly<F::Elem> = self.trim((0..n).map(|_| self.f.random(&mut rng)).collect());
            if a.is_empty() {
                continue;
            }
            let b = if self.f.p() == 2 {
                let steps = self.f.degree() as usize * d;
                let mut t = self.rem(&a, g);
                let mut acc = t.clone();
                for _ in 1..steps {
                    t = self.mulmod(&t, &t, g);
                    acc = self.add(&acc, &t);
                }
                acc
            } else {
                let e = (q.pow(d as u32) - 1u32) >> 1;
                self.sub(&self.powmod(&a, &e, g), &[self.f.one()])
            };
            let u = self.gcd(&b, g);
            let du = self.deg(&u).unwrap_or(0);
            if du > 0 && du < n {
                let v = self.div_exact(g, &u);
                let mut out = self.edf(&u, d);
                out.extend(self.edf(&v, d));
                return out;
            }
        }
    }

    /// Monic irreducible factors with multiplicities, in canonical order.
    pub fn factor(&self, f: &[F::Elem]) -> Vec<(Poly<F::Elem>, u32)> {
        let mut out = Vec::new();
        for (g, e) in self.squarefree(f) {
            for (h, d) in self.ddf(&g) {
                for irr in self.edf(&h, d) {
                    out.push((irr, e));
                }
            }
        }
        out.sort_by_key(|(g, e)| (g.len(), self.poly_key(g), *e));
        out
    }

    /// Distinct roots in canonical order.
    pub fn roots(&self, f: &[F::Elem]) -> Vec<F::Elem> {
        if self.deg(f).unwrap_or(0) == 0 {
            return Vec::new();
        }
        let mut r: Vec<F::Elem> = self
            .factor(f)
            .into_iter()
            .filter(|(g, _)| g.len() == 2)
            .map(|(g, _)| self.f.neg(&g[0]))
            .collect();
        r.sort_by_key(|a| self.f.coeffs(a));
        r
    }

    /// Representation-independent sort key.
    pub fn poly_key(&self, g: &[F::Elem]) -> Vec<Vec<u64>> {
        g.iter().rev().map(|c| self.f.coeffs(c)).collect()
    }

    pub fn is_irreducible(&self, f: &[F::Elem]) -> bool {
        let fac = self.factor(f);
        fac.len() == 1 && fac[0].1 == 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::gf::{FiniteField, SmallField};

    #[test]
    fn factor_x_q_minus_x() {
        // x^9 - x over F_3 is the product of all monic irreducibles of degree 1 and 2.
        let f = SmallField::new(3, 1).unwrap();
        let r = PolyRing::new(f.clone());
        let mut poly = vec![0u32; 10];
        poly[9] = f.one();
        poly[1] = f.neg(&f.one());
        let fac = r.factor(&poly);
        let degs: Vec<usize> = fac.iter().map(|(g, _)| g.len() - 1).collect();
        assert_eq!(degs, vec![1, 1, 1, 2, 2, 2]);
        assert!(fac.iter().all(|(_, e)| *e == 1));
    }

    #[test]
    fn factor_with_repeats_in_char_p() {
        let f = FiniteField::new(5, 2).unwrap();
        let r = PolyRing::new(f.clone());
        let a = r.linear(&f.gen());
        let b = vec![f.one(), f.zero(), f.one()]; // x^2 + 1 splits over F_25
        let target = r.mul(&r.pow(&a, 5), &r.mul(&b, &b));
        let fac = r.factor(&target);
        let total: usize = fac.iter().map(|(g, e)| (g.len() - 1) * *e as usize).sum();
        assert_eq!(total, 9);
        let prod = fac
            .iter()
            .fold(vec![f.one()], |acc, (g, e)| r.mul(&acc, &r.pow(g, *e)));
        assert_eq!(prod, target);
    }

    #[test]
    fn char_two_edf() {
        let f = FiniteField::new(2, 3).unwrap();
        let r = PolyRing::new(f.clone());
        let roots: Vec<_> = (0..8).map(|i| f.from_index(i)).collect();
        let poly = r.from_roots(&roots);
        assert_eq!(r.roots(&poly).len(), 8);
    }
}
