//! Flattening towers `K[X]/(f)` into absolute fields `F_p[w]/(M(w))`.
//!
//! The absolute modulus is the minimal polynomial over `F_p` of a primitive
//! element of the tower, so no root finding in the big field is needed.
//! An [`Embedding`] records where the power basis of the smaller field goes
//! and can pull elements back.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::field::{Field, GaloisField};
use super::gf::{FiniteField, GfElem};
use super::poly::{Poly, PolyRing};
use crate::arith::{inv_mod, mul_mod};
use crate::error::{Error, Result};

/// Row-reduced solver for `A c = b` over `F_p` where `A` has full column rank.
#[derive(Clone, Debug)]
struct ColumnSolver {
    p: u64,
    rows: usize,
    cols: usize,
    /// Original columns, for verification.
    a: Vec<Vec<u64>>,
    pivots: Vec<usize>,
    /// Inverse of the square submatrix on the pivot rows.
    inv: Vec<Vec<u64>>,
}

impl ColumnSolver {
    fn new(columns: &[Vec<u64>], rows: usize, p: u64) -> Option<Self> {
        let cols = columns.len();
        // Work on the transpose: each column becomes a row we eliminate.
        let mut m: Vec<Vec<u64>> = (0..rows)
            .map(|r| (0..cols).map(|c| columns[c].get(r).copied().unwrap_or(0)).collect())
            .collect();
        let mut pivots = Vec::with_capacity(cols);
        let mut used = vec![false; rows];
        for c in 0..cols {
            let r = (0..rows).find(|&r| !used[r] && m[r][c] != 0)?;
            used[r] = true;
            pivots.push(r);
            let iv = inv_mod(m[r][c], p).unwrap();
            for x in m[r].iter_mut() {
                *x = mul_mod(*x, iv, p);
            }
            let pivot_row = m[r].clone();
            for (rr, row) in m.iter_mut().enumerate() {
                if rr != r && row[c] != 0 {
                    let t = row[c];
                    for (x, &y) in row.iter_mut().zip(&pivot_row) {
                        *x = (*x + p - mul_mod(t, y, p)) % p;
                    }
                }
            }
        }
        let sub: Vec<Vec<u64>> = pivots
            .iter()
            .map(|&r| (0..cols).map(|c| columns[c].get(r).copied().unwrap_or(0)).collect())
            .collect();
        let inv = invert(&sub, p)?;
        Some(ColumnSolver { p, rows, cols, a: columns.to_vec(), pivots, inv })
    }

    fn solve(&self, b: &[u64]) -> Option<Vec<u64>> {
        let p = self.p;
        let rhs: Vec<u64> = self.pivots.iter().map(|&r| b.get(r).copied().unwrap_or(0)).collect();
        let c: Vec<u64> = (0..self.cols)
            .map(|i| {
                self.inv[i]
                    .iter()
                    .zip(&rhs)
                    .fold(0u64, |acc, (&x, &y)| (acc + mul_mod(x, y, p)) % p)
            })
            .collect();
        for r in 0..self.rows {
            let v = (0..self.cols).fold(0u64, |acc, j| {
                (acc + mul_mod(self.a[j].get(r).copied().unwrap_or(0), c[j], p)) % p
            });
            if v != b.get(r).copied().unwrap_or(0) {
                return None;
            }
        }
        Some(c)
    }
}

/// Inverse of a square matrix over `F_p` (Gauss–Jordan).
fn invert(m: &[Vec<u64>], p: u64) -> Option<Vec<Vec<u64>>> {
    let n = m.len();
    let mut a: Vec<Vec<u64>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| u64::from(i == j)));
            r
        })
        .collect();
    for c in 0..n {
        let r = (c..n).find(|&r| a[r][c] != 0)?;
        a.swap(r, c);
        let iv = inv_mod(a[c][c], p).unwrap();
        for x in a[c].iter_mut() {
            *x = mul_mod(*x, iv, p);
        }
        let pr = a[c].clone();
        for (rr, row) in a.iter_mut().enumerate() {
            if rr != c && row[c] != 0 {
                let t = row[c];
                for (x, &y) in row.iter_mut().zip(&pr) {
                    *x = (*x + p - mul_mod(t, y, p)) % p;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// An `F_p`-linear field embedding given by the images of a power basis.
#[derive(Clone, Debug)]
pub struct Embedding {
    pub target: FiniteField,
    pub images: Vec<GfElem>,
    solver: ColumnSolver,
}

impl Embedding {
    pub fn new(target: FiniteField, images: Vec<GfElem>) -> Result<Self> {
        let solver = ColumnSolver::new(&images, target.degree() as usize, target.p())
            .ok_or_else(|| Error::Internal("embedding images are linearly dependent".into()))?;
        Ok(Embedding { target, images, solver })
    }

    /// The identity embedding of a field into itself.
    pub fn identity(field: &FiniteField) -> Self {
        let images = (0..field.degree())
            .map(|i| field.pow(&field.gen(), i as u64))
            .collect();
        Embedding::new(field.clone(), images).expect("power basis is independent")
    }

    pub fn source_degree(&self) -> usize {
        self.images.len()
    }

    pub fn map_coeffs(&self, c: &[u64]) -> GfElem {
        let t = &self.target;
        let p = t.p();
        let mut acc = t.zero();
        for (ci, im) in c.iter().zip(&self.images) {
            if *ci % p != 0 {
                acc = t.add(&acc, &t.mul(&t.from_i64(*ci as i64), im));
            }
        }
        acc
    }

    pub fn map<K: GaloisField>(&self, k: &K, a: &K::Elem) -> GfElem {
        self.map_coeffs(&k.coeffs(a))
    }

    pub fn map_poly<K: GaloisField>(&self, k: &K, a: &[K::Elem]) -> Poly<GfElem> {
        let mut out: Vec<GfElem> = a.iter().map(|c| self.map(k, c)).collect();
        while out.last().is_some_and(|c| self.target.is_zero(c)) {
            out.pop();
        }
        out
    }

    /// Source coordinates of `b`, if `b` lies in the image.
    pub fn pullback(&self, b: &GfElem) -> Option<Vec<u64>> {
        self.solver.solve(b)
    }

    pub fn pullback_to<K: GaloisField>(&self, k: &K, b: &GfElem) -> Option<K::Elem> {
        self.pullback(b).map(|c| k.from_coeffs(&c))
    }

    /// `outer ∘ self`.
    pub fn then(&self, outer: &Embedding) -> Embedding {
        let images = self.images.iter().map(|im| outer.map_coeffs(im)).collect();
        Embedding::new(outer.target.clone(), images).expect("composite of embeddings is injective")
    }
}

/// An absolute model of `K[X]/(f)` for irreducible `f`.
#[derive(Clone, Debug)]
pub struct Extension {
    pub field: FiniteField,
    /// `K -> L`.
    pub embedding: Embedding,
    /// The class of `X`.
    pub root: GfElem,
    pub rel_degree: usize,
}

/// Builds `L = K[X]/(f)` as an absolute field, given `K` by its power basis.
pub fn extend<K: GaloisField>(base: &K, f: &[K::Elem]) -> Result<Extension> {
    let ring = PolyRing::new(base.clone());
    let f = ring.monic(f);
    let e = ring
        .deg(&f)
        .filter(|&e| e >= 1)
        .ok_or_else(|| Error::InvalidInput("cannot extend by a constant".into()))?;
    let k = base.degree() as usize;
    let p = base.p();
    let n = k * e;
    let vec_of = |t: &[K::Elem]| -> Vec<u64> {
        let mut v = vec![0u64; n];
        for (j, c) in t.iter().enumerate() {
            for (i, d) in base.coeffs(c).into_iter().enumerate() {
                v[j * k + i] = d;
            }
        }
        v
    };
    let mut rng = ChaCha8Rng::seed_from_u64(0xe47e ^ n as u64);
    let q = base.order_u64().unwrap_or(u64::MAX);
    for attempt in 0u64.. {
        let gamma: Poly<K::Elem> = if attempt < q.min(64) {
            ring.add(&ring.x(), &[base.from_index(attempt)])
        } else {
            ring.trim((0..e).map(|_| base.random(&mut rng)).collect())
        };
        let mut powers = Vec::with_capacity(n + 1);
        let mut cur = vec![base.one()];
        for _ in 0..=n {
            powers.push(vec_of(&cur));
            cur = ring.mulmod(&cur, &gamma, &f);
        }
        let Some(solver) = ColumnSolver::new(&powers[..n], n, p) else {
            continue;
        };
        let c = solver.solve(&powers[n]).expect("square system is solvable");
        let mut modulus: Vec<u64> = c.iter().map(|&x| (p - x) % p).collect();
        modulus.push(1);
        let field = FiniteField::with_modulus(p, modulus);
        let express = |t: &[K::Elem]| -> GfElem {
            field.from_coeffs(&solver.solve(&vec_of(t)).expect("basis spans the tower"))
        };
        let images = (0..k)
            .map(|i| {
                let zi = base.pow(&base.from_coeffs(&[0, 1]), i as u64);
                express(&[zi])
            })
            .collect();
        let embedding = Embedding::new(field.clone(), images)?;
        let root = express(&ring.x());
        return Ok(Extension { field, embedding, root, rel_degree: e });
    }
    unreachable!()
}

/// A copy of `K` as an absolute [`FiniteField`] with the identity embedding.
pub fn as_absolute<K: GaloisField>(base: &K) -> (FiniteField, Embedding) {
    let field = FiniteField::with_modulus(base.p(), base.modulus());
    let emb = Embedding::identity(&field);
    (field, emb)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::gf::SmallField;

    #[test]
    fn quartic_over_f49() {
        let k = SmallField::new(7, 2).unwrap();
        let ring = PolyRing::new(k.clone());
        // Find some irreducible quartic over F_49 among x^4 + x + c.
        let f = (0..49)
            .map(|i| vec![k.from_index(i), k.one(), k.zero(), k.zero(), k.one()])
            .find(|f| ring.is_irreducible(f))
            .unwrap();
        let ext = extend(&k, &f).unwrap();
        assert_eq!(ext.field.degree(), 8);
        let l = &ext.field;
        let mapped = ext.embedding.map_poly(&k, &f);
        let lring = PolyRing::new(l.clone());
        assert!(l.is_zero(&lring.eval(&mapped, &ext.root)));
        // The embedding is a ring homomorphism.
        for i in 0..49 {
            for j in 0..49 {
                let (a, b) = (k.from_index(i), k.from_index(j));
                let lhs = ext.embedding.map(&k, &k.mul(&a, &b));
                let rhs = l.mul(&ext.embedding.map(&k, &a), &ext.embedding.map(&k, &b));
                assert_eq!(lhs, rhs);
                assert_eq!(ext.embedding.pullback_to(&k, &lhs), Some(k.mul(&a, &b)));
            }
        }
        assert!(ext.embedding.pullback(&ext.root).is_none());
    }
}
