//! Long Weierstrass curves `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6`
//! over any [`Field`], with the chord-tangent group law and changes of
//! variables.
//!
//! Coordinate changes use the convention
//! `(x, y) -> ((x - r) u^2, (y - s(x - r) - t) u^3)`, so `u` multiplies
//! rather than divides; see [`Quad`].

use serde::Serialize;

use crate::algebra::{Field, GaloisField, PolyRing};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Point<E> {
    Infinity,
    Affine(E, E),
}

impl<E: Clone> Point<E> {
    pub fn is_infinity(&self) -> bool {
        matches!(self, Point::Infinity)
    }

    pub fn x(&self) -> Option<&E> {
        match self {
            Point::Affine(x, _) => Some(x),
            Point::Infinity => None,
        }
    }

    pub fn y(&self) -> Option<&E> {
        match self {
            Point::Affine(_, y) => Some(y),
            Point::Infinity => None,
        }
    }
}

/// A change of variables `(u, r, s, t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quad<E> {
    pub u: E,
    pub r: E,
    pub s: E,
    pub t: E,
}

impl<E: Clone> Quad<E> {
    pub fn identity<F: Field<Elem = E>>(f: &F) -> Self {
        Quad { u: f.one(), r: f.zero(), s: f.zero(), t: f.zero() }
    }

    /// The quadruple for "apply `self`, then `then`".
    pub fn then<F: Field<Elem = E>>(&self, f: &F, then: &Quad<E>) -> Result<Quad<E>> {
        let u1 = f.el(self.u.clone());
        let ui = u1.inv().ok_or_else(|| Error::InvalidInput("u must be a unit".into()))?;
        let ui2 = &ui * &ui;
        let ui3 = &ui2 * &ui;
        let (r1, s1, t1) = (f.el(self.r.clone()), f.el(self.s.clone()), f.el(self.t.clone()));
        let (u2, r2, s2, t2) = (
            f.el(then.u.clone()),
            f.el(then.r.clone()),
            f.el(then.s.clone()),
            f.el(then.t.clone()),
        );
        Ok(Quad {
            u: (&u1 * &u2).v,
            r: (&r1 + &(&r2 * &ui2)).v,
            s: (&s1 + &(&s2 * &ui)).v,
            t: (&t1 + &(&(&s1 * &r2) * &ui2) + &(&t2 * &ui3)).v,
        })
    }

    pub fn inverse<F: Field<Elem = E>>(&self, f: &F) -> Result<Quad<E>> {
        let u = f.el(self.u.clone());
        let ui = u.inv().ok_or_else(|| Error::InvalidInput("u must be a unit".into()))?;
        let (r, s, t) = (f.el(self.r.clone()), f.el(self.s.clone()), f.el(self.t.clone()));
        let u2 = &u * &u;
        let u3 = &u2 * &u;
        Ok(Quad {
            u: ui.v,
            r: (-(&r * &u2)).v,
            s: (-(&s * &u)).v,
            t: (&(&(&r * &s) - &t) * &u3).v,
        })
    }
}

/// Applies the coefficient transformation laws to `[a1, a2, a3, a4, a6]`.
pub fn apply_transform<F: Field>(f: &F, a: &[F::Elem; 5], q: &Quad<F::Elem>) -> Result<[F::Elem; 5]> {
    if f.is_zero(&q.u) {
        return Err(Error::InvalidInput("u must be a unit".into()));
    }
    let [a1, a2, a3, a4, a6] = a.clone().map(|v| f.el(v));
    let (u, r, s, t) = (f.el(q.u.clone()), f.el(q.r.clone()), f.el(q.s.clone()), f.el(q.t.clone()));
    let u2 = &u * &u;
    let u3 = &u2 * &u;
    let u4 = &u2 * &u2;
    let u6 = &u3 * &u3;
    let b1 = (&a1 + &(&s * 2)) * &u;
    let b2 = (&a2 - &(&a1 * &s) + &(&r * 3) - &(&s * &s)) * &u2;
    let b3 = (&a3 + &(&a1 * &r) + &(&t * 2)) * &u3;
    let b4 = (&a4 + &(&(&a2 * &r) * 2) - &(&a1 * &(&(&r * &s) + &t)) - &(&a3 * &s)
        + &(&(&r * &r) * 3)
        - &(&(&s * &t) * 2))
        * &u4;
    let b6 = (&a6 - &(&(&a1 * &r) * &t) + &(&(&a2 * &r) * &r) - &(&a3 * &t) + &(&a4 * &r)
        + &(&(&r * &r) * &r)
        - &(&t * &t))
        * &u6;
    Ok([b1.v, b2.v, b3.v, b4.v, b6.v])
}

pub fn map_point<F: Field>(f: &F, q: &Quad<F::Elem>, pt: &Point<F::Elem>) -> Point<F::Elem> {
    match pt {
        Point::Infinity => Point::Infinity,
        Point::Affine(x, y) => {
            let (u, r, s, t) = (f.el(q.u.clone()), f.el(q.r.clone()), f.el(q.s.clone()), f.el(q.t.clone()));
            let dx = f.el(x.clone()) - &r;
            let u2 = &u * &u;
            let x2 = &dx * &u2;
            let y2 = (f.el(y.clone()) - &(&s * &dx) - &t) * &(&u2 * &u);
            Point::Affine(x2.v, y2.v)
        }
    }
}

#[derive(Clone, Debug)]
pub struct Curve<F: Field> {
    pub field: F,
    /// `[a1, a2, a3, a4, a6]`.
    pub a: [F::Elem; 5],
}

impl<F: Field> PartialEq for Curve<F> {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a
    }
}

impl<F: Field> Curve<F> {
    /// Nonsingular curve with the given coefficients.
    pub fn new(field: F, a: [F::Elem; 5]) -> Result<Self> {
        let c = Curve { field, a };
        if c.field.is_zero(&c.discriminant()) {
            return Err(Error::Singular);
        }
        Ok(c)
    }

    pub fn from_ints(field: F, a: [i64; 5]) -> Result<Self> {
        let a = a.map(|v| field.from_i64(v));
        Self::new(field, a)
    }

    /// `y^2 = x^3 + A x + B`.
    pub fn short(field: F, a4: F::Elem, a6: F::Elem) -> Result<Self> {
        let z = field.zero();
        Self::new(field, [z.clone(), z.clone(), z, a4, a6])
    }

    /// Tate normal form `y^2 + (1 - c) xy - b y = x^3 - b x^2`.
    pub fn tate(field: F, b: F::Elem, c: F::Elem) -> Result<Self> {
        let a1 = field.sub(&field.one(), &c);
        let nb = field.neg(&b);
        let z = field.zero();
        Self::new(field, [a1, nb.clone(), nb, z.clone(), z])
    }

    pub fn coeffs(&self) -> &[F::Elem; 5] {
        &self.a
    }

    /// `(b2, b4, b6, b8)`.
    pub fn b_invariants(&self) -> [F::Elem; 4] {
        let f = &self.field;
        let [a1, a2, a3, a4, a6] = self.a.clone().map(|v| f.el(v));
        let b2 = &(&a1 * &a1) + &(&a2 * 4);
        let b4 = &(&a1 * &a3) + &(&a4 * 2);
        let b6 = &(&a3 * &a3) + &(&a6 * 4);
        let b8 = &(&(&(&a1 * &a1) * &a6) + &(&(&a2 * &a6) * 4)) - &(&(&a1 * &a3) * &a4)
            + &(&(&a2 * &a3) * &a3)
            - &(&a4 * &a4);
        [b2.v, b4.v, b6.v, b8.v]
    }

    pub fn c4_c6(&self) -> (F::Elem, F::Elem) {
        let f = &self.field;
        let [b2, b4, b6, _] = self.b_invariants().map(|v| f.el(v));
        let c4 = &(&b2 * &b2) - &(&b4 * 24);
        let c6 = &(&(&(-&(&(&b2 * &b2) * &b2)) + &(&(&b2 * &b4) * 36)) - &(&b6 * 216)) * 1;
        (c4.v, c6.v)
    }

    pub fn discriminant(&self) -> F::Elem {
        let f = &self.field;
        let [b2, b4, b6, b8] = self.b_invariants().map(|v| f.el(v));
        let d = &(&(&(-&(&(&b2 * &b2) * &b8)) - &(&(&(&b4 * &b4) * &b4) * 8)) - &(&(&b6 * &b6) * 27))
            + &(&(&(&b2 * &b4) * &b6) * 9);
        d.v
    }

    pub fn j_invariant(&self) -> F::Elem {
        let f = &self.field;
        let (c4, _) = self.c4_c6();
        let c4 = f.el(c4);
        let num = &(&c4 * &c4) * &c4;
        num.div(&f.el(self.discriminant())).expect("nonsingular").v
    }

    pub fn is_on(&self, pt: &Point<F::Elem>) -> bool {
        match pt {
            Point::Infinity => true,
            Point::Affine(x, y) => self.field.is_zero(&self.equation(x, y)),
        }
    }

    /// `y^2 + a1 xy + a3 y - (x^3 + a2 x^2 + a4 x + a6)`.
    pub fn equation(&self, x: &F::Elem, y: &F::Elem) -> F::Elem {
        let f = &self.field;
        let [a1, a2, a3, a4, a6] = self.a.clone().map(|v| f.el(v));
        let (x, y) = (f.el(x.clone()), f.el(y.clone()));
        let lhs = &(&(&y * &y) + &(&(&a1 * &x) * &y)) + &(&a3 * &y);
        let rhs = &(&(&(&(&x * &x) * &x) + &(&(&a2 * &x) * &x)) + &(&a4 * &x)) + &a6;
        (lhs - rhs).v
    }

    pub fn neg(&self, pt: &Point<F::Elem>) -> Point<F::Elem> {
        match pt {
            Point::Infinity => Point::Infinity,
            Point::Affine(x, y) => {
                let f = &self.field;
                let [a1, _, a3, _, _] = &self.a;
                let ny = f.sub(&f.neg(y), &f.add(&f.mul(a1, x), a3));
                Point::Affine(x.clone(), ny)
            }
        }
    }

    pub fn add(&self, p: &Point<F::Elem>, q: &Point<F::Elem>) -> Point<F::Elem> {
        let f = &self.field;
        let (x1, y1, x2, y2) = match (p, q) {
            (Point::Infinity, _) => return q.clone(),
            (_, Point::Infinity) => return p.clone(),
            (Point::Affine(x1, y1), Point::Affine(x2, y2)) => (x1, y1, x2, y2),
        };
        let [a1, a2, a3, a4, a6] = self.a.clone().map(|v| f.el(v));
        let (x1, y1, x2, y2) = (f.el(x1.clone()), f.el(y1.clone()), f.el(x2.clone()), f.el(y2.clone()));
        let (lambda, nu);
        if x1 == x2 {
            let denom = &(&(&y1 * 2) + &(&a1 * &x1)) + &a3;
            if denom.is_zero() || y1 != y2 {
                // Vertical line: q = -p, or p is 2-torsion.
                return Point::Infinity;
            }
            let num = &(&(&(&(&x1 * &x1) * 3) + &(&(&a2 * &x1) * 2)) + &a4) - &(&a1 * &y1);
            let di = denom.inv().unwrap();
            lambda = &num * &di;
            let num2 = &(&(&(-&(&(&x1 * &x1) * &x1)) + &(&a4 * &x1)) + &(&a6 * 2)) - &(&a3 * &y1);
            nu = &num2 * &di;
        } else {
            let di = (&x2 - &x1).inv().unwrap();
            lambda = &(&y2 - &y1) * &di;
            nu = &(&(&y1 * &x2) - &(&y2 * &x1)) * &di;
        }
        let x3 = &(&(&(&(&lambda * &lambda) + &(&a1 * &lambda)) - &a2) - &x1) - &x2;
        let y3 = &(&(-&(&(&lambda + &a1) * &x3)) - &nu) - &a3;
        Point::Affine(x3.v, y3.v)
    }

    pub fn sub(&self, p: &Point<F::Elem>, q: &Point<F::Elem>) -> Point<F::Elem> {
        self.add(p, &self.neg(q))
    }

    pub fn mul(&self, pt: &Point<F::Elem>, k: i64) -> Point<F::Elem> {
        let base = if k < 0 { self.neg(pt) } else { pt.clone() };
        self.mul_u(&base, k.unsigned_abs())
    }

    pub fn mul_u(&self, pt: &Point<F::Elem>, mut k: u64) -> Point<F::Elem> {
        let mut acc = Point::Infinity;
        let mut base = pt.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.add(&base, &base);
            }
        }
        acc
    }

    /// Exact order of `pt`, given that `multiple` annihilates it.
    pub fn order_dividing(&self, pt: &Point<F::Elem>, multiple: u64) -> u64 {
        let mut ord = multiple;
        for (l, _) in crate::arith::factor(multiple) {
            while ord % l == 0 && self.mul_u(pt, ord / l).is_infinity() {
                ord /= l;
            }
        }
        ord
    }

    /// Exact order by repeated addition, up to `limit`.
    pub fn order_naive(&self, pt: &Point<F::Elem>, limit: u64) -> Option<u64> {
        let mut acc = pt.clone();
        for k in 1..=limit {
            if acc.is_infinity() {
                return Some(k);
            }
            acc = self.add(&acc, pt);
        }
        None
    }

    pub fn has_exact_order(&self, pt: &Point<F::Elem>, n: u64) -> bool {
        if !self.mul_u(pt, n).is_infinity() {
            return false;
        }
        crate::arith::factor(n)
            .iter()
            .all(|&(l, _)| !self.mul_u(pt, n / l).is_infinity())
    }

    pub fn transform(&self, q: &Quad<F::Elem>) -> Result<Curve<F>> {
        let a = apply_transform(&self.field, &self.a, q)?;
        Curve::new(self.field.clone(), a)
    }

    /// Change of variables taking `(E, P)` with `P` of order at least 4 to Tate
    /// normal form, `P` going to `(0, 0)`. Returns `(b, c)` and the quadruple.
    pub fn tate_normal_form(&self, pt: &Point<F::Elem>) -> Result<((F::Elem, F::Elem), Quad<F::Elem>)> {
        let f = &self.field;
        let (x0, y0) = match pt {
            Point::Affine(x, y) => (x.clone(), y.clone()),
            Point::Infinity => return Err(Error::InvalidInput("point at infinity".into())),
        };
        let t1 = Quad { u: f.one(), r: x0, s: f.zero(), t: y0 };
        let e1 = apply_transform(f, &self.a, &t1)?;
        if f.is_zero(&e1[2]) {
            return Err(Error::InvalidInput("point of order 2 has no Tate normal form".into()));
        }
        let s = f.div(&e1[3], &e1[2]).unwrap();
        let t2 = Quad { u: f.one(), r: f.zero(), s, t: f.zero() };
        let e2 = apply_transform(f, &e1, &t2)?;
        if f.is_zero(&e2[1]) {
            return Err(Error::InvalidInput("point of order 3 has no Tate normal form".into()));
        }
        let u = f.div(&e2[1], &e2[2]).unwrap();
        let t3 = Quad { u, r: f.zero(), s: f.zero(), t: f.zero() };
        let e3 = apply_transform(f, &e2, &t3)?;
        let quad = t1.then(f, &t2)?.then(f, &t3)?;
        let b = f.neg(&e3[2]);
        let c = f.sub(&f.one(), &e3[0]);
        debug_assert!(f.is_zero(&e3[3]) && f.is_zero(&e3[4]) && e3[1] == e3[2]);
        Ok(((b, c), quad))
    }

    /// The polynomial `4x^3 + b2 x^2 + 2 b4 x + b6` whose roots are the
    /// x-coordinates of the nonzero 2-torsion points.
    pub fn two_division(&self) -> Vec<F::Elem> {
        let f = &self.field;
        let [b2, b4, b6, _] = self.b_invariants();
        PolyRing::new(f.clone()).trim(vec![b6, f.mul(&b4, &f.from_i64(2)), b2, f.from_i64(4)])
    }
}

impl<F: GaloisField> Curve<F> {
    /// Points with the given x-coordinate (zero, one or two of them).
    pub fn lift_x(&self, x: &F::Elem) -> Vec<Point<F::Elem>> {
        let f = &self.field;
        let [a1, a2, a3, a4, a6] = self.a.clone().map(|v| f.el(v));
        let xe = f.el(x.clone());
        let h = &(&a1 * &xe) + &a3;
        let g = &(&(&(&(&xe * &xe) * &xe) + &(&(&a2 * &xe) * &xe)) + &(&a4 * &xe)) + &a6;
        let mut out = Vec::new();
        if f.p() == 2 {
            if h.is_zero() {
                let y = f.sqrt(&g.v).unwrap();
                out.push(Point::Affine(x.clone(), y));
            } else {
                // y = h z with z^2 + z = g / h^2.
                let c = g.div(&(&h * &h)).unwrap();
                if let Some(z) = solve_artin_schreier(f, &c.v) {
                    let y1 = (&h * &f.el(z.clone())).v;
                    let y2 = f.add(&y1, &h.v);
                    out.push(Point::Affine(x.clone(), y1));
                    out.push(Point::Affine(x.clone(), y2));
                }
            }
        } else {
            // (2y + h)^2 = h^2 + 4g.
            let d = &(&h * &h) + &(&g * 4);
            if let Some(r) = f.sqrt(&d.v) {
                let half = f.inv(&f.from_i64(2)).unwrap();
                let y1 = f.mul(&f.sub(&r, &h.v), &half);
                let y2 = f.mul(&f.sub(&f.neg(&r), &h.v), &half);
                out.push(Point::Affine(x.clone(), y1.clone()));
                if y2 != y1 {
                    out.push(Point::Affine(x.clone(), y2));
                }
            }
        }
        out
    }

    pub fn random_point<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> Point<F::Elem> {
        loop {
            let x = self.field.random(rng);
            let pts = self.lift_x(&x);
            if !pts.is_empty() {
                let i = rng.random_range(0..pts.len());
                return pts[i].clone();
            }
        }
    }

    /// Every affine point, for small fields.
    pub fn points(&self) -> Vec<Point<F::Elem>> {
        let q = self.field.order_u64().expect("small field");
        let mut out = vec![Point::Infinity];
        for i in 0..q {
            out.extend(self.lift_x(&self.field.from_index(i)));
        }
        out
    }
}

/// A root of `z^2 + z = c` in characteristic 2, if any.
pub fn solve_artin_schreier<F: GaloisField>(f: &F, c: &F::Elem) -> Option<F::Elem> {
    if f.trace(c) != 0 {
        return None;
    }
    let k = f.degree();
    if k % 2 == 1 {
        // Half-trace.
        let mut acc = f.zero();
        let mut x = c.clone();
        for i in 0..k {
            if i % 2 == 0 {
                acc = f.add(&acc, &x);
            }
            x = f.frobenius(&x);
        }
        return Some(acc);
    }
    // The trace is a nonzero linear form, so some basis monomial has trace 1.
    let delta = (0..k as usize)
        .map(|j| {
            let mut c = vec![0u64; k as usize];
            c[j] = 1;
            f.from_coeffs(&c)
        })
        .find(|d| f.trace(d) == 1)?;
    // z = sum_{i=0}^{k-2} (sum_{j=i+1}^{k-1} delta^(2^j)) c^(2^i)
    let dpows: Vec<F::Elem> = (0..k).scan(delta, |d, _| {
        let cur = d.clone();
        *d = f.frobenius(d);
        Some(cur)
    })
    .collect();
    let cpows: Vec<F::Elem> = (0..k).scan(c.clone(), |d, _| {
        let cur = d.clone();
        *d = f.frobenius(d);
        Some(cur)
    })
    .collect();
    let mut z = f.zero();
    for i in 0..(k as usize - 1) {
        let mut inner = f.zero();
        for dp in dpows.iter().skip(i + 1) {
            inner = f.add(&inner, dp);
        }
        z = f.add(&z, &f.mul(&inner, &cpows[i]));
    }
    debug_assert!(f.add(&f.mul(&z, &z), &z) == *c);
    Some(z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{FiniteField, Rationals, SmallField};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_curve<F: GaloisField>(f: &F, rng: &mut ChaCha8Rng) -> Curve<F> {
        loop {
            let a = [0; 5].map(|_| f.random(rng));
            if let Ok(c) = Curve::new(f.clone(), a) {
                return c;
            }
        }
    }

    #[test]
    fn group_law_axioms_small_fields() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for (p, k) in [(2, 3), (3, 2), (5, 1), (7, 2), (13, 1)] {
            let f = SmallField::new(p, k).unwrap();
            for _ in 0..5 {
                let e = random_curve(&f, &mut rng);
                let pts = e.points();
                let n = pts.len() as u64;
                for _ in 0..20 {
                    let a = &pts[rng.random_range(0..pts.len())];
                    let b = &pts[rng.random_range(0..pts.len())];
                    let c = &pts[rng.random_range(0..pts.len())];
                    assert!(e.is_on(&e.add(a, b)));
                    assert_eq!(e.add(a, b), e.add(b, a));
                    assert_eq!(e.add(&e.add(a, b), c), e.add(a, &e.add(b, c)));
                    assert!(e.add(a, &e.neg(a)).is_infinity());
                    assert!(e.mul_u(a, n).is_infinity());
                }
            }
        }
    }

    #[test]
    fn transform_preserves_points_and_j() {
        let f = FiniteField::new(11, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..10 {
            let e = random_curve(&f, &mut rng);
            let mut u = f.random(&mut rng);
            while f.is_zero(&u) {
                u = f.random(&mut rng);
            }
            let q = Quad { u, r: f.random(&mut rng), s: f.random(&mut rng), t: f.random(&mut rng) };
            let e2 = e.transform(&q).unwrap();
            assert_eq!(e.j_invariant(), e2.j_invariant());
            let pt = e.random_point(&mut rng);
            assert!(e2.is_on(&map_point(&f, &q, &pt)));
            let back = e2.transform(&q.inverse(&f).unwrap()).unwrap();
            assert_eq!(back, e);
        }
    }

    #[test]
    fn tate_normal_form_over_q() {
        let q = Rationals;
        // y^2 + y = x^3 - x^2 has (0,0) of order 5: Tate form with b = c.
        let e = Curve::from_ints(q, [0, -1, 1, 0, 0]).unwrap();
        let p = Point::Affine(q.zero(), q.zero());
        assert_eq!(e.order_naive(&p, 10), Some(5));
        let ((b, c), quad) = e.tate_normal_form(&p).unwrap();
        assert_eq!(b, c);
        let t = Curve::tate(q, b, c).unwrap();
        assert_eq!(e.transform(&quad).unwrap(), t);
        assert_eq!(map_point(&q, &quad, &p), Point::Affine(q.zero(), q.zero()));
    }

    #[test]
    fn supersingular_example() {
        // y^2 = x^3 + x over F_5 has 4 points, full 2-torsion.
        let f = SmallField::new(5, 1).unwrap();
        let e = Curve::from_ints(f, [0, 0, 0, 1, 0]).unwrap();
        assert_eq!(e.points().len(), 4);
    }

    #[test]
    fn artin_schreier_even_degree() {
        let f = SmallField::new(2, 4).unwrap();
        for i in 0..16 {
            let c = f.from_index(i);
            match solve_artin_schreier(&f, &c) {
                Some(z) => assert_eq!(f.add(&f.mul(&z, &z), &z), c),
                None => assert_eq!(f.trace(&c), 1),
            }
        }
    }
}
