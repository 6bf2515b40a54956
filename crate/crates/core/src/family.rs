//! The universal curve over `X_1(2, N)`, `N > 2`:
//! `y^2 = x^3 + c x^2 + (1 - b - c) b x` with `P = (0, 0)` of order 2 and
//! `Q = (b, b)`, its discriminant, normalization of arbitrary triples
//! `(E, P, Q)`, and Jain's birational reparametrization.
//!
//! Quadruples follow the convention of [`Quad`]: `u` multiplies coordinates.
//! In that convention the scaling that sends `Q = (v, w)` to `(b, b)` is
//! `u = v / w`; the classical convention writes the same map as `w / v`.
//! Either way `b = v^3 / w^2`.

use serde::Serialize;

use crate::algebra::{Field, LaurentRing};
use crate::curves::{apply_transform, map_point, Curve, Point, Quad};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FamilyParams<E> {
    pub b: E,
    pub c: E,
}

/// `16 b^2 (b + c - 1)^2 (4b^2 + 4bc - 4b + c^2)`.
pub fn delta<F: Field>(f: &F, b: &F::Elem, c: &F::Elem) -> F::Elem {
    let (b, c) = (f.el(b.clone()), f.el(c.clone()));
    let s = &(&b + &c) - 1;
    let quad = &(&(&(&(&b * &b) * 4) + &(&(&b * &c) * 4)) - &(&b * 4)) + &(&c * &c);
    (&(&(&(&b * &b) * &(&s * &s)) * &quad) * 16).v
}

/// `[a1, a2, a3, a4, a6]` of the family curve, with no checks.
pub fn family_coeffs<F: Field>(f: &F, b: &F::Elem, c: &F::Elem) -> [F::Elem; 5] {
    let a4 = f.mul(&f.sub(&f.sub(&f.one(), b), c), b);
    [f.zero(), c.clone(), f.zero(), a4, f.zero()]
}

fn require_two_invertible<F: Field>(f: &F) -> Result<()> {
    if f.characteristic() == 2 {
        return Err(Error::InvalidInput("2 must be invertible".into()));
    }
    Ok(())
}

/// The triple `(E, (0, 0), (b, b))`.
pub fn family_curve<F: Field>(f: &F, b: &F::Elem, c: &F::Elem) -> Result<(Curve<F>, Point<F::Elem>, Point<F::Elem>)> {
    require_two_invertible(f)?;
    if f.is_zero(&delta(f, b, c)) {
        return Err(Error::Degenerate("degenerate parameters: delta(b, c) = 0".into()));
    }
    let e = Curve::new(f.clone(), family_coeffs(f, b, c))?;
    Ok((e, Point::Affine(f.zero(), f.zero()), Point::Affine(b.clone(), b.clone())))
}

/// Finds `(b, c)` and the quadruple carrying `(E, P, Q)` to the family triple.
pub fn normalize<F: Field>(
    e: &Curve<F>,
    p: &Point<F::Elem>,
    q: &Point<F::Elem>,
) -> Result<(FamilyParams<F::Elem>, Quad<F::Elem>)> {
    let f = &e.field;
    require_two_invertible(f)?;
    if !e.is_on(p) || !e.is_on(q) {
        return Err(Error::InvalidInput("points must lie on the curve".into()));
    }
    let Point::Affine(xp, yp) = p else {
        return Err(Error::InvalidInput("P must have order 2".into()));
    };
    if !e.add(p, p).is_infinity() {
        return Err(Error::InvalidInput("P must have order 2".into()));
    }
    if q.is_infinity() || e.add(q, q).is_infinity() {
        return Err(Error::InvalidInput("order > 2 required for Q".into()));
    }
    // Move P to the origin, then complete the square in y.
    let t1 = Quad { u: f.one(), r: xp.clone(), s: f.zero(), t: yp.clone() };
    let a1 = apply_transform(f, &e.a, &t1)?;
    let half = f.inv(&f.from_i64(2)).unwrap();
    let t2 = Quad {
        u: f.one(),
        r: f.zero(),
        s: f.neg(&f.mul(&a1[0], &half)),
        t: f.neg(&f.mul(&a1[2], &half)),
    };
    let shifted = t1.then(f, &t2)?;
    let Point::Affine(v, w) = map_point(f, &shifted, q) else { unreachable!() };
    if f.is_zero(&w) {
        return Err(Error::InvalidInput("w is not a unit: Q has order 2".into()));
    }
    if f.is_zero(&v) {
        return Err(Error::InvalidInput("v is not a unit: Q has order 2".into()));
    }
    let u = f.div(&v, &w).unwrap();
    let quad = shifted.then(f, &Quad { u, r: f.zero(), s: f.zero(), t: f.zero() })?;
    let a = apply_transform(f, &e.a, &quad)?;
    let b = f.div(&f.pow(&v, 3), &f.square(&w)).unwrap();
    let c = a[1].clone();
    debug_assert_eq!(a, family_coeffs(f, &b, &c));
    Ok((FamilyParams { b, c }, quad))
}

/// Jain's parameters `(t, q)` and back; the identity on its domain.
pub fn jain_roundtrip<F: Field>(f: &F, params: &FamilyParams<F::Elem>) -> Result<(F::Elem, F::Elem, FamilyParams<F::Elem>)> {
    let (b, c) = (f.el(params.b.clone()), f.el(params.c.clone()));
    let cm1 = &c - 1;
    if cm1.is_zero() {
        return Err(Error::Degenerate("c = 1 degenerate".into()));
    }
    let l = &(&(&b * 2) + &c) - 1;
    if l.is_zero() {
        return Err(Error::Degenerate("2b + c - 1 = 0 degenerate".into()));
    }
    let half = f.int(2).inv().ok_or_else(|| Error::InvalidInput("2 must be invertible".into()))?;
    let t = (-&l).div(&cm1).unwrap();
    if t.is_zero() {
        return Err(Error::Degenerate("t = 0 degenerate".into()));
    }
    let qq = &(&(&b + &(&c * &half)) + &half) - &(&b * 2).div(&l).unwrap();
    let t2 = &t * &t;
    let b2 = (&(&t + 1) * &(&(&qq * &t) + 1)).div(&t2).unwrap();
    let c2 = (&(&t2 - &(&(&qq * &t) * 2)) - 2).div(&t2).unwrap();
    Ok((t.v, qq.v, FamilyParams { b: b2.v, c: c2.v }))
}

/// Outcome of one symbolic identity check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub holds: bool,
    pub terms: usize,
}

/// Expands the family and transformation identities over `Z[...]` exactly.
pub fn verify_identities() -> Vec<IdentityCheck> {
    let mut out = Vec::new();

    // Discriminant of the family curve against the displayed product.
    let r = LaurentRing::new(2);
    let (b, c) = (r.var(0), r.var(1));
    let e = Curve { field: r, a: family_coeffs(&r, &b, &c) };
    let diff = r.sub(&e.discriminant(), &delta(&r, &b, &c));
    out.push(IdentityCheck { name: "discriminant equals delta(b, c)", holds: diff.is_empty(), terms: e.discriminant().len() });

    // Q = (b, b) lies on the curve and P = (0, 0) has a vertical tangent.
    let on = e.equation(&b, &b);
    out.push(IdentityCheck { name: "Q = (b, b) lies on the curve", holds: on.is_empty(), terms: 0 });
    let p0 = Point::Affine(r.zero(), r.zero());
    out.push(IdentityCheck { name: "P = (0, 0) has order 2", holds: e.add(&p0, &p0).is_infinity(), terms: 0 });

    // The point map carries E to E' with the equation scaling by u^6.
    // Variables: a1 a2 a3 a4 a6 u r s t x y.
    let r = LaurentRing::new(11);
    let v: Vec<_> = (0..11).map(|i| r.var(i)).collect();
    let curve = Curve { field: r, a: [v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone(), v[4].clone()] };
    let quad = Quad { u: v[5].clone(), r: v[6].clone(), s: v[7].clone(), t: v[8].clone() };
    let image = Curve { field: r, a: apply_transform(&r, &curve.a, &quad).unwrap() };
    let Point::Affine(x2, y2) = map_point(&r, &quad, &Point::Affine(v[9].clone(), v[10].clone())) else { unreachable!() };
    let lhs = image.equation(&x2, &y2);
    let rhs = r.mul(&r.pow(&v[5], 6), &curve.equation(&v[9], &v[10]));
    out.push(IdentityCheck { name: "transformation law matches the point map", holds: lhs == rhs, terms: lhs.len() });

    // Composition: applying T1 then T2 equals applying T1.then(T2).
    // Variables: a1 a2 a3 a4 a6 u1 r1 s1 t1 u2 r2 s2 t2.
    let r = LaurentRing::new(13);
    let v: Vec<_> = (0..13).map(|i| r.var(i)).collect();
    let a = [v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone(), v[4].clone()];
    let q1 = Quad { u: v[5].clone(), r: v[6].clone(), s: v[7].clone(), t: v[8].clone() };
    let q2 = Quad { u: v[9].clone(), r: v[10].clone(), s: v[11].clone(), t: v[12].clone() };
    let seq = apply_transform(&r, &apply_transform(&r, &a, &q1).unwrap(), &q2).unwrap();
    let once = apply_transform(&r, &a, &q1.then(&r, &q2).unwrap()).unwrap();
    out.push(IdentityCheck { name: "composition law", holds: seq == once, terms: seq.iter().map(|x| x.len()).sum() });
    let inv = apply_transform(&r, &apply_transform(&r, &a, &q1).unwrap(), &q1.inverse(&r).unwrap()).unwrap();
    out.push(IdentityCheck { name: "inverse quadruple", holds: inv == a, terms: 0 });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, GaloisField, Rationals, SmallField};
    use crate::curves::census::isomorphism_class_reps;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn identities_hold() {
        for check in verify_identities() {
            assert!(check.holds, "{}", check.name);
        }
    }

    #[test]
    fn a6_law_on_symbols() {
        // a6' = (a6 - a1 r t + a2 r^2 - a3 t + a4 r + r^3 - t^2) u^6
        let r = LaurentRing::new(9);
        let v: Vec<_> = (0..9).map(|i| r.var(i)).collect();
        let a = [v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone(), v[4].clone()];
        let q = Quad { u: v[5].clone(), r: v[6].clone(), s: v[7].clone(), t: v[8].clone() };
        let got = apply_transform(&r, &a, &q).unwrap();
        let (a1, a2, a3, a4, a6, u, rr, t) = (&v[0], &v[1], &v[2], &v[3], &v[4], &v[5], &v[6], &v[8]);
        let f = &r;
        let inner = [
            a6.clone(),
            f.neg(&f.mul(&f.mul(a1, rr), t)),
            f.mul(a2, &f.square(rr)),
            f.neg(&f.mul(a3, t)),
            f.mul(a4, rr),
            f.pow(rr, 3),
            f.neg(&f.square(t)),
        ]
        .iter()
        .fold(f.zero(), |acc, x| f.add(&acc, x));
        assert_eq!(got[4], f.mul(&inner, &f.pow(u, 6)));
    }

    #[test]
    fn identity_quadruple_is_neutral() {
        let f = SmallField::new(101, 1).unwrap();
        let a = [3, 1, 4, 1, 5].map(|x| f.from_i64(x));
        assert_eq!(apply_transform(&f, &a, &Quad::identity(&f)).unwrap(), a);
        let mut u = Quad::identity(&f);
        u.u = f.zero();
        assert!(apply_transform(&f, &a, &u).is_err());
    }

    #[test]
    fn normalize_fixes_family_triples() {
        let q = Rationals;
        let (b, c) = (rat(2, 3), rat(-5, 7));
        let (e, p, qq) = family_curve(&q, &b, &c).unwrap();
        let (params, quad) = normalize(&e, &p, &qq).unwrap();
        assert_eq!(params, FamilyParams { b, c });
        assert_eq!(quad, Quad::identity(&q));
    }

    #[test]
    fn degenerate_inputs() {
        let q = Rationals;
        assert!(matches!(family_curve(&q, &rat(0, 1), &rat(3, 1)), Err(Error::Degenerate(_))));
        let (e, p, qq) = family_curve(&q, &rat(2, 1), &rat(3, 1)).unwrap();
        let err = normalize(&e, &p, &p).unwrap_err();
        assert!(err.to_string().contains("order > 2 required"));
        assert!(normalize(&e, &qq, &qq).is_err());
    }

    fn random_triple_fp(f: &SmallField, rng: &mut ChaCha8Rng) -> (Curve<SmallField>, Point<u32>, Point<u32>) {
        let reps = isomorphism_class_reps(f);
        loop {
            let e = &reps[rng.random_range(0..reps.len())];
            let quad = Quad { u: f.from_i64(rng.random_range(1..101)), r: f.random(rng), s: f.random(rng), t: f.random(rng) };
            let e = e.transform(&quad).unwrap();
            let pts = e.points();
            let two: Vec<_> = pts.iter().filter(|p| !p.is_infinity() && e.add(p, p).is_infinity()).cloned().collect();
            let big: Vec<_> = pts.iter().filter(|p| !e.add(p, p).is_infinity()).cloned().collect();
            if two.is_empty() || big.is_empty() {
                continue;
            }
            let p = two[rng.random_range(0..two.len())].clone();
            let q = big[rng.random_range(0..big.len())].clone();
            return (e, p, q);
        }
    }

    #[test]
    fn normalize_round_trip_f101() {
        let f = SmallField::new(101, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(101);
        for _ in 0..50 {
            let (e, p, q) = random_triple_fp(&f, &mut rng);
            let (params, quad) = normalize(&e, &p, &q).unwrap();
            let (fe, fp, fq) = family_curve(&f, &params.b, &params.c).unwrap();
            assert_eq!(e.transform(&quad).unwrap(), fe);
            assert_eq!(map_point(&f, &quad, &p), fp);
            assert_eq!(map_point(&f, &quad, &q), fq);
        }
    }

    #[test]
    fn normalize_round_trip_rationals() {
        let q = Rationals;
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut done = 0;
        while done < 50 {
            let (b, c) = (rat(rng.random_range(-20..20), rng.random_range(1..9)), rat(rng.random_range(-20..20), rng.random_range(1..9)));
            let Ok((e, p, qq)) = family_curve(&q, &b, &c) else { continue };
            let quad = Quad {
                u: rat(rng.random_range(1..7), rng.random_range(1..7)),
                r: rat(rng.random_range(-9..9), rng.random_range(1..5)),
                s: rat(rng.random_range(-9..9), rng.random_range(1..5)),
                t: rat(rng.random_range(-9..9), rng.random_range(1..5)),
            };
            let e2 = e.transform(&quad).unwrap();
            let (p2, q2) = (map_point(&q, &quad, &p), map_point(&q, &quad, &qq));
            // Replace Q by 3Q or -Q now and then: still order > 2 over Q.
            let q2 = if done % 3 == 0 { e2.neg(&q2) } else { q2 };
            let (params, back) = normalize(&e2, &p2, &q2).unwrap();
            let (fe, fp, fq) = family_curve(&q, &params.b, &params.c).unwrap();
            assert_eq!(e2.transform(&back).unwrap(), fe);
            assert_eq!(map_point(&q, &back, &p2), fp);
            assert_eq!(map_point(&q, &back, &q2), fq);
            if done % 3 != 0 {
                assert_eq!(params, FamilyParams { b, c });
            }
            done += 1;
        }
    }

    #[test]
    fn jain_at_two_three() {
        let q = Rationals;
        let (t, qq, back) = jain_roundtrip(&q, &FamilyParams { b: rat(2, 1), c: rat(3, 1) }).unwrap();
        assert_eq!(t, rat(-3, 1));
        assert_eq!(qq, rat(10, 3));
        assert_eq!(back, FamilyParams { b: rat(2, 1), c: rat(3, 1) });
        let err = jain_roundtrip(&q, &FamilyParams { b: rat(2, 1), c: rat(1, 1) }).unwrap_err();
        assert!(err.to_string().contains("c = 1 degenerate"));
        assert!(jain_roundtrip(&q, &FamilyParams { b: rat(1, 1), c: rat(-1, 1) }).is_err());
    }

    proptest! {
        #[test]
        fn jain_is_identity(bn in -500i64..500, bd in 1i64..50, cn in -500i64..500, cd in 1i64..50) {
            let q = Rationals;
            let params = FamilyParams { b: rat(bn, bd), c: rat(cn, cd) };
            if let Ok((_, _, back)) = jain_roundtrip(&q, &params) {
                prop_assert_eq!(back, params);
            }
        }

        #[test]
        fn inverse_quadruple_round_trips(a in proptest::array::uniform5(0u32..101), u in 1i64..101, r in 0i64..101, s in 0i64..101, t in 0i64..101) {
            let f = SmallField::new(101, 1).unwrap();
            let a = a.map(|x| f.from_i64(x as i64));
            let quad = Quad { u: f.from_i64(u), r: f.from_i64(r), s: f.from_i64(s), t: f.from_i64(t) };
            let there = apply_transform(&f, &a, &quad).unwrap();
            prop_assert_eq!(apply_transform(&f, &there, &quad.inverse(&f).unwrap()).unwrap(), a);
        }
    }
}
