//! Division polynomials, torsion splitting fields and Vélu isogenies.

use rand::Rng;

use crate::algebra::{Embedding, Field, FiniteField, GaloisField, GfElem, Poly, PolyRing};
use crate::arith::lcm;
use crate::curves::{Curve, Point};
use crate::error::{Error, Result};

/// `f_l` with `psi_l = f_l` for odd `l` and `psi_l = psi_2 f_l` for even `l`;
/// a polynomial in `x` alone.
pub fn division_polynomial<K: GaloisField>(e: &Curve<K>, l: u64) -> Poly<K::Elem> {
    let k = &e.field;
    let ring = PolyRing::new(k.clone());
    let [b2, b4, b6, b8] = e.b_invariants();
    let c = |n: i64| k.from_i64(n);
    let big_f = e.two_division();
    let f2 = ring.mul(&big_f, &big_f);
    let f3 = ring.trim(vec![b8.clone(), k.mul(&c(3), &b6), k.mul(&c(3), &b4), b2.clone(), c(3)]);
    let f4 = ring.trim(vec![
        k.sub(&k.mul(&b4, &b8), &k.square(&b6)),
        k.sub(&k.mul(&b2, &b8), &k.mul(&b4, &b6)),
        k.mul(&c(10), &b8),
        k.mul(&c(10), &b6),
        k.mul(&c(5), &b4),
        b2.clone(),
        c(2),
    ]);
    let mut f: Vec<Poly<K::Elem>> = vec![vec![], vec![k.one()], vec![k.one()], f3, f4];
    for i in 5..=l as usize {
        let m = i / 2;
        let next = if i % 2 == 1 {
            let a = ring.mul(&f[m + 2], &ring.pow(&f[m], 3));
            let b = ring.mul(&f[m - 1], &ring.pow(&f[m + 1], 3));
            if m % 2 == 0 {
                ring.sub(&ring.mul(&f2, &a), &b)
            } else {
                ring.sub(&a, &ring.mul(&f2, &b))
            }
        } else {
            let a = ring.mul(&f[m + 2], &ring.pow(&f[m - 1], 2));
            let b = ring.mul(&f[m - 2], &ring.pow(&f[m + 1], 2));
            ring.mul(&f[m], &ring.sub(&a, &b))
        };
        f.push(next);
    }
    if l == 2 {
        return big_f;
    }
    f.swap_remove(l as usize)
}

/// `F_{|K|^r}` as an absolute field with a fixed embedding of `K`.
pub fn extension_of<K: GaloisField>(k: &K, r: u32) -> Result<(FiniteField, Embedding)> {
    let big = FiniteField::new(k.p(), k.degree() * r)?;
    let images = if k.degree() == 1 {
        vec![big.one()]
    } else {
        let ring = PolyRing::new(big.clone());
        let m: Vec<GfElem> = k.modulus().iter().map(|&c| big.from_i64(c as i64)).collect();
        let rho = ring
            .roots(&m)
            .into_iter()
            .next()
            .ok_or_else(|| Error::Internal("base modulus has no root in the extension".into()))?;
        (0..k.degree()).map(|i| big.pow(&rho, i as u64)).collect()
    };
    Ok((big.clone(), Embedding::new(big, images)?))
}

pub fn map_curve<K: GaloisField>(e: &Curve<K>, emb: &Embedding) -> Result<Curve<FiniteField>> {
    Curve::new(emb.target.clone(), e.a.clone().map(|c| emb.map(&e.field, &c)))
}

pub fn map_pt<K: GaloisField>(k: &K, emb: &Embedding, pt: &Point<K::Elem>) -> Point<GfElem> {
    match pt {
        Point::Infinity => Point::Infinity,
        Point::Affine(x, y) => Point::Affine(emb.map(k, x), emb.map(k, y)),
    }
}

/// The `l`-torsion of `e` made rational over an extension of its field.
#[derive(Clone, Debug)]
pub struct TorsionSplit {
    pub field: FiniteField,
    pub embedding: Embedding,
    /// Degree over the base field.
    pub rel_degree: u32,
    pub curve: Curve<FiniteField>,
    /// The nonzero points of the (étale) `l`-torsion.
    pub points: Vec<Point<GfElem>>,
}

fn expected_torsion(p: u64, l: u64) -> usize {
    if p == l {
        l as usize - 1
    } else {
        (l * l - 1) as usize
    }
}

fn torsion_points_over(e: &Curve<FiniteField>, psi: &[GfElem]) -> Vec<Point<GfElem>> {
    PolyRing::new(e.field.clone()).roots(psi).into_iter().flat_map(|x| e.lift_x(&x)).collect()
}

/// Least `r` such that the (étale) `l`-torsion of `e` is rational over `F_{|K|^r}`.
pub fn torsion_degree<K: GaloisField>(e: &Curve<K>, l: u64, max_abs_degree: u32) -> Result<u32> {
    let psi = division_polynomial(e, l);
    let ring = PolyRing::new(e.field.clone());
    let d = ring
        .factor(&psi)
        .iter()
        .map(|(g, _)| g.len() as u64 - 1)
        .fold(1u64, lcm) as u32;
    for r in [d, 2 * d] {
        let abs = r * e.field.degree();
        if abs > max_abs_degree {
            return Err(Error::EnumerationBound { size: abs as u64, bound: max_abs_degree as u64 });
        }
        let (_, emb) = extension_of(&e.field, r)?;
        let el = map_curve(e, &emb)?;
        let pts = torsion_points_over(&el, &emb.map_poly(&e.field, &psi));
        if pts.len() == expected_torsion(e.field.p(), l) {
            return Ok(r);
        }
    }
    Err(Error::Internal(format!("{l}-torsion not split over degree {}", 2 * d)))
}

/// Split the `l`-torsion over `F_{|K|^r}`; `r` must be a multiple of [`torsion_degree`].
pub fn split_torsion<K: GaloisField>(e: &Curve<K>, l: u64, r: u32) -> Result<TorsionSplit> {
    let (field, embedding) = extension_of(&e.field, r)?;
    let curve = map_curve(e, &embedding)?;
    let psi = embedding.map_poly(&e.field, &division_polynomial(e, l));
    let points = torsion_points_over(&curve, &psi);
    if points.len() != expected_torsion(e.field.p(), l) {
        return Err(Error::InvalidInput(format!("{l}-torsion is not rational over degree {r}")));
    }
    Ok(TorsionSplit { field, embedding, rel_degree: r, curve, points })
}

/// The cyclic subgroups of order `l` among the given torsion points, each
/// listed as its nonzero elements `R, 2R, ..., (l-1)R`.
pub fn cyclic_subgroups(e: &Curve<FiniteField>, points: &[Point<GfElem>], l: u64) -> Vec<Vec<Point<GfElem>>> {
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for r in points {
        if seen.contains(r) {
            continue;
        }
        let g: Vec<Point<GfElem>> = (1..l).map(|i| e.mul_u(r, i)).collect();
        seen.extend(g.iter().cloned());
        out.push(g);
    }
    out
}

#[derive(Clone, Debug)]
struct VeluTerm {
    x: GfElem,
    y: GfElem,
    gx: GfElem,
    gy: GfElem,
    v: GfElem,
    u: GfElem,
}

/// A separable isogeny with explicit kernel, by Vélu's formulas.
#[derive(Clone, Debug)]
pub struct IsogenyStep {
    pub domain: Curve<FiniteField>,
    /// Nonzero kernel points.
    pub kernel: Vec<Point<GfElem>>,
    pub codomain: Curve<FiniteField>,
    terms: Vec<VeluTerm>,
}

impl IsogenyStep {
    /// Quotient by the finite subgroup whose nonzero elements are `kernel`.
    pub fn from_kernel(domain: &Curve<FiniteField>, kernel: Vec<Point<GfElem>>) -> Result<Self> {
        let k = &domain.field;
        let [a1, a2, a3, a4, a6] = domain.a.clone();
        let mut chosen: Vec<Point<GfElem>> = Vec::new();
        for q in &kernel {
            if !domain.is_on(q) || q.is_infinity() {
                return Err(Error::InvalidInput("kernel points must be affine points of the curve".into()));
            }
            let nq = domain.neg(q);
            if nq == *q || !chosen.contains(&nq) {
                chosen.push(q.clone());
            }
        }
        let two = k.from_i64(2);
        let three = k.from_i64(3);
        let mut terms = Vec::new();
        let (mut vs, mut ws) = (k.zero(), k.zero());
        for q in chosen {
            let (x, y) = (q.x().unwrap().clone(), q.y().unwrap().clone());
            let gx = k.sub(
                &k.add(&k.add(&k.mul(&three, &k.square(&x)), &k.mul(&two, &k.mul(&a2, &x))), &a4),
                &k.mul(&a1, &y),
            );
            let gy = k.sub(&k.neg(&k.mul(&two, &y)), &k.add(&k.mul(&a1, &x), &a3));
            let two_torsion = domain.neg(&q) == q;
            let v = if two_torsion { gx.clone() } else { k.sub(&k.mul(&two, &gx), &k.mul(&a1, &gy)) };
            let u = k.square(&gy);
            vs = k.add(&vs, &v);
            ws = k.add(&ws, &k.add(&u, &k.mul(&x, &v)));
            terms.push(VeluTerm { x, y, gx, gy, v, u });
        }
        let b2 = k.add(&k.square(&a1), &k.mul(&k.from_i64(4), &a2));
        let a4n = k.sub(&a4, &k.mul(&k.from_i64(5), &vs));
        let a6n = k.sub(&k.sub(&a6, &k.mul(&b2, &vs)), &k.mul(&k.from_i64(7), &ws));
        let codomain = Curve::new(k.clone(), [a1, a2, a3, a4n, a6n])?;
        Ok(IsogenyStep { domain: domain.clone(), kernel, codomain, terms })
    }

    /// Degree, the order of the kernel.
    pub fn degree(&self) -> u64 {
        self.kernel.len() as u64 + 1
    }

    pub fn map(&self, pt: &Point<GfElem>) -> Point<GfElem> {
        let (x, y) = match pt {
            Point::Infinity => return Point::Infinity,
            Point::Affine(x, y) => (x, y),
        };
        if self.kernel.contains(pt) {
            return Point::Infinity;
        }
        let k = &self.domain.field;
        let [a1, _, a3, _, _] = self.domain.a.clone();
        let mut xx = x.clone();
        let mut yy = y.clone();
        let lam = k.add(&k.add(&k.mul(&k.from_i64(2), y), &k.mul(&a1, x)), &a3);
        for t in &self.terms {
            let d = k.sub(x, &t.x);
            let di = k.inv(&d).expect("non-kernel point has x distinct from kernel x");
            let di2 = k.square(&di);
            let di3 = k.mul(&di2, &di);
            xx = k.add(&xx, &k.add(&k.mul(&t.v, &di), &k.mul(&t.u, &di2)));
            let s1 = k.mul(&k.mul(&t.u, &lam), &di3);
            let s2 = k.mul(&t.v, &k.mul(&k.add(&k.mul(&a1, &d), &k.sub(y, &t.y)), &di2));
            let s3 = k.mul(&k.sub(&k.mul(&a1, &t.u), &k.mul(&t.gx, &t.gy)), &di2);
            yy = k.sub(&yy, &k.add(&k.add(&s1, &s2), &s3));
        }
        Point::Affine(xx, yy)
    }

    /// Checks that `dual ∘ self` is `[deg]` followed by an isomorphism, on
    /// `samples` random points, where `dual` has kernel generated by `dual_gen`.
    pub fn check_dual<R: Rng + ?Sized>(&self, dual_gen: &Point<GfElem>, samples: usize, rng: &mut R) -> Result<()> {
        let l = self.degree();
        let ker: Vec<Point<GfElem>> = (1..l).map(|i| self.codomain.mul_u(dual_gen, i)).collect();
        if ker.iter().any(|p| p.is_infinity()) || self.codomain.mul_u(dual_gen, l) != Point::Infinity {
            return Err(Error::InvalidInput("dual kernel generator must have order deg".into()));
        }
        let dual = IsogenyStep::from_kernel(&self.codomain, ker)?;
        if dual.codomain.j_invariant() != self.domain.j_invariant() {
            return Err(Error::Internal("dual isogeny does not return to an isomorphic curve".into()));
        }
        let mut pairs = Vec::new();
        let mut tries = 0;
        while pairs.len() < samples.max(3) + 2 {
            tries += 1;
            if tries > 100 * samples.max(3) {
                return Err(Error::Internal("could not sample points outside the kernel".into()));
            }
            let pt = self.domain.random_point(rng);
            let w = self.domain.mul_u(&pt, l);
            let z = dual.map(&self.map(&pt));
            match (&w, &z) {
                (Point::Infinity, Point::Infinity) => {}
                (Point::Affine(..), Point::Affine(..)) => pairs.push((w, z)),
                _ => return Err(Error::Internal("dual composite and [l] disagree on the kernel".into())),
            }
        }
        fit_isomorphism(&self.domain.field, &pairs)
    }
}

/// Verifies that some `(x, y) -> (a x + b, c y + d x + e)` with `a^3 = c^2 != 0` maps each first point to the second.
fn fit_isomorphism(k: &FiniteField, pairs: &[(Point<GfElem>, Point<GfElem>)]) -> Result<()> {
    let coords: Vec<(GfElem, GfElem, GfElem, GfElem)> = pairs
        .iter()
        .map(|(w, z)| (w.x().unwrap().clone(), w.y().unwrap().clone(), z.x().unwrap().clone(), z.y().unwrap().clone()))
        .collect();
    let fail = || Error::Internal("composite with the dual is not multiplication by the degree".into());
    let (x0, _, u0, _) = &coords[0];
    let (x1, _, u1, _) = coords.iter().find(|c| c.0 != *x0).ok_or_else(fail)?;
    let a = k.div(&k.sub(u1, u0), &k.sub(x1, x0)).ok_or_else(fail)?;
    let b = k.sub(u0, &k.mul(&a, x0));
    // Solve y' = c y + d x + e from three points with independent (y, x, 1).
    let mut sol = None;
    'outer: for i in 0..coords.len() {
        for j in i + 1..coords.len() {
            for l in j + 1..coords.len() {
                let rows = [&coords[i], &coords[j], &coords[l]];
                let m: Vec<[GfElem; 4]> = rows.iter().map(|r| [r.1.clone(), r.0.clone(), k.one(), r.3.clone()]).collect();
                if let Some(s) = solve3(k, m) {
                    sol = Some(s);
                    break 'outer;
                }
            }
        }
    }
    let [c, d, e] = sol.ok_or_else(fail)?;
    if k.is_zero(&c) || k.pow(&a, 3) != k.square(&c) {
        return Err(fail());
    }
    for (x, y, u, v) in &coords {
        let ok_x = *u == k.add(&k.mul(&a, x), &b);
        let ok_y = *v == k.add(&k.add(&k.mul(&c, y), &k.mul(&d, x)), &e);
        if !(ok_x && ok_y) {
            return Err(fail());
        }
    }
    Ok(())
}

fn solve3(k: &FiniteField, mut m: Vec<[GfElem; 4]>) -> Option<[GfElem; 3]> {
    for col in 0..3 {
        let piv = (col..3).find(|&r| !k.is_zero(&m[r][col]))?;
        m.swap(col, piv);
        let inv = k.inv(&m[col][col])?;
        for c in 0..4 {
            m[col][c] = k.mul(&m[col][c], &inv);
        }
        for r in 0..3 {
            if r != col && !k.is_zero(&m[r][col]) {
                let f = m[r][col].clone();
                for c in 0..4 {
                    let t = k.mul(&f, &m[col][c]);
                    m[r][c] = k.sub(&m[r][c], &t);
                }
            }
        }
    }
    Some([m[0][3].clone(), m[1][3].clone(), m[2][3].clone()])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::SmallField;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn division_polynomial_roots_are_torsion() {
        let k = SmallField::new(7, 1).unwrap();
        let e = Curve::from_ints(k.clone(), [1, 2, 3, 4, 6]).unwrap();
        for l in [2u64, 3, 5] {
            let r = torsion_degree(&e, l, 64).unwrap();
            let s = split_torsion(&e, l, r).unwrap();
            assert!(s.points.iter().all(|p| s.curve.mul_u(p, l) == Point::Infinity));
        }
    }

    #[test]
    fn velu_is_homomorphism_with_dual() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (p, kdeg, a) in [(7u64, 1u32, [1i64, 2, 3, 4, 6]), (11, 1, [0, 0, 0, 1, 3]), (2, 3, [1, 0, 1, 0, 1]), (3, 2, [0, 1, 0, 0, 1])] {
            let k = SmallField::new(p, kdeg).unwrap();
            let Ok(e) = Curve::from_ints(k.clone(), a) else { continue };
            let l = if p == 3 { 5 } else { 3 };
            let r = torsion_degree(&e, l, 64).unwrap();
            let s = split_torsion(&e, l, r).unwrap();
            let subs = cyclic_subgroups(&s.curve, &s.points, l);
            assert_eq!(subs.len() as u64, l + 1);
            for g in &subs {
                let phi = IsogenyStep::from_kernel(&s.curve, g.clone()).unwrap();
                for _ in 0..5 {
                    let p1 = s.curve.random_point(&mut rng);
                    let p2 = s.curve.random_point(&mut rng);
                    let lhs = phi.map(&s.curve.add(&p1, &p2));
                    let rhs = phi.codomain.add(&phi.map(&p1), &phi.map(&p2));
                    assert_eq!(lhs, rhs);
                    assert!(phi.codomain.is_on(&phi.map(&p1)));
                }
                let other = s.points.iter().find(|pt| !g.contains(pt)).unwrap();
                phi.check_dual(&phi.map(other), 10, &mut rng).unwrap();
                for pt in g {
                    assert!(phi.map(pt).is_infinity());
                }
            }
        }
    }

    #[test]
    fn two_isogeny() {
        let k = SmallField::new(13, 1).unwrap();
        let e = Curve::from_ints(k.clone(), [0, 0, 0, 2, 5]).unwrap();
        let r = torsion_degree(&e, 2, 64).unwrap();
        let s = split_torsion(&e, 2, r).unwrap();
        assert_eq!(s.points.len(), 3);
        let phi = IsogenyStep::from_kernel(&s.curve, vec![s.points[0].clone()]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        phi.check_dual(&phi.map(&s.points[1]), 10, &mut rng).unwrap();
        let f = &s.field;
        assert!(!f.is_zero(&phi.codomain.discriminant()));
    }
}
