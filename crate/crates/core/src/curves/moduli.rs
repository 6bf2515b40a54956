//! Points of `Y_1(n)` and `Y_1(2, n)` over finite fields.
//!
//! A level structure is stored by canonical coordinates `(b, c)` of its
//! isomorphism class: the Tate normal form of `(E, Q)` for `m = 1`, and the
//! family normal form of `(E, P, Q)` for `m = 2`. Both are unique, so equality
//! of coordinates is isomorphism of triples, with `-1` already quotiented out.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;

use super::census::census;
use super::weierstrass::{Curve, Point};
use crate::algebra::{DiamondGroup, Field, GaloisField, PolyRing};
use crate::arith::gcd;
use crate::error::{Error, Result};
use crate::family;

/// Default cap on `q` for exhaustive enumeration.
pub const DEFAULT_ENUM_BOUND: u64 = 2500;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Level {
    pub m: u64,
    pub n: u64,
}

impl Level {
    /// `m = 1` with `n >= 4`, or `m = 2` with `n >= 4` even.
    pub fn new(m: u64, n: u64) -> Result<Self> {
        match m {
            1 if n >= 4 => Ok(Level { m, n }),
            2 if n >= 4 && n % 2 == 0 => Ok(Level { m, n }),
            1 | 2 => Err(Error::Unsupported(format!(
                "level ({m},{n}): moduli points need a point of order at least 4"
            ))),
            _ => Err(Error::Unsupported(format!("level ({m},{n}): only m = 1, 2"))),
        }
    }

    pub fn check_characteristic(&self, p: u64) -> Result<()> {
        if p != 0 && (self.m * self.n) % p == 0 {
            return Err(Error::CharacteristicDividesLevel { p, level: self.m * self.n });
        }
        if self.m == 2 && p == 2 {
            return Err(Error::CharacteristicDividesLevel { p, level: self.m * self.n });
        }
        Ok(())
    }
}

impl std::fmt::Display for Level {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.m, self.n)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ModuliPoint<E> {
    pub level: Level,
    pub b: E,
    pub c: E,
}

/// Canonical coordinates of `(E, P, Q)`; `P` is ignored when `m = 1`.
pub fn canonical<F: Field>(
    level: Level,
    e: &Curve<F>,
    p: Option<&Point<F::Elem>>,
    q: &Point<F::Elem>,
) -> Result<ModuliPoint<F::Elem>> {
    match level.m {
        1 => {
            let ((b, c), _) = e.tate_normal_form(q)?;
            Ok(ModuliPoint { level, b, c })
        }
        _ => {
            let p = p.ok_or_else(|| Error::InvalidInput("level (2, n) needs the 2-torsion point".into()))?;
            let (params, _) = family::normalize(e, p, q)?;
            Ok(ModuliPoint { level, b: params.b, c: params.c })
        }
    }
}

/// A model `(E, P, Q)` of the class; `P` is `None` when `m = 1`.
#[allow(clippy::type_complexity)]
pub fn realize<F: Field>(f: &F, x: &ModuliPoint<F::Elem>) -> Result<(Curve<F>, Option<Point<F::Elem>>, Point<F::Elem>)> {
    match x.level.m {
        1 => {
            let e = Curve::tate(f.clone(), x.b.clone(), x.c.clone())?;
            Ok((e, None, Point::Affine(f.zero(), f.zero())))
        }
        _ => {
            let (e, p, q) = family::family_curve(f, &x.b, &x.c)?;
            Ok((e, Some(p), q))
        }
    }
}

/// `<a> (E, P, Q) = (E, P, aQ)`.
pub fn diamond<F: Field>(f: &F, x: &ModuliPoint<F::Elem>, a: i64) -> Result<ModuliPoint<F::Elem>> {
    let n = x.level.n;
    if gcd(a.unsigned_abs() % n, n) != 1 {
        return Err(Error::InvalidInput(format!("unit required: {a} mod {n}")));
    }
    let (e, p, q) = realize(f, x)?;
    let aq = e.mul(&q, a.rem_euclid(n as i64));
    canonical(x.level, &e, p.as_ref(), &aq)
}

pub fn frobenius<K: GaloisField>(k: &K, x: &ModuliPoint<K::Elem>) -> ModuliPoint<K::Elem> {
    ModuliPoint { level: x.level, b: k.frobenius(&x.b), c: k.frobenius(&x.c) }
}

/// Degree over `F_p` of the closed point through `x`.
pub fn residue_degree<K: GaloisField>(k: &K, x: &ModuliPoint<K::Elem>) -> u32 {
    let mut y = frobenius(k, x);
    let mut e = 1;
    while y != *x {
        y = frobenius(k, &y);
        e += 1;
    }
    e
}

/// All level structures on `e` up to isomorphism, as canonical points.
pub fn level_structures_on<K: GaloisField>(level: Level, e: &Curve<K>) -> Result<BTreeSet<ModuliPoint<K::Elem>>> {
    let k = &e.field;
    let points = e.points();
    let exact: Vec<&Point<K::Elem>> = points.iter().filter(|pt| e.has_exact_order(pt, level.n)).collect();
    let mut out = BTreeSet::new();
    if exact.is_empty() {
        return Ok(out);
    }
    match level.m {
        1 => {
            for q in exact {
                out.insert(canonical(level, e, None, q)?);
            }
        }
        _ => {
            let ring = PolyRing::new(k.clone());
            let two: Vec<Point<K::Elem>> = ring
                .roots(&e.two_division())
                .into_iter()
                .flat_map(|x| e.lift_x(&x))
                .collect();
            for q in exact {
                let half = e.mul_u(q, level.n / 2);
                for p in two.iter().filter(|p| **p != half) {
                    out.insert(canonical(level, e, Some(p), q)?);
                }
            }
        }
    }
    Ok(out)
}

/// The points of `Y_1(m, n)(F_q)`, with orbit decompositions.
#[derive(Clone, Debug)]
pub struct ModuliSet<K: GaloisField> {
    pub field: K,
    pub level: Level,
    pub points: Vec<ModuliPoint<K::Elem>>,
}

impl<K: GaloisField> ModuliSet<K> {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, x: &ModuliPoint<K::Elem>) -> bool {
        self.points.binary_search(x).is_ok()
    }

    /// Frobenius orbits (closed points over the prime field), each sorted.
    pub fn frobenius_orbits(&self) -> Vec<Vec<ModuliPoint<K::Elem>>> {
        partition(&self.points, |x| vec![frobenius(&self.field, x)])
    }

    /// Orbits under all diamond operators.
    pub fn diamond_orbits(&self) -> Result<Vec<Vec<ModuliPoint<K::Elem>>>> {
        let group = DiamondGroup::new(self.level.n)?;
        let images: BTreeMap<_, _> = self
            .points
            .iter()
            .map(|x| {
                let im: Result<Vec<_>> =
                    group.elements().iter().map(|&a| diamond(&self.field, x, a as i64)).collect();
                im.map(|v| (x.clone(), v))
            })
            .collect::<Result<_>>()?;
        Ok(partition(&self.points, |x| images[x].clone()))
    }

    /// Orbits under diamonds and Frobenius together: diamond classes of closed points.
    pub fn closed_diamond_orbits(&self) -> Result<Vec<Vec<ModuliPoint<K::Elem>>>> {
        let group = DiamondGroup::new(self.level.n)?;
        let mut moves: BTreeMap<_, Vec<_>> = BTreeMap::new();
        for x in &self.points {
            let mut v = vec![frobenius(&self.field, x)];
            for &a in group.elements() {
                v.push(diamond(&self.field, x, a as i64)?);
            }
            moves.insert(x.clone(), v);
        }
        Ok(partition(&self.points, |x| moves[x].clone()))
    }

    /// Closed points of the given degree over the prime field.
    pub fn closed_points_of_degree(&self, d: u32) -> Vec<Vec<ModuliPoint<K::Elem>>> {
        self.frobenius_orbits().into_iter().filter(|o| o.len() as u32 == d).collect()
    }
}

/// Orbits of the group generated by `moves` acting on `points`.
fn partition<E: Clone + Ord>(points: &[E], moves: impl Fn(&E) -> Vec<E>) -> Vec<Vec<E>> {
    let mut seen = BTreeSet::new();
    let mut orbits = Vec::new();
    for x in points {
        if seen.contains(x) {
            continue;
        }
        let mut orbit = BTreeSet::from([x.clone()]);
        let mut frontier = vec![x.clone()];
        while let Some(y) = frontier.pop() {
            for z in moves(&y) {
                if orbit.insert(z.clone()) {
                    frontier.push(z);
                }
            }
        }
        seen.extend(orbit.iter().cloned());
        orbits.push(orbit.into_iter().collect());
    }
    orbits
}

/// Exhaustive `Y_1(m, n)(F_q)`, by isomorphism classes of curves.
pub fn enumerate_moduli<K: GaloisField>(k: &K, level: Level, bound: u64, seed: u64) -> Result<ModuliSet<K>> {
    level.check_characteristic(k.p())?;
    let q = k.order_u64().unwrap_or(u64::MAX);
    if q > bound {
        return Err(Error::EnumerationBound { size: q, bound });
    }
    let curves = census(k, seed)?;
    let sets: Vec<BTreeSet<ModuliPoint<K::Elem>>> = curves
        .par_iter()
        .filter(|(_, s)| s.contains(level.m, level.n))
        .map(|(e, _)| level_structures_on(level, e))
        .collect::<Result<_>>()?;
    let points: BTreeSet<_> = sets.into_iter().flatten().collect();
    Ok(ModuliSet { field: k.clone(), level, points: points.into_iter().collect() })
}

/// Degree-4 divisors `D1 + D2` of two degree-2 closed points that are stable
/// under every diamond operator, one per diamond class. Input: `Y(F_{p^2})`.
pub fn stable_two_plus_two<K: GaloisField>(set: &ModuliSet<K>) -> Result<Vec<[Vec<ModuliPoint<K::Elem>>; 2]>> {
    let closed = set.closed_points_of_degree(2);
    let index: BTreeMap<ModuliPoint<K::Elem>, usize> = closed
        .iter()
        .enumerate()
        .flat_map(|(i, o)| o.iter().map(move |x| (x.clone(), i)))
        .collect();
    let group = DiamondGroup::new(set.level.n)?;
    // Diamond action on closed points.
    let act = |i: usize, a: u64| -> Result<usize> { Ok(index[&diamond(&set.field, &closed[i][0], a as i64)?]) };
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    for i in 0..closed.len() {
        for j in i..closed.len() {
            let mut orbit = BTreeSet::new();
            for &a in group.elements() {
                let (x, y) = (act(i, a)?, act(j, a)?);
                orbit.insert((x.min(y), x.max(y)));
            }
            if orbit.len() == 1 && seen.insert((i, j)) {
                out.push([closed[i].clone(), closed[j].clone()]);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::SmallField;

    /// Tate parameters with nonzero discriminant and `(0,0)` of exact order `n`.
    fn brute_force_count(p: u64, k: u32, n: u64) -> usize {
        let f = SmallField::new(p, k).unwrap();
        let q = f.order_u64().unwrap();
        let mut count = 0;
        for i in 0..q {
            for j in 0..q {
                let (b, c) = (f.from_index(i), f.from_index(j));
                let Ok(e) = Curve::tate(f.clone(), b, c) else { continue };
                if e.has_exact_order(&Point::Affine(f.zero(), f.zero()), n) {
                    count += 1;
                }
            }
        }
        count
    }

    #[test]
    fn y1_5_over_f7() {
        let f = SmallField::new(7, 1).unwrap();
        let set = enumerate_moduli(&f, Level::new(1, 5).unwrap(), 2500, 0).unwrap();
        assert_eq!(set.len(), 6);
        assert_eq!(brute_force_count(7, 1, 5), 6);
        // <2> has order 2 in (Z/5)^x/±1 and acts freely.
        let orbits = set.diamond_orbits().unwrap();
        assert!(orbits.iter().all(|o| o.len() == 2));
    }

    #[test]
    fn matches_tate_brute_force() {
        for (p, k, n) in [(7, 1, 6), (11, 1, 7), (5, 2, 8), (2, 3, 5), (3, 2, 7), (13, 1, 9), (2, 4, 9)] {
            let f = SmallField::new(p, k).unwrap();
            let set = enumerate_moduli(&f, Level::new(1, n).unwrap(), 2500, 1).unwrap();
            assert_eq!(set.len(), brute_force_count(p, k, n), "Y1({n}) over F_{p}^{k}");
        }
    }

    #[test]
    fn closed_under_frobenius_and_diamonds() {
        let f = SmallField::new(7, 2).unwrap();
        for level in [Level::new(1, 10).unwrap(), Level::new(2, 10).unwrap()] {
            let set = enumerate_moduli(&f, level, 2500, 2).unwrap();
            assert!(!set.is_empty());
            for x in &set.points {
                assert!(set.contains(&frobenius(&f, x)));
                for a in [1, 3, 7, 9] {
                    assert!(set.contains(&diamond(&f, x, a).unwrap()));
                }
                assert_eq!(diamond(&f, x, level.n as i64 - 1).unwrap(), *x);
            }
        }
    }

    #[test]
    fn y1_30_over_f7_is_empty() {
        let f = SmallField::new(7, 1).unwrap();
        assert!(enumerate_moduli(&f, Level::new(1, 30).unwrap(), 2500, 0).unwrap().is_empty());
    }

    #[test]
    fn errors() {
        let f = SmallField::new(5, 1).unwrap();
        assert!(matches!(
            enumerate_moduli(&f, Level::new(1, 10).unwrap(), 2500, 0),
            Err(Error::CharacteristicDividesLevel { .. })
        ));
        let f = SmallField::new(7, 4).unwrap();
        assert!(matches!(
            enumerate_moduli(&f, Level::new(1, 10).unwrap(), 2000, 0),
            Err(Error::EnumerationBound { .. })
        ));
    }
}
