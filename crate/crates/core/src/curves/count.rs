//! Group orders and structures of `E(F_q)`.

use std::collections::HashMap;

use rand::Rng;
use serde::Serialize;

use super::weierstrass::{Curve, Point};
use crate::algebra::GaloisField;
use crate::arith::{gcd, isqrt, lcm};
use crate::error::{Error, Result};

/// `E(F_q) = Z/A x Z/B` with `A | B`, of order `N = AB`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GroupStructure {
    pub order: u64,
    pub a: u64,
    pub b: u64,
}

impl GroupStructure {
    /// Whether `Z/m x Z/n` (with `m | n`) is a subgroup.
    pub fn contains(&self, m: u64, n: u64) -> bool {
        self.a % m == 0 && self.b % n == 0
    }
}

/// Closed Hasse interval `[q + 1 - floor(2 sqrt q), q + 1 + floor(2 sqrt q)]`.
pub fn hasse_interval(q: u64) -> (u64, u64) {
    let w = isqrt(4 * q);
    (q + 1 - w, q + 1 + w)
}

fn field_order<F: GaloisField>(e: &Curve<F>) -> Result<u64> {
    e.field
        .order_u64()
        .filter(|&q| q < 1 << 40)
        .ok_or_else(|| Error::Unsupported("field too large for point counting".into()))
}

/// `#E(F_q)` by summing over x-coordinates.
pub fn count_points<F: GaloisField>(e: &Curve<F>) -> u64 {
    let f = &e.field;
    let q = f.order_u64().expect("small field");
    let [a1, a2, a3, a4, a6] = &e.a;
    let mut total = 1u64;
    for i in 0..q {
        let x = f.from_index(i);
        let h = f.add(&f.mul(a1, &x), a3);
        let g = f.add(&f.mul(&f.add(&f.mul(&f.add(&x, a2), &x), a4), &x), a6);
        if f.p() == 2 {
            if f.is_zero(&h) {
                total += 1;
            } else {
                let c = f.div(&g, &f.square(&h)).unwrap();
                if f.trace(&c) == 0 {
                    total += 2;
                }
            }
        } else {
            let d = f.add(&f.square(&h), &f.mul(&f.from_i64(4), &g));
            total += match f.is_square(&d) {
                None => 1,
                Some(true) => 2,
                Some(false) => 0,
            };
        }
    }
    total
}

/// Structure by listing every point; for oracles on small fields.
pub fn structure_naive<F: GaloisField>(e: &Curve<F>) -> GroupStructure {
    let pts = e.points();
    let n = pts.len() as u64;
    let b = pts.iter().fold(1, |acc, p| lcm(acc, e.order_dividing(p, n)));
    GroupStructure { order: n, a: n / b, b }
}

/// Multiples of the order of `pt` in `[lo, hi]`, by baby-step giant-step.
fn bsgs_annihilators<F: GaloisField>(e: &Curve<F>, pt: &Point<F::Elem>, lo: u64, hi: u64) -> Vec<u64> {
    let width = hi - lo + 1;
    let m = isqrt(width) + 1;
    let mut baby: HashMap<Point<F::Elem>, Vec<u64>> = HashMap::new();
    let mut cur = Point::Infinity;
    for j in 0..m {
        baby.entry(cur.clone()).or_default().push(j);
        cur = e.add(&cur, pt);
    }
    let step = cur; // m * pt
    let mut giant = e.mul_u(pt, lo);
    let mut out = Vec::new();
    for i in 0..=m {
        // lo + i m + j is an annihilator iff giant = -j pt.
        if let Some(js) = baby.get(&e.neg(&giant)) {
            for &j in js {
                let k = lo + i * m + j;
                if k <= hi {
                    out.push(k);
                }
            }
        }
        giant = e.add(&giant, &step);
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// `#E(F_q)` from orders of random points, falling back to a full count when
/// the Hasse interval holds several multiples of the group exponent.
pub fn order_bsgs<F: GaloisField, R: Rng + ?Sized>(e: &Curve<F>, rng: &mut R) -> Result<u64> {
    let q = field_order(e)?;
    if q < 32 {
        // Tiny fields may have no affine points at all.
        return Ok(count_points(e));
    }
    let (lo, hi) = hasse_interval(q);
    let mut exp = 1u64;
    for _ in 0..40 {
        let pt = e.random_point(rng);
        let ks = bsgs_annihilators(e, &pt, lo, hi);
        let k = *ks.first().ok_or_else(|| Error::Internal("no annihilator in Hasse interval".into()))?;
        exp = lcm(exp, e.order_dividing(&pt, k));
        let first = lo.div_ceil(exp) * exp;
        if first + exp > hi {
            return Ok(first);
        }
    }
    if q > 1 << 22 {
        return Err(Error::Internal("order ambiguous after 40 points".into()));
    }
    Ok(count_points(e))
}

/// Order and invariant factors of `E(F_q)`.
pub fn group_structure<F: GaloisField, R: Rng + ?Sized>(e: &Curve<F>, rng: &mut R) -> Result<GroupStructure> {
    let q = field_order(e)?;
    let n = order_bsgs(e, rng)?;
    if n == 1 {
        return Ok(GroupStructure { order: 1, a: 1, b: 1 });
    }
    // A^2 | N and A | q - 1 leave no choice when their largest candidate is 1.
    if (1..=isqrt(n)).filter(|a| n % (a * a) == 0 && (q - 1) % a == 0).all(|a| a == 1) {
        return Ok(GroupStructure { order: n, a: 1, b: n });
    }
    // The exponent: lcm of random point orders stabilizes quickly; each prime
    // is missed by a random point with probability at most 1/2.
    let mut b = 1u64;
    let mut stable = 0;
    while stable < 24 {
        let pt = e.random_point(rng);
        let nb = lcm(b, e.order_dividing(&pt, n));
        if nb == b {
            stable += 1;
        } else {
            b = nb;
            stable = 0;
        }
    }
    let a = n / b;
    if b % a != 0 || (q - 1) % a != 0 || gcd(a, b) != a {
        return Err(Error::Internal(format!("inconsistent structure {a} x {b} for N = {n}")));
    }
    Ok(GroupStructure { order: n, a, b })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Field, SmallField};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn y2_x3_plus_x_over_f5() {
        let f = SmallField::new(5, 1).unwrap();
        let e = Curve::from_ints(f, [0, 0, 0, 1, 0]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let s = group_structure(&e, &mut rng).unwrap();
        assert_eq!(s, GroupStructure { order: 4, a: 2, b: 2 });
        assert!(s.contains(2, 2));
    }

    #[test]
    fn bsgs_matches_full_count() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for (p, k) in [(2, 1), (2, 4), (3, 3), (7, 1), (11, 2), (13, 1), (2, 7), (5, 3), (197, 1)] {
            let f = SmallField::new(p, k).unwrap();
            let q = f.order_u64().unwrap();
            for _ in 0..30 {
                let a = [0; 5].map(|_| f.random(&mut rng));
                let Ok(e) = Curve::new(f.clone(), a) else { continue };
                let naive = structure_naive(&e);
                assert_eq!(count_points(&e), naive.order);
                let s = group_structure(&e, &mut rng).unwrap();
                assert_eq!(s, naive, "q = {q}, a = {:?}", e.a);
                let (lo, hi) = hasse_interval(q);
                assert!(lo <= s.order && s.order <= hi);
            }
        }
    }

    #[test]
    fn tate_form_has_order_five_point() {
        let f = SmallField::new(11, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for s in 1..11 {
            let s = f.from_i64(s);
            let Ok(e) = Curve::tate(f.clone(), s, s) else { continue };
            let p0 = Point::Affine(f.zero(), f.zero());
            assert!(e.has_exact_order(&p0, 5));
            assert_eq!(group_structure(&e, &mut rng).unwrap().order % 5, 0);
        }
    }

    #[test]
    fn hasse_interval_f7() {
        assert_eq!(hasse_interval(7), (3, 13));
        assert_eq!(hasse_interval(81), (64, 100));
    }
}
