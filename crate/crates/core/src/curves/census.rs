//! Representatives of all isomorphism classes of elliptic curves over a small
//! finite field, built from j-invariants and twists, and explicit
//! isomorphism search.

use std::collections::BTreeSet;

use rayon::prelude::*;

use super::count::{group_structure, order_bsgs, GroupStructure};
use super::weierstrass::{apply_transform, Curve, Quad};
use crate::algebra::GaloisField;
use crate::arith::{factor, gcd};
use crate::error::{Error, Result};

/// A generator of `K^*`, the first in index order.
pub fn primitive_element<K: GaloisField>(k: &K) -> K::Elem {
    let q = k.order_u64().expect("small field");
    let primes: Vec<u64> = factor(q - 1).into_iter().map(|(l, _)| l).collect();
    (1..q)
        .map(|i| k.from_index(i))
        .find(|g| primes.iter().all(|&l| !k.is_one(&k.pow(g, (q - 1) / l))))
        .expect("multiplicative group is cyclic")
}

fn non_square<K: GaloisField>(k: &K) -> K::Elem {
    (1..).map(|i| k.from_index(i)).find(|c| k.is_square(c) == Some(false)).unwrap()
}

fn trace_one<K: GaloisField>(k: &K) -> K::Elem {
    (1..).map(|i| k.from_index(i)).find(|c| k.trace(c) == 1).unwrap()
}

/// Coset representatives of `K / L(K)` for an additive map `L`.
fn cokernel_reps<K: GaloisField>(k: &K, l: impl Fn(&K::Elem) -> K::Elem) -> Vec<K::Elem> {
    let q = k.order_u64().unwrap();
    let image: BTreeSet<K::Elem> = (0..q).map(|i| l(&k.from_index(i))).collect();
    let mut covered = BTreeSet::new();
    let mut reps = Vec::new();
    for i in 0..q {
        let x = k.from_index(i);
        if covered.contains(&x) {
            continue;
        }
        for y in &image {
            covered.insert(k.add(&x, y));
        }
        reps.push(x);
    }
    reps
}

/// One curve per `F_q`-isomorphism class (char 2 and 3 may repeat a few
/// classes with `j = 0`). Order is deterministic.
pub fn isomorphism_class_reps<K: GaloisField>(k: &K) -> Vec<Curve<K>> {
    let q = k.order_u64().expect("small field");
    let p = k.p();
    let z = k.zero();
    let mk = |a: [K::Elem; 5]| Curve::new(k.clone(), a).expect("nonsingular by construction");
    let g = primitive_element(k);
    let mut out = Vec::new();
    match p {
        2 => {
            let delta = trace_one(k);
            for i in 1..q {
                let a6 = k.inv(&k.from_index(i)).unwrap();
                out.push(mk([k.one(), z.clone(), z.clone(), z.clone(), a6.clone()]));
                out.push(mk([k.one(), delta.clone(), z.clone(), z.clone(), a6]));
            }
            for e in 0..gcd(3, q - 1) {
                let a3 = k.pow(&g, e);
                let a4s = cokernel_reps(k, |s| k.add(&k.pow(s, 4), &k.mul(&a3, s)));
                let a6s = cokernel_reps(k, |t| k.add(&k.square(t), &k.mul(&a3, t)));
                for a4 in &a4s {
                    for a6 in &a6s {
                        out.push(mk([z.clone(), z.clone(), a3.clone(), a4.clone(), a6.clone()]));
                    }
                }
            }
        }
        3 => {
            let d = non_square(k);
            for i in 1..q {
                let j = k.from_index(i);
                let a6 = k.neg(&k.inv(&j).unwrap());
                out.push(mk([z.clone(), k.one(), z.clone(), z.clone(), a6.clone()]));
                let d3 = k.pow(&d, 3);
                out.push(mk([z.clone(), d.clone(), z.clone(), z.clone(), k.mul(&d3, &a6)]));
            }
            for e in 0..gcd(4, q - 1) {
                let a4 = k.pow(&g, e);
                for a6 in cokernel_reps(k, |r| k.add(&k.pow(r, 3), &k.mul(&a4, r))) {
                    out.push(mk([z.clone(), z.clone(), z.clone(), a4.clone(), a6]));
                }
            }
        }
        _ => {
            let d = non_square(k);
            let (d2, d3) = (k.square(&d), k.pow(&d, 3));
            let c1728 = k.from_i64(1728);
            for i in 0..q {
                let j = k.from_index(i);
                if k.is_zero(&j) || j == c1728 {
                    continue;
                }
                let m = k.sub(&c1728, &j);
                let kk = k.mul(&j, &m);
                let a4 = k.mul(&k.from_i64(3), &kk);
                let a6 = k.mul(&k.from_i64(2), &k.mul(&kk, &m));
                out.push(mk([z.clone(), z.clone(), z.clone(), a4.clone(), a6.clone()]));
                out.push(mk([z.clone(), z.clone(), z.clone(), k.mul(&a4, &d2), k.mul(&a6, &d3)]));
            }
            for e in 0..gcd(6, q - 1) {
                out.push(mk([z.clone(), z.clone(), z.clone(), z.clone(), k.pow(&g, e)]));
            }
            for e in 0..gcd(4, q - 1) {
                out.push(mk([z.clone(), z.clone(), z.clone(), k.pow(&g, e), z.clone()]));
            }
        }
    }
    out
}

/// Every curve from [`isomorphism_class_reps`] with its group structure.
pub fn census<K: GaloisField>(k: &K, seed: u64) -> Result<Vec<(Curve<K>, GroupStructure)>> {
    use rand::SeedableRng;
    let reps = isomorphism_class_reps(k);
    reps.into_par_iter()
        .enumerate()
        .map(|(i, e)| {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed ^ (i as u64).wrapping_mul(0x9e37_79b9));
            let s = group_structure(&e, &mut rng)?;
            Ok((e, s))
        })
        .collect()
}

/// Group orders of every curve from [`isomorphism_class_reps`], in the same order.
pub fn census_orders<K: GaloisField>(k: &K, seed: u64) -> Result<Vec<u64>> {
    use rand::SeedableRng;
    let reps = isomorphism_class_reps(k);
    reps.into_par_iter()
        .enumerate()
        .map(|(i, e)| {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed ^ (i as u64).wrapping_mul(0x9e37_79b9));
            order_bsgs(&e, &mut rng)
        })
        .collect()
}

/// All isomorphisms `e1 -> e2` over the base field, by search over `(u, r, s, t)`.
///
/// Outside characteristic 2 and 3 only `u` is searched; otherwise the free
/// parameters are looped over, so use only for small fields.
pub fn isomorphisms<K: GaloisField>(e1: &Curve<K>, e2: &Curve<K>) -> Result<Vec<Quad<K::Elem>>> {
    let k = &e1.field;
    if e1.j_invariant() != e2.j_invariant() {
        return Ok(Vec::new());
    }
    let q = k.order_u64().ok_or_else(|| Error::Unsupported("field too large".into()))?;
    let p = k.p();
    if p <= 3 && q > 256 {
        return Err(Error::EnumerationBound { size: q, bound: 256 });
    }
    let elems: Vec<K::Elem> = (0..q).map(|i| k.from_index(i)).collect();
    let [a1, a2, a3, _, _] = e1.a.clone();
    let [b1, b2, b3, _, _] = e2.a.clone();
    let two_inv = k.inv(&k.from_i64(2));
    let three_inv = k.inv(&k.from_i64(3));
    let mut found = Vec::new();
    for u in elems.iter().filter(|u| !k.is_zero(u)) {
        let ui = k.inv(u).unwrap();
        let (ui2, ui3) = (k.square(&ui), k.pow(&ui, 3));
        // a1' = (a1 + 2s) u
        let ss: Vec<K::Elem> = match &two_inv {
            Some(h) => vec![k.mul(&k.sub(&k.mul(&b1, &ui), &a1), h)],
            None => {
                if k.mul(&a1, u) != b1 {
                    continue;
                }
                elems.clone()
            }
        };
        for s in &ss {
            // a2' = (a2 - a1 s + 3r - s^2) u^2
            let rs: Vec<K::Elem> = match &three_inv {
                Some(h) => {
                    let rhs = k.add(&k.sub(&k.mul(&b2, &ui2), &a2), &k.add(&k.mul(&a1, s), &k.square(s)));
                    vec![k.mul(&rhs, h)]
                }
                None => elems.clone(),
            };
            for r in &rs {
                // a3' = (a3 + a1 r + 2t) u^3
                let ts: Vec<K::Elem> = match &two_inv {
                    Some(h) => {
                        let rhs = k.sub(&k.sub(&k.mul(&b3, &ui3), &a3), &k.mul(&a1, r));
                        vec![k.mul(&rhs, h)]
                    }
                    None => {
                        if k.mul(&k.add(&a3, &k.mul(&a1, r)), &k.pow(u, 3)) != b3 {
                            continue;
                        }
                        elems.clone()
                    }
                };
                for t in ts {
                    let quad = Quad { u: u.clone(), r: r.clone(), s: s.clone(), t };
                    if apply_transform(k, &e1.a, &quad)? == e2.a {
                        found.push(quad);
                    }
                }
            }
        }
    }
    Ok(found)
}

pub fn is_isomorphic<K: GaloisField>(e1: &Curve<K>, e2: &Curve<K>) -> Result<bool> {
    Ok(!isomorphisms(e1, e2)?.is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::SmallField;
    use crate::curves::count::count_points;
    use std::collections::BTreeMap;

    /// Number of isomorphism classes over F_q: 2q + 6, 2q + 2, 2q + 4, 2q
    /// according to q mod 12 in {1, 5, 7, 11} for p > 3, and the known
    /// counts in characteristic 2 and 3.
    fn class_count(q: u64, p: u64, k: u32) -> u64 {
        match p {
            2 => if k % 2 == 1 { 2 * q + 1 } else { 2 * q + 5 },
            3 => if k % 2 == 1 { 2 * q + 2 } else { 2 * q + 4 },
            _ => 2 * q + [6, 2, 4, 0][[1, 5, 7, 11].iter().position(|&r| r == q % 12).unwrap()],
        }
    }

    #[test]
    fn exactly_one_rep_per_class() {
        for (p, k) in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (7, 1), (11, 1), (13, 1)] {
            let f = SmallField::new(p, k).unwrap();
            let q = f.order_u64().unwrap();
            let reps = isomorphism_class_reps(&f);
            let mut distinct: Vec<&Curve<SmallField>> = Vec::new();
            for a in &reps {
                if !distinct.iter().any(|b| is_isomorphic(a, b).unwrap()) {
                    distinct.push(a);
                }
            }
            if p > 3 {
                assert_eq!(distinct.len(), reps.len(), "duplicates over F_{q}");
            }
            assert_eq!(distinct.len() as u64, class_count(q, p, k), "F_{q}");
        }
    }

    #[test]
    fn reps_cover_every_curve() {
        // Every Weierstrass curve over F_5 and F_4 is isomorphic to some representative.
        for (p, k) in [(5, 1), (2, 2), (3, 1)] {
            let f = SmallField::new(p, k).unwrap();
            let q = f.order_u64().unwrap();
            let reps = isomorphism_class_reps(&f);
            let mut by_j: BTreeMap<_, Vec<&Curve<SmallField>>> = BTreeMap::new();
            for r in &reps {
                by_j.entry(r.j_invariant()).or_default().push(r);
            }
            for idx in 0..q.pow(5) {
                let mut t = idx;
                let a = [0; 5].map(|_| {
                    let v = f.from_index(t % q);
                    t /= q;
                    v
                });
                let Ok(e) = Curve::new(f.clone(), a) else { continue };
                let cands = &by_j[&e.j_invariant()];
                assert!(cands.iter().any(|r| is_isomorphic(&e, r).unwrap()));
            }
        }
    }

    #[test]
    fn automorphism_counts() {
        let f = SmallField::new(7, 1).unwrap();
        let e = Curve::from_ints(f.clone(), [0, 0, 0, 0, 1]).unwrap();
        assert_eq!(isomorphisms(&e, &e).unwrap().len(), 6);
        let e = Curve::from_ints(f.clone(), [0, 0, 0, 1, 0]).unwrap();
        assert_eq!(isomorphisms(&e, &e).unwrap().len(), 2);
        let f4 = SmallField::new(2, 2).unwrap();
        let e = Curve::from_ints(f4, [0, 0, 1, 0, 0]).unwrap();
        assert_eq!(isomorphisms(&e, &e).unwrap().len(), 24);
    }

    #[test]
    fn census_orders_match_counts() {
        let f = SmallField::new(7, 1).unwrap();
        let cen = census(&f, 1).unwrap();
        for (e, s) in &cen {
            assert_eq!(s.order, count_points(e));
        }
    }
}
