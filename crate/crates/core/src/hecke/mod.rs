//! Hecke operators on moduli points of `Y_1(m, n)` over finite fields.
//!
//! `T_q(E, P, Q)` is the sum of the `q + 1` quotients `(E/G, P mod G, Q mod G)`.
//! The quotients are usually only defined over an extension, so every result
//! lives in an absolute field `L = F_{|K|^r}` with `E[q]` rational over `L`,
//! together with the embedding of the base field `K`.

pub mod isogeny;

use rayon::prelude::*;

use crate::algebra::{Embedding, Field, FiniteField, GaloisField, GfElem};
use crate::arith::{is_prime, lcm};
use crate::curves::count::count_points;
use crate::curves::moduli::{self, canonical, realize};
use crate::curves::{Level, ModuliPoint};
use crate::divisor::FormalDivisor;
use crate::error::{Error, Result};

pub use isogeny::{
    cyclic_subgroups, division_polynomial, extension_of, split_torsion, torsion_degree, IsogenyStep, TorsionSplit,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HeckeOptions {
    /// Largest allowed Hecke prime.
    pub max_q: u64,
    /// Largest absolute degree of the field carrying `E[q]`.
    pub max_abs_degree: u32,
    /// Work over this degree over the base instead of the minimal one.
    pub rel_degree: Option<u32>,
}

impl Default for HeckeOptions {
    fn default() -> Self {
        HeckeOptions { max_q: 13, max_abs_degree: 64, rel_degree: None }
    }
}

pub type LiftedPoint = ModuliPoint<GfElem>;

/// A divisor on `Y_1(m, n)` over `L`, with the base field embedded.
#[derive(Clone, Debug)]
pub struct HeckeImage {
    pub field: FiniteField,
    pub embedding: Embedding,
    /// `[L : K]`.
    pub rel_degree: u32,
    /// `[K : F_p]`.
    pub base_degree: u32,
    pub divisor: FormalDivisor<LiftedPoint>,
}

impl HeckeImage {
    pub fn degree(&self) -> i64 {
        self.divisor.degree()
    }

    /// Fixed by the Frobenius of `K`.
    pub fn is_galois_stable(&self) -> bool {
        let l = &self.field;
        let frob = self.divisor.map(|x| ModuliPoint {
            level: x.level,
            b: l.frobenius_pow(&x.b, self.base_degree),
            c: l.frobenius_pow(&x.c, self.base_degree),
        });
        frob == self.divisor
    }

    /// The divisor with coordinates in `K`, if every point is `K`-rational.
    pub fn pull_back<K: GaloisField>(&self, k: &K) -> Option<FormalDivisor<ModuliPoint<K::Elem>>> {
        let mut out = FormalDivisor::zero();
        for (x, c) in self.divisor.iter() {
            out.add_point(pull_back_point(k, &self.embedding, x)?, c);
        }
        Some(out)
    }
}

pub fn lift_point<K: GaloisField>(k: &K, emb: &Embedding, x: &ModuliPoint<K::Elem>) -> LiftedPoint {
    ModuliPoint { level: x.level, b: emb.map(k, &x.b), c: emb.map(k, &x.c) }
}

pub fn lift_divisor<K: GaloisField>(
    k: &K,
    emb: &Embedding,
    d: &FormalDivisor<ModuliPoint<K::Elem>>,
) -> FormalDivisor<LiftedPoint> {
    d.map(|x| lift_point(k, emb, x))
}

pub fn pull_back_point<K: GaloisField>(k: &K, emb: &Embedding, x: &LiftedPoint) -> Option<ModuliPoint<K::Elem>> {
    Some(ModuliPoint { level: x.level, b: emb.pullback_to(k, &x.b)?, c: emb.pullback_to(k, &x.c)? })
}

fn check_hecke_prime(level: Level, p: u64, q: u64, opts: &HeckeOptions) -> Result<()> {
    if !is_prime(q) {
        return Err(Error::InvalidInput(format!("{q} is not prime")));
    }
    if q == p {
        return Err(Error::InvalidInput(format!(
            "q = {q} is the characteristic; use hecke_tq_char_q for the Eichler-Shimura form"
        )));
    }
    if level.n % q == 0 {
        return Err(Error::InvalidInput(format!("need q ∤ n, got q = {q}, level {level}")));
    }
    if level.m == 2 && q == 2 {
        return Err(Error::InvalidInput("T_2 on X_1(2, 2n) is not defined: need q ∤ 2n".into()));
    }
    if q > opts.max_q {
        return Err(Error::EnumerationBound { size: q, bound: opts.max_q });
    }
    Ok(())
}

/// Minimal `[L : K]` for which `T_q(x)` can be computed.
pub fn required_degree<K: GaloisField>(k: &K, x: &ModuliPoint<K::Elem>, q: u64, opts: &HeckeOptions) -> Result<u32> {
    let (e, _, _) = realize(k, x)?;
    torsion_degree(&e, q, opts.max_abs_degree)
}

fn common_degree<K: GaloisField>(
    k: &K,
    points: impl Iterator<Item = ModuliPoint<K::Elem>>,
    q: u64,
    opts: &HeckeOptions,
) -> Result<u32> {
    let mut r = 1u64;
    for x in points {
        r = lcm(r, required_degree(k, &x, q, opts)? as u64);
    }
    match opts.rel_degree {
        None => Ok(r as u32),
        Some(s) if s as u64 % r == 0 && s * k.degree() <= opts.max_abs_degree => Ok(s),
        Some(s) => Err(Error::InvalidInput(format!("requested degree {s} is not a multiple of {r} or is too large"))),
    }
}

/// The quotients of `x` by all order-`q` subgroups, over degree `r`.
pub fn hecke_isogenies<K: GaloisField>(
    k: &K,
    x: &ModuliPoint<K::Elem>,
    q: u64,
    r: u32,
) -> Result<(TorsionSplit, Vec<(IsogenyStep, LiftedPoint)>)> {
    let (e, p, pt_q) = realize(k, x)?;
    let split = split_torsion(&e, q, r)?;
    let emb = &split.embedding;
    let p_l = p.map(|p| isogeny::map_pt(k, emb, &p));
    let q_l = isogeny::map_pt(k, emb, &pt_q);
    let subgroups = cyclic_subgroups(&split.curve, &split.points, q);
    let expected = if k.p() == q { 1 } else { q + 1 };
    if subgroups.len() as u64 != expected {
        return Err(Error::Internal(format!("found {} subgroups of order {q}", subgroups.len())));
    }
    let steps = subgroups
        .into_par_iter()
        .map(|g| {
            let phi = IsogenyStep::from_kernel(&split.curve, g)?;
            let img_p = p_l.as_ref().map(|p| phi.map(p));
            let img = canonical(x.level, &phi.codomain, img_p.as_ref(), &phi.map(&q_l))?;
            Ok((phi, img))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((split, steps))
}

/// `T_q` on a divisor over `K`, for `q` different from the characteristic.
pub fn hecke_tq_divisor<K: GaloisField>(
    k: &K,
    d: &FormalDivisor<ModuliPoint<K::Elem>>,
    q: u64,
    opts: &HeckeOptions,
) -> Result<HeckeImage> {
    for (x, _) in d.iter() {
        x.level.check_characteristic(k.p())?;
        check_hecke_prime(x.level, k.p(), q, opts)?;
    }
    let r = common_degree(k, d.iter().map(|(x, _)| x.clone()), q, opts)?;
    let (field, embedding) = extension_of(k, r)?;
    let mut divisor = FormalDivisor::zero();
    for (x, c) in d.iter() {
        let (_, steps) = hecke_isogenies(k, x, q, r)?;
        for (_, y) in steps {
            divisor.add_point(y, c);
        }
    }
    Ok(HeckeImage { field, embedding, rel_degree: r, base_degree: k.degree(), divisor })
}

pub fn hecke_tq<K: GaloisField>(k: &K, x: &ModuliPoint<K::Elem>, q: u64, opts: &HeckeOptions) -> Result<HeckeImage> {
    hecke_tq_divisor(k, &FormalDivisor::point(x.clone()), q, opts)
}

/// `<a>`, extended linearly.
pub fn diamond_divisor<F: Field>(f: &F, d: &FormalDivisor<ModuliPoint<F::Elem>>, a: i64) -> Result<FormalDivisor<ModuliPoint<F::Elem>>> {
    d.try_flat_map(|x| Ok(FormalDivisor::point(moduli::diamond(f, x, a)?)))
}

/// `A_q(D) = T_q(D) - q <q> D - D`, over the field of `T_q(D)`.
pub fn aq<K: GaloisField>(
    k: &K,
    d: &FormalDivisor<ModuliPoint<K::Elem>>,
    q: u64,
    opts: &HeckeOptions,
) -> Result<HeckeImage> {
    let mut img = hecke_tq_divisor(k, d, q, opts)?;
    let dq = lift_divisor(k, &img.embedding, &diamond_divisor(k, d, q as i64)?);
    let dl = lift_divisor(k, &img.embedding, d);
    img.divisor = img.divisor.sub(&dq.scale(q as i64)).sub(&dl);
    Ok(img)
}

/// `X_1(4n) -> X_1(2, 2n)`, `(E, P) -> (E/<2nP>, image of E[2], P mod <2nP>)`.
pub fn degree2_map<K: GaloisField>(k: &K, x: &ModuliPoint<K::Elem>) -> Result<ModuliPoint<K::Elem>> {
    let level = x.level;
    if level.m != 1 || level.n % 4 != 0 || level.n < 8 {
        return Err(Error::InvalidInput(format!("degree-2 map needs level (1, 4n) with n >= 2, got {level}")));
    }
    let half = level.n / 2;
    let target = Level::new(2, half)?;
    target.check_characteristic(k.p())?;
    let (e, _, p) = realize(k, x)?;
    let r = torsion_degree(&e, 2, 64)?;
    let split = split_torsion(&e, 2, r)?;
    let emb = &split.embedding;
    let p_l = isogeny::map_pt(k, emb, &p);
    let t = split.curve.mul_u(&p_l, half);
    let phi = IsogenyStep::from_kernel(&split.curve, vec![t.clone()])?;
    let other = split
        .points
        .iter()
        .find(|pt| **pt != t)
        .ok_or_else(|| Error::Internal("2-torsion has a single point".into()))?;
    let y = canonical(target, &phi.codomain, Some(&phi.map(other)), &phi.map(&p_l))?;
    pull_back_point(k, emb, &y).ok_or_else(|| Error::Internal("image of the degree-2 map is not rational".into()))
}

/// Frobenius trace of the curve underlying `x`.
pub fn frobenius_trace<K: GaloisField>(k: &K, x: &ModuliPoint<K::Elem>) -> Result<i64> {
    let (e, _, _) = realize(k, x)?;
    let q = k.order_u64().ok_or_else(|| Error::Unsupported("field too large to count points".into()))?;
    Ok(q as i64 + 1 - count_points(&e) as i64)
}

/// `T_q` in characteristic `q`: `Frob(x) + q y` with `y` the quotient of `x`
/// by the étale `q`-torsion. Fails unless `Frob(y) = <q> x`.
pub fn hecke_tq_char_q<K: GaloisField>(k: &K, x: &ModuliPoint<K::Elem>, opts: &HeckeOptions) -> Result<HeckeImage> {
    let q = k.p();
    x.level.check_characteristic(q)?;
    if q > opts.max_q {
        return Err(Error::EnumerationBound { size: q, bound: opts.max_q });
    }
    if frobenius_trace(k, x)?.rem_euclid(q as i64) == 0 {
        return Err(Error::InvalidInput("ordinary point required".into()));
    }
    let r = match opts.rel_degree {
        Some(r) => r,
        None => required_degree(k, x, q, opts)?,
    };
    let (split, mut steps) = hecke_isogenies(k, x, q, r)?;
    let (_, y) = steps.pop().expect("one étale subgroup");
    let l = &split.field;
    let emb = split.embedding;
    let frob_y = ModuliPoint { level: y.level, b: l.frobenius(&y.b), c: l.frobenius(&y.c) };
    let dq = lift_point(k, &emb, &moduli::diamond(k, x, q as i64)?);
    if frob_y != dq {
        return Err(Error::Internal("Frob(y) differs from <q> x".into()));
    }
    let mut divisor = FormalDivisor::point(lift_point(k, &emb, &moduli::frobenius(k, x)));
    divisor.add_point(y, q as i64);
    Ok(HeckeImage { field: split.field, embedding: emb, rel_degree: r, base_degree: k.degree(), divisor })
}
