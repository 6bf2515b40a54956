//! Cusps of `X_1(m, n)` as level structures on Néron polygons.
//!
//! A geometric cusp is a `k`-gon, `m | k | n`, with an injective
//! `phi: Z/m x Z/n -> mu_n x Z/k` surjective on the second factor, up to
//! inversion and the twists `(x, i) -> (zeta_k^{t i} x, i)`. An element of
//! `mu_n x Z/k` is stored as `(a, b)` meaning `(zeta_n^a, b)`, and
//! `Gal(Q(zeta_n)/Q) = (Z/n)^x` acts by `a -> c a`.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::arith::{divisors, euler_phi, gcd, units};
use crate::divisor::FormalDivisor;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Cusp {
    pub m: u64,
    pub n: u64,
    pub k: u64,
    /// Image of the order-`m` generator; `(0, 0)` when `m = 1`.
    pub p: (u64, u64),
    /// Image of the order-`n` generator.
    pub q: (u64, u64),
}

fn check_level(m: u64, n: u64) -> Result<()> {
    if !(1..=3).contains(&m) {
        return Err(Error::Unsupported(format!("cusp inventory needs m in {{1, 2, 3}}, got {m}")));
    }
    if n == 0 || n % m != 0 {
        return Err(Error::InvalidInput(format!("need m | n, got ({m},{n})")));
    }
    Ok(())
}

impl Cusp {
    /// Reduce to the least representative under the polygon automorphisms.
    pub fn normalize(m: u64, n: u64, k: u64, p: (u64, u64), q: (u64, u64)) -> Cusp {
        let step = n / k;
        let mut best: Option<((u64, u64), (u64, u64))> = None;
        for eps in [1u64, n - 1] {
            for t in 0..k {
                let f = |(a, b): (u64, u64)| {
                    let b2 = if eps == 1 { b % k } else { (k - b % k) % k };
                    ((eps * a + t * step * b2 % n) % n, b2)
                };
                let cand = (f(p), f(q));
                if best.is_none_or(|b| cand < b) {
                    best = Some(cand);
                }
            }
        }
        let (p, q) = best.unwrap();
        Cusp { m, n, k, p, q }
    }

    fn renormalize(&self, p: (u64, u64), q: (u64, u64)) -> Cusp {
        Cusp::normalize(self.m, self.n, self.k, p, q)
    }

    /// `mu_n`-exponents multiplied by `c` (the Galois action of `zeta_n -> zeta_n^c`).
    pub fn galois(&self, c: u64) -> Cusp {
        let n = self.n;
        self.renormalize((self.p.0 * c % n, self.p.1), (self.q.0 * c % n, self.q.1))
    }

    /// `<d>`: both generators scaled by `d`.
    pub fn diamond(&self, d: u64) -> Result<Cusp> {
        if gcd(d, self.n) != 1 {
            return Err(Error::InvalidInput(format!("unit required: {d} mod {}", self.n)));
        }
        let (n, k) = (self.n, self.k);
        let sc = |(a, b): (u64, u64)| (a * d % n, b * d % k);
        Ok(self.renormalize(sc(self.p), sc(self.q)))
    }

    /// Normalized order `n / k` of the root of unity attached to the polygon.
    pub fn e(&self) -> u64 {
        self.n / self.k
    }
}

/// The `n`-gon with `P_0 = ((-1)^{m-1}, 0)` and `Q_0 = (1, 1)`.
pub fn c0(m: u64, n: u64) -> Result<Cusp> {
    if m != 1 && m != 2 {
        return Err(Error::Unsupported(format!("C_0 is defined for m = 1, 2, got {m}")));
    }
    check_level(m, n)?;
    let p = if m == 2 { (n / 2, 0) } else { (0, 0) };
    Ok(Cusp::normalize(m, n, n, p, (0, 1)))
}

fn injective(m: u64, n: u64, k: u64, p: (u64, u64), q: (u64, u64)) -> bool {
    let mut seen = BTreeSet::new();
    for i in 0..m {
        for j in 0..n {
            let img = ((i * p.0 + j * q.0) % n, (i * p.1 + j * q.1) % k);
            if !seen.insert(img) {
                return false;
            }
        }
    }
    true
}

/// All geometric cusps of `X_1(m, n)`.
pub fn geometric_cusps(m: u64, n: u64) -> Result<Vec<Cusp>> {
    check_level(m, n)?;
    let mut out = BTreeSet::new();
    for k in divisors(n).into_iter().filter(|k| k % m == 0) {
        // Elements of mu_n x Z/k killed by m.
        let p_choices: Vec<(u64, u64)> = if m == 1 {
            vec![(0, 0)]
        } else {
            (0..n).flat_map(|a| (0..k).map(move |b| (a, b))).filter(|&(a, b)| (m * a) % n == 0 && (m * b) % k == 0).collect()
        };
        for &p in &p_choices {
            for a in 0..n {
                for b in 0..k {
                    let q = (a, b);
                    if gcd(gcd(p.1, q.1), k) != 1 {
                        continue;
                    }
                    if injective(m, n, k, p, q) {
                        out.insert(Cusp::normalize(m, n, k, p, q));
                    }
                }
            }
        }
    }
    Ok(out.into_iter().collect())
}

/// `1/2 sum_{d | n} phi(d) phi(n/d)`, the number of cusps of `X_1(n)` for `n > 4`.
pub fn closed_form_cusp_count(n: u64) -> u64 {
    divisors(n).into_iter().map(|d| euler_phi(d) * euler_phi(n / d)).sum::<u64>() / 2
}

/// The fixed field of a subgroup `H` of `(Z/n)^x` inside `Q(zeta_n)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbelianField {
    /// Least `f | n` with `Q(zeta_f)` containing the field.
    pub conductor: u64,
    pub degree: u64,
    /// The field is `Q(zeta_f)^+` with `f > 2`.
    pub real_subfield: bool,
    /// `H` reduced mod the conductor: the primes splitting completely are those in it.
    pub splitting_residues: Vec<u64>,
}

impl AbelianField {
    pub fn from_subgroup(n: u64, h: &BTreeSet<u64>) -> AbelianField {
        let conductor = divisors(n)
            .into_iter()
            .find(|&f| units(n).into_iter().filter(|c| c % f == 1 % f).all(|c| h.contains(&c)))
            .unwrap_or(n);
        let mut res: Vec<u64> = h.iter().map(|c| c % conductor).collect::<BTreeSet<_>>().into_iter().collect();
        if conductor == 1 {
            res = vec![0];
        }
        let degree = euler_phi(n) / h.len() as u64;
        let real_subfield = conductor > 2 && res.len() == 2 && res.contains(&(conductor - 1));
        AbelianField { conductor, degree, real_subfield, splitting_residues: res }
    }

    pub fn splits_completely(&self, q: u64) -> bool {
        self.splitting_residues.contains(&(q % self.conductor))
    }

    pub fn describe(&self) -> String {
        match (self.conductor, self.degree, self.real_subfield) {
            (_, 1, _) => "Q".to_string(),
            (f, _, true) => format!("Q(zeta_{f})^+"),
            (f, d, _) if d == euler_phi(f) => format!("Q(zeta_{f})"),
            (f, d, _) => format!("degree-{d} subfield of Q(zeta_{f})"),
        }
    }
}

/// A Galois orbit of cusps.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CuspDatum {
    pub m: u64,
    pub n: u64,
    pub k: u64,
    /// `n / k`.
    pub e: u64,
    pub representative: Cusp,
    /// Number of geometric cusps in the orbit, equal to the field degree.
    pub size: u64,
    pub field: AbelianField,
    /// Decomposition group of the representative in `(Z/n)^x`.
    pub stabilizer: BTreeSet<u64>,
}

impl CuspDatum {
    /// Degree of the residue fields of this orbit at a prime `p ∤ n`.
    pub fn residue_degree(&self, p: u64) -> Result<u64> {
        if self.n % p == 0 {
            return Err(Error::CharacteristicDividesLevel { p, level: self.n });
        }
        let mut x = 1 % self.n;
        for f in 1..=self.size {
            x = x * (p % self.n) % self.n;
            if self.stabilizer.contains(&(x % self.n.max(1))) || self.n == 1 {
                return Ok(f);
            }
        }
        Err(Error::Internal("residue degree exceeds orbit size".into()))
    }
}

/// Galois orbits of cusps of `X_1(m, n)`, sorted by decreasing polygon size.
pub fn cusp_inventory(m: u64, n: u64) -> Result<Vec<CuspDatum>> {
    let cusps = geometric_cusps(m, n)?;
    let us = units(n);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for c in cusps {
        if seen.contains(&c) {
            continue;
        }
        let orbit: BTreeSet<Cusp> = us.iter().map(|&u| c.galois(u)).collect();
        let stabilizer: BTreeSet<u64> = us.iter().copied().filter(|&u| c.galois(u) == c).collect();
        seen.extend(orbit.iter().copied());
        out.push(CuspDatum {
            m,
            n,
            k: c.k,
            e: c.e(),
            representative: c,
            size: orbit.len() as u64,
            field: AbelianField::from_subgroup(n, &stabilizer),
            stabilizer,
        });
    }
    out.sort_by(|a, b| b.k.cmp(&a.k).then(a.representative.cmp(&b.representative)));
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResidueRow {
    pub k: u64,
    pub orbits: usize,
    pub cusps: u64,
    /// Residue degree of each orbit of `k`-gons, sorted.
    pub degrees: Vec<u64>,
}

/// Residue degrees at `p` grouped by polygon size.
pub fn cusp_residue_degrees(m: u64, n: u64, p: u64) -> Result<Vec<ResidueRow>> {
    if n % p == 0 {
        return Err(Error::CharacteristicDividesLevel { p, level: n });
    }
    let mut rows: BTreeMap<u64, ResidueRow> = BTreeMap::new();
    for d in cusp_inventory(m, n)? {
        let f = d.residue_degree(p)?;
        let row = rows.entry(d.k).or_insert(ResidueRow { k: d.k, orbits: 0, cusps: 0, degrees: vec![] });
        row.orbits += 1;
        row.cusps += d.size;
        row.degrees.push(f);
    }
    Ok(rows
        .into_values()
        .rev()
        .map(|mut r| {
            r.degrees.sort();
            r
        })
        .collect())
}

/// Condition for a prime `q` to split completely in a compositum of cusp fields.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Congruence {
    pub modulus: u64,
    /// Allowed residues of `q` modulo `modulus`.
    pub residues: Vec<u64>,
}

impl Congruence {
    pub fn is_trivial(&self) -> bool {
        self.modulus <= 2
    }

    pub fn admits(&self, q: u64) -> bool {
        self.residues.contains(&(q % self.modulus))
    }
}

impl std::fmt::Display for Congruence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_trivial() {
            return write!(f, "none");
        }
        let r: Vec<String> = self.residues.iter().map(|r| r.to_string()).collect();
        write!(f, "q ≡ {} (mod {})", r.join(", "), self.modulus)
    }
}

/// Cusp orbits that force the splitting condition for a cuspidal part of
/// degree `cusp_part_degree` in the reduction of a quartic point at `p`.
///
/// Degree 1: orbits with an `F_p`-rational reduction. Degree 2: orbits whose
/// reduction has degree 1 or 2 but strictly smaller than the orbit.
pub fn cc_relevant_orbits(m: u64, n: u64, p: u64, cusp_part_degree: u32) -> Result<Vec<CuspDatum>> {
    if n % p == 0 {
        return Err(Error::CharacteristicDividesLevel { p, level: n });
    }
    let mut out = Vec::new();
    for d in cusp_inventory(m, n)? {
        let f = d.residue_degree(p)?;
        let keep = match cusp_part_degree {
            1 => f == 1,
            2 => f <= 2 && d.size > f,
            other => return Err(Error::InvalidInput(format!("cuspidal part degree must be 1 or 2, got {other}"))),
        };
        if keep {
            out.push(d);
        }
    }
    Ok(out)
}

pub fn cc_condition(m: u64, n: u64, p: u64, cusp_part_degree: u32) -> Result<Congruence> {
    combined_cc_condition(m, n, p, &[cusp_part_degree])
}

/// Joint condition for several cuspidal part degrees.
pub fn combined_cc_condition(m: u64, n: u64, p: u64, parts: &[u32]) -> Result<Congruence> {
    let mut h: BTreeSet<u64> = units(n).into_iter().collect();
    for &part in parts {
        for d in cc_relevant_orbits(m, n, p, part)? {
            h = h.intersection(&d.stabilizer).copied().collect();
        }
    }
    let f = AbelianField::from_subgroup(n, &h);
    Ok(Congruence { modulus: f.conductor, residues: f.splitting_residues })
}

/// `T_q` on an `n`-gon cusp with `q ∤ 2n`: the `mu_q` quotient plus `q <q> c`.
pub fn cusp_tq(c: &Cusp, q: u64) -> Result<FormalDivisor<Cusp>> {
    if c.k != c.n {
        return Err(Error::Unsupported("general cusp Hecke not implemented".into()));
    }
    if (2 * c.n) % q == 0 {
        return Err(Error::InvalidInput(format!("need q ∤ 2n, got q = {q}, n = {}", c.n)));
    }
    let n = c.n;
    let unram = c.renormalize((c.p.0 * q % n, c.p.1), (c.q.0 * q % n, c.q.1));
    let mut d = FormalDivisor::point(unram);
    d.add_point(c.diamond(q)?, q as i64);
    Ok(d)
}

/// `A_q = T_q - q <q> - 1` on a divisor supported on `n`-gon cusps.
pub fn cusp_aq(d: &FormalDivisor<Cusp>, q: u64) -> Result<FormalDivisor<Cusp>> {
    let t = d.try_flat_map(|c| cusp_tq(c, q))?;
    let dq = d.try_flat_map(|c| Ok::<_, Error>(FormalDivisor::point(c.diamond(q)?)))?;
    Ok(t.sub(&dq.scale(q as i64)).sub(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn x1_5() {
        let inv = cusp_inventory(1, 5).unwrap();
        let mut sizes: Vec<u64> = inv.iter().map(|d| d.size).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 1, 2]);
        let pair = inv.iter().find(|d| d.size == 2).unwrap();
        assert_eq!(pair.k, 1);
        assert_eq!(pair.field.describe(), "Q(zeta_5)^+");
    }

    #[test]
    fn closed_form_counts() {
        for n in 5..=60 {
            let total: u64 = cusp_inventory(1, n).unwrap().iter().map(|d| d.size).sum();
            assert_eq!(total, closed_form_cusp_count(n), "n = {n}");
        }
    }

    #[test]
    fn x1_3_15() {
        assert_eq!(geometric_cusps(3, 15).unwrap().len(), 64);
        assert!(cusp_inventory(4, 16).is_err());
    }

    #[test]
    fn gon_types_63() {
        let ks: BTreeSet<u64> = cusp_inventory(1, 63).unwrap().iter().map(|d| d.k).collect();
        assert_eq!(ks, [1, 3, 7, 9, 21, 63].into_iter().collect());
    }

    fn min_degree(rows: &[ResidueRow], k: u64) -> u64 {
        *rows.iter().find(|r| r.k == k).unwrap().degrees.iter().min().unwrap()
    }

    #[test]
    fn residue_degrees() {
        let r = cusp_residue_degrees(1, 63, 2).unwrap();
        assert_eq!(min_degree(&r, 63), 1);
        assert_eq!(min_degree(&r, 21), 2);
        assert_eq!(min_degree(&r, 9), 3);
        for k in [7, 3, 1] {
            assert!(min_degree(&r, k) >= 5, "k = {k}");
        }
        let r = cusp_residue_degrees(1, 65, 3).unwrap();
        assert_eq!(min_degree(&r, 65), 1);
        assert_eq!(min_degree(&r, 13), 4);
        assert_eq!(min_degree(&r, 5), 3);
        assert!(min_degree(&r, 1) >= 5);
        let r = cusp_residue_degrees(1, 65, 2).unwrap();
        assert_eq!(min_degree(&r, 13), 4);
        assert!(cusp_residue_degrees(1, 65, 5).is_err());
    }

    #[test]
    fn congruences() {
        for (m, n, p) in [(1, 28, 5), (1, 36, 5), (2, 24, 5)] {
            let c = cc_condition(m, n, p, 1).unwrap();
            assert_eq!((c.modulus, c.residues.clone()), (4, vec![1]), "({m},{n})");
        }
        assert!(cc_condition(1, 26, 7, 1).unwrap().is_trivial());
        assert!(cc_condition(1, 26, 7, 2).unwrap().is_trivial());
    }

    #[test]
    fn aq_kills_c0() {
        for (m, n) in [(1, 5), (1, 7), (1, 9), (2, 10), (2, 14)] {
            for q in [3u64, 5, 7, 11] {
                if (2 * n) % q == 0 {
                    continue;
                }
                let c = FormalDivisor::point(c0(m, n).unwrap());
                let t = cusp_tq(&c0(m, n).unwrap(), q).unwrap();
                assert_eq!(t.degree(), q as i64 + 1);
                assert!(cusp_aq(&c, q).unwrap().is_zero(), "({m},{n}) q = {q}");
            }
        }
        let c = c0(1, 7).unwrap();
        let t = cusp_tq(&c, 5).unwrap();
        assert_eq!(t.multiplicity(&c), 1);
        assert_eq!(t.multiplicity(&c.diamond(5).unwrap()), 5);
        let one_gon = cusp_inventory(1, 7).unwrap().into_iter().find(|d| d.k == 1).unwrap();
        assert!(cusp_tq(&one_gon.representative, 3).is_err());
    }
}
