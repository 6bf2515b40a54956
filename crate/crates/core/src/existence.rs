//! Which traces, orders and group structures occur for elliptic curves over
//! `F_q`, and the resulting emptiness of `Y_1(m, n)(F_{p^d})`.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::algebra::SmallField;
use crate::arith::{divisors, gcd, ipow, is_prime, isqrt};
use crate::curves::count::hasse_interval;
use crate::curves::census::{census, census_orders};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceProfile {
    pub p: u64,
    pub a: u32,
    pub q: u64,
    pub traces: BTreeSet<i64>,
}

impl TraceProfile {
    pub fn orders(&self) -> BTreeSet<u64> {
        self.traces.iter().map(|&b| (self.q as i64 + 1 - b) as u64).collect()
    }
}

/// Exact square root of `q = p^a` for even `a`.
fn sqrt_q(p: u64, a: u32) -> Option<i64> {
    (a % 2 == 0).then(|| ipow(p, a / 2) as i64)
}

/// Traces of Frobenius realized over `F_{p^a}`, one clause per case of Waterhouse's theorem.
pub fn admissible_traces(p: u64, a: u32) -> Result<TraceProfile> {
    if !is_prime(p) || a == 0 {
        return Err(Error::InvalidInput(format!("need a prime and a >= 1, got p = {p}, a = {a}")));
    }
    let q = ipow(p, a);
    let w = isqrt(4 * q) as i64;
    let mut traces = BTreeSet::new();
    // Ordinary: beta prime to p.
    for beta in -w..=w {
        if gcd(beta.unsigned_abs(), p) == 1 {
            traces.insert(beta);
        }
    }
    if let Some(s) = sqrt_q(p, a) {
        // Even a: beta = ±2√q.
        traces.insert(2 * s);
        traces.insert(-2 * s);
        // Even a, p ≢ 1 mod 3: beta = ±√q.
        if p % 3 != 1 {
            traces.insert(s);
            traces.insert(-s);
        }
        // Even a, p ≢ 1 mod 4: beta = 0.
        if p % 4 != 1 {
            traces.insert(0);
        }
    } else {
        // Odd a, p = 2 or 3: beta = ±p^((a+1)/2).
        if p == 2 || p == 3 {
            let t = ipow(p, a.div_ceil(2)) as i64;
            traces.insert(t);
            traces.insert(-t);
        }
        // Odd a: beta = 0.
        traces.insert(0);
    }
    Ok(TraceProfile { p, a, q, traces })
}

/// Invariant factors `(A, B)` occurring for curves of trace `beta` (Rück's theorem).
pub fn realizable_structures(p: u64, a: u32, beta: i64) -> Vec<(u64, u64)> {
    let q = ipow(p, a);
    let n = (q as i64 + 1 - beta) as u64;
    let all = || -> Vec<(u64, u64)> {
        divisors(n)
            .into_iter()
            .filter(|&aa| n % (aa * aa) == 0 && (q - 1) % aa == 0)
            .map(|aa| (aa, n / aa))
            .collect()
    };
    if gcd(beta.unsigned_abs(), p) == 1 {
        return all();
    }
    let b2 = (beta * beta) as u64;
    if b2 == 4 * q {
        let s = isqrt(n);
        return vec![(s, s)];
    }
    if b2 == q || b2 == 2 * q || b2 == 3 * q {
        return vec![(1, n)];
    }
    // beta = 0
    if q % 4 == 3 {
        vec![(1, n), (2, n / 2)]
    } else {
        vec![(1, n)]
    }
}

/// Structures realized by brute force: one census over `F_q`.
pub fn brute_force_structures(p: u64, a: u32, seed: u64) -> Result<BTreeSet<(u64, u64)>> {
    let k = SmallField::new(p, a)?;
    Ok(census(&k, seed)?.into_iter().map(|(_, s)| (s.a, s.b)).collect())
}

pub fn brute_force_traces(p: u64, a: u32, seed: u64) -> Result<BTreeSet<i64>> {
    let q = ipow(p, a) as i64;
    let k = SmallField::new(p, a)?;
    Ok(census_orders(&k, seed)?.into_iter().map(|n| q + 1 - n as i64).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Certification {
    /// Every curve over the field was inspected.
    BruteForce,
    /// Theory only: the field exceeds the enumeration bound.
    TheoryOnly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Existence {
    pub m: u64,
    pub n: u64,
    pub p: u64,
    pub d: u32,
    pub exists: bool,
    /// A trace and structure realizing the subgroup, when one exists.
    pub witness: Option<(i64, u64, u64)>,
    pub certification: Certification,
}

/// Whether some `E / F_{p^d}` has `Z/m x Z/n` inside `E(F_{p^d})`.
pub fn torsion_group_exists(m: u64, n: u64, p: u64, d: u32, bound: u64, seed: u64) -> Result<Existence> {
    if n % m != 0 {
        return Err(Error::InvalidInput(format!("need m | n, got ({m},{n})")));
    }
    if (m * n) % p == 0 {
        return Err(Error::CharacteristicDividesLevel { p, level: m * n });
    }
    let prof = admissible_traces(p, d)?;
    let witness = prof.traces.iter().find_map(|&beta| {
        realizable_structures(p, d, beta)
            .into_iter()
            .find(|&(a, b)| a % m == 0 && b % n == 0)
            .map(|(a, b)| (beta, a, b))
    });
    let exists = witness.is_some();
    let certification = if prof.q <= bound {
        let found = brute_force_structures(p, d, seed)?.into_iter().any(|(a, b)| a % m == 0 && b % n == 0);
        if found != exists {
            return Err(Error::Internal(format!(
                "Waterhouse/Rück predicts {exists} for Z/{m} x Z/{n} over F_{p}^{d}, census finds {found}"
            )));
        }
        Certification::BruteForce
    } else {
        Certification::TheoryOnly
    };
    Ok(Existence { m, n, p, d, exists, witness, certification })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeCell {
    pub d: u32,
    pub q: u64,
    pub nonempty: bool,
    pub certification: Certification,
    /// Set when a subfield already has points, which settles the cell.
    pub via_subfield: Option<u32>,
}

/// For `d = 1..=4`: can `Y_1(m, n)(F_{p^d})` have non-cuspidal points?
pub fn reduction_report(m: u64, n: u64, p: u64, bound: u64, seed: u64) -> Result<Vec<DegreeCell>> {
    let mut cells: Vec<DegreeCell> = Vec::new();
    for d in 1..=4u32 {
        let e = torsion_group_exists(m, n, p, d, bound, seed)?;
        let via_subfield = cells.iter().find(|c| c.nonempty && d % c.d == 0).map(|c| c.d);
        if via_subfield.is_some() && !e.exists {
            return Err(Error::Internal(format!("subfield F_{p}^{d:?} has points but the extension does not")));
        }
        cells.push(DegreeCell { d, q: ipow(p, d), nonempty: e.exists, certification: e.certification, via_subfield });
    }
    Ok(cells)
}

/// Orders in the Hasse interval of `F_q` realized by no curve.
pub fn unrealizable_orders(p: u64, a: u32) -> Result<BTreeSet<u64>> {
    let prof = admissible_traces(p, a)?;
    let (lo, hi) = hasse_interval(prof.q);
    let orders = prof.orders();
    Ok((lo..=hi).filter(|n| !orders.contains(n)).collect())
}

/// Orders prime to 3 in `[64, 100]` that no curve over `F_81` attains.
///
/// Over `F_{3^d}` with `d <= 3` every group order is at most 43, so these are
/// exactly the `mn` in that window with no `Z/m x Z/n` over `F_{3^d}`, `d <= 4`.
pub fn s3_set() -> Result<BTreeSet<u64>> {
    Ok(unrealizable_orders(3, 4)?.into_iter().filter(|k| k % 3 != 0).collect())
}

/// Whether no order over `F_{p^d}`, `d <= 4`, is divisible by `k`: the
/// order-only emptiness criterion, derived from the trace profiles.
pub fn no_order_multiple_up_to_degree4(p: u64, k: u64) -> Result<bool> {
    for d in 1..=4 {
        if admissible_traces(p, d)?.orders().iter().any(|n| n % k == 0) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The literal sufficient condition for `F_{3^d}`, `d <= 4`: `3 ∤ mn` and
/// `mn > 100`, or `mn` in S_3, or no multiple of `mn` lies in `[64, 100]`.
pub fn char3_clause(mn: u64, s3: &BTreeSet<u64>) -> bool {
    mn % 3 != 0 && (mn > 100 || s3.contains(&mn) || !(64..=100).any(|k| k % mn == 0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: impl IntoIterator<Item = i64>) -> BTreeSet<i64> {
        v.into_iter().collect()
    }

    #[test]
    fn trace_examples() {
        assert_eq!(admissible_traces(2, 2).unwrap().traces, set(-4..=4));
        assert_eq!(admissible_traces(3, 1).unwrap().traces, set(-3..=3));
        let expect: BTreeSet<i64> = (-18..=18).filter(|b: &i64| ![3, 6, 12, 15].contains(&b.abs())).collect();
        assert_eq!(admissible_traces(3, 4).unwrap().traces, expect);
    }

    #[test]
    fn traces_match_census_small() {
        for (p, a) in [(2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (3, 3), (3, 4), (5, 1), (5, 2), (7, 2), (13, 1)] {
            assert_eq!(admissible_traces(p, a).unwrap().traces, brute_force_traces(p, a, 0).unwrap(), "F_{p}^{a}");
        }
    }

    #[test]
    fn structures_match_census_small() {
        for (p, a) in [(2, 2), (2, 4), (3, 2), (5, 2), (7, 1), (7, 2), (11, 1), (3, 3)] {
            let prof = admissible_traces(p, a).unwrap();
            let theory: BTreeSet<(u64, u64)> =
                prof.traces.iter().flat_map(|&b| realizable_structures(p, a, b)).collect();
            assert_eq!(theory, brute_force_structures(p, a, 0).unwrap(), "F_{p}^{a}");
        }
    }

    #[test]
    fn existence_examples() {
        assert!(!torsion_group_exists(1, 27, 2, 4, 2500, 0).unwrap().exists);
        assert!(!torsion_group_exists(1, 85, 3, 4, 2500, 0).unwrap().exists);
        let e = torsion_group_exists(1, 15, 13, 1, 2500, 0).unwrap();
        assert!(e.exists);
        assert_eq!(e.certification, Certification::BruteForce);
        assert!(torsion_group_exists(1, 15, 3, 1, 2500, 0).is_err());
    }

    #[test]
    fn s3() {
        assert_eq!(unrealizable_orders(3, 4).unwrap(), [67, 70, 76, 79, 85, 88, 94, 97].into_iter().collect());
        assert_eq!(s3_set().unwrap(), [67, 70, 76, 79, 85, 88, 94, 97].into_iter().collect());
    }

    #[test]
    fn corollary_clauses() {
        let s3 = s3_set().unwrap();
        for mn in 1..400u64 {
            if char3_clause(mn, &s3) {
                assert!(no_order_multiple_up_to_degree4(3, mn).unwrap(), "mn = {mn}");
            }
            if mn % 2 == 1 && mn > 25 {
                assert!(no_order_multiple_up_to_degree4(2, mn).unwrap(), "mn = {mn}");
            }
        }
        // 25 itself is attained over F_16.
        assert!(!no_order_multiple_up_to_degree4(2, 25).unwrap());
    }

    proptest::proptest! {
        #[test]
        fn hasse_monotone(p in proptest::sample::select(vec![2u64, 3, 5, 7, 11, 13]), d in 1u32..=3, m in 1u64..4, k in 1u64..60) {
            let n = m * k;
            proptest::prop_assume!((m * n) % p != 0);
            let q = ipow(p, d) as f64;
            let e = torsion_group_exists(m, n, p, d, 0, 0).unwrap();
            if (m * n) as f64 > (q.sqrt() + 1.0).powi(2) {
                proptest::prop_assert!(!e.exists);
            }
            if let Some((beta, a, b)) = e.witness {
                proptest::prop_assert_eq!((a * b) as i64, q as i64 + 1 - beta);
                proptest::prop_assert!(a % m == 0 && b % n == 0 && (ipow(p, d) - 1) % a == 0);
            }
        }
    }

    #[test]
    fn sample_reports() {
        let r = reduction_report(1, 25, 3, 2500, 0).unwrap();
        assert_eq!(r.iter().map(|c| c.nonempty).collect::<Vec<_>>(), vec![false, false, false, true]);
        let r = reduction_report(2, 24, 5, 2500, 0).unwrap();
        assert_eq!(r.iter().map(|c| c.nonempty).collect::<Vec<_>>(), vec![false, false, true, true]);
        let r = reduction_report(1, 65, 2, 2500, 0).unwrap();
        assert!(r.iter().all(|c| !c.nonempty));
    }
}
