//! Congruence-subgroup indices and the gonality bounds built on them.
//!
//! A [`CongruenceGroup`] is `Γ(m) ∩ Γ_H(n)`: matrices congruent to the
//! identity mod `m`, upper triangular mod `n` with lower-right entry in `H`.
//! Indices are obtained by counting the image of the group in `SL_2(Z/N)`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{factor, gcd, inv_mod, lcm, mult_order, mult_order_pm, pow_mod, units};
use crate::error::{Error, Result};
use crate::tables::{DS_TABLE, HIGHER_DEGREE_TABLE, QUINTIC_GONALITY};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CongruenceGroup {
    /// Full-level part `Γ(m)`.
    pub m: u64,
    /// Level of the `Γ_H` part.
    pub n: u64,
    /// `H ≤ (Z/n)^×`, sorted.
    pub h: Vec<u64>,
}

impl CongruenceGroup {
    fn build(m: u64, n: u64, h: Vec<u64>) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::InvalidInput("levels must be positive".into()));
        }
        let mut h: Vec<u64> = h.into_iter().map(|x| x % n).collect();
        h.sort_unstable();
        h.dedup();
        if n > 1 && (h.iter().any(|&x| gcd(x, n) != 1) || h.iter().any(|&x| h.iter().any(|&y| !h.contains(&(x * y % n))))) {
            return Err(Error::InvalidInput(format!("not a subgroup of (Z/{n})^×: {h:?}")));
        }
        if n == 1 {
            h = vec![0];
        }
        Ok(CongruenceGroup { m, n, h })
    }

    pub fn gamma1(n: u64) -> Result<Self> {
        Self::build(1, n, vec![1])
    }

    pub fn gamma0(n: u64) -> Result<Self> {
        Self::build(1, n, units(n))
    }

    pub fn gamma(m: u64) -> Result<Self> {
        Self::build(m, 1, vec![0])
    }

    /// `Γ(m) ∩ Γ_1(n)`, the group of `X_1(m, n)`.
    pub fn gamma1_mn(m: u64, n: u64) -> Result<Self> {
        Self::build(m, n, vec![1])
    }

    /// `Γ_H(n)` for `H` generated by `gens`.
    pub fn gamma_h(n: u64, gens: &[u64]) -> Result<Self> {
        let mut h = vec![1 % n];
        loop {
            let mut next = h.clone();
            for &x in &h {
                for &g in gens {
                    next.push(x * (g % n) % n);
                }
            }
            next.sort_unstable();
            next.dedup();
            if next.len() == h.len() {
                break;
            }
            h = next;
        }
        Self::build(1, n, h)
    }

    pub fn level(&self) -> u64 {
        lcm(self.m, self.n)
    }

    /// Membership of a residue matrix mod [`Self::level`].
    pub fn contains(&self, [a, b, c, d]: [u64; 4]) -> bool {
        let (m, n) = (self.m, self.n);
        let full = a % m == 1 % m && d % m == 1 % m && b % m == 0 && c % m == 0;
        full && c % n == 0 && self.h.binary_search(&(d % n)).is_ok()
    }

    pub fn contains_minus_identity(&self) -> bool {
        let nl = self.level();
        let m1 = nl - 1;
        nl <= 2 || self.contains([m1, 0, 0, m1])
    }

    /// Size of the image in `SL_2(Z/N)`, by enumeration.
    pub fn image_size(&self) -> u64 {
        let nl = self.level();
        let (m, n) = (self.m, self.n);
        let filtered = |pred: &dyn Fn(u64) -> bool| (0..nl).filter(|&v| pred(v)).collect::<Vec<_>>();
        let a_set = filtered(&|v| v % m == 1 % m);
        let b_set = filtered(&|v| v % m == 0);
        let c_set = filtered(&|v| v % m == 0 && v % n == 0);
        a_set
            .par_iter()
            .map(|&a| {
                let g = gcd(a, nl);
                let mut count = 0u64;
                for &c in &c_set {
                    if gcd(g, c) != 1 {
                        continue;
                    }
                    for &b in &b_set {
                        // a d ≡ 1 + b c (mod N)
                        let rhs = (1 + b * c) % nl;
                        if rhs % g != 0 {
                            continue;
                        }
                        let step = nl / g;
                        let d0 = (rhs / g) * inv_mod((a / g) % step, step).expect("a / g is a unit mod N / g") % step;
                        count += (0..g).filter(|k| self.contains([a, b, c, d0 + k * step])).count() as u64;
                    }
                }
                count
            })
            .sum()
    }

    /// `[SL_2(Z) : Γ]`, or `[PSL_2(Z) : Γ]` when `projective` is set.
    pub fn index(&self, projective: bool) -> u64 {
        let i = sl2_order(self.level()) / self.image_size();
        if projective && !self.contains_minus_identity() {
            i / 2
        } else {
            i
        }
    }
}

/// `|SL_2(Z/N)| = N^3 prod (1 - 1/p^2)`.
pub fn sl2_order(n: u64) -> u64 {
    factor(n).into_iter().fold(1, |acc, (p, e)| acc * p.pow(3 * e - 2) * (p * p - 1))
}

/// `[SL_2(Z) : Γ_1(N)] = N^2 prod (1 - 1/p^2)` for `N ≥ 3`.
pub fn gamma1_index_closed_form(n: u64) -> u64 {
    factor(n).into_iter().fold(1, |acc, (p, e)| acc * p.pow(2 * e - 2) * (p * p - 1))
}

fn abramovich_constant() -> BigRational {
    BigRational::new(BigInt::from(325), BigInt::from(1u64 << 15))
}

/// `(325 / 2^15) [PSL_2(Z) : Γ]`; the gonality strictly exceeds this.
pub fn abramovich_lower_bound(group: &CongruenceGroup) -> BigRational {
    abramovich_constant() * BigInt::from(group.index(true))
}

/// Least integer strictly greater than `x`.
pub fn strict_ceiling(x: &BigRational) -> u64 {
    (x.floor() + BigInt::from(1)).to_integer().to_u64().expect("positive bound")
}

pub fn bigrational_to_f64(x: &BigRational) -> f64 {
    x.numer().to_f64().unwrap_or(f64::NAN) / x.denom().to_f64().unwrap_or(f64::NAN)
}

/// `k_q` and `b(n) = (325/2^15) [SL_2 : Γ_1(n)] / (k_q #H)` with `H = {±1}`.
pub fn kq_and_b(n: u64, a: u64, q: u64, rank_finite: bool) -> Result<(u64, BigRational)> {
    if gcd(a, n) != 1 {
        return Err(Error::InvalidInput(format!("gcd({a}, {n}) != 1")));
    }
    if n % q == 0 {
        return Err(Error::InvalidInput(format!("q = {q} divides n = {n}")));
    }
    let k = if rank_finite {
        q + 1
    } else {
        let qi = inv_mod(q % n, n).expect("q is a unit");
        let a = a % n;
        let special = [q % n, n - q % n, qi, n - qi].contains(&a);
        if special {
            2 * q + 1
        } else {
            2 * (q + 1)
        }
    };
    let index = CongruenceGroup::gamma1(n)?.index(false);
    let h = if n > 2 { 2 } else { 1 };
    Ok((k, abramovich_constant() * BigInt::from(index) / BigInt::from(k * h)))
}

/// Certifies a degree-`d` point as sporadic from a gonality lower bound.
pub fn sporadic_certify(d: u64, gon_lower: u64, rank_zero: bool) -> bool {
    2 * d < gon_lower || (d < gon_lower && rank_zero)
}

const LEAST_CM_DEGREE: &str = include_str!("../data/least_cm_degree.txt");

/// Least degree of a CM point on `X_1(n)`, from the shipped constants file.
pub fn least_cm_degree(n: u64) -> Option<u64> {
    least_cm_table().get(&n).copied()
}

pub fn least_cm_table() -> BTreeMap<u64, u64> {
    LEAST_CM_DEGREE
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .filter_map(|l| {
            let mut it = l.split_whitespace().map(|t| t.parse::<u64>());
            match (it.next(), it.next()) {
                (Some(Ok(n)), Some(Ok(d))) => Some((n, d)),
                _ => None,
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GonalityRow {
    pub n: u64,
    pub a: u64,
    /// Order of `<a>` in `Δ(n) = (Z/n)^×/±1`.
    pub order: u64,
    /// Order of `a` in `(Z/n)^×`.
    pub unit_order: u64,
    pub chi: Vec<u64>,
    pub k_q: u64,
    #[serde(serialize_with = "ser_rational")]
    pub b: BigRational,
    pub b_ceil: u64,
    pub d_cm: Option<u64>,
}

fn ser_rational<S: serde::Serializer>(x: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

fn gonality_row(n: u64, a: u64, chi: &[u64]) -> Result<GonalityRow> {
    let (k_q, b) = kq_and_b(n, a, 3, false)?;
    let b_ceil = b.ceil().to_integer().to_u64().expect("positive");
    Ok(GonalityRow {
        n,
        a,
        order: mult_order_pm(a as i64, n).expect("unit"),
        unit_order: mult_order(a as i64, n).expect("unit"),
        chi: chi.to_vec(),
        k_q,
        b,
        b_ceil,
        d_cm: least_cm_degree(n),
    })
}

/// The quartic global-method rows, recomputed with `q = 3`.
pub fn ds_table() -> Result<Vec<GonalityRow>> {
    DS_TABLE.iter().map(|r| gonality_row(r.n, r.a, &[])).collect()
}

/// The higher-degree rows, with `a = 3^e` for `e` the lcm of the character orders.
pub fn higher_degree_table() -> Result<Vec<GonalityRow>> {
    HIGHER_DEGREE_TABLE
        .iter()
        .map(|r| {
            let e = r.chi.iter().fold(1, |acc, &c| lcm(acc, c));
            gonality_row(r.n, pow_mod(3, e, r.n), r.chi)
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AbramovichRow {
    pub n: u64,
    pub psl_index: u64,
    #[serde(serialize_with = "ser_rational")]
    pub bound: BigRational,
    pub gon_lower: u64,
}

pub fn abramovich_row(group: &CongruenceGroup) -> AbramovichRow {
    let bound = abramovich_lower_bound(group);
    AbramovichRow { n: group.level(), psl_index: group.index(true), gon_lower: strict_ceiling(&bound), bound }
}

/// Abramovich bounds for the rank-zero quintic cases.
pub fn quintic_table() -> Result<Vec<AbramovichRow>> {
    QUINTIC_GONALITY.iter().map(|&(n, _)| Ok(abramovich_row(&CongruenceGroup::gamma1(n)?))).collect()
}
