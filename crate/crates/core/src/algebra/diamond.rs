//! The diamond group `Δ(n) = (Z/n)^× / ⟨-1⟩`, its integral group ring, and
//! polynomials over that ring (the `Ψ_k` of the power Eichler–Shimura relation).

use std::collections::BTreeMap;
use std::fmt;

use crate::arith::{gcd, mul_mod};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiamondGroup {
    n: u64,
    elements: Vec<u64>,
}

impl DiamondGroup {
    pub fn new(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("level must be positive".into()));
        }
        let elements = (0..n.max(2))
            .filter(|&a| gcd(a, n) == 1 && a % n == Self::canon_raw(a, n))
            .map(|a| a % n)
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect();
        Ok(DiamondGroup { n, elements })
    }

    fn canon_raw(a: u64, n: u64) -> u64 {
        let a = a % n;
        a.min((n - a) % n)
    }

    pub fn level(&self) -> u64 {
        self.n
    }

    /// Canonical representative `min(a, n - a)`; errors on non-units.
    pub fn canon(&self, a: i64) -> Result<u64> {
        let r = a.rem_euclid(self.n as i64) as u64;
        if gcd(r, self.n) != 1 {
            return Err(Error::InvalidInput(format!("unit required: {a} mod {}", self.n)));
        }
        Ok(Self::canon_raw(r, self.n))
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        Self::canon_raw(mul_mod(a, b, self.n), self.n)
    }

    pub fn pow(&self, a: u64, e: u64) -> u64 {
        Self::canon_raw(crate::arith::pow_mod(a, e, self.n), self.n)
    }

    /// Order of the class of `a`.
    pub fn element_order(&self, a: i64) -> Result<u64> {
        let a = self.canon(a)?;
        Ok(crate::arith::mult_order_pm(a as i64, self.n).unwrap())
    }
}

/// Sparse element of `Z[Δ(n)]`, keyed by canonical representatives.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct GroupRingElem {
    terms: BTreeMap<u64, i128>,
}

impl GroupRingElem {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `c · ⟨g⟩` with `g` already canonical.
    pub fn monomial(c: i128, g: u64) -> Self {
        let mut e = Self::zero();
        e.add_term(g, c);
        e
    }

    fn add_term(&mut self, g: u64, c: i128) {
        let v = self.terms.entry(g).or_insert(0);
        *v += c;
        if *v == 0 {
            self.terms.remove(&g);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u64, i128)> + '_ {
        self.terms.iter().map(|(&g, &c)| (g, c))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (g, c) in other.terms() {
            out.add_term(g, c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        GroupRingElem { terms: self.terms.iter().map(|(&g, &c)| (g, -c)).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self, group: &DiamondGroup) -> Self {
        let mut out = Self::zero();
        for (g, c) in self.terms() {
            for (h, d) in other.terms() {
                out.add_term(group.mul(g, h), c * d);
            }
        }
        out
    }

    pub fn scale(&self, k: i128) -> Self {
        if k == 0 {
            return Self::zero();
        }
        GroupRingElem { terms: self.terms.iter().map(|(&g, &c)| (g, c * k)).collect() }
    }

    /// Augmentation: sum of coefficients.
    pub fn augmentation(&self) -> i128 {
        self.terms.values().sum()
    }
}

impl fmt::Debug for GroupRingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GroupRingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms().map(|(g, c)| format!("{c}<{g}>")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Polynomial over `Z[Δ(n)]`: coefficient of `x^i` at index `i`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroupRingPoly {
    pub group: DiamondGroup,
    coeffs: Vec<GroupRingElem>,
}

impl GroupRingPoly {
    pub fn new(group: DiamondGroup, mut coeffs: Vec<GroupRingElem>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        GroupRingPoly { group, coeffs }
    }

    pub fn constant(group: DiamondGroup, c: GroupRingElem) -> Self {
        Self::new(group, vec![c])
    }

    pub fn x(group: DiamondGroup) -> Self {
        Self::new(group, vec![GroupRingElem::zero(), GroupRingElem::monomial(1, 1)])
    }

    pub fn coeffs(&self) -> &[GroupRingElem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> GroupRingElem {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&GroupRingElem::monomial(1, 1))
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n).map(|i| self.coeff(i).add(&other.coeff(i))).collect();
        Self::new(self.group.clone(), c)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n).map(|i| self.coeff(i).sub(&other.coeff(i))).collect();
        Self::new(self.group.clone(), c)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::new(self.group.clone(), Vec::new());
        }
        let mut c = vec![GroupRingElem::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] = c[i + j].add(&a.mul(b, &self.group));
            }
        }
        Self::new(self.group.clone(), c)
    }

    pub fn scale(&self, e: &GroupRingElem) -> Self {
        let c = self.coeffs.iter().map(|a| a.mul(e, &self.group)).collect();
        Self::new(self.group.clone(), c)
    }
}

impl fmt::Display for GroupRingPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            };
            parts.push(if mono.is_empty() { format!("({c})") } else { format!("({c}){mono}") });
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Integer coefficients `c_{j,i}` with `S_j = sum_i c_{j,i} w^i x^(j-2i)`, where
/// `w` stands for `q⟨q⟩`. Shared by [`psi_polynomial`] and the symbolic check.
pub fn psi_integer_table(k: usize) -> Vec<Vec<i128>> {
    // s[j][i] = coefficient of w^i x^(j - 2i) in S_j.
    let mut s: Vec<Vec<i128>> = vec![vec![2], vec![1]];
    for j in 2..=k.max(1) {
        let mut cur = vec![0i128; j / 2 + 1];
        for (i, &c) in s[j - 1].iter().enumerate() {
            cur[i] += c;
        }
        for (i, &c) in s[j - 2].iter().enumerate() {
            cur[i + 1] -= c;
        }
        s.push(cur);
    }
    s
}

/// `Ψ_k` with `Ψ_k(a + b) = a^k + b^k` once `ab` stands for `q⟨q⟩`.
pub fn psi_polynomial(k: usize, q: u64, n: u64) -> Result<GroupRingPoly> {
    if k == 0 {
        return Err(Error::InvalidInput("k must be positive".into()));
    }
    if n % q == 0 && n > 1 {
        return Err(Error::InvalidInput(format!("Hecke prime divides level: {q} | {n}")));
    }
    let group = DiamondGroup::new(n)?;
    let qq = GroupRingPoly::constant(group.clone(), GroupRingElem::monomial(q as i128, group.canon(q as i64)?));
    let x = GroupRingPoly::x(group.clone());
    let mut s0 = GroupRingPoly::constant(group.clone(), GroupRingElem::monomial(2, 1));
    let mut s1 = x.clone();
    for _ in 2..=k {
        let s2 = x.mul(&s1).sub(&qq.mul(&s0));
        s0 = s1;
        s1 = s2;
    }
    Ok(s1)
}

/// Expands `Ψ_k(a + b)` in `Z[a, b]` with `w = ab` and checks it equals `a^k + b^k`.
pub fn psi_power_sum_identity(k: usize) -> bool {
    type Biv = BTreeMap<(u32, u32), i128>;
    fn mul(x: &Biv, y: &Biv) -> Biv {
        let mut out = Biv::new();
        for (&(i, j), &c) in x {
            for (&(k, l), &d) in y {
                *out.entry((i + k, j + l)).or_insert(0) += c * d;
            }
        }
        out.retain(|_, c| *c != 0);
        out
    }
    let power = |x: &Biv, e: usize| (0..e).fold(Biv::from([((0, 0), 1)]), |acc, _| mul(&acc, x));
    let table = psi_integer_table(k);
    let sum = Biv::from([((1, 0), 1), ((0, 1), 1)]);
    let prod = Biv::from([((1, 1), 1)]);
    let mut total = Biv::new();
    for (i, &c) in table[k].iter().enumerate() {
        for (key, v) in mul(&power(&prod, i), &power(&sum, k - 2 * i)) {
            *total.entry(key).or_insert(0) += c * v;
        }
    }
    total.retain(|_, c| *c != 0);
    total == Biv::from([((k as u32, 0), 1), ((0, k as u32), 1)])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_orders() {
        assert_eq!(DiamondGroup::new(5).unwrap().order(), 2);
        assert_eq!(DiamondGroup::new(65).unwrap().order(), 24);
        assert_eq!(DiamondGroup::new(2).unwrap().order(), 1);
        let g = DiamondGroup::new(7).unwrap();
        assert_eq!(g.canon(6).unwrap(), 1);
        assert_eq!(g.canon(5).unwrap(), 2);
        assert!(g.canon(14).is_err());
    }

    #[test]
    fn small_psi() {
        let p1 = psi_polynomial(1, 3, 5).unwrap();
        assert_eq!(p1.to_string(), "(1<1>)x");
        let p2 = psi_polynomial(2, 3, 5).unwrap();
        assert_eq!(p2.to_string(), "(1<1>)x^2 + (-6<2>)");
        let p3 = psi_polynomial(3, 3, 5).unwrap();
        assert_eq!(p3.to_string(), "(1<1>)x^3 + (-9<2>)x");
        assert!(psi_polynomial(2, 5, 10).is_err());
    }
}
