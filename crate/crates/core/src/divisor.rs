//! Formal `Z`-linear combinations of points.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FormalDivisor<K: Ord> {
    support: BTreeMap<K, i64>,
}

impl<K: Ord> Default for FormalDivisor<K> {
    fn default() -> Self {
        FormalDivisor { support: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> FormalDivisor<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn point(k: K) -> Self {
        let mut d = Self::zero();
        d.add_point(k, 1);
        d
    }

    pub fn add_point(&mut self, k: K, c: i64) {
        if c == 0 {
            return;
        }
        let e = self.support.entry(k.clone()).or_insert(0);
        *e += c;
        if *e == 0 {
            self.support.remove(&k);
        }
    }

    pub fn degree(&self) -> i64 {
        self.support.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    pub fn is_effective(&self) -> bool {
        self.support.values().all(|&c| c > 0)
    }

    pub fn multiplicity(&self, k: &K) -> i64 {
        self.support.get(k).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, i64)> {
        self.support.iter().map(|(k, &c)| (k, c))
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in other.iter() {
            out.add_point(k.clone(), c);
        }
        out
    }

    pub fn scale(&self, s: i64) -> Self {
        let mut out = Self::zero();
        for (k, c) in self.iter() {
            out.add_point(k.clone(), c * s);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1))
    }

    /// Push forward along a map of points.
    pub fn map<L: Ord + Clone>(&self, mut f: impl FnMut(&K) -> L) -> FormalDivisor<L> {
        let mut out = FormalDivisor::zero();
        for (k, c) in self.iter() {
            out.add_point(f(k), c);
        }
        out
    }

    /// Linear extension of a point-to-divisor operator.
    pub fn try_flat_map<L: Ord + Clone, E>(
        &self,
        mut f: impl FnMut(&K) -> Result<FormalDivisor<L>, E>,
    ) -> Result<FormalDivisor<L>, E> {
        let mut out = FormalDivisor::zero();
        for (k, c) in self.iter() {
            out = out.add(&f(k)?.scale(c));
        }
        Ok(out)
    }
}

impl<K: Ord + Clone> FromIterator<(K, i64)> for FormalDivisor<K> {
    fn from_iter<I: IntoIterator<Item = (K, i64)>>(iter: I) -> Self {
        let mut d = Self::zero();
        for (k, c) in iter {
            d.add_point(k, c);
        }
        d
    }
}

impl<K: Ord + fmt::Debug> fmt::Debug for FormalDivisor<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.support.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.support.iter().map(|(k, c)| format!("{c}*{k:?}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_ops() {
        let a: FormalDivisor<u32> = [(1, 2), (2, 1)].into_iter().collect();
        let b: FormalDivisor<u32> = [(2, -1), (3, 4)].into_iter().collect();
        let s = a.add(&b);
        assert_eq!(s.degree(), 6);
        assert_eq!(s.multiplicity(&2), 0);
        assert_eq!(s.len(), 2);
        assert!(a.sub(&a).is_zero());
        assert_eq!(a.map(|_| 0u8).multiplicity(&0), 3);
    }
}
