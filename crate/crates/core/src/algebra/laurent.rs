//! Multivariate Laurent polynomials over `Z`, used to check the curve and
//! family identities symbolically by running the ordinary [`Field`] code on
//! indeterminates.
//!
//! [`LaurentRing`] is not a field: `inv` succeeds only on monomials `±x^e`.
//! The transformation laws only ever divide by `u`, so that is enough.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use super::field::Field;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Laurent {
    terms: BTreeMap<Vec<i32>, i128>,
}

impl Laurent {
    pub fn terms(&self) -> impl Iterator<Item = (&[i32], i128)> {
        self.terms.iter().map(|(e, &c)| (e.as_slice(), c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn insert(&mut self, e: Vec<i32>, c: i128) {
        if c == 0 {
            return;
        }
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get().checked_add(c).expect("coefficient overflow");
                if sum == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }
}

impl fmt::Debug for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mono: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &k)| k != 0)
                    .map(|(i, &k)| if k == 1 { format!("x{i}") } else { format!("x{i}^{k}") })
                    .collect();
                if mono.is_empty() {
                    c.to_string()
                } else {
                    format!("{c}*{}", mono.join("*"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `Z[x_0^±1, ..., x_{n-1}^±1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LaurentRing {
    pub nvars: usize,
}

impl LaurentRing {
    pub fn new(nvars: usize) -> Self {
        LaurentRing { nvars }
    }

    pub fn var(&self, i: usize) -> Laurent {
        self.monomial(1, &[(i, 1)])
    }

    pub fn monomial(&self, c: i128, powers: &[(usize, i32)]) -> Laurent {
        let mut e = vec![0; self.nvars];
        for &(i, k) in powers {
            e[i] += k;
        }
        let mut out = Laurent::default();
        out.insert(e, c);
        out
    }

    pub fn constant(&self, c: i128) -> Laurent {
        self.monomial(c, &[])
    }
}

impl Field for LaurentRing {
    type Elem = Laurent;

    fn zero(&self) -> Laurent {
        Laurent::default()
    }

    fn one(&self) -> Laurent {
        self.constant(1)
    }

    fn from_i64(&self, n: i64) -> Laurent {
        self.constant(n as i128)
    }

    fn add(&self, a: &Laurent, b: &Laurent) -> Laurent {
        let mut out = a.clone();
        for (e, &c) in &b.terms {
            out.insert(e.clone(), c);
        }
        out
    }

    fn sub(&self, a: &Laurent, b: &Laurent) -> Laurent {
        self.add(a, &self.neg(b))
    }

    fn mul(&self, a: &Laurent, b: &Laurent) -> Laurent {
        let mut out = Laurent::default();
        for (e1, &c1) in &a.terms {
            for (e2, &c2) in &b.terms {
                let e: Vec<i32> = e1.iter().zip(e2).map(|(x, y)| x + y).collect();
                out.insert(e, c1.checked_mul(c2).expect("coefficient overflow"));
            }
        }
        out
    }

    fn neg(&self, a: &Laurent) -> Laurent {
        Laurent { terms: a.terms.iter().map(|(e, &c)| (e.clone(), -c)).collect() }
    }

    fn inv(&self, a: &Laurent) -> Option<Laurent> {
        match a.terms.iter().next() {
            Some((e, &c)) if a.terms.len() == 1 && (c == 1 || c == -1) => {
                let mut out = Laurent::default();
                out.insert(e.iter().map(|k| -k).collect(), c);
                Some(out)
            }
            _ => None,
        }
    }

    fn characteristic(&self) -> u64 {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let r = LaurentRing::new(2);
        let (x, y) = (r.var(0), r.var(1));
        let s = r.add(&x, &y);
        let sq = r.mul(&s, &s);
        let expect = r.add(&r.add(&r.mul(&x, &x), &r.mul(&r.from_i64(2), &r.mul(&x, &y))), &r.mul(&y, &y));
        assert_eq!(sq, expect);
        let xi = r.inv(&x).unwrap();
        assert_eq!(r.mul(&x, &xi), r.one());
        assert!(r.inv(&s).is_none());
        assert!(r.is_zero(&r.sub(&sq, &sq)));
    }
}
