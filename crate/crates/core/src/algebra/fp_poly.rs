//! Dense polynomials over a prime field `F_p`, stored constant term first.
//! These back the arithmetic of [`super::FiniteField`] and the irreducible
//! polynomial search.

use crate::arith::{inv_mod, mul_mod};

pub fn trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

pub fn deg(a: &[u64]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

pub fn add(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out: Vec<u64> = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0);
            if x >= p {
                x - p
            } else {
                x
            }
        })
        .collect();
    trim(&mut out);
    out
}

pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out: Vec<u64> = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            if x >= y {
                x - y
            } else {
                x + p - y
            }
        })
        .collect();
    trim(&mut out);
    out
}

pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut acc = vec![0u128; a.len() + b.len() - 1];
    let small = (p as u128) * (p as u128) * (a.len().min(b.len()) as u128) < u128::MAX / 2;
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            if small {
                acc[i + j] += x as u128 * y as u128;
            } else {
                acc[i + j] = (acc[i + j] + x as u128 * y as u128) % p as u128;
            }
        }
    }
    let mut out: Vec<u64> = acc.into_iter().map(|c| (c % p as u128) as u64).collect();
    trim(&mut out);
    out
}

/// Remainder of `a` modulo the nonzero polynomial `m`.
pub fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    divrem(a, m, p).1
}

pub fn divrem(a: &[u64], m: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let dm = deg(m).expect("division by zero polynomial");
    let lead_inv = inv_mod(m[dm], p).expect("leading coefficient not invertible");
    let mut r = a.to_vec();
    trim(&mut r);
    if r.len() <= dm {
        return (Vec::new(), r);
    }
    let mut q = vec![0u64; r.len() - dm];
    for i in (dm..r.len()).rev() {
        let c = mul_mod(r[i], lead_inv, p);
        if c == 0 {
            continue;
        }
        q[i - dm] = c;
        for j in 0..=dm {
            let t = mul_mod(c, m[j], p);
            let idx = i - dm + j;
            r[idx] = if r[idx] >= t { r[idx] - t } else { r[idx] + p - t };
        }
    }
    r.truncate(dm);
    trim(&mut r);
    trim(&mut q);
    (q, r)
}

pub fn mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    rem(&mul(a, b, p), m, p)
}

pub fn monic(a: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    trim(&mut a);
    if let Some(&l) = a.last() {
        let li = inv_mod(l, p).unwrap();
        for c in a.iter_mut() {
            *c = mul_mod(*c, li, p);
        }
    }
    a
}

pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    monic(&a, p)
}

/// Inverse of `a` modulo `m` when they are coprime.
pub fn invmod(a: &[u64], m: &[u64], p: u64) -> Option<Vec<u64>> {
    let mut r0 = m.to_vec();
    let mut r1 = rem(a, m, p);
    let mut t0: Vec<u64> = Vec::new();
    let mut t1: Vec<u64> = vec![1];
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1, p);
        let t = sub(&t0, &mul(&q, &t1, p), p);
        r0 = r1;
        r1 = r;
        t0 = t1;
        t1 = t;
    }
    if deg(&r0) != Some(0) {
        return None;
    }
    let c = inv_mod(r0[0], p)?;
    let out: Vec<u64> = t0.iter().map(|&x| mul_mod(x, c, p)).collect();
    Some(rem(&out, m, p))
}

/// `base^e mod m` for a machine-sized exponent.
pub fn powmod(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(&acc, &b, m, p);
        }
        b = mulmod(&b, &b, m, p);
        e >>= 1;
    }
    rem(&acc, m, p)
}

/// Rabin's irreducibility test for a monic polynomial of degree `k >= 1`.
pub fn is_irreducible(f: &[u64], p: u64) -> bool {
    let k = match deg(f) {
        Some(k) if k >= 1 => k,
        _ => return false,
    };
    if k == 1 {
        return true;
    }
    let x = vec![0u64, 1];
    // x^(p^i) mod f for i = 0..=k
    let mut frob = Vec::with_capacity(k + 1);
    let mut cur = rem(&x, f, p);
    frob.push(cur.clone());
    for _ in 0..k {
        cur = powmod(&cur, p, f, p);
        frob.push(cur.clone());
    }
    if !sub(&frob[k], &x, p).is_empty() {
        return false;
    }
    for (r, _) in crate::arith::factor(k as u64) {
        let i = k / r as usize;
        let g = gcd(&sub(&frob[i], &x, p), f, p);
        if deg(&g) != Some(0) {
            return false;
        }
    }
    true
}

/// First monic irreducible polynomial of degree `k` over `F_p`, searching
/// candidates `x^k + c_{k-1} x^{k-1} + ... + c_0` in increasing order of
/// `sum c_i p^i`.
pub fn find_irreducible(p: u64, k: u32) -> Vec<u64> {
    let k = k as usize;
    let mut idx: u64 = 0;
    loop {
        let mut f = Vec::with_capacity(k + 1);
        let mut i = idx;
        for _ in 0..k {
            f.push(i % p);
            i /= p;
        }
        f.push(1);
        if is_irreducible(&f, p) {
            return f;
        }
        idx += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn irreducible_search_is_lexicographic() {
        assert_eq!(find_irreducible(7, 2), vec![1, 0, 1]);
        assert_eq!(find_irreducible(2, 2), vec![1, 1, 1]);
        assert_eq!(find_irreducible(3, 2), vec![1, 0, 1]);
        assert_eq!(find_irreducible(3, 4), vec![2, 1, 0, 0, 1]);
        assert_eq!(find_irreducible(7, 4), vec![1, 1, 0, 0, 1]);
        assert_eq!(find_irreducible(2, 4), vec![1, 1, 0, 0, 1]);
        assert_eq!(find_irreducible(5, 1), vec![0, 1]);
    }

    #[test]
    fn rabin_against_brute_force() {
        // Degree-3 polynomials over F_5 are irreducible iff rootless.
        let p = 5;
        for idx in 0..125u64 {
            let f = vec![idx % 5, (idx / 5) % 5, idx / 25, 1];
            let rootless = (0..p).all(|x| {
                let v = f.iter().rev().fold(0u64, |acc, &c| (acc * x + c) % p);
                v != 0
            });
            assert_eq!(is_irreducible(&f, p), rootless, "{f:?}");
        }
    }

    #[test]
    fn inverse_mod() {
        let m = vec![2, 0, 0, 1, 1];
        let a = vec![1, 2, 0, 1];
        let ai = invmod(&a, &m, 3).unwrap();
        assert_eq!(mulmod(&a, &ai, &m, 3), vec![1]);
    }
}
