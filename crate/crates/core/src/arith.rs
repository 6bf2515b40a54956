//! Integer number theory used throughout: gcd/lcm, modular powers,
//! factorisation by trial division, Euler's phi and multiplicative order.

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn gcd_i64(a: i64, b: i64) -> u64 {
    gcd(a.unsigned_abs(), b.unsigned_abs())
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(m as i128) as u64)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Prime factorisation as `(prime, exponent)` pairs in increasing order.
pub fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut ds = vec![1u64];
    for (p, e) in factor(n) {
        let len = ds.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                ds.push(ds[i] * pk);
            }
        }
    }
    ds.sort_unstable();
    ds
}

pub fn euler_phi(n: u64) -> u64 {
    factor(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

pub fn is_squarefree(n: u64) -> bool {
    factor(n).iter().all(|&(_, e)| e == 1)
}

/// `p`-adic valuation of a nonzero integer.
pub fn valuation(mut n: u64, p: u64) -> u32 {
    let mut v = 0;
    while n != 0 && n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

/// If `q = p^a` with `p` prime, returns `(p, a)`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    let f = factor(q);
    match f.as_slice() {
        [(p, a)] => Some((*p, *a)),
        _ => None,
    }
}

pub fn isqrt(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    let mut x = (n as f64).sqrt() as u64;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

pub fn is_square(n: u64) -> bool {
    let r = isqrt(n);
    r * r == n
}

/// Multiplicative order of `a` modulo `n`; `None` when `gcd(a, n) != 1`.
pub fn mult_order(a: i64, n: u64) -> Option<u64> {
    if n == 1 {
        return Some(1);
    }
    let a = a.rem_euclid(n as i64) as u64;
    if gcd(a, n) != 1 {
        return None;
    }
    let mut ord = euler_phi(n);
    for (p, _) in factor(ord) {
        while ord % p == 0 && pow_mod(a, ord / p, n) == 1 {
            ord /= p;
        }
    }
    Some(ord)
}

/// Least `e` with `a^e ≡ ±1 (mod n)`.
pub fn mult_order_pm(a: i64, n: u64) -> Option<u64> {
    let ord = mult_order(a, n)?;
    let a = a.rem_euclid(n as i64) as u64;
    let minus = (n - 1) % n.max(1);
    Some(
        divisors(ord)
            .into_iter()
            .find(|&e| {
                let v = pow_mod(a, e, n);
                v == 1 % n || v == minus
            })
            .unwrap(),
    )
}

/// Multiplicative order, optionally in `(Z/n)^×/±1`; errors on non-units.
pub fn mult_order_checked(a: i64, n: u64, quotient_by_minus_one: bool) -> crate::error::Result<u64> {
    let r = if quotient_by_minus_one { mult_order_pm(a, n) } else { mult_order(a, n) };
    r.ok_or_else(|| crate::error::Error::InvalidInput(format!("unit required: {a} mod {n}")))
}

/// Units of `Z/n`, in increasing order.
pub fn units(n: u64) -> Vec<u64> {
    if n == 1 {
        return vec![0];
    }
    (1..n).filter(|&a| gcd(a, n) == 1).collect()
}

pub fn ipow(base: u64, exp: u32) -> u64 {
    base.pow(exp)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        assert_eq!(mult_order(3, 5), Some(4));
        assert_eq!(mult_order(2, 4), None);
        assert_eq!(mult_order(3, 289), Some(272));
        assert_eq!(mult_order(-1, 7), Some(2));
        assert_eq!(mult_order(2, 7), Some(3));
        assert_eq!(mult_order(2, 63), Some(6));
        assert_eq!(mult_order_pm(2, 65), Some(6));
        assert_eq!(mult_order_pm(3, 289), Some(136));
        assert!(mult_order_checked(3, 6, false).is_err());
    }

    #[test]
    fn factorisation() {
        assert_eq!(factor(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(euler_phi(65), 48);
        assert_eq!(prime_power(2401), Some((7, 4)));
        assert_eq!(prime_power(12), None);
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(561));
    }

    #[test]
    fn inverses() {
        assert_eq!(inv_mod(3, 121), Some(81));
        assert_eq!(inv_mod(4, 8), None);
    }
}
