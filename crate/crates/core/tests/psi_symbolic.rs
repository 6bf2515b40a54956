use torsion_sieve::algebra::diamond::{psi_integer_table, psi_power_sum_identity};
use torsion_sieve::algebra::{psi_polynomial, DiamondGroup};
use torsion_sieve::arith::pow_mod;

#[test]
fn psi_k_of_a_plus_b_is_a_k_plus_b_k() {
    for k in 1..=12 {
        assert!(psi_power_sum_identity(k), "k = {k}");
    }
}

#[test]
fn group_ring_coefficients_follow_the_table() {
    let table = psi_integer_table(12);
    for (q, n) in [(3u64, 5u64), (3, 65), (5, 21), (7, 10)] {
        let g = DiamondGroup::new(n).unwrap();
        for k in 1..=12usize {
            let psi = psi_polynomial(k, q, n).unwrap();
            assert!(psi.is_monic());
            assert_eq!(psi.degree(), Some(k));
            for (i, &c) in table[k].iter().enumerate() {
                let coeff = psi.coeff(k - 2 * i);
                let want = c * (q as i128).pow(i as u32);
                let slot = g.canon(pow_mod(q, i as u64, n) as i64).unwrap();
                let terms: Vec<(u64, i128)> = coeff.terms().collect();
                if want == 0 {
                    assert!(coeff.is_zero());
                } else {
                    assert_eq!(terms, vec![(slot, want)], "k = {k}, i = {i}, q = {q}, n = {n}");
                }
            }
        }
    }
}

#[test]
fn published_small_cases() {
    let t = psi_integer_table(3);
    assert_eq!(t[1], vec![1]);
    assert_eq!(t[2], vec![1, -2]);
    assert_eq!(t[3], vec![1, -3]);
}
