use torsion_sieve::cusps::{cc_condition, closed_form_cusp_count, combined_cc_condition, cusp_inventory};
use torsion_sieve::tables::HECKE_SIEVE;

#[test]
fn closed_form_up_to_100() {
    for n in 5..=100 {
        let total: u64 = cusp_inventory(1, n).unwrap().iter().map(|d| d.size).sum();
        assert_eq!(total, closed_form_cusp_count(n), "n = {n}");
    }
}

#[test]
fn listed_q_satisfy_their_column_condition() {
    for r in HECKE_SIEVE {
        let c1 = cc_condition(r.m, r.n, r.p, 1).unwrap();
        let c2 = cc_condition(r.m, r.n, r.p, 2).unwrap();
        for &q in r.deg3 {
            assert!(c1.admits(q), "({},{}) deg 3 q = {q}", r.m, r.n);
        }
        for &q in r.deg2 {
            assert!(c2.admits(q), "({},{}) deg 2 q = {q}", r.m, r.n);
        }
    }
}

/// The listed CC cell is the joint condition over the degrees whose column is nonempty.
#[test]
fn cc_column() {
    for r in HECKE_SIEVE {
        let mut parts = vec![];
        if !r.deg3.is_empty() {
            parts.push(1);
        }
        if !r.deg2.is_empty() {
            parts.push(2);
        }
        let c = combined_cc_condition(r.m, r.n, r.p, &parts).unwrap();
        let got = (!c.is_trivial()).then(|| {
            assert_eq!(c.residues.len(), 1);
            (c.residues[0], c.modulus)
        });
        assert_eq!(got, r.cc, "({},{})", r.m, r.n);
    }
}
