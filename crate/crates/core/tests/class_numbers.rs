use torsion_sieve::classno::{
    class_number, is_fundamental, sporadic_search_in, ClassNumberTable, SporadicOutcome, DEFAULT_DISCRIMINANT_BOUND,
};

#[test]
fn sporadic_search_up_to_201() {
    let table = ClassNumberTable::up_to(DEFAULT_DISCRIMINANT_BOUND);
    assert!(matches!(sporadic_search_in(1, &table).unwrap(), SporadicOutcome::Failure(_)));
    let mut missing = Vec::new();
    for d in 2..=201 {
        match sporadic_search_in(d, &table).unwrap() {
            SporadicOutcome::Explicit(c) => assert!(c.verify(), "{c:?}"),
            SporadicOutcome::Failure(r) => missing.push((d, r.candidates.len())),
            other => panic!("{other:?}"),
        }
    }
    assert!(missing.is_empty(), "{missing:?}");
}

// The step h ≤ (2/π)√Δ of the published chain is not a theorem.
#[test]
fn minkowski_style_bound_has_counterexamples() {
    let violations: Vec<u64> = (3..=2000u64)
        .filter(|&d| is_fundamental(d))
        .filter(|&d| {
            let h = class_number(d).unwrap() as f64;
            h > 2.0 / std::f64::consts::PI * (d as f64).sqrt()
        })
        .collect();
    assert_eq!(violations.first(), Some(&39));
    assert_eq!(class_number(39).unwrap(), 4);
}

#[test]
fn sampled_direct_counts_match_table() {
    let table = ClassNumberTable::up_to(1_000_000);
    for delta in (999_000..=1_000_000).filter(|&d| is_fundamental(d)) {
        assert_eq!(table.h(delta), Some(class_number(delta).unwrap()));
    }
}
