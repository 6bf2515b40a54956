use std::fs;

use torsion_sieve_lmfdb::{
    default_fixture_dir, default_manifest, extended_manifest, rank_audit, Client, Error, FixtureDoc, FixtureStore, Query,
};

fn client() -> Client {
    Client::offline(FixtureStore::new(default_fixture_dir()))
}

#[test]
fn every_shipped_fixture_is_named_by_its_query_and_byte_stable() {
    let mut count = 0;
    for entry in fs::read_dir(default_fixture_dir()).unwrap() {
        let path = entry.unwrap().path();
        let text = fs::read_to_string(&path).unwrap();
        let doc: FixtureDoc = serde_json::from_str(&text).unwrap();
        let level: u64 = doc.query.split("level=").nth(1).unwrap().split('&').next().unwrap().parse().unwrap();
        let q = Query::newforms_of_level(level);
        assert_eq!(path.file_stem().unwrap().to_str().unwrap(), q.digest());
        doc.validate(&q).unwrap();
        assert_eq!(doc.to_canonical_json().unwrap(), text, "{}", path.display());
        count += 1;
    }
    assert!(count >= 13);
}

#[test]
fn level_65_has_one_possibly_positive_orbit() {
    let set = client().fetch_orbits(65).unwrap();
    let positive: Vec<&str> = set.records.iter().filter(|r| r.possibly_positive_rank()).map(|r| r.label.as_str()).collect();
    assert_eq!(positive, ["65.2.a.a"]);
    assert_eq!(set.sources.len(), 4);
    assert!(set.records.iter().all(|r| r.weight == 2 && r.parsed_label().unwrap().to_string() == r.label));
}

#[test]
fn level_143_and_187_order_5_orbits() {
    let c = client();
    assert_eq!(c.fetch_orbits(143).unwrap().get("143.2.h.a").unwrap().char_order, 5);
    assert_eq!(c.fetch_orbits(187).unwrap().get("187.2.g.a").unwrap().char_order, 5);
}

#[test]
fn level_63_positive_orbits_avoid_orders_1_and_3() {
    let set = client().fetch_orbits(63).unwrap();
    assert!(set.records.iter().filter(|r| r.possibly_positive_rank()).all(|r| r.char_order != 1 && r.char_order != 3));
}

#[test]
fn shipped_manifest_passes_offline() {
    let c = client();
    let results = default_manifest().audit_all(&c).unwrap();
    assert_eq!(results.len(), 10);
    for r in &results {
        assert!(r.pass, "{}: {}", r.id, r.detail);
    }
    let j0_plus = results.iter().find(|r| r.id == "rank_j0_plus_65").unwrap();
    let evidence: Vec<&str> = j0_plus.evidence.iter().map(|r| r.label.as_str()).collect();
    assert_eq!(evidence, ["65.2.a.a"]);
}

#[test]
fn audits_replay_identically() {
    let c = client();
    let a = serde_json::to_string(&default_manifest().audit_all(&c).unwrap()).unwrap();
    let b = serde_json::to_string(&default_manifest().audit_all(&c).unwrap()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn failing_claims_fail() {
    let c = client();
    let mut claim = default_manifest().get("rank_j0_65").unwrap().clone();
    if let torsion_sieve_lmfdb::Predicate::RankSum { rank, .. } = &mut claim.predicate {
        *rank = 2;
    }
    assert!(!rank_audit(&claim, &c).unwrap().pass);

    let mut claim = default_manifest().get("char_143_h_order_5").unwrap().clone();
    claim.level_divides = 1001;
    assert!(matches!(rank_audit(&claim, &c), Err(Error::UncoveredLevel(1001))));
}

#[test]
fn extended_claims_need_fixtures() {
    let c = client();
    for claim in &extended_manifest().claims {
        assert!(matches!(rank_audit(claim, &c), Err(Error::MissingFixture { .. })), "{}", claim.id);
    }
}

#[test]
fn save_then_load_round_trips() {
    let dir = std::env::temp_dir().join(format!("lmfdb-rt-{}", std::process::id()));
    let store = FixtureStore::new(&dir);
    let q = Query::newforms_of_level(65);
    let doc = FixtureStore::new(default_fixture_dir()).load(&q).unwrap().unwrap();
    let path = store.save(&q, &doc).unwrap();
    assert_eq!(store.load(&q).unwrap().unwrap(), doc);
    assert_eq!(fs::read(&path).unwrap(), fs::read(FixtureStore::new(default_fixture_dir()).path_for(&q)).unwrap());
    fs::remove_dir_all(&dir).unwrap();
}
